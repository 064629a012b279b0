#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oqs/dataset.hpp"
#include "oqs/labels.hpp"
#include "oqs/modelspec.hpp"
#include "oqs/superop.hpp"
#include "test_util.hpp"

using namespace oqs;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

TrueModel two_qubit_model() {
    return parse_model_string("0.5*C[XI],1.3*C[ZZ],0.2*D[-+],0.3*D[YX]");
}

int total_counts(const std::map<std::string, int>& counts) {
    int total = 0;
    for (const auto& [k, v] : counts) total += v;
    return total;
}

}  // namespace

TEST_SUITE_BEGIN("dataset");

// ---------------------------------------------------------------------------
// model strings
// ---------------------------------------------------------------------------

TEST_CASE("model string grammar parses rates, kinds, and labels") {
    const TrueModel m = two_qubit_model();
    REQUIRE(m.terms.size() == 4);
    CHECK(m.terms[0].kind == Kind::Coherent);
    CHECK(m.terms[0].rate == 0.5);
    CHECK(m.terms[0].label() == "XI");
    CHECK(m.terms[1].rate == 1.3);
    CHECK(m.terms[2].kind == Kind::Dissipative);
    CHECK(m.terms[2].label() == "-+");  // ladder factors are not sum separators
    CHECK(m.terms[3].label() == "YX");
    CHECK(m.n_qubits() == 2);
    CHECK(format_model_string(m) == "0.5*C[XI],1.3*C[ZZ],0.2*D[-+],0.3*D[YX]");
}

TEST_CASE("weighted-sum operators parse and round-trip") {
    const TrueModel m = parse_model_string("1.0*C[IZ],0.6*D[0.3*YX+0.7*ZI]");
    REQUIRE(m.terms.size() == 2);
    const TrueTerm& t = m.terms[1];
    REQUIRE(t.ops.size() == 2);
    CHECK(t.ops[0].first == 0.3);
    CHECK(t.ops[0].second == "YX");
    CHECK(t.ops[1].first == 0.7);
    CHECK(t.ops[1].second == "ZI");
    CHECK(t.label() == "0.3*YX+0.7*ZI");
    CHECK(format_model_string(m) == "1*C[IZ],0.6*D[0.3*YX+0.7*ZI]");

    const Matrix expect = 0.3 * label_matrix("YX") + 0.7 * label_matrix("ZI");
    CHECK(testutil::max_abs_diff(t.op_matrix(), expect) == 0.0);
}

TEST_CASE("negative weights split on the sign") {
    const auto ops = parse_operator_expression("0.5*XX-0.5*YY");
    REQUIRE(ops.size() == 2);
    CHECK(ops[0].first == 0.5);
    CHECK(ops[1].first == -0.5);
    CHECK(ops[1].second == "YY");
    CHECK(format_operator_expression(ops) == "0.5*XX-0.5*YY");
}

TEST_CASE("model string rejects malformed input") {
    CHECK_THROWS_AS(parse_model_string(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_string("0.5*Q[X]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_string("0.5*C[X"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_string("C[X]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_string("x*C[X]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_string("-0.2*D[X]"), std::invalid_argument);  // negative rate
    CHECK_THROWS_AS(parse_model_string("0.5*C[+]"), std::invalid_argument);   // ladder in C
    CHECK_THROWS_AS(parse_model_string("0.5*C[X],0.2*D[XX]"), std::invalid_argument);
    // the error names the offending token
    try {
        parse_model_string("0.5*C[XW]");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("XW") != std::string::npos);
    }
}

// ---------------------------------------------------------------------------
// time grids and designs
// ---------------------------------------------------------------------------

TEST_CASE("time grids span the range with the requested spacing") {
    const auto log_grid = time_grid(500, 0.01, 35.0, true);
    REQUIRE(log_grid.size() == 500);
    CHECK(log_grid.front() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(log_grid.back() == doctest::Approx(35.0).epsilon(1e-12));
    // constant ratio between consecutive points
    const double ratio = log_grid[1] / log_grid[0];
    for (std::size_t i = 2; i < 20; ++i)
        CHECK(log_grid[i] / log_grid[i - 1] == doctest::Approx(ratio).epsilon(1e-10));

    const auto lin_grid = time_grid(11, 1.0, 2.0, false);
    CHECK(lin_grid[5] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(time_grid(1, 0.7, 35.0, true) == std::vector<double>{0.7});
    CHECK_THROWS_AS(time_grid(0, 0.01, 35.0, true), std::invalid_argument);
    CHECK_THROWS_AS(time_grid(5, 0.0, 35.0, true), std::invalid_argument);
    CHECK_THROWS_AS(time_grid(5, 2.0, 1.0, true), std::invalid_argument);
}

TEST_CASE("arbitrary designs are normalized states with unitary bases") {
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const Design d = sample_design(DesignMode{}, 2, rng);
        CHECK(!d.local);
        CHECK(std::abs(d.state.norm() - 1.0) < 1e-12);
        const Matrix gram = d.unitary.adjoint() * d.unitary;
        CHECK(testutil::max_abs_diff(gram, Matrix::Identity(4, 4)) < 1e-12);
    }
}

TEST_CASE("local designs are tensor products") {
    Rng rng(7);
    DesignMode mode;
    mode.type = DesignMode::Type::Local;
    for (int trial = 0; trial < 10; ++trial) {
        const Design d = sample_design(mode, 2, rng);
        CHECK(d.local);
        REQUIRE(d.factors.size() == 2);
        CHECK(testutil::max_abs_diff(d.unitary, kron(d.factors[0], d.factors[1])) < 1e-12);
        // product state <=> the 2x2 amplitude reshape has rank one
        Matrix reshaped(2, 2);
        reshaped << d.state(0), d.state(1), d.state(2), d.state(3);
        Eigen::JacobiSVD<Matrix> svd(reshaped);
        CHECK(svd.singularValues()(1) < 1e-12);
    }
}

TEST_CASE("mixed mode draws the requested local fraction") {
    Rng rng(123);
    DesignMode mode;
    mode.type = DesignMode::Type::Mixed;
    mode.local_fraction = 0.5;
    int local = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i)
        if (sample_design(mode, 1, rng).local) ++local;
    const double frac = static_cast<double>(local) / trials;
    CHECK(std::abs(frac - 0.5) < 0.02);
}

TEST_CASE("design mode strings parse and format") {
    CHECK(DesignMode::parse("arbitrary").type == DesignMode::Type::Arbitrary);
    CHECK(DesignMode::parse("local").type == DesignMode::Type::Local);
    const DesignMode m = DesignMode::parse("mixed:0.25");
    CHECK(m.type == DesignMode::Type::Mixed);
    CHECK(m.local_fraction == 0.25);
    CHECK(m.to_string() == "mixed:0.25");
    CHECK_THROWS_AS(DesignMode::parse("mixed:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(DesignMode::parse("mixed:"), std::invalid_argument);
    CHECK_THROWS_AS(DesignMode::parse("global"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

TEST_CASE("simulated counts total the shot budget and follow the state") {
    // a Z Hamiltonian leaves |0><0| invariant: every shot reads 0
    const TrueModel m = parse_model_string("0.5*C[Z]");
    const Superoperator l = assemble_liouvillian(m.generator_terms(), 1);
    Design d;
    d.state = Vector::Zero(2);
    d.state(0) = 1.0;
    d.unitary = Matrix::Identity(2, 2);
    Rng rng(5);
    const auto counts = simulate_counts(l, d, 3.0, 100, rng);
    REQUIRE(counts.size() == 1);
    CHECK(counts.at("0") == 100);

    // deterministic per rng seed
    Rng rng_a(99), rng_b(99);
    Rng design_rng(11);
    const Design random_design = sample_design(DesignMode{}, 1, design_rng);
    const auto c1 = simulate_counts(l, random_design, 1.0, 200, rng_a);
    const auto c2 = simulate_counts(l, random_design, 1.0, 200, rng_b);
    CHECK(c1 == c2);
    CHECK(total_counts(c1) == 200);
}

TEST_CASE("readout noise flips bits at the configured rates") {
    Rng rng(17);
    // p = q = 0 is the identity
    const std::map<std::string, int> clean{{"01", 40}, {"10", 60}};
    CHECK(apply_readout_noise(clean, NoiseConfig{0.0, 0.0}, 2, rng) == clean);

    // p = 1, q = 0 deterministically flips every 0
    const auto flipped =
        apply_readout_noise({{"00", 100}}, NoiseConfig{1.0, 0.0}, 2, rng);
    REQUIRE(flipped.size() == 1);
    CHECK(flipped.at("11") == 100);

    // observed ones frequency = p(1-r) + (1-q)r at true ones fraction r
    const NoiseConfig noise{0.1, 0.07};
    const int shots = 200000;
    for (double r : {0.0, 0.5, 1.0}) {
        const int ones_in = static_cast<int>(r * shots);
        std::map<std::string, int> in;
        if (shots - ones_in > 0) in["0"] = shots - ones_in;
        if (ones_in > 0) in["1"] = ones_in;
        const auto out = apply_readout_noise(in, noise, 1, rng);
        const double expect = noise.p * (1.0 - r) + (1.0 - noise.q) * r;
        const double got =
            static_cast<double>(out.count("1") ? out.at("1") : 0) / shots;
        const double sigma = std::sqrt(std::max(expect * (1.0 - expect), 1e-12) / shots);
        CHECK(std::abs(got - expect) < 5.0 * sigma + 1e-9);
        CHECK(total_counts(out) == shots);
    }

    CHECK_THROWS_AS(apply_readout_noise(clean, NoiseConfig{1.2, 0.0}, 2, rng),
                    std::invalid_argument);
}

// ---------------------------------------------------------------------------
// generation and persistence
// ---------------------------------------------------------------------------

namespace {

GenerateConfig small_config() {
    GenerateConfig cfg;
    cfg.model = two_qubit_model();
    cfg.n_times = 10;
    cfg.designs_per_time = 2;
    cfg.shots = 50;
    cfg.test_shots = 1024;
    cfg.test_fraction = 0.2;
    cfg.seed = 321;
    return cfg;
}

}  // namespace

TEST_CASE("generation lays out records, splits, and shot budgets") {
    const Dataset ds = generate_dataset(small_config());
    REQUIRE(ds.records.size() == 20);
    CHECK(ds.has_split_markers);
    CHECK(ds.manifest.n_qubits == 2);
    CHECK(ds.manifest.has_true_model);
    int tests = 0;
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& r = ds.records[i];
        char id[16];
        std::snprintf(id, sizeof(id), "r%06zu", i);
        CHECK(r.id == id);
        CHECK(total_counts(r.counts) == r.shots);
        if (r.split == Split::Test) {
            ++tests;
            CHECK(r.shots == 1024);
        } else {
            CHECK(r.shots == 50);
        }
    }
    CHECK(tests == 4);  // one in five
    // every fifth record is held out
    CHECK(ds.records[4].split == Split::Test);
    CHECK(ds.records[9].split == Split::Test);
    CHECK(ds.records[0].split == Split::Train);
}

TEST_CASE("generation is byte-identical for the same config") {
    const std::string path_a = temp_path("oqs_ds_a.jsonl");
    const std::string path_b = temp_path("oqs_ds_b.jsonl");
    save_dataset(generate_dataset(small_config()), path_a);
    save_dataset(generate_dataset(small_config()), path_b);
    const std::string bytes_a = read_file(path_a);
    CHECK(bytes_a == read_file(path_b));
    CHECK(!bytes_a.empty());

    GenerateConfig other = small_config();
    other.seed = 322;
    save_dataset(generate_dataset(other), path_b);
    CHECK(bytes_a != read_file(path_b));
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
}

TEST_CASE("save/load round-trips every field exactly") {
    GenerateConfig cfg = small_config();
    cfg.model = parse_model_string("1.0*C[IZ],0.6*D[0.3*YX+0.7*ZI]");
    cfg.mode = DesignMode::parse("mixed:0.5");
    cfg.noise = NoiseConfig{0.02, 0.02};
    const Dataset ds = generate_dataset(cfg);
    const std::string path = temp_path("oqs_ds_rt.jsonl");
    save_dataset(ds, path);
    const Dataset back = load_dataset(path);
    std::filesystem::remove(path);

    CHECK(back.has_split_markers);
    CHECK(back.manifest.n_qubits == 2);
    CHECK(back.manifest.seed == cfg.seed);
    CHECK(back.manifest.noise.p == 0.02);
    CHECK(back.manifest.mode.to_string() == "mixed:0.5");
    REQUIRE(back.manifest.has_true_model);
    REQUIRE(back.manifest.true_model.terms.size() == 2);
    CHECK(back.manifest.true_model.terms[1].rate == 0.6);
    CHECK(back.manifest.true_model.terms[1].label() == "0.3*YX+0.7*ZI");

    REQUIRE(back.records.size() == ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& a = ds.records[i];
        const auto& b = back.records[i];
        CHECK(a.id == b.id);
        CHECK(a.split == b.split);
        CHECK(a.time == b.time);  // bit-exact through the text form
        CHECK(a.shots == b.shots);
        CHECK(a.counts == b.counts);
        CHECK(a.local_design == b.local_design);
        CHECK(testutil::max_abs_diff_vec(a.state, b.state) == 0.0);
        CHECK(testutil::max_abs_diff(a.unitary, b.unitary) == 0.0);
    }
}

TEST_CASE("loader rejects malformed data with line numbers") {
    const std::string path = temp_path("oqs_ds_bad.jsonl");
    {
        std::ofstream out(path);
        out << R"({"format_version":1,"n_qubits":1,"model":null,)"
            << R"("noise":{"p":0.0,"q":0.0},"mode":"arbitrary","seed":1})" << "\n";
        out << R"({"id":"r0","time":1.0,"shots":3,)"
            << R"("state":[[1.0,0.0],[0.0,0.0]],)"
            << R"("unitary":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]],)"
            << R"("counts":{"0":2}})" << "\n";  // counts sum != shots
    }
    try {
        load_dataset(path);
        FAIL("expected a data error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("sum") != std::string::npos);
    }

    {
        std::ofstream out(path);
        out << R"({"format_version":1,"n_qubits":1,"model":null,)"
            << R"("noise":{"p":0.0,"q":0.0},"mode":"arbitrary","seed":1})" << "\n";
        out << "not json\n";
    }
    CHECK_THROWS_AS(load_dataset(path), std::runtime_error);

    {
        std::ofstream out(path);
        out << R"({"format_version":2,"n_qubits":1})" << "\n";
    }
    CHECK_THROWS_AS(load_dataset(path), std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("records without split markers are detected for the fallback") {
    const std::string path = temp_path("oqs_ds_nosplit.jsonl");
    {
        std::ofstream out(path);
        out << R"({"format_version":1,"n_qubits":1,"model":null,)"
            << R"("noise":{"p":0.0,"q":0.0},"mode":"arbitrary","seed":1})" << "\n";
        out << R"({"id":"r0","time":1.0,"shots":3,)"
            << R"("state":[[1.0,0.0],[0.0,0.0]],)"
            << R"("unitary":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]],)"
            << R"("counts":{"0":3}})" << "\n";
    }
    const Dataset ds = load_dataset(path);
    std::filesystem::remove(path);
    CHECK(!ds.has_split_markers);
    CHECK(ds.records[0].split == Split::Train);

    const auto [train, test] = interleaved_split(10);
    CHECK(train.size() == 8);
    CHECK(test == std::vector<int>{4, 9});
}

// ---------------------------------------------------------------------------
// serving
// ---------------------------------------------------------------------------

namespace {

Dataset times_only_dataset(const std::vector<double>& times) {
    Dataset ds;
    ds.manifest.n_qubits = 1;
    for (std::size_t i = 0; i < times.size(); ++i) {
        ExperimentRecord r;
        r.id = "r" + std::to_string(i);
        r.time = times[i];
        r.shots = 1;
        r.state = Vector::Zero(2);
        r.state(0) = 1.0;
        r.unitary = Matrix::Identity(2, 2);
        r.counts["0"] = 1;
        ds.records.push_back(std::move(r));
    }
    return ds;
}

}  // namespace

TEST_CASE("serving returns the nearest unused record") {
    const Dataset ds = times_only_dataset({1.0, 2.0, 3.0});
    ServingSession session(ds, {0, 1, 2}, 9);
    CHECK(session.min_time() == 1.0);
    CHECK(session.max_time() == 3.0);
    CHECK(session.remaining() == 3);

    const ExperimentRecord* r = session.serve(2.4);
    REQUIRE(r != nullptr);
    CHECK(r->time == 2.0);
    // 2.0 is used now; the same request gets the next-nearest record
    r = session.serve(2.4);
    REQUIRE(r != nullptr);
    CHECK(r->time == 3.0);
    // beyond the range clamps to the extreme
    r = session.serve(100.0);
    REQUIRE(r != nullptr);
    CHECK(r->time == 1.0);
    CHECK(session.remaining() == 0);
    CHECK(session.serve(1.0) == nullptr);
}

TEST_CASE("serving hands out each record exactly once") {
    const Dataset ds = times_only_dataset({0.5, 0.5, 0.5, 1.5, 2.5});
    ServingSession session(ds, {0, 1, 2, 3, 4}, 13);
    std::set<std::string> ids;
    for (int i = 0; i < 5; ++i) {
        const ExperimentRecord* r = session.serve(0.5);
        REQUIRE(r != nullptr);
        ids.insert(r->id);
    }
    CHECK(ids.size() == 5);
    CHECK(session.serve(0.5) == nullptr);
}

TEST_CASE("equidistant ties break uniformly at random") {
    const Dataset ds = times_only_dataset({1.0, 3.0});
    int low = 0, high = 0;
    const int trials = 400;
    for (int s = 0; s < trials; ++s) {
        ServingSession session(ds, {0, 1}, static_cast<std::uint64_t>(s + 1));
        const ExperimentRecord* r = session.serve(2.0);
        REQUIRE(r != nullptr);
        (r->time == 1.0 ? low : high)++;
    }
    CHECK(low + high == trials);
    // p = 1/2 each: 5 sigma ≈ 50 of 400
    CHECK(std::abs(low - trials / 2) < 50);
}

TEST_CASE("session subsets and bad indices") {
    const Dataset ds = times_only_dataset({1.0, 2.0, 3.0});
    ServingSession session(ds, {1}, 3);
    CHECK(session.min_time() == 2.0);
    CHECK(session.max_time() == 2.0);
    const ExperimentRecord* r = session.serve(0.0);
    REQUIRE(r != nullptr);
    CHECK(r->time == 2.0);

    CHECK_THROWS_AS(ServingSession(ds, {5}, 1), std::out_of_range);
    ServingSession empty(ds, {}, 1);
    CHECK(empty.serve(1.0) == nullptr);
    CHECK_THROWS_AS(empty.min_time(), std::runtime_error);

    const auto train = split_indices(ds, Split::Train);
    CHECK(train.size() == 3);  // default split is train
    CHECK(split_indices(ds, Split::Test).empty());
}

TEST_SUITE_END();
