#include "oqs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include "json_util.hpp"
#include "oqs/labels.hpp"
#include "oqs/modelspec.hpp"
#include "oqs/state.hpp"
#include "oqs/superop.hpp"

namespace oqs {

using jsonio::Json;

// ---------------------------------------------------------------------------
// true models
// ---------------------------------------------------------------------------

std::string TrueTerm::label() const { return format_operator_expression(ops); }

Matrix TrueTerm::op_matrix() const {
    if (ops.empty()) throw std::invalid_argument("term has no operator components");
    const int dim = 1 << n_qubits();
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto& [w, l] : ops) m += w * label_matrix(l);
    return m;
}

int TrueTerm::n_qubits() const {
    if (ops.empty()) throw std::invalid_argument("term has no operator components");
    const auto n = static_cast<int>(ops.front().second.size());
    for (const auto& [w, l] : ops) {
        (void)w;
        if (static_cast<int>(l.size()) != n)
            throw std::invalid_argument("inconsistent label lengths in term '" + label() +
                                        "'");
    }
    return n;
}

int TrueModel::n_qubits() const {
    if (terms.empty()) throw std::invalid_argument("model has no terms");
    const int n = terms.front().n_qubits();
    for (const auto& t : terms)
        if (t.n_qubits() != n)
            throw std::invalid_argument("model mixes labels of different lengths");
    return n;
}

std::vector<GeneratorTerm> TrueModel::generator_terms() const {
    std::vector<GeneratorTerm> out;
    out.reserve(terms.size());
    for (const auto& t : terms)
        out.push_back(GeneratorTerm{t.kind, t.rate, t.op_matrix(), t.label()});
    return out;
}

// ---------------------------------------------------------------------------
// designs
// ---------------------------------------------------------------------------

DesignMode DesignMode::parse(const std::string& text) {
    DesignMode mode;
    if (text == "arbitrary") {
        mode.type = Type::Arbitrary;
    } else if (text == "local") {
        mode.type = Type::Local;
    } else if (text.rfind("mixed:", 0) == 0) {
        mode.type = Type::Mixed;
        const std::string frac = text.substr(6);
        const char* begin = frac.c_str();
        char* end = nullptr;
        mode.local_fraction = std::strtod(begin, &end);
        if (frac.empty() || end != begin + frac.size() || mode.local_fraction < 0.0 ||
            mode.local_fraction > 1.0)
            throw std::invalid_argument("invalid design mode: '" + text + "'");
    } else {
        throw std::invalid_argument("invalid design mode: '" + text + "'");
    }
    return mode;
}

std::string DesignMode::to_string() const {
    switch (type) {
        case Type::Arbitrary: return "arbitrary";
        case Type::Local: return "local";
        case Type::Mixed: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "mixed:%.*g", 17, local_fraction);
            return buf;
        }
    }
    throw std::logic_error("unreachable design mode");
}

int ExperimentRecord::n_qubits() const {
    const auto dim = state.size();
    int n = 0;
    while ((Eigen::Index{1} << (n + 1)) <= dim) ++n;
    if ((Eigen::Index{1} << n) != dim || n < 1)
        throw std::runtime_error("record state dimension is not a power of two");
    return n;
}

std::vector<double> time_grid(int n, double t_min, double t_max, bool log_spacing) {
    if (n < 1) throw std::invalid_argument("time grid needs at least one point");
    if (!(t_min > 0.0) || !(t_max >= t_min))
        throw std::invalid_argument("time grid needs 0 < t_min <= t_max");
    std::vector<double> grid(static_cast<std::size_t>(n));
    if (n == 1) {
        grid[0] = t_min;
        return grid;
    }
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        grid[static_cast<std::size_t>(i)] =
            log_spacing ? t_min * std::pow(t_max / t_min, f) : t_min + f * (t_max - t_min);
    }
    return grid;
}

namespace {

Vector haar_state(int dim, Rng& rng) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = Complex(re, im);
    }
    const double norm = v.norm();
    if (norm < 1e-12) return haar_state(dim, rng);  // essentially impossible
    return v / norm;
}

Matrix haar_unitary(int dim, Rng& rng) {
    std::normal_distribution<double> gauss;
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            a(i, j) = Complex(re, im);
        }
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
    // fix the gauge so the distribution is Haar, not QR-convention dependent
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 1e-300) ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace

Design sample_design(const DesignMode& mode, int n_qubits, Rng& rng) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("unsupported size for design sampling");
    bool local = false;
    switch (mode.type) {
        case DesignMode::Type::Arbitrary: local = false; break;
        case DesignMode::Type::Local: local = true; break;
        case DesignMode::Type::Mixed:
            local = std::bernoulli_distribution(mode.local_fraction)(rng);
            break;
    }
    Design design;
    design.local = local;
    if (!local) {
        const int dim = 1 << n_qubits;
        design.state = haar_state(dim, rng);
        design.unitary = haar_unitary(dim, rng);
        return design;
    }
    // product design: qubit 0 is the leftmost (most significant) factor
    design.state = Vector::Ones(1);
    design.unitary = Matrix::Identity(1, 1);
    design.factors.reserve(static_cast<std::size_t>(n_qubits));
    for (int k = 0; k < n_qubits; ++k) {
        const Vector s = haar_state(2, rng);
        const Matrix u = haar_unitary(2, rng);
        Vector next(design.state.size() * 2);
        for (Eigen::Index i = 0; i < design.state.size(); ++i) {
            next(2 * i) = design.state(i) * s(0);
            next(2 * i + 1) = design.state(i) * s(1);
        }
        design.state = next;
        design.unitary = kron(design.unitary, u).eval();
        design.factors.push_back(u);
    }
    return design;
}

namespace {

/// Sequentially-conditioned binomial draws; preserves the total exactly.
std::vector<int> multinomial_draw(const RealVector& probs, int shots, Rng& rng) {
    const double total = probs.sum();
    if (!(total > 0.0)) throw std::runtime_error("invalid outcome distribution");
    std::vector<int> counts(static_cast<std::size_t>(probs.size()), 0);
    double rest = total;
    int remaining = shots;
    for (Eigen::Index j = 0; j + 1 < probs.size() && remaining > 0; ++j) {
        if (rest <= 0.0) break;
        const double cond = std::clamp(probs(j) / rest, 0.0, 1.0);
        std::binomial_distribution<int> bin(remaining, cond);
        const int c = bin(rng);
        counts[static_cast<std::size_t>(j)] = c;
        remaining -= c;
        rest -= probs(j);
    }
    counts.back() += remaining;
    return counts;
}

}  // namespace

std::map<std::string, int> simulate_counts(const Superoperator& liouvillian,
                                           const Design& design, double time, int shots,
                                           Rng& rng) {
    if (shots < 1) throw std::invalid_argument("shots must be positive");
    const DensityMatrix rho0 = DensityMatrix::pure(design.state);
    const Superoperator prop = propagator(liouvillian, time);
    const DensityMatrix rho_t = apply_propagator(prop, rho0);
    RealVector q = outcome_probabilities(rho_t, design.unitary);
    q /= q.sum();
    const auto draws = multinomial_draw(q, shots, rng);
    const int n = rho0.n_qubits();
    std::map<std::string, int> counts;
    for (std::size_t j = 0; j < draws.size(); ++j)
        if (draws[j] > 0) counts[index_bitstring(static_cast<int>(j), n)] = draws[j];
    return counts;
}

std::map<std::string, int> apply_readout_noise(const std::map<std::string, int>& counts,
                                               const NoiseConfig& noise, int n_qubits,
                                               Rng& rng) {
    if (noise.p < 0.0 || noise.p > 1.0 || noise.q < 0.0 || noise.q > 1.0)
        throw std::invalid_argument("flip probabilities must lie in [0, 1]");
    if (noise.p == 0.0 && noise.q == 0.0) return counts;
    const int dim = 1 << n_qubits;
    std::map<std::string, int> noisy;
    for (const auto& [bits, count] : counts) {
        if (static_cast<int>(bits.size()) != n_qubits)
            throw std::invalid_argument("outcome bitstring '" + bits +
                                        "' has the wrong length");
        RealVector dist(dim);
        for (int out = 0; out < dim; ++out) {
            const std::string out_bits = index_bitstring(out, n_qubits);
            double prob = 1.0;
            for (int k = 0; k < n_qubits; ++k) {
                if (bits[static_cast<std::size_t>(k)] == '0')
                    prob *= (out_bits[static_cast<std::size_t>(k)] == '1') ? noise.p
                                                                           : 1.0 - noise.p;
                else
                    prob *= (out_bits[static_cast<std::size_t>(k)] == '0') ? noise.q
                                                                           : 1.0 - noise.q;
            }
            dist(out) = prob;
        }
        const auto draws = multinomial_draw(dist, count, rng);
        for (int out = 0; out < dim; ++out)
            if (draws[static_cast<std::size_t>(out)] > 0)
                noisy[index_bitstring(out, n_qubits)] += draws[static_cast<std::size_t>(out)];
    }
    return noisy;
}

Dataset generate_dataset(const GenerateConfig& config) {
    if (config.designs_per_time < 1)
        throw std::invalid_argument("designs_per_time must be positive");
    if (config.shots < 1 || config.test_shots < 1)
        throw std::invalid_argument("shot counts must be positive");
    if (config.test_fraction < 0.0 || config.test_fraction > 1.0)
        throw std::invalid_argument("test_fraction must lie in [0, 1]");
    const int n = config.model.n_qubits();
    if (n > kMaxQubits) throw std::invalid_argument("unsupported system size");
    const Superoperator liouvillian = assemble_liouvillian(config.model.generator_terms(), n);
    const auto grid = time_grid(config.n_times, config.t_min, config.t_max,
                                config.log_spacing);

    Dataset ds;
    ds.manifest.n_qubits = n;
    ds.manifest.has_true_model = true;
    ds.manifest.true_model = config.model;
    ds.manifest.noise = config.noise;
    ds.manifest.mode = config.mode;
    ds.manifest.seed = config.seed;

    std::uint64_t index = 0;
    int accepted_tests = 0;
    for (double t : grid) {
        for (int d = 0; d < config.designs_per_time; ++d, ++index) {
            Rng rng(derive_seed(config.seed, {index}));
            // Bresenham spread of the held-out fraction over the record stream
            const bool test =
                std::floor(static_cast<double>(index + 1) * config.test_fraction) >
                static_cast<double>(accepted_tests);
            if (test) ++accepted_tests;

            ExperimentRecord rec;
            char id[16];
            std::snprintf(id, sizeof(id), "r%06llu",
                          static_cast<unsigned long long>(index));
            rec.id = id;
            rec.split = test ? Split::Test : Split::Train;
            rec.time = t;
            rec.shots = test ? config.test_shots : config.shots;

            const Design design = sample_design(config.mode, n, rng);
            rec.state = design.state;
            rec.unitary = design.unitary;
            rec.local_design = design.local;
            rec.local_factors = design.factors;

            auto counts = simulate_counts(liouvillian, design, t, rec.shots, rng);
            rec.counts = apply_readout_noise(counts, config.noise, n, rng);
            ds.records.push_back(std::move(rec));
        }
    }
    ds.has_split_markers = true;
    return ds;
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

namespace {

Json matrix_to_json(const Matrix& m) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            arr.push_back(jsonio::complex_to_json(m(i, j).real(), m(i, j).imag()));
    return arr;
}

Json vector_to_json(const Vector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(jsonio::complex_to_json(v(i).real(), v(i).imag()));
    return arr;
}

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::runtime_error("complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols)
        throw std::runtime_error("matrix entry count mismatch");
    Matrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[k++]);
    return m;
}

Json manifest_to_json(const DatasetManifest& m) {
    Json j;
    j["format_version"] = m.format_version;
    j["n_qubits"] = m.n_qubits;
    if (m.has_true_model) {
        Json terms = Json::array();
        for (const auto& t : m.true_model.terms) {
            Json tj;
            tj["kind"] = to_string(t.kind);
            tj["rate"] = t.rate;
            tj["label"] = t.label();
            terms.push_back(std::move(tj));
        }
        j["model"] = std::move(terms);
    } else {
        j["model"] = nullptr;
    }
    j["noise"] = Json{{"p", m.noise.p}, {"q", m.noise.q}};
    j["mode"] = m.mode.to_string();
    j["seed"] = m.seed;
    return j;
}

DatasetManifest manifest_from_json(const Json& j) {
    DatasetManifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != 1)
        throw std::runtime_error("unsupported format_version " +
                                 std::to_string(m.format_version));
    m.n_qubits = j.at("n_qubits").get<int>();
    if (m.n_qubits < 1 || m.n_qubits > kMaxQubits)
        throw std::runtime_error("unsupported n_qubits in manifest");
    if (j.contains("model") && !j.at("model").is_null()) {
        m.has_true_model = true;
        for (const auto& tj : j.at("model")) {
            TrueTerm t;
            const std::string kind = tj.at("kind").get<std::string>();
            if (kind == "coherent")
                t.kind = Kind::Coherent;
            else if (kind == "dissipative")
                t.kind = Kind::Dissipative;
            else
                throw std::runtime_error("unknown term kind '" + kind + "'");
            t.rate = tj.at("rate").get<double>();
            t.ops = parse_operator_expression(tj.at("label").get<std::string>());
            for (const auto& [w, label] : t.ops) {
                (void)w;
                validate_label(label, t.kind);
            }
            m.true_model.terms.push_back(std::move(t));
        }
        if (m.true_model.n_qubits() != m.n_qubits)
            throw std::runtime_error("manifest model size disagrees with n_qubits");
    }
    if (j.contains("noise")) {
        m.noise.p = j.at("noise").at("p").get<double>();
        m.noise.q = j.at("noise").at("q").get<double>();
        if (m.noise.p < 0.0 || m.noise.p > 1.0 || m.noise.q < 0.0 || m.noise.q > 1.0)
            throw std::runtime_error("noise probabilities out of range");
    }
    if (j.contains("mode")) m.mode = DesignMode::parse(j.at("mode").get<std::string>());
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    return m;
}

Json record_to_json(const ExperimentRecord& r) {
    Json j;
    j["id"] = r.id;
    j["split"] = (r.split == Split::Test) ? "test" : "train";
    j["time"] = r.time;
    j["shots"] = r.shots;
    j["state"] = vector_to_json(r.state);
    if (r.local_design) {
        Json factors = Json::array();
        for (const auto& f : r.local_factors) factors.push_back(matrix_to_json(f));
        j["local"] = std::move(factors);
    } else {
        j["unitary"] = matrix_to_json(r.unitary);
    }
    Json counts;
    for (const auto& [bits, c] : r.counts) counts[bits] = c;
    j["counts"] = std::move(counts);
    return j;
}

ExperimentRecord record_from_json(const Json& j, int n_qubits, bool* saw_split) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    ExperimentRecord r;
    r.id = j.at("id").get<std::string>();
    if (j.contains("split")) {
        *saw_split = true;
        const std::string s = j.at("split").get<std::string>();
        if (s == "train")
            r.split = Split::Train;
        else if (s == "test")
            r.split = Split::Test;
        else
            throw std::runtime_error("unknown split marker '" + s + "'");
    }
    r.time = j.at("time").get<double>();
    if (!std::isfinite(r.time) || r.time < 0.0)
        throw std::runtime_error("record time must be finite and non-negative");
    r.shots = j.at("shots").get<int>();
    if (r.shots < 0) throw std::runtime_error("record shots must be non-negative");

    const Json& sj = j.at("state");
    if (!sj.is_array() || static_cast<Eigen::Index>(sj.size()) != dim)
        throw std::runtime_error("state amplitude count mismatch");
    r.state = Vector(dim);
    for (Eigen::Index i = 0; i < dim; ++i) r.state(i) = complex_from_json(sj[i]);
    if (std::abs(r.state.norm() - 1.0) > 1e-9)
        throw std::runtime_error("state vector is not normalized");

    if (j.contains("local")) {
        const Json& fj = j.at("local");
        if (!fj.is_array() || static_cast<int>(fj.size()) != n_qubits)
            throw std::runtime_error("local design needs one factor per qubit");
        r.local_design = true;
        r.unitary = Matrix::Identity(1, 1);
        for (const auto& f : fj) {
            Matrix u = matrix_from_json(f, 2, 2);
            r.local_factors.push_back(u);
            r.unitary = kron(r.unitary, u).eval();
        }
    } else {
        r.unitary = matrix_from_json(j.at("unitary"), dim, dim);
    }
    if ((r.unitary.adjoint() * r.unitary - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() >
        1e-9)
        throw std::runtime_error("basis matrix is not unitary");

    long long total = 0;
    for (const auto& [bits, cj] : j.at("counts").items()) {
        if (static_cast<int>(bits.size()) != n_qubits ||
            bits.find_first_not_of("01") != std::string::npos)
            throw std::runtime_error("invalid outcome bitstring '" + bits + "'");
        const int c = cj.get<int>();
        if (c < 0) throw std::runtime_error("negative outcome count");
        if (c > 0) r.counts[bits] = c;
        total += c;
    }
    if (total != r.shots)
        throw std::runtime_error("outcome counts do not sum to the shot count");
    return r;
}

}  // namespace

void save_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: identical bytes everywhere
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << jsonio::dump(manifest_to_json(dataset.manifest)) << '\n';
    for (const auto& r : dataset.records) out << jsonio::dump(record_to_json(r)) << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    Dataset ds;
    std::string line;
    std::size_t line_no = 0;
    bool saw_split = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const Json j = Json::parse(line);
            if (line_no == 1)
                ds.manifest = manifest_from_json(j);
            else
                ds.records.push_back(
                    record_from_json(j, ds.manifest.n_qubits, &saw_split));
        } catch (const std::exception& e) {
            throw std::runtime_error("data error at line " + std::to_string(line_no) +
                                     " of '" + path + "': " + e.what());
        }
    }
    if (line_no == 0) throw std::runtime_error("data error: '" + path + "' is empty");
    ds.has_split_markers = saw_split;
    return ds;
}

// ---------------------------------------------------------------------------
// serving
// ---------------------------------------------------------------------------

ServingSession::ServingSession(const Dataset& dataset, std::vector<int> record_indices,
                               std::uint64_t seed)
    : dataset_(&dataset), rng_(seed) {
    for (int idx : record_indices)
        if (idx < 0 || idx >= static_cast<int>(dataset.records.size()))
            throw std::out_of_range("record index out of range");
    std::sort(record_indices.begin(), record_indices.end(), [&](int a, int b) {
        const double ta = dataset.records[static_cast<std::size_t>(a)].time;
        const double tb = dataset.records[static_cast<std::size_t>(b)].time;
        return ta != tb ? ta < tb : a < b;
    });
    order_ = std::move(record_indices);
    times_.reserve(order_.size());
    for (int idx : order_) times_.push_back(dataset.records[static_cast<std::size_t>(idx)].time);
    used_.assign(order_.size(), 0);
    remaining_ = order_.size();
}

const ExperimentRecord* ServingSession::serve(double target_time) {
    if (remaining_ == 0) return nullptr;
    const auto lb = static_cast<std::size_t>(
        std::lower_bound(times_.begin(), times_.end(), target_time) - times_.begin());

    // nearest unused entry on each side of the insertion point
    std::size_t right = lb;
    while (right < order_.size() && used_[right]) ++right;
    std::size_t left = lb;
    while (left > 0 && used_[left - 1]) --left;

    double best = std::numeric_limits<double>::infinity();
    if (right < order_.size()) best = times_[right] - target_time;
    if (left > 0) best = std::min(best, target_time - times_[left - 1]);

    // all unused entries at the winning distance (equal times are contiguous)
    std::vector<std::size_t> candidates;
    if (right < order_.size() && times_[right] - target_time == best) {
        const double t = times_[right];
        for (std::size_t k = right; k < order_.size() && times_[k] == t; ++k)
            if (!used_[k]) candidates.push_back(k);
    }
    if (left > 0 && target_time - times_[left - 1] == best) {
        const double t = times_[left - 1];
        for (std::size_t k = left; k > 0 && times_[k - 1] == t; --k)
            if (!used_[k - 1]) candidates.push_back(k - 1);
    }

    std::size_t pick = candidates.front();
    if (candidates.size() > 1) {
        std::uniform_int_distribution<std::size_t> u(0, candidates.size() - 1);
        pick = candidates[u(rng_)];
    }
    used_[pick] = 1;
    --remaining_;
    return &dataset_->records[static_cast<std::size_t>(order_[pick])];
}

double ServingSession::min_time() const {
    if (times_.empty()) throw std::runtime_error("empty serving session");
    return times_.front();
}

double ServingSession::max_time() const {
    if (times_.empty()) throw std::runtime_error("empty serving session");
    return times_.back();
}

std::vector<int> split_indices(const Dataset& dataset, Split split) {
    std::vector<int> out;
    for (std::size_t i = 0; i < dataset.records.size(); ++i)
        if (dataset.records[i].split == split) out.push_back(static_cast<int>(i));
    return out;
}

std::pair<std::vector<int>, std::vector<int>> interleaved_split(std::size_t n_records) {
    std::vector<int> train, test;
    for (std::size_t i = 0; i < n_records; ++i) {
        if (i % 5 == 4)
            test.push_back(static_cast<int>(i));
        else
            train.push_back(static_cast<int>(i));
    }
    return {std::move(train), std::move(test)};
}

std::pair<std::vector<int>, std::vector<int>> interleaved_split(std::size_t n_records,
                                                                double test_fraction) {
    if (!(test_fraction >= 0.0 && test_fraction <= 1.0))
        throw std::invalid_argument("test fraction must lie in [0, 1]");
    std::vector<int> train, test;
    std::size_t held = 0;
    for (std::size_t i = 0; i < n_records; ++i) {
        if (std::floor(static_cast<double>(i + 1) * test_fraction) >
            static_cast<double>(held)) {
            test.push_back(static_cast<int>(i));
            ++held;
        } else {
            train.push_back(static_cast<int>(i));
        }
    }
    return {std::move(train), std::move(test)};
}

}  // namespace oqs
