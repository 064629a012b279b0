#include "oqs/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "json_util.hpp"
#include "oqs/modelspec.hpp"

namespace oqs {

namespace {

constexpr std::uint64_t kTagReplicate = 10;

const char* kind_name(Kind kind) {
    return kind == Kind::Coherent ? "coherent" : "dissipative";
}

Kind kind_from_name(const std::string& name) {
    if (name == "coherent") return Kind::Coherent;
    if (name == "dissipative") return Kind::Dissipative;
    throw std::runtime_error("unknown term kind '" + name + "'");
}

}  // namespace

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> table = {
        {"bench-a", "0.5*C[XI],1.3*C[ZZ],0.2*D[-+],0.3*D[YX]", DesignMode{},
         NoiseConfig{},
         "two interacting qubits, arbitrary designs, noiseless readout"},
        {"local", "-0.3*C[ZI],-1.5*C[ZX],0.2*D[-I]",
         DesignMode{DesignMode::Type::Local, 1.0}, NoiseConfig{},
         "correlated evolution probed with product states and local readout"},
        {"noisy", "1.5*C[XZ],0.3*D[I-],0.2*D[Y+]",
         DesignMode{DesignMode::Type::Mixed, 0.5}, NoiseConfig{0.02, 0.02},
         "readout bits flipped with 2% probability each way"},
        {"approx", "1.0*C[IZ],0.6*D[0.3*YX+0.7*ZI]",
         DesignMode{DesignMode::Type::Mixed, 0.5}, NoiseConfig{},
         "jump operator outside the primitive set: only approximable"},
    };
    return table;
}

const Scenario* find_scenario(const std::string& name) {
    for (const Scenario& s : scenarios())
        if (s.name == name) return &s;
    return nullptr;
}

GenerateConfig scenario_config(const std::string& name, std::uint64_t seed) {
    const Scenario* s = find_scenario(name);
    if (s == nullptr) throw std::invalid_argument("unknown scenario '" + name + "'");
    GenerateConfig config;
    config.model = parse_model_string(s->model);
    config.mode = s->mode;
    config.noise = s->noise;
    config.seed = seed;
    return config;
}

SearchConfig default_search_config() {
    SearchConfig config;
    config.training.n_particles = kRunDefaultParticles;
    return config;
}

namespace {

std::vector<TermEstimate> term_estimates(const PrimitiveSet& set,
                                         const TrainedModel& trained) {
    const std::vector<int> ones = trained.model.chromosome.ones();
    std::vector<TermEstimate> terms;
    terms.reserve(ones.size());
    for (std::size_t k = 0; k < ones.size(); ++k) {
        const Primitive& p = set.at(static_cast<std::size_t>(ones[k]));
        TermEstimate t;
        t.kind = p.kind;
        t.label = p.label;
        t.rate = trained.model.rates[k];
        t.std = trained.summary.stds(static_cast<Eigen::Index>(k));
        terms.push_back(std::move(t));
    }
    return terms;
}

std::vector<ComparisonRow> build_comparison(const DatasetManifest& manifest,
                                            const std::vector<TermEstimate>& learned) {
    std::vector<ComparisonRow> rows;
    if (manifest.has_true_model) {
        for (const TrueTerm& term : manifest.true_model.terms) {
            ComparisonRow row;
            row.kind = kind_name(term.kind);
            row.label = term.label();
            row.has_true = true;
            row.true_rate = term.rate;
            rows.push_back(std::move(row));
        }
    }
    for (const TermEstimate& t : learned) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const ComparisonRow& r) {
            return r.kind == kind_name(t.kind) && r.label == t.label;
        });
        if (it == rows.end()) {
            ComparisonRow row;
            row.kind = kind_name(t.kind);
            row.label = t.label;
            rows.push_back(std::move(row));
            it = rows.end() - 1;
        }
        it->has_learned = true;
        it->learned_rate = t.rate;
    }
    return rows;
}

}  // namespace

RunReport run_experiments(const PrimitiveSet& set, const Dataset& dataset,
                          const RunConfig& config) {
    if (config.replicates < 1)
        throw std::invalid_argument("replicate count must be at least one");
    if (!(config.test_fraction >= 0.0 && config.test_fraction <= 1.0))
        throw std::invalid_argument("test fraction must lie in [0, 1]");
    if (dataset.records.empty()) throw std::invalid_argument("dataset has no records");
    if (dataset.manifest.n_qubits != set.n_qubits())
        throw std::invalid_argument("dataset qubit count does not match the model space");

    std::vector<int> train_idx, test_idx;
    if (dataset.has_split_markers) {
        train_idx = split_indices(dataset, Split::Train);
        test_idx = split_indices(dataset, Split::Test);
    } else {
        std::tie(train_idx, test_idx) =
            interleaved_split(dataset.records.size(), config.test_fraction);
    }
    if (train_idx.empty()) throw std::invalid_argument("dataset has no training records");
    if (test_idx.empty()) throw std::invalid_argument("dataset has no held-out records");

    RunReport report;
    report.config = config;
    report.manifest = dataset.manifest;
    report.n_records = dataset.records.size();
    report.n_train = train_idx.size();
    report.n_test = test_idx.size();
    report.used_split_markers = dataset.has_split_markers;

    const TestSet tests = TestSet::from_dataset(dataset, test_idx);
    for (int r = 0; r < config.replicates; ++r) {
        SearchConfig search = config.search;
        search.seed =
            derive_seed(config.seed, {kTagReplicate, static_cast<std::uint64_t>(r)});
        ReplicateOutcome outcome;
        outcome.replicate = r;
        outcome.seed = search.seed;
        const auto start = std::chrono::steady_clock::now();
        outcome.result = run_search(set, dataset, train_idx, tests, search);
        outcome.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        outcome.best_terms = term_estimates(set, outcome.result.best);
        report.replicates.push_back(std::move(outcome));
    }

    report.best_replicate = 0;
    for (int r = 1; r < config.replicates; ++r)
        if (report.replicates[static_cast<std::size_t>(r)].result.best_report.fitness >
            report.replicates[static_cast<std::size_t>(report.best_replicate)]
                .result.best_report.fitness)
            report.best_replicate = r;

    std::size_t max_generations = 0;
    for (const ReplicateOutcome& o : report.replicates)
        max_generations = std::max(max_generations, o.result.trace.size());
    for (std::size_t g = 0; g < max_generations; ++g) {
        EnvelopePoint point;
        point.generation = static_cast<int>(g);
        double total = 0.0;
        for (const ReplicateOutcome& o : report.replicates) {
            if (g >= o.result.trace.size()) continue;
            const double f = o.result.trace[g].best_fitness;
            if (point.n_replicates == 0) {
                point.min_best = point.max_best = f;
            } else {
                point.min_best = std::min(point.min_best, f);
                point.max_best = std::max(point.max_best, f);
            }
            total += f;
            ++point.n_replicates;
        }
        point.mean_best = total / point.n_replicates;
        report.envelope.push_back(point);
    }

    report.comparison = build_comparison(
        report.manifest,
        report.replicates[static_cast<std::size_t>(report.best_replicate)].best_terms);
    return report;
}

namespace {

using jsonio::Json;

Json terms_json(const std::vector<TermEstimate>& terms) {
    Json arr = Json::array();
    for (const TermEstimate& t : terms) {
        Json j;
        j["kind"] = kind_name(t.kind);
        j["label"] = t.label;
        j["rate"] = t.rate;
        j["std"] = t.std;
        arr.push_back(std::move(j));
    }
    return arr;
}

Json best_json(const ReplicateOutcome& outcome) {
    Json best;
    best["model_id"] = outcome.result.best_report.model_id;
    best["fitness"] = outcome.result.best_report.fitness;
    best["rmse"] = outcome.result.best_report.rmse;
    best["n_experiments"] = outcome.result.best.n_experiments;
    best["converged"] = outcome.result.best.converged;
    best["truncated"] = outcome.result.best.truncated;
    best["terms"] = terms_json(outcome.best_terms);
    return best;
}

}  // namespace

std::string report_json(const RunReport& report) {
    Json j;
    j["format_version"] = 1;

    Json config;
    config["dataset"] = report.config.dataset_path;
    config["output_dir"] = report.config.output_dir;
    config["replicates"] = report.config.replicates;
    config["test_fraction"] = report.config.test_fraction;
    config["seed"] = report.config.seed;
    const SearchConfig& sc = report.config.search;
    Json search;
    search["population"] = sc.population;
    search["target_primitives"] = sc.target_primitives;
    search["p10"] = sc.p10;
    search["crossover_p"] = sc.crossover_p;
    search["beta"] = sc.beta;
    search["max_generations"] = sc.max_generations;
    search["fitness_threshold"] = sc.fitness_threshold;
    search["reduction_ratio"] = sc.reduction_ratio;
    const TrainConfig& tc = sc.training;
    Json training;
    training["particles"] = tc.n_particles;
    training["budget"] = tc.budget;
    training["sigma_stop"] = tc.sigma_stop;
    training["ess_fraction"] = tc.ess_fraction;
    training["lw_a"] = tc.lw_a;
    training["discrete_time"] = tc.discrete_time;
    Json prior;
    prior["kind"] = tc.prior.kind == PriorConfig::Kind::Uniform ? "uniform" : "gaussian";
    prior["coherent_min"] = tc.prior.coherent_min;
    prior["coherent_max"] = tc.prior.coherent_max;
    prior["dissipative_min"] = tc.prior.dissipative_min;
    prior["dissipative_max"] = tc.prior.dissipative_max;
    prior["mean"] = tc.prior.mean;
    prior["stddev"] = tc.prior.stddev;
    training["prior"] = std::move(prior);
    search["training"] = std::move(training);
    config["search"] = std::move(search);
    j["config"] = std::move(config);

    Json data;
    data["n_qubits"] = report.manifest.n_qubits;
    data["n_records"] = report.n_records;
    data["n_train"] = report.n_train;
    data["n_test"] = report.n_test;
    data["split_markers"] = report.used_split_markers;
    data["has_true_model"] = report.manifest.has_true_model;
    if (report.manifest.has_true_model)
        data["true_model"] = format_model_string(report.manifest.true_model);
    else
        data["true_model"] = nullptr;
    Json noise;
    noise["p"] = report.manifest.noise.p;
    noise["q"] = report.manifest.noise.q;
    data["noise"] = std::move(noise);
    data["mode"] = report.manifest.mode.to_string();
    data["generator_seed"] = report.manifest.seed;
    j["dataset"] = std::move(data);

    Json reps = Json::array();
    for (const ReplicateOutcome& outcome : report.replicates) {
        Json r;
        r["replicate"] = outcome.replicate;
        r["seed"] = outcome.seed;
        r["generations"] = outcome.result.generations_run;
        r["reached_threshold"] = outcome.result.reached_threshold;
        r["total_experiments"] = outcome.result.total_experiments;
        r["best"] = best_json(outcome);
        Json trace = Json::array();
        for (const TraceEntry& e : outcome.result.trace) {
            Json t;
            t["generation"] = e.generation;
            t["best_fitness"] = e.best_fitness;
            t["mean_fitness"] = e.mean_fitness;
            t["best_rmse"] = e.best_rmse;
            t["best_id"] = e.best_id;
            trace.push_back(std::move(t));
        }
        r["trace"] = std::move(trace);
        reps.push_back(std::move(r));
    }
    j["replicates"] = std::move(reps);
    j["best_replicate"] = report.best_replicate;

    Json envelope = Json::array();
    for (const EnvelopePoint& p : report.envelope) {
        Json e;
        e["generation"] = p.generation;
        e["replicates"] = p.n_replicates;
        e["mean_best"] = p.mean_best;
        e["min_best"] = p.min_best;
        e["max_best"] = p.max_best;
        envelope.push_back(std::move(e));
    }
    j["envelope"] = std::move(envelope);

    Json comparison = Json::array();
    for (const ComparisonRow& row : report.comparison) {
        Json c;
        c["kind"] = row.kind;
        c["label"] = row.label;
        c["true_rate"] = row.has_true ? Json(row.true_rate) : Json(nullptr);
        c["learned_rate"] = row.has_learned ? Json(row.learned_rate) : Json(nullptr);
        c["abs_difference"] = (row.has_true && row.has_learned)
                                  ? Json(std::abs(row.learned_rate - row.true_rate))
                                  : Json(nullptr);
        comparison.push_back(std::move(c));
    }
    j["comparison"] = std::move(comparison);

    return jsonio::dump(j);
}

RunReport parse_report_json(const std::string& text) {
    try {
        const Json j = Json::parse(text);
        if (j.at("format_version").get<int>() != 1)
            throw std::runtime_error("unsupported report format version");
        RunReport report;

        const Json& config = j.at("config");
        report.config.dataset_path = config.at("dataset").get<std::string>();
        report.config.output_dir = config.at("output_dir").get<std::string>();
        report.config.replicates = config.at("replicates").get<int>();
        report.config.test_fraction = config.at("test_fraction").get<double>();
        report.config.seed = config.at("seed").get<std::uint64_t>();
        const Json& search = config.at("search");
        SearchConfig& sc = report.config.search;
        sc.population = search.at("population").get<int>();
        sc.target_primitives = search.at("target_primitives").get<int>();
        sc.p10 = search.at("p10").get<double>();
        sc.crossover_p = search.at("crossover_p").get<double>();
        sc.beta = search.at("beta").get<double>();
        sc.max_generations = search.at("max_generations").get<int>();
        sc.fitness_threshold = search.at("fitness_threshold").get<double>();
        sc.reduction_ratio = search.at("reduction_ratio").get<double>();
        const Json& training = search.at("training");
        TrainConfig& tc = sc.training;
        tc.n_particles = training.at("particles").get<int>();
        tc.budget = training.at("budget").get<int>();
        tc.sigma_stop = training.at("sigma_stop").get<double>();
        tc.ess_fraction = training.at("ess_fraction").get<double>();
        tc.lw_a = training.at("lw_a").get<double>();
        tc.discrete_time = training.at("discrete_time").get<bool>();
        const Json& prior = training.at("prior");
        tc.prior.kind = prior.at("kind").get<std::string>() == "gaussian"
                            ? PriorConfig::Kind::Gaussian
                            : PriorConfig::Kind::Uniform;
        tc.prior.coherent_min = prior.at("coherent_min").get<double>();
        tc.prior.coherent_max = prior.at("coherent_max").get<double>();
        tc.prior.dissipative_min = prior.at("dissipative_min").get<double>();
        tc.prior.dissipative_max = prior.at("dissipative_max").get<double>();
        tc.prior.mean = prior.at("mean").get<double>();
        tc.prior.stddev = prior.at("stddev").get<double>();

        const Json& data = j.at("dataset");
        report.manifest.n_qubits = data.at("n_qubits").get<int>();
        report.n_records = data.at("n_records").get<std::size_t>();
        report.n_train = data.at("n_train").get<std::size_t>();
        report.n_test = data.at("n_test").get<std::size_t>();
        report.used_split_markers = data.at("split_markers").get<bool>();
        report.manifest.has_true_model = data.at("has_true_model").get<bool>();
        if (report.manifest.has_true_model)
            report.manifest.true_model =
                parse_model_string(data.at("true_model").get<std::string>());
        report.manifest.noise.p = data.at("noise").at("p").get<double>();
        report.manifest.noise.q = data.at("noise").at("q").get<double>();
        report.manifest.mode = DesignMode::parse(data.at("mode").get<std::string>());
        report.manifest.seed = data.at("generator_seed").get<std::uint64_t>();

        for (const Json& r : j.at("replicates")) {
            ReplicateOutcome outcome;
            outcome.replicate = r.at("replicate").get<int>();
            outcome.seed = r.at("seed").get<std::uint64_t>();
            outcome.result.generations_run = r.at("generations").get<int>();
            outcome.result.reached_threshold = r.at("reached_threshold").get<bool>();
            outcome.result.total_experiments =
                r.at("total_experiments").get<long long>();
            const Json& best = r.at("best");
            outcome.result.best_report.model_id = best.at("model_id").get<std::string>();
            outcome.result.best_report.fitness = best.at("fitness").get<double>();
            outcome.result.best_report.rmse = best.at("rmse").get<double>();
            outcome.result.best.n_experiments = best.at("n_experiments").get<int>();
            outcome.result.best.converged = best.at("converged").get<bool>();
            outcome.result.best.truncated = best.at("truncated").get<bool>();
            for (const Json& t : best.at("terms")) {
                TermEstimate term;
                term.kind = kind_from_name(t.at("kind").get<std::string>());
                term.label = t.at("label").get<std::string>();
                term.rate = t.at("rate").get<double>();
                term.std = t.at("std").get<double>();
                outcome.best_terms.push_back(std::move(term));
            }
            for (const Json& t : r.at("trace")) {
                TraceEntry entry;
                entry.generation = t.at("generation").get<int>();
                entry.best_fitness = t.at("best_fitness").get<double>();
                entry.mean_fitness = t.at("mean_fitness").get<double>();
                entry.best_rmse = t.at("best_rmse").get<double>();
                entry.best_id = t.at("best_id").get<std::string>();
                outcome.result.trace.push_back(std::move(entry));
            }
            report.replicates.push_back(std::move(outcome));
        }
        report.best_replicate = j.at("best_replicate").get<int>();

        for (const Json& e : j.at("envelope")) {
            EnvelopePoint point;
            point.generation = e.at("generation").get<int>();
            point.n_replicates = e.at("replicates").get<int>();
            point.mean_best = e.at("mean_best").get<double>();
            point.min_best = e.at("min_best").get<double>();
            point.max_best = e.at("max_best").get<double>();
            report.envelope.push_back(point);
        }
        for (const Json& c : j.at("comparison")) {
            ComparisonRow row;
            row.kind = c.at("kind").get<std::string>();
            row.label = c.at("label").get<std::string>();
            row.has_true = !c.at("true_rate").is_null();
            if (row.has_true) row.true_rate = c.at("true_rate").get<double>();
            row.has_learned = !c.at("learned_rate").is_null();
            if (row.has_learned) row.learned_rate = c.at("learned_rate").get<double>();
            report.comparison.push_back(std::move(row));
        }
        return report;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("report parse error: ") + e.what());
    }
}

std::string trace_csv(const RunReport& report) {
    std::string out = "replicate,generation,best_fitness,mean_fitness\n";
    for (const ReplicateOutcome& outcome : report.replicates) {
        for (const TraceEntry& e : outcome.result.trace) {
            out += std::to_string(outcome.replicate);
            out += ',';
            out += std::to_string(e.generation);
            out += ',';
            out += jsonio::format_real(e.best_fitness);
            out += ',';
            out += jsonio::format_real(e.mean_fitness);
            out += '\n';
        }
    }
    return out;
}

std::pair<std::string, std::string> write_run_artifacts(const RunReport& report) {
    namespace fs = std::filesystem;
    if (report.config.output_dir.empty())
        throw std::invalid_argument("output directory path is empty");
    fs::create_directories(report.config.output_dir);
    const std::string report_path =
        (fs::path(report.config.output_dir) / "report.json").string();
    const std::string trace_path =
        (fs::path(report.config.output_dir) / "trace.csv").string();
    auto write_file = [](const std::string& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("failed writing '" + path + "'");
    };
    write_file(report_path, report_json(report));
    write_file(trace_path, trace_csv(report));
    return {report_path, trace_path};
}

namespace {

std::string short_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string format_report_summary(const RunReport& report) {
    std::string out;
    char line[256];

    std::snprintf(line, sizeof(line), "dataset: %s (%d qubits, %zu records: %zu train / %zu held out)\n",
                  report.config.dataset_path.empty() ? "(unspecified)"
                                                     : report.config.dataset_path.c_str(),
                  report.manifest.n_qubits, report.n_records, report.n_train,
                  report.n_test);
    out += line;
    if (report.manifest.has_true_model)
        out += "true model: " + format_model_string(report.manifest.true_model) + "\n";
    else
        out += "true model: unknown\n";

    if (report.replicates.empty()) return out + "no replicates recorded\n";
    const ReplicateOutcome& best =
        report.replicates[static_cast<std::size_t>(report.best_replicate)];
    std::snprintf(line, sizeof(line),
                  "replicates: %zu; best is #%d after %d generations (%s)\n",
                  report.replicates.size(), best.replicate,
                  best.result.generations_run,
                  best.result.reached_threshold ? "threshold reached"
                                                : "generation cap hit");
    out += line;

    if (best.best_terms.empty() && report.comparison.empty()) {
        out += "best model: identity evolution (no primitives)\n";
    } else {
        out += "best model:\n";
        std::snprintf(line, sizeof(line), "  %-12s %-10s %-14s %-14s %s\n", "kind",
                      "label", "learned", "true", "|diff|");
        out += line;
        // rows from the comparison table when truth is known, else from the
        // learned terms alone
        std::vector<ComparisonRow> rows = report.comparison;
        if (rows.empty()) {
            for (const TermEstimate& t : best.best_terms) {
                ComparisonRow row;
                row.kind = kind_name(t.kind);
                row.label = t.label;
                row.has_learned = true;
                row.learned_rate = t.rate;
                rows.push_back(std::move(row));
            }
        }
        bool any_learned = false;
        for (const ComparisonRow& row : rows) {
            const std::string learned =
                row.has_learned ? short_real(row.learned_rate) : "absent";
            const std::string truth = row.has_true ? short_real(row.true_rate) : "unknown";
            const std::string diff = (row.has_true && row.has_learned)
                                         ? short_real(std::abs(row.learned_rate -
                                                               row.true_rate))
                                         : "unknown";
            std::snprintf(line, sizeof(line), "  %-12s %-10s %-14s %-14s %s\n",
                          row.kind.c_str(), row.label.c_str(), learned.c_str(),
                          truth.c_str(), diff.c_str());
            out += line;
            any_learned = any_learned || row.has_learned;
        }
        if (!any_learned) out += "  (identity evolution: no primitives learned)\n";
    }

    std::snprintf(line, sizeof(line), "final fitness: %s (prediction error %s)\n",
                  short_real(best.result.best_report.fitness).c_str(),
                  short_real(best.result.best_report.rmse).c_str());
    out += line;
    return out;
}

int run_exit_code(const RunReport& report) {
    for (const ReplicateOutcome& o : report.replicates)
        if (o.result.reached_threshold) return 0;
    return 4;
}

}  // namespace oqs
