// Command-line front end: `generate` simulates a dataset from a true model
// or a named preset, `run` executes replicated characterization searches and
// writes report.json / trace.csv, `report` pretty-prints a saved report.
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 non-convergence (generation cap hit below the fitness threshold; the
// report is still written).

#include <cstdio>
#include <cstdint>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "oqs/modelspec.hpp"
#include "oqs/run.hpp"

namespace {

struct GenerateArgs {
    std::string scenario;
    std::string model;
    std::string out;
    std::string noise;
    std::string mode;
    std::uint64_t seed = 1;
};

struct RunArgs {
    std::string data;
    std::string out;
    int replicates = 5;
    int target_primitives = 7;
    int population = 20;
    int particles = oqs::kRunDefaultParticles;  // 0 restores the per-dimension schedule
    int max_generations = 20;
    double threshold = 180.0;
    std::uint64_t seed = 1;
};

oqs::NoiseConfig parse_noise_arg(const std::string& text) {
    oqs::NoiseConfig noise;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &noise.p, &noise.q, &tail) != 2)
        throw std::invalid_argument("--noise expects two probabilities 'p,q'");
    if (!(noise.p >= 0.0 && noise.p <= 1.0 && noise.q >= 0.0 && noise.q <= 1.0))
        throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    return noise;
}

int cmd_generate(const GenerateArgs& args) {
    if (args.scenario.empty() == args.model.empty())
        throw std::invalid_argument("give exactly one of --scenario or --model");

    oqs::GenerateConfig config;
    if (!args.scenario.empty()) {
        config = oqs::scenario_config(args.scenario, args.seed);
    } else {
        config.model = oqs::parse_model_string(args.model);
        config.seed = args.seed;
    }
    if (!args.noise.empty()) config.noise = parse_noise_arg(args.noise);
    if (!args.mode.empty()) config.mode = oqs::DesignMode::parse(args.mode);

    const oqs::Dataset dataset = oqs::generate_dataset(config);
    oqs::save_dataset(dataset, args.out);

    std::size_t n_train = 0;
    for (const oqs::ExperimentRecord& r : dataset.records)
        if (r.split == oqs::Split::Train) ++n_train;
    std::printf("wrote %zu records (%zu train / %zu held out) to %s\n",
                dataset.records.size(), n_train, dataset.records.size() - n_train,
                args.out.c_str());
    std::printf("model: %s (%d qubits)\n",
                oqs::format_model_string(dataset.manifest.true_model).c_str(),
                dataset.manifest.n_qubits);
    std::printf("mode: %s; noise: p=%g, q=%g; seed: %llu\n",
                dataset.manifest.mode.to_string().c_str(), dataset.manifest.noise.p,
                dataset.manifest.noise.q,
                static_cast<unsigned long long>(dataset.manifest.seed));
    return 0;
}

int cmd_run(const RunArgs& args) {
    const oqs::Dataset dataset = oqs::load_dataset(args.data);

    oqs::RunConfig config;
    config.dataset_path = args.data;
    config.output_dir = args.out;
    config.replicates = args.replicates;
    config.seed = args.seed;
    config.search.population = args.population;
    config.search.target_primitives = args.target_primitives;
    config.search.max_generations = args.max_generations;
    config.search.fitness_threshold = args.threshold;
    config.search.training.n_particles = args.particles;

    const oqs::PrimitiveSet set(dataset.manifest.n_qubits);
    const oqs::RunReport report = oqs::run_experiments(set, dataset, config);
    const auto [report_path, trace_path] = oqs::write_run_artifacts(report);

    double total_wall = 0.0;
    for (const oqs::ReplicateOutcome& o : report.replicates) {
        std::printf(
            "replicate %d: %d generations, fitness %.6g (prediction error %.3g), "
            "%lld experiments, %.1f s%s\n",
            o.replicate, o.result.generations_run, o.result.best_report.fitness,
            o.result.best_report.rmse, o.result.total_experiments, o.wall_seconds,
            o.result.reached_threshold ? ", threshold reached" : "");
        total_wall += o.wall_seconds;
    }
    std::printf("total wall time: %.1f s\n", total_wall);
    std::printf("wrote %s\n", report_path.c_str());
    std::printf("wrote %s\n", trace_path.c_str());

    const int code = oqs::run_exit_code(report);
    if (code != 0)
        std::printf("no replicate reached the fitness threshold %.6g\n",
                    report.config.search.fitness_threshold);
    return code;
}

int cmd_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open report '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const oqs::RunReport report = oqs::parse_report_json(buffer.str());
    std::fputs(oqs::format_report_summary(report).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"characterize open-quantum-system dynamics from measurement data"};
    app.require_subcommand(1);
    {
        std::string presets = "presets:";
        for (const oqs::Scenario& s : oqs::scenarios())
            presets += "\n  " + s.name + ": " + s.model + " — " + s.summary;
        app.footer(presets);
    }

    GenerateArgs gen_args;
    CLI::App* gen = app.add_subcommand("generate", "simulate a dataset from a true model");
    gen->add_option("--scenario", gen_args.scenario,
                    "named preset: bench-a, local, noisy, approx");
    gen->add_option("--model", gen_args.model,
                    "model string, e.g. 0.5*C[XI],1.3*C[ZZ],0.2*D[-+]");
    gen->add_option("--out", gen_args.out, "output dataset path")->required();
    gen->add_option("--noise", gen_args.noise, "readout flip probabilities 'p,q'");
    gen->add_option("--mode", gen_args.mode, "design mode: arbitrary | local | mixed:<f>");
    gen->add_option("--seed", gen_args.seed, "rng seed");

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "search for the model behind a dataset");
    run->add_option("--data", run_args.data, "dataset path")->required();
    run->add_option("--out", run_args.out, "output directory for report files")
        ->required();
    run->add_option("--replicates", run_args.replicates, "independent searches");
    run->add_option("--target-primitives", run_args.target_primitives,
                    "expected model size steering mutation");
    run->add_option("--population", run_args.population, "models per generation");
    run->add_option("--particles", run_args.particles,
                    "posterior samples per model (0: size-based schedule)");
    run->add_option("--max-generations", run_args.max_generations, "generation cap");
    run->add_option("--threshold", run_args.threshold, "stop once best fitness reaches this");
    run->add_option("--seed", run_args.seed, "rng seed");

    std::string report_path;
    CLI::App* report = app.add_subcommand("report", "print a saved report");
    report->add_option("path", report_path, "path to report.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_args);
        if (run->parsed()) return cmd_run(run_args);
        return cmd_report(report_path);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
