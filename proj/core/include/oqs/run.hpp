#pragma once

// Orchestration of full characterization runs: named benchmark presets,
// replicated genetic searches on derived seeds, cross-replicate fitness
// envelopes, and deterministic report artifacts. Report files contain only
// values that are a pure function of the config, data, and seed — identical
// inputs produce byte-identical files; wall-clock accounting stays on stdout.

#include <cstdint>
#include <string>
#include <vector>

#include "oqs/dataset.hpp"
#include "oqs/evaluation.hpp"
#include "oqs/search.hpp"

namespace oqs {

/// A named benchmark preset: the data-generating model plus design and
/// readout-noise settings.
struct Scenario {
    std::string name;
    std::string model;  // model string, e.g. "0.5*C[XI],1.3*C[ZZ],0.2*D[-+],0.3*D[YX]"
    DesignMode mode;
    NoiseConfig noise;
    std::string summary;  // one-line description for --help and listings
};

/// Built-in presets: "bench-a", "local", "noisy", "approx".
const std::vector<Scenario>& scenarios();

/// Preset by name; nullptr when unknown.
const Scenario* find_scenario(const std::string& name);

/// Full generation settings for a preset (the default 500-point log grid,
/// three designs per time, 50 training shots, high-precision held-out shots).
GenerateConfig scenario_config(const std::string& name, std::uint64_t seed);

/// Particle count full runs train with unless overridden (0 restores the
/// per-dimension schedule). The schedule favors speed; at 1000 particles a
/// 4-rate cloud collapses during the first few sharp weight updates and
/// settles a few percent off with understated uncertainties. 4000 keeps the
/// posterior width consistent with the consumed records' Laplace width on the
/// two-qubit benchmarks.
inline constexpr int kRunDefaultParticles = 4000;

/// SearchConfig preloaded with the run-layer training defaults above.
SearchConfig default_search_config();

struct RunConfig {
    std::string dataset_path;  // recorded in the report for provenance
    std::string output_dir;
    SearchConfig search = default_search_config();  // replicate seeds derive from `seed`
    int replicates = 5;
    double test_fraction = 0.2;  // fallback split when records carry no markers
    std::uint64_t seed = 1;
};

/// Learned rate of one primitive, with its posterior standard deviation.
struct TermEstimate {
    Kind kind = Kind::Coherent;
    std::string label;
    double rate = 0.0;
    double std = 0.0;
};

struct ReplicateOutcome {
    int replicate = 0;
    std::uint64_t seed = 0;  // derived seed handed to run_search
    SearchResult result;
    std::vector<TermEstimate> best_terms;  // aligned with result.best.model.rates
    double wall_seconds = 0.0;  // stdout accounting only, never written to files
};

/// Best-fitness statistics at one generation across the replicates that
/// reached it.
struct EnvelopePoint {
    int generation = 0;
    int n_replicates = 0;
    double mean_best = 0.0;
    double min_best = 0.0;
    double max_best = 0.0;
};

/// One line of the learned-vs-true table: a primitive present in the best
/// model, the manifest's true model, or both.
struct ComparisonRow {
    std::string kind;  // "coherent" or "dissipative"
    std::string label;
    bool has_true = false;
    double true_rate = 0.0;
    bool has_learned = false;
    double learned_rate = 0.0;
};

struct RunReport {
    RunConfig config;
    DatasetManifest manifest;
    std::size_t n_records = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    bool used_split_markers = false;
    std::vector<ReplicateOutcome> replicates;
    int best_replicate = 0;  // highest final fitness, ties to the lower index
    std::vector<EnvelopePoint> envelope;
    std::vector<ComparisonRow> comparison;  // empty without manifest truth
};

/// Executes config.replicates independent searches with derived seeds and
/// assembles the cross-replicate report. The split comes from the records'
/// markers when present, else from the interleaved fallback at
/// config.test_fraction.
RunReport run_experiments(const PrimitiveSet& set, const Dataset& dataset,
                          const RunConfig& config);

/// Deterministic JSON serialization (reals as 17-significant-digit decimals;
/// wall-clock excluded).
std::string report_json(const RunReport& report);

/// Parses a report_json string back into the fields the report printer needs.
RunReport parse_report_json(const std::string& text);

/// Fitness trace as CSV with header "replicate,generation,best_fitness,mean_fitness".
std::string trace_csv(const RunReport& report);

/// Writes report.json and trace.csv into config.output_dir (created if
/// missing); returns the two paths in that order.
std::pair<std::string, std::string> write_run_artifacts(const RunReport& report);

/// Human-readable summary of a report: the learned-vs-true table and final
/// fitness, as printed by the report command.
std::string format_report_summary(const RunReport& report);

/// Process exit status for a finished run: 0 when some replicate reached the
/// fitness threshold, 4 (non-convergence) otherwise.
int run_exit_code(const RunReport& report);

}  // namespace oqs
