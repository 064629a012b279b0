#pragma once

// Measurement datasets: generation from a known model, JSON-lines
// persistence, and the serving interface used by the learners.
//
// File layout: line 1 is a manifest object; every further line is one
// experiment record. All reals are written with 17 significant digits so
// values survive a save/load round trip bit-for-bit, and generation is
// deterministic given the config (same config => identical bytes).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oqs/evolve.hpp"
#include "oqs/rng.hpp"
#include "oqs/types.hpp"

namespace oqs {

// ---------------------------------------------------------------------------
// true models (may contain weighted-sum operators the search grammar cannot)
// ---------------------------------------------------------------------------

/// One generator term of the simulated system. The operator is a weighted
/// sum of factor labels, e.g. {(0.3, "YX"), (0.7, "ZI")}; most terms have a
/// single component with weight 1.
struct TrueTerm {
    Kind kind = Kind::Coherent;
    double rate = 0.0;
    std::vector<std::pair<double, std::string>> ops;

    /// Canonical display form: "YX" for a single unit-weight component,
    /// otherwise "0.3*YX+0.7*ZI".
    std::string label() const;

    /// Weighted sum of the component label matrices.
    Matrix op_matrix() const;

    int n_qubits() const;
};

struct TrueModel {
    std::vector<TrueTerm> terms;

    int n_qubits() const;  // inferred from the terms; throws if inconsistent
    std::vector<GeneratorTerm> generator_terms() const;
};

// ---------------------------------------------------------------------------
// records
// ---------------------------------------------------------------------------

/// Classical readout error applied independently per shot and per bit:
/// p = P(read 1 | bit 0), q = P(read 0 | bit 1).
struct NoiseConfig {
    double p = 0.0;
    double q = 0.0;
};

/// How measurement designs are drawn: fully random state+basis, per-qubit
/// product designs, or a mix with the given fraction of local designs.
struct DesignMode {
    enum class Type { Arbitrary, Local, Mixed };
    Type type = Type::Arbitrary;
    double local_fraction = 0.0;  // used by Mixed only

    static DesignMode parse(const std::string& text);  // "arbitrary" | "local" | "mixed:<f>"
    std::string to_string() const;
};

enum class Split { Train, Test };

/// One experiment: prepared pure state, evolution time, basis-change unitary
/// applied before computational readout, and the observed outcome counts.
struct ExperimentRecord {
    std::string id;
    Split split = Split::Train;
    Vector state;    // 2^n amplitudes, qubit 0 = most significant bit
    Matrix unitary;  // 2^n x 2^n basis change
    bool local_design = false;
    std::vector<Matrix> local_factors;  // per-qubit 2x2 factors when local_design
    double time = 0.0;
    int shots = 0;
    std::map<std::string, int> counts;  // outcome bitstring -> count, zeros omitted

    int n_qubits() const;
};

struct DatasetManifest {
    int format_version = 1;
    int n_qubits = 0;
    bool has_true_model = false;
    TrueModel true_model;  // valid when has_true_model
    NoiseConfig noise;
    DesignMode mode;
    std::uint64_t seed = 0;
};

struct Dataset {
    DatasetManifest manifest;
    std::vector<ExperimentRecord> records;
    /// True when records carried explicit train/test markers (always set by
    /// the generator); data without markers gets the interleaved fallback.
    bool has_split_markers = false;
};

// ---------------------------------------------------------------------------
// generation
// ---------------------------------------------------------------------------

struct GenerateConfig {
    TrueModel model;
    int n_times = 500;
    double t_min = 0.01;
    double t_max = 35.0;
    bool log_spacing = true;
    int designs_per_time = 3;
    int shots = 50;         // per training record
    int test_shots = 65536; // per held-out record
    double test_fraction = 0.2;
    DesignMode mode;
    NoiseConfig noise;
    std::uint64_t seed = 1;
};

/// The time grid used by generation: n points spanning [t_min, t_max],
/// logarithmically or linearly spaced (a single point sits at t_min).
std::vector<double> time_grid(int n, double t_min, double t_max, bool log_spacing);

/// A prepared state and readout basis (with per-qubit factors when local).
struct Design {
    Vector state;
    Matrix unitary;
    bool local = false;
    std::vector<Matrix> factors;
};

Design sample_design(const DesignMode& mode, int n_qubits, Rng& rng);

/// Draws `shots` outcomes from the model evolved to time t under the given
/// design. Returns outcome counts keyed by bitstring (zeros omitted).
std::map<std::string, int> simulate_counts(const Superoperator& liouvillian,
                                           const Design& design, double time, int shots,
                                           Rng& rng);

/// Per-shot classical bit flips: every counted outcome is redistributed over
/// the corrupted outcomes it can produce. Total count is preserved.
std::map<std::string, int> apply_readout_noise(const std::map<std::string, int>& counts,
                                               const NoiseConfig& noise, int n_qubits,
                                               Rng& rng);

Dataset generate_dataset(const GenerateConfig& config);

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

void save_dataset(const Dataset& dataset, const std::string& path);

/// Parses and validates a dataset file. Malformed input throws
/// std::runtime_error naming the offending line.
Dataset load_dataset(const std::string& path);

// ---------------------------------------------------------------------------
// serving
// ---------------------------------------------------------------------------

/// What a learner sees: records handed out one at a time, nearest to the
/// requested time, never repeated.
class ExperimentSource {
  public:
    virtual ~ExperimentSource() = default;
    virtual const ExperimentRecord* serve(double target_time) = 0;  // nullptr when exhausted
    virtual double min_time() const = 0;
    virtual double max_time() const = 0;
    virtual std::size_t remaining() const = 0;
};

/// Serves a fixed subset of a dataset's records. Each request returns an
/// unused record whose time is closest to the target, ties broken uniformly
/// at random; exhausted sessions return nullptr.
class ServingSession final : public ExperimentSource {
  public:
    ServingSession(const Dataset& dataset, std::vector<int> record_indices,
                   std::uint64_t seed);

    const ExperimentRecord* serve(double target_time) override;
    double min_time() const override;  // throws on an empty session
    double max_time() const override;
    std::size_t remaining() const override { return remaining_; }

  private:
    const Dataset* dataset_;
    std::vector<int> order_;   // record indices sorted by time
    std::vector<double> times_;
    std::vector<char> used_;
    std::size_t remaining_ = 0;
    Rng rng_;
};

/// Indices of records carrying the given split marker.
std::vector<int> split_indices(const Dataset& dataset, Split split);

/// Deterministic fallback for data without split markers: every fifth record
/// (by position) is held out for scoring, the rest train.
std::pair<std::vector<int>, std::vector<int>> interleaved_split(std::size_t n_records);

/// Same fallback at an arbitrary held-out fraction, spread evenly by position
/// (record i is held out when floor((i+1)f) > floor(if)); exactly
/// floor(n * f) records are held out. Throws on f outside [0, 1].
std::pair<std::vector<int>, std::vector<int>> interleaved_split(std::size_t n_records,
                                                                double test_fraction);

}  // namespace oqs
