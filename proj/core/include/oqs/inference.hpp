#pragma once

// Sequential Monte Carlo estimation of a fixed model's rate vector from
// experiment records, with adaptive experiment selection: the next requested
// evolution time is the inverse of the posterior dispersion (clamped to the
// data's time range), so the schedule sharpens as the posterior contracts.

#include <stdexcept>
#include <utility>
#include <vector>

#include "oqs/dataset.hpp"
#include "oqs/primitives.hpp"
#include "oqs/ptm.hpp"
#include "oqs/rng.hpp"
#include "oqs/types.hpp"

namespace oqs {

inline constexpr double kProbabilityFloor = 1e-12;  // likelihood floor per outcome

/// Weighted samples over a model's rate vector: row k of `particles` is one
/// candidate rate vector with weight `weights(k)`. Weights stay normalized,
/// and dissipative components stay non-negative through every operation.
struct ParticleCloud {
    RealMatrix particles;  // N x d
    RealVector weights;    // N
};

struct PosteriorSummary {
    RealVector mean;  // length d
    RealVector stds;  // per-rate standard deviations
    double sigma = 0.0;  // total dispersion sqrt(sum_k w_k |x_k - mean|^2)
};

/// Rates set to the posterior mean, with the dispersion and consumption log.
struct TrainedModel {
    Model model;
    PosteriorSummary summary;
    int n_experiments = 0;
    bool converged = false;  // dispersion fell below the stop threshold
    bool truncated = false;  // the source ran out of records first
};

struct PriorConfig {
    enum class Kind { Uniform, Gaussian };
    Kind kind = Kind::Uniform;
    // uniform bounds per rate kind
    double coherent_min = -2.0;
    double coherent_max = 2.0;
    double dissipative_min = 0.0;
    double dissipative_max = 2.0;
    // gaussian: shared center/width, truncated at zero for dissipative rates
    double mean = 0.0;
    double stddev = 1.0;
};

struct TrainConfig {
    PriorConfig prior;
    int n_particles = 0;  // 0 -> particle_schedule(d)
    int budget = 300;
    double sigma_stop = 1e-3;
    double ess_fraction = 0.5;  // resample when ESS < fraction * N
    double lw_a = 0.98;         // Liu-West shrinkage
    bool discrete_time = false; // round requested times to the nearest 0.1
};

/// Thrown when a weight update collapses every particle to zero mass; the
/// training loop catches it and reinitializes the cloud from the prior.
struct DegeneratePosterior : std::runtime_error {
    DegeneratePosterior() : std::runtime_error("degenerate posterior: all weights vanished") {}
};

/// Particle budget by rate count: 1000 up to four rates, then 100 fewer per
/// extra rate with a floor of 200.
int particle_schedule(int n_rates);

/// i.i.d. draws from the prior with uniform weights. Throws on fewer than two
/// particles or prior bounds that violate the dissipative sign constraint.
ParticleCloud init_prior(const PrimitiveSet& set, const Chromosome& chromosome,
                         const PriorConfig& config, int n_particles, Rng& rng);

PosteriorSummary summarize(const ParticleCloud& cloud);

double effective_sample_size(const RealVector& weights);

/// Per-record log-likelihood evaluator for one model structure. Caches the
/// record's state coefficients and measurement rows once, then evaluates many
/// rate vectors against them without allocating.
class ModelLikelihood {
  public:
    ModelLikelihood(const PrimitiveSet& set, const Chromosome& chromosome);

    /// Validates the record against the model dimension and shots >= 1.
    void set_record(const ExperimentRecord& record);

    /// Log-probability of the record's exact count vector at these rates:
    /// the multinomial coefficient plus sum_j c_j log(max(q_j, floor)). The
    /// coefficient is constant per record, so weight ratios never see it.
    double log_likelihood(const RealVector& rates);

    int n_rates() const { return engine_.n_terms(); }
    int n_qubits() const { return engine_.n_qubits(); }

  private:
    ptm::Engine engine_;
    RealMatrix l_;
    RealVector r0_, q_;
    RealMatrix meas_;
    std::vector<std::pair<int, int>> counts_;  // (outcome index, count)
    double time_ = 0.0;
    double log_coeff_ = 0.0;  // log multinomial coefficient of the counts
    bool has_record_ = false;
};

/// One likelihood evaluation per rate vector; convenience form of the above.
double record_likelihood(const PrimitiveSet& set, const Chromosome& chromosome,
                         const RealVector& rates, const ExperimentRecord& record);

/// Reweights the cloud by the record's likelihood (max-shifted for stability)
/// and renormalizes. Particles are untouched. Throws DegeneratePosterior when
/// the total mass vanishes.
void bayes_update(ParticleCloud& cloud, ModelLikelihood& likelihood);

/// Liu-West refresh when the effective sample size drops below
/// ess_threshold_fraction * N: ancestors drawn by weight, shrunk toward the
/// mean by lw_a, jittered with covariance (1 - lw_a^2) * cloud covariance,
/// dissipative components projected to >= 0, weights reset uniform. A
/// singular covariance falls back to ancestor copies with tiny isotropic
/// jitter. Returns true when a resample happened.
bool resample(ParticleCloud& cloud, double ess_threshold_fraction, double lw_a,
              const std::vector<Kind>& kinds, Rng& rng);

/// Next evolution time to request: clamp(1/sigma, t_min, t_max); sigma = 0
/// maps to t_max. Discrete mode rounds the clamped value to the nearest 0.1.
double pgh_time(const PosteriorSummary& summary, double t_min, double t_max,
                bool discrete = false);

/// Full training loop: request the record nearest the suggested time, update,
/// conditionally resample — until the budget is spent or the dispersion falls
/// below sigma_stop. An exhausted source sets the truncation flag; a
/// degenerate posterior restarts the cloud from the prior.
TrainedModel train(const PrimitiveSet& set, const Chromosome& chromosome,
                   ExperimentSource& source, const TrainConfig& config, Rng& rng);

}  // namespace oqs
