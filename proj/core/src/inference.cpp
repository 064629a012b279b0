#include "oqs/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "oqs/labels.hpp"
#include "oqs/state.hpp"

namespace oqs {

int particle_schedule(int n_rates) {
    if (n_rates <= 4) return 1000;
    return std::max(200, 1000 - 100 * (n_rates - 4));
}

namespace {

void check_prior(const PriorConfig& config) {
    if (config.kind == PriorConfig::Kind::Uniform) {
        if (!(config.coherent_max > config.coherent_min) ||
            !(config.dissipative_max > config.dissipative_min))
            throw std::invalid_argument("invalid prior: empty bounds");
        if (config.dissipative_min < 0.0)
            throw std::invalid_argument(
                "invalid prior: dissipative bounds must be non-negative");
    } else {
        if (!(config.stddev > 0.0))
            throw std::invalid_argument("invalid prior: stddev must be positive");
        if (config.mean + 8.0 * config.stddev < 0.0)
            throw std::invalid_argument(
                "invalid prior: gaussian mass is entirely negative");
    }
}

double draw_rate(const PriorConfig& config, Kind kind, Rng& rng) {
    if (config.kind == PriorConfig::Kind::Uniform) {
        if (kind == Kind::Coherent)
            return std::uniform_real_distribution<double>(config.coherent_min,
                                                          config.coherent_max)(rng);
        return std::uniform_real_distribution<double>(config.dissipative_min,
                                                      config.dissipative_max)(rng);
    }
    std::normal_distribution<double> gauss(config.mean, config.stddev);
    if (kind == Kind::Coherent) return gauss(rng);
    for (int tries = 0; tries < 100000; ++tries) {  // truncate at zero
        const double v = gauss(rng);
        if (v >= 0.0) return v;
    }
    throw std::invalid_argument("invalid prior: truncation never succeeded");
}

}  // namespace

ParticleCloud init_prior(const PrimitiveSet& set, const Chromosome& chromosome,
                         const PriorConfig& config, int n_particles, Rng& rng) {
    if (n_particles < 2) throw std::invalid_argument("need at least two particles");
    check_prior(config);
    const std::vector<Kind> kinds = rate_kinds(set, chromosome);
    const auto d = static_cast<Eigen::Index>(kinds.size());
    ParticleCloud cloud;
    cloud.particles.resize(n_particles, d);
    for (Eigen::Index k = 0; k < n_particles; ++k)
        for (Eigen::Index j = 0; j < d; ++j)
            cloud.particles(k, j) = draw_rate(config, kinds[static_cast<std::size_t>(j)], rng);
    cloud.weights = RealVector::Constant(n_particles, 1.0 / n_particles);
    return cloud;
}

PosteriorSummary summarize(const ParticleCloud& cloud) {
    PosteriorSummary s;
    const auto d = cloud.particles.cols();
    s.mean = cloud.particles.transpose() * cloud.weights;
    s.stds = RealVector::Zero(d);
    double total = 0.0;
    for (Eigen::Index k = 0; k < cloud.particles.rows(); ++k) {
        const double w = cloud.weights(k);
        for (Eigen::Index j = 0; j < d; ++j) {
            const double dev = cloud.particles(k, j) - s.mean(j);
            s.stds(j) += w * dev * dev;
            total += w * dev * dev;
        }
    }
    s.stds = s.stds.cwiseSqrt();
    s.sigma = std::sqrt(total);
    return s;
}

double effective_sample_size(const RealVector& weights) {
    const double denom = weights.squaredNorm();
    if (!(denom > 0.0)) throw std::invalid_argument("weights carry no mass");
    return 1.0 / denom;
}

// ---------------------------------------------------------------------------
// likelihood
// ---------------------------------------------------------------------------

ModelLikelihood::ModelLikelihood(const PrimitiveSet& set, const Chromosome& chromosome)
    : engine_(model_engine(set, chromosome)) {}

void ModelLikelihood::set_record(const ExperimentRecord& record) {
    const int n = engine_.n_qubits();
    if (record.n_qubits() != n)
        throw std::invalid_argument("record dimension does not match the model");
    if (record.shots < 1) throw std::invalid_argument("record carries no shots");
    const DensityMatrix rho0 = DensityMatrix::pure(record.state);
    r0_ = ptm::state_coeffs(rho0.matrix(), n);
    meas_ = ptm::measurement_rows(record.unitary, n);
    counts_.clear();
    log_coeff_ = std::lgamma(record.shots + 1.0);
    for (const auto& [bits, c] : record.counts) {
        counts_.emplace_back(bitstring_index(bits), c);
        log_coeff_ -= std::lgamma(c + 1.0);
    }
    time_ = record.time;
    has_record_ = true;
}

double ModelLikelihood::log_likelihood(const RealVector& rates) {
    if (!has_record_) throw std::logic_error("no record set");
    if (rates.size() != engine_.n_terms())
        throw std::invalid_argument("rate vector length does not match the model");
    engine_.assemble(rates.data(), l_);
    engine_.probabilities(l_, time_, r0_, meas_, q_);
    double ll = log_coeff_;
    for (const auto& [idx, c] : counts_)
        ll += c * std::log(std::max(q_(idx), kProbabilityFloor));
    return ll;
}

double record_likelihood(const PrimitiveSet& set, const Chromosome& chromosome,
                         const RealVector& rates, const ExperimentRecord& record) {
    ModelLikelihood lik(set, chromosome);
    lik.set_record(record);
    return lik.log_likelihood(rates);
}

// ---------------------------------------------------------------------------
// weight update and refresh
// ---------------------------------------------------------------------------

void bayes_update(ParticleCloud& cloud, ModelLikelihood& likelihood) {
    const auto n = cloud.particles.rows();
    RealVector loglik(n);
    RealVector rates(cloud.particles.cols());
    for (Eigen::Index k = 0; k < n; ++k) {
        rates = cloud.particles.row(k).transpose();
        loglik(k) = likelihood.log_likelihood(rates);
    }
    const double shift = loglik.maxCoeff();
    for (Eigen::Index k = 0; k < n; ++k)
        cloud.weights(k) *= std::exp(loglik(k) - shift);
    const double total = cloud.weights.sum();
    if (!(total > 0.0) || !std::isfinite(total)) throw DegeneratePosterior();
    cloud.weights /= total;
}

bool resample(ParticleCloud& cloud, double ess_threshold_fraction, double lw_a,
              const std::vector<Kind>& kinds, Rng& rng) {
    if (!(ess_threshold_fraction > 0.0) || !(ess_threshold_fraction < 1.0))
        throw std::invalid_argument("ESS threshold fraction must lie in (0, 1)");
    if (!(lw_a > 0.0) || !(lw_a < 1.0))
        throw std::invalid_argument("shrinkage factor must lie in (0, 1)");
    const auto n = cloud.particles.rows();
    const auto d = cloud.particles.cols();
    if (static_cast<Eigen::Index>(kinds.size()) != d)
        throw std::invalid_argument("kind list misaligned with rate dimension");
    if (effective_sample_size(cloud.weights) >= ess_threshold_fraction * n) return false;

    const PosteriorSummary summary = summarize(cloud);
    RealMatrix cov = RealMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < n; ++k) {
        const RealVector dev = cloud.particles.row(k).transpose() - summary.mean;
        cov.noalias() += cloud.weights(k) * dev * dev.transpose();
    }
    cov *= (1.0 - lw_a * lw_a);

    Eigen::LLT<RealMatrix> llt(cov);
    const bool have_chol = (llt.info() == Eigen::Success);

    std::discrete_distribution<Eigen::Index> ancestor(cloud.weights.data(),
                                                      cloud.weights.data() + n);
    std::normal_distribution<double> gauss;
    RealMatrix offspring(n, d);
    RealVector z(d);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index a = ancestor(rng);
        RealVector x =
            lw_a * cloud.particles.row(a).transpose() + (1.0 - lw_a) * summary.mean;
        for (Eigen::Index j = 0; j < d; ++j) z(j) = gauss(rng);
        if (have_chol)
            x += llt.matrixL() * z;
        else
            x += 1e-9 * z;  // covariance collapsed: keep ancestors, barely perturbed
        for (Eigen::Index j = 0; j < d; ++j)
            if (kinds[static_cast<std::size_t>(j)] == Kind::Dissipative && x(j) < 0.0)
                x(j) = 0.0;
        offspring.row(k) = x.transpose();
    }
    cloud.particles = std::move(offspring);
    cloud.weights.setConstant(1.0 / static_cast<double>(n));
    return true;
}

double pgh_time(const PosteriorSummary& summary, double t_min, double t_max,
                bool discrete) {
    if (!(t_min <= t_max)) throw std::invalid_argument("empty time range");
    double t = (summary.sigma > 0.0) ? 1.0 / summary.sigma
                                     : std::numeric_limits<double>::infinity();
    t = std::clamp(t, t_min, t_max);
    if (discrete) t = std::round(t * 10.0) / 10.0;
    return t;
}

// ---------------------------------------------------------------------------
// training loop
// ---------------------------------------------------------------------------

TrainedModel train(const PrimitiveSet& set, const Chromosome& chromosome,
                   ExperimentSource& source, const TrainConfig& config, Rng& rng) {
    if (config.budget < 1) throw std::invalid_argument("budget must be positive");
    TrainedModel out;
    const int d = chromosome.popcount();
    if (d == 0) {  // nothing to infer
        out.model.chromosome = chromosome;
        out.summary.mean = RealVector::Zero(0);
        out.summary.stds = RealVector::Zero(0);
        out.converged = true;
        return out;
    }

    const int n_particles =
        (config.n_particles > 0) ? config.n_particles : particle_schedule(d);
    const std::vector<Kind> kinds = rate_kinds(set, chromosome);
    ParticleCloud cloud = init_prior(set, chromosome, config.prior, n_particles, rng);
    ModelLikelihood likelihood(set, chromosome);
    PosteriorSummary summary = summarize(cloud);

    if (source.remaining() == 0) {
        out.truncated = true;
    } else {
        const double t_min = source.min_time();
        const double t_max = source.max_time();
        while (out.n_experiments < config.budget && summary.sigma >= config.sigma_stop) {
            const double t = pgh_time(summary, t_min, t_max, config.discrete_time);
            const ExperimentRecord* record = source.serve(t);
            if (record == nullptr) {
                out.truncated = true;
                break;
            }
            likelihood.set_record(*record);
            try {
                bayes_update(cloud, likelihood);
            } catch (const DegeneratePosterior&) {
                cloud = init_prior(set, chromosome, config.prior, n_particles, rng);
            }
            resample(cloud, config.ess_fraction, config.lw_a, kinds, rng);
            ++out.n_experiments;
            summary = summarize(cloud);
        }
    }

    out.summary = summary;
    out.converged = summary.sigma < config.sigma_stop;
    std::vector<double> rates(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) rates[static_cast<std::size_t>(j)] = summary.mean(j);
    out.model = decode(set, chromosome, rates);
    return out;
}

}  // namespace oqs
