// Micro-benchmarks for the numerical kernels that dominate a characterization
// run: propagator exponentials, generator assembly, the per-particle
// likelihood, the per-experiment posterior update, resampling, held-out
// scoring, and the genetic step.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "oqs/dataset.hpp"
#include "oqs/evaluation.hpp"
#include "oqs/inference.hpp"
#include "oqs/primitives.hpp"
#include "oqs/ptm.hpp"
#include "oqs/rng.hpp"
#include "oqs/search.hpp"
#include "oqs/types.hpp"

namespace {

// A representative model per system size: two coherent terms, two jumps.
oqs::Chromosome pick_chromosome(const oqs::PrimitiveSet& set) {
    static const std::vector<std::vector<std::pair<oqs::Kind, std::string>>> picks = {
        {{oqs::Kind::Coherent, "X"}, {oqs::Kind::Coherent, "Z"},
         {oqs::Kind::Dissipative, "-"}},
        {{oqs::Kind::Coherent, "XI"}, {oqs::Kind::Coherent, "ZZ"},
         {oqs::Kind::Dissipative, "-+"}, {oqs::Kind::Dissipative, "YX"}},
        {{oqs::Kind::Coherent, "XII"}, {oqs::Kind::Coherent, "ZZI"},
         {oqs::Kind::Dissipative, "--I"}, {oqs::Kind::Dissipative, "YXZ"}},
    };
    oqs::Chromosome c(set.size());
    for (const auto& [kind, label] : picks[static_cast<std::size_t>(set.n_qubits() - 1)])
        c.set(set.index_of(kind, label), true);
    return c;
}

std::vector<double> pick_rates(const oqs::PrimitiveSet& set, const oqs::Chromosome& c) {
    const auto kinds = oqs::rate_kinds(set, c);
    std::vector<double> rates;
    for (std::size_t k = 0; k < kinds.size(); ++k)
        rates.push_back(kinds[k] == oqs::Kind::Coherent ? 0.5 + 0.4 * k : 0.2 + 0.05 * k);
    return rates;
}

struct EngineFixture {
    oqs::PrimitiveSet set;
    oqs::Chromosome chromosome;
    std::vector<double> rates;
    oqs::ptm::Engine engine;
    oqs::RealMatrix l;

    explicit EngineFixture(int n)
        : set(n),
          chromosome(pick_chromosome(set)),
          rates(pick_rates(set, chromosome)),
          engine(oqs::model_engine(set, chromosome)) {
        engine.assemble(rates.data(), l);
    }
};

EngineFixture& engine_fixture(int n) {
    static EngineFixture fixtures[] = {EngineFixture(1), EngineFixture(2),
                                       EngineFixture(3)};
    return fixtures[n - 1];
}

// expm(L t) in the real operator basis, the inner-loop workhorse.
void BM_Propagator(benchmark::State& state) {
    auto& fix = engine_fixture(static_cast<int>(state.range(0)));
    oqs::RealMatrix prop;
    for (auto _ : state) {
        fix.engine.compute_propagator(fix.l, 1.7, prop);
        benchmark::DoNotOptimize(prop.data());
    }
}
BENCHMARK(BM_Propagator)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

// L = sum_i rate_i G_i from cached unit generators.
void BM_AssembleGenerator(benchmark::State& state) {
    auto& fix = engine_fixture(static_cast<int>(state.range(0)));
    oqs::RealMatrix l;
    for (auto _ : state) {
        fix.engine.assemble(fix.rates.data(), l);
        benchmark::DoNotOptimize(l.data());
    }
}
BENCHMARK(BM_AssembleGenerator)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

// Column-stacking (complex) generator built from scratch, the data-generation path.
void BM_AssembleLiouvillian(benchmark::State& state) {
    auto& fix = engine_fixture(2);
    const auto model = oqs::decode(fix.set, fix.chromosome, fix.rates);
    const auto terms = oqs::model_terms(fix.set, model);
    for (auto _ : state) {
        oqs::Superoperator s = oqs::assemble_liouvillian(terms, 2);
        benchmark::DoNotOptimize(s.data());
    }
}
BENCHMARK(BM_AssembleLiouvillian)->Unit(benchmark::kMicrosecond);

struct RecordFixture {
    EngineFixture& fix = engine_fixture(2);
    oqs::ExperimentRecord record;
    oqs::RealVector rates;

    RecordFixture() {
        oqs::Rng rng(31);
        oqs::DesignMode mode;  // arbitrary
        const oqs::Design design = oqs::sample_design(mode, 2, rng);
        const auto model = oqs::decode(fix.set, fix.chromosome, fix.rates);
        const auto liou = oqs::assemble_liouvillian(oqs::model_terms(fix.set, model), 2);
        record.id = "bench";
        record.state = design.state;
        record.unitary = design.unitary;
        record.time = 2.0;
        record.shots = 50;
        record.counts = oqs::simulate_counts(liou, design, record.time, record.shots, rng);
        rates = Eigen::Map<const oqs::RealVector>(fix.rates.data(),
                                                  static_cast<long>(fix.rates.size()));
    }
};

RecordFixture& record_fixture() {
    static RecordFixture fixture;
    return fixture;
}

// One record log-likelihood at one rate vector: the per-particle cost.
void BM_LogLikelihood(benchmark::State& state) {
    auto& rf = record_fixture();
    oqs::ModelLikelihood likelihood(rf.fix.set, rf.fix.chromosome);
    likelihood.set_record(rf.record);
    for (auto _ : state) {
        const double ll = likelihood.log_likelihood(rf.rates);
        benchmark::DoNotOptimize(ll);
    }
}
BENCHMARK(BM_LogLikelihood)->Unit(benchmark::kMicrosecond);

// Reweighting a 1000-particle cloud by one record: the per-experiment cost.
void BM_BayesUpdate(benchmark::State& state) {
    auto& rf = record_fixture();
    oqs::ModelLikelihood likelihood(rf.fix.set, rf.fix.chromosome);
    likelihood.set_record(rf.record);
    oqs::Rng rng(7);
    oqs::ParticleCloud cloud =
        oqs::init_prior(rf.fix.set, rf.fix.chromosome, oqs::PriorConfig{}, 1000, rng);
    for (auto _ : state) {
        oqs::bayes_update(cloud, likelihood);
        benchmark::DoNotOptimize(cloud.weights.data());
    }
}
BENCHMARK(BM_BayesUpdate)->Unit(benchmark::kMillisecond);

// Liu-West refresh of a skewed 1000-particle cloud.
void BM_LiuWestResample(benchmark::State& state) {
    auto& rf = record_fixture();
    oqs::Rng rng(7);
    const oqs::ParticleCloud pristine =
        oqs::init_prior(rf.fix.set, rf.fix.chromosome, oqs::PriorConfig{}, 1000, rng);
    oqs::RealVector skewed(pristine.weights.size());
    for (long k = 0; k < skewed.size(); ++k) skewed(k) = std::exp(-0.02 * k);
    skewed /= skewed.sum();
    const auto kinds = oqs::rate_kinds(rf.fix.set, rf.fix.chromosome);

    oqs::ParticleCloud cloud = pristine;
    for (auto _ : state) {
        cloud.particles = pristine.particles;
        cloud.weights = skewed;
        const bool did = oqs::resample(cloud, 0.5, 0.98, kinds, rng);
        benchmark::DoNotOptimize(did);
    }
}
BENCHMARK(BM_LiuWestResample)->Unit(benchmark::kMillisecond);

// Scoring one model on 50 held-out records over 25 distinct times.
void BM_Rmse(benchmark::State& state) {
    auto& fix = engine_fixture(2);
    const auto model = oqs::decode(fix.set, fix.chromosome, fix.rates);
    const auto liou = oqs::assemble_liouvillian(oqs::model_terms(fix.set, model), 2);
    const auto times = oqs::time_grid(25, 0.1, 20.0, true);

    oqs::Rng rng(17);
    oqs::DesignMode mode;  // arbitrary
    oqs::TestSet tests;
    for (double t : times) {
        for (int d = 0; d < 2; ++d) {
            const oqs::Design design = oqs::sample_design(mode, 2, rng);
            oqs::ExperimentRecord rec;
            rec.id = "bench";
            rec.split = oqs::Split::Test;
            rec.state = design.state;
            rec.unitary = design.unitary;
            rec.time = t;
            rec.shots = 1024;
            rec.counts = oqs::simulate_counts(liou, design, t, rec.shots, rng);
            tests.records.push_back(std::move(rec));
        }
    }

    for (auto _ : state) {
        const double err = oqs::rmse(fix.set, model, tests);
        benchmark::DoNotOptimize(err);
    }
}
BENCHMARK(BM_Rmse)->Unit(benchmark::kMillisecond);

// Elite copy + selection + crossover + mutation for a 20-member population.
void BM_GeneticStep(benchmark::State& state) {
    const oqs::PrimitiveSet set(2);
    oqs::Rng rng(23);
    oqs::SearchConfig config;
    config.population = 20;

    oqs::Generation gen;
    gen.index = 0;
    for (int m = 0; m < config.population; ++m) {
        oqs::Member member;
        member.chromosome = oqs::random_chromosome(set, config.target_primitives, rng);
        member.report.model_id = member.chromosome.to_string();
        member.report.rmse = 0.01 + 0.001 * m;
        member.report.fitness = 1.0 / member.report.rmse;
        member.evaluated = true;
        gen.members.push_back(std::move(member));
    }

    for (auto _ : state) {
        oqs::Generation next = oqs::genetic_step(gen, config, rng);
        benchmark::DoNotOptimize(next.members.data());
    }
}
BENCHMARK(BM_GeneticStep)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
