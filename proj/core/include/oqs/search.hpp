#pragma once

// Genetic search over model structures: elitism, fitness-proportional
// (softmax) selection, uniform crossover, and popcount-regularizing mutation,
// wrapped in a train -> prune -> score generation loop. The elite member is
// carried verbatim — model, rates, and score — so the best fitness recorded
// against the fixed test set never decreases across generations.

#include <cstdint>
#include <utility>
#include <vector>

#include "oqs/dataset.hpp"
#include "oqs/evaluation.hpp"
#include "oqs/inference.hpp"
#include "oqs/primitives.hpp"
#include "oqs/rng.hpp"

namespace oqs {

struct SearchConfig {
    int population = 20;
    int target_primitives = 7;  // regularization target T for the mutation drift
    double p10 = 0.1;           // per-bit 1 -> 0 flip probability
    double crossover_p = 0.5;   // probability a child-1 gene comes from parent a
    double beta = 0.1;          // selection temperature in exp(beta * (f - f_max))
    int max_generations = 20;
    double fitness_threshold = 180.0;  // stop once the best fitness reaches this
    double reduction_ratio = 1.0;      // prune |rate| < ratio * posterior std
    std::uint64_t seed = 1;
    TrainConfig training;
};

/// One population member. `trained` and `report` are filled by the run loop;
/// the elite keeps both verbatim across the genetic step.
struct Member {
    Chromosome chromosome;
    TrainedModel trained;
    FitnessReport report;
    bool evaluated = false;
    bool elite = false;
};

struct Generation {
    int index = 0;
    std::vector<Member> members;
};

struct TraceEntry {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double best_rmse = 0.0;
    std::string best_id;  // chromosome bitstring of the generation's best
};

struct SearchResult {
    TrainedModel best;
    FitnessReport best_report;
    std::vector<TraceEntry> trace;  // one entry per generation executed
    int generations_run = 0;
    bool reached_threshold = false;
    long long total_experiments = 0;  // records consumed across every training
};

/// The 0 -> 1 flip probability that makes the mutation-only chain's
/// stationary expected popcount equal `target`: target * p10 / (set_size -
/// target). Throws std::invalid_argument unless 0 < target < set_size and
/// 0 <= p10 <= 1.
double mutation_rates(int target, int set_size, double p10);

/// Flips each 0-bit with probability p01 and each 1-bit with probability p10,
/// independently. Throws std::invalid_argument on probabilities outside [0, 1].
Chromosome mutate(const Chromosome& chromosome, double p01, double p10, Rng& rng);

/// Position-wise gene exchange: child-1 takes a's gene with probability p,
/// else b's; child-2 takes the complementary parent. Throws
/// std::invalid_argument on length mismatch or p outside [0, 1].
std::pair<Chromosome, Chromosome> uniform_crossover(const Chromosome& a,
                                                    const Chromosome& b, double p,
                                                    Rng& rng);

/// Two distinct indices drawn without replacement with probability
/// proportional to exp(beta * (fitness - max fitness)); the shift cancels in
/// the normalized probabilities, it only guards against overflow. Throws
/// std::invalid_argument on fewer than two entries or non-finite fitness.
std::pair<int, int> roulette_select(const std::vector<double>& fitness, double beta,
                                    Rng& rng);

/// Next generation: the best member copied verbatim (flagged elite), then
/// children from repeated select -> crossover -> mutate until the population
/// is full. A child duplicating an existing offspring chromosome is re-mutated
/// until distinct, up to 20 retries. All members must be evaluated.
Generation genetic_step(const Generation& current, const SearchConfig& config,
                        Rng& rng);

/// Full loop: seed a random population, then per generation train every
/// non-elite member on a fresh serving pass over `train_indices`, prune rates
/// indistinguishable from zero, score on `tests`, record a trace entry, and
/// stop at the fitness threshold or the generation cap. Training and serving
/// rng streams are derived per (generation, member) from config.seed, so
/// results are independent of member evaluation order. Data-source failures
/// are rethrown with the generation index attached.
SearchResult run_search(const PrimitiveSet& set, const Dataset& dataset,
                        const std::vector<int>& train_indices, const TestSet& tests,
                        const SearchConfig& config);

}  // namespace oqs
