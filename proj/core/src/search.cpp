#include "oqs/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

namespace oqs {

namespace {

// tag values for derive_seed streams, one namespace per purpose
constexpr std::uint64_t kTagInit = 0;
constexpr std::uint64_t kTagStep = 1;
constexpr std::uint64_t kTagTrain = 2;
constexpr std::uint64_t kTagServe = 3;

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

// index of the generation's best member: fitness descending, then chromosome
// bitstring ascending, then position — the same order evaluate_generation uses
std::size_t best_member_index(const std::vector<Member>& members) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        const FitnessReport& a = members[i].report;
        const FitnessReport& b = members[best].report;
        if (a.fitness > b.fitness ||
            (a.fitness == b.fitness && a.model_id < b.model_id))
            best = i;
    }
    return best;
}

}  // namespace

double mutation_rates(int target, int set_size, double p10) {
    if (target <= 0 || target >= set_size)
        throw std::invalid_argument("target popcount must satisfy 0 < target < set size");
    check_probability(p10, "p10");
    return static_cast<double>(target) * p10 / static_cast<double>(set_size - target);
}

Chromosome mutate(const Chromosome& chromosome, double p01, double p10, Rng& rng) {
    check_probability(p01, "p01");
    check_probability(p10, "p10");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Chromosome out = chromosome;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double flip = out.test(i) ? p10 : p01;
        if (unif(rng) < flip) out.flip(i);
    }
    return out;
}

std::pair<Chromosome, Chromosome> uniform_crossover(const Chromosome& a,
                                                    const Chromosome& b, double p,
                                                    Rng& rng) {
    if (a.size() != b.size())
        throw std::invalid_argument("crossover parents must have equal length");
    check_probability(p, "p");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Chromosome child1(a.size()), child2(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool from_a = unif(rng) < p;
        child1.set(i, from_a ? a.test(i) : b.test(i));
        child2.set(i, from_a ? b.test(i) : a.test(i));
    }
    return {child1, child2};
}

std::pair<int, int> roulette_select(const std::vector<double>& fitness, double beta,
                                    Rng& rng) {
    const std::size_t n = fitness.size();
    if (n < 2) throw std::invalid_argument("selection needs at least two members");
    double f_max = -std::numeric_limits<double>::infinity();
    for (double f : fitness) {
        if (!std::isfinite(f)) throw std::invalid_argument("fitness must be finite");
        f_max = std::max(f_max, f);
    }
    // max-shifted softmax weights; the shift cancels in the normalization.
    // Weights are floored at the smallest normal double so the second draw
    // keeps positive total mass even when the exponent underflows.
    std::vector<double> w(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::max(std::exp(beta * (fitness[i] - f_max)),
                        std::numeric_limits<double>::min());
        total += w[i];
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw = [&](double mass) {
        const double u = unif(rng) * mass;
        double acc = 0.0;
        std::size_t pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] == 0.0) continue;  // already removed
            acc += w[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        while (w[pick] == 0.0) --pick;  // guard against top-edge rounding
        return pick;
    };
    const std::size_t first = draw(total);
    const double w_first = w[first];
    w[first] = 0.0;
    const std::size_t second = draw(total - w_first);
    return {static_cast<int>(first), static_cast<int>(second)};
}

Generation genetic_step(const Generation& current, const SearchConfig& config,
                        Rng& rng) {
    const std::size_t population = current.members.size();
    if (population < 2)
        throw std::invalid_argument("genetic step needs a population of at least two");
    for (const Member& m : current.members)
        if (!m.evaluated)
            throw std::invalid_argument("genetic step requires every member evaluated");
    const std::size_t set_size = current.members.front().chromosome.size();
    for (const Member& m : current.members)
        if (m.chromosome.size() != set_size)
            throw std::invalid_argument("members disagree on chromosome length");

    const double p01 =
        mutation_rates(config.target_primitives, static_cast<int>(set_size), config.p10);
    std::vector<double> fitness(population);
    for (std::size_t i = 0; i < population; ++i)
        fitness[i] = current.members[i].report.fitness;

    Generation next;
    next.index = current.index + 1;
    next.members.reserve(population);

    Member elite = current.members[best_member_index(current.members)];
    elite.elite = true;
    next.members.push_back(std::move(elite));

    std::unordered_set<std::string> seen;
    seen.insert(next.members.front().chromosome.to_string());

    while (next.members.size() < population) {
        const auto [i, j] = roulette_select(fitness, config.beta, rng);
        auto children = uniform_crossover(current.members[static_cast<std::size_t>(i)].chromosome,
                                          current.members[static_cast<std::size_t>(j)].chromosome,
                                          config.crossover_p, rng);
        for (Chromosome* child : {&children.first, &children.second}) {
            if (next.members.size() >= population) break;
            Chromosome c = mutate(*child, p01, config.p10, rng);
            for (int retry = 0; retry < 20 && seen.count(c.to_string()) != 0; ++retry)
                c = mutate(c, p01, config.p10, rng);
            seen.insert(c.to_string());
            Member m;
            m.chromosome = std::move(c);
            next.members.push_back(std::move(m));
        }
    }
    return next;
}

namespace {

// Trains, prunes, and scores one member in isolation; rng streams are derived
// from (generation, member), so the outcome is identical however members are
// scheduled across threads.
void process_member(const PrimitiveSet& set, const Dataset& dataset,
                    const std::vector<int>& train_indices, const TestSet& tests,
                    const SearchConfig& config, int generation, std::size_t index,
                    Member& member) {
    ServingSession session(
        dataset, train_indices,
        derive_seed(config.seed, {kTagServe, static_cast<std::uint64_t>(generation), index}));
    Rng rng(derive_seed(config.seed,
                        {kTagTrain, static_cast<std::uint64_t>(generation), index}));
    TrainedModel trained = train(set, member.chromosome, session, config.training, rng);

    // prune rates indistinguishable from zero and refit the posterior summary
    // to the surviving terms
    Model pruned = reduce_model(trained.model, std::vector<double>(
                                                   trained.summary.stds.data(),
                                                   trained.summary.stds.data() +
                                                       trained.summary.stds.size()),
                                config.reduction_ratio);
    const std::vector<int> ones = trained.model.chromosome.ones();
    RealVector mean(pruned.rates.size()), stds(pruned.rates.size());
    Eigen::Index out = 0;
    for (std::size_t k = 0; k < ones.size(); ++k) {
        if (!pruned.chromosome.test(static_cast<std::size_t>(ones[k]))) continue;
        mean(out) = trained.summary.mean(static_cast<Eigen::Index>(k));
        stds(out) = trained.summary.stds(static_cast<Eigen::Index>(k));
        ++out;
    }
    trained.model = std::move(pruned);
    trained.summary.mean = std::move(mean);
    trained.summary.stds = std::move(stds);
    trained.summary.sigma = std::sqrt(trained.summary.stds.squaredNorm());

    member.chromosome = trained.model.chromosome;
    member.report = fitness_score(set, trained.model, tests);
    member.trained = std::move(trained);
    member.evaluated = true;
}

long long train_generation(const PrimitiveSet& set, const Dataset& dataset,
                           const std::vector<int>& train_indices, const TestSet& tests,
                           const SearchConfig& config, Generation& generation) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < generation.members.size(); ++i)
        if (!generation.members[i].evaluated) todo.push_back(i);
    if (todo.empty()) return 0;

    std::vector<std::exception_ptr> errors(todo.size());
    const unsigned hardware = std::thread::hardware_concurrency();
    const std::size_t workers =
        std::min<std::size_t>(hardware == 0 ? 1 : hardware, todo.size());
    auto run_item = [&](std::size_t k) {
        try {
            process_member(set, dataset, train_indices, tests, config, generation.index,
                           todo[k], generation.members[todo[k]]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (workers <= 1) {
        for (std::size_t k = 0; k < todo.size(); ++k) run_item(k);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = cursor.fetch_add(1); k < todo.size();
                     k = cursor.fetch_add(1))
                    run_item(k);
            });
        for (std::thread& t : pool) t.join();
    }
    for (std::size_t k = 0; k < todo.size(); ++k) {
        if (!errors[k]) continue;
        try {
            std::rethrow_exception(errors[k]);
        } catch (const std::exception& e) {
            throw std::runtime_error("generation " + std::to_string(generation.index) +
                                     ": " + e.what());
        }
    }
    long long consumed = 0;
    for (std::size_t i : todo) consumed += generation.members[i].trained.n_experiments;
    return consumed;
}

}  // namespace

SearchResult run_search(const PrimitiveSet& set, const Dataset& dataset,
                        const std::vector<int>& train_indices, const TestSet& tests,
                        const SearchConfig& config) {
    if (config.population < 2)
        throw std::invalid_argument("population must be at least two");
    if (config.max_generations < 1)
        throw std::invalid_argument("max generations must be at least one");
    check_probability(config.p10, "p10");
    check_probability(config.crossover_p, "crossover p");
    if (config.target_primitives <= 0 ||
        static_cast<std::size_t>(config.target_primitives) >= set.size())
        throw std::invalid_argument("target popcount must satisfy 0 < target < set size");
    if (train_indices.empty())
        throw std::invalid_argument("no training records supplied");

    Generation generation;
    generation.index = 0;
    generation.members.resize(static_cast<std::size_t>(config.population));
    {
        Rng init_rng(derive_seed(config.seed, {kTagInit}));
        std::unordered_set<std::string> seen;
        for (Member& m : generation.members) {
            Chromosome c = random_chromosome(set, config.target_primitives, init_rng);
            for (int retry = 0; retry < 20 && seen.count(c.to_string()) != 0; ++retry)
                c = random_chromosome(set, config.target_primitives, init_rng);
            seen.insert(c.to_string());
            m.chromosome = std::move(c);
        }
    }

    SearchResult result;
    for (int g = 0; g < config.max_generations; ++g) {
        result.total_experiments +=
            train_generation(set, dataset, train_indices, tests, config, generation);

        const std::size_t best = best_member_index(generation.members);
        double mean_fitness = 0.0;
        for (const Member& m : generation.members) mean_fitness += m.report.fitness;
        mean_fitness /= static_cast<double>(generation.members.size());
        TraceEntry entry;
        entry.generation = g;
        entry.best_fitness = generation.members[best].report.fitness;
        entry.mean_fitness = mean_fitness;
        entry.best_rmse = generation.members[best].report.rmse;
        entry.best_id = generation.members[best].report.model_id;
        result.trace.push_back(std::move(entry));
        result.generations_run = g + 1;
        result.best = generation.members[best].trained;
        result.best_report = generation.members[best].report;

        if (result.best_report.fitness >= config.fitness_threshold) {
            result.reached_threshold = true;
            break;
        }
        if (g + 1 == config.max_generations) break;

        Rng step_rng(derive_seed(config.seed, {kTagStep, static_cast<std::uint64_t>(g)}));
        generation = genetic_step(generation, config, step_rng);
    }
    return result;
}

}  // namespace oqs
