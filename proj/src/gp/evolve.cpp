#include "edlgp/gp/evolve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "edlgp/core/error.hpp"
#include "edlgp/gp/generate.hpp"
#include "edlgp/gp/sexpr.hpp"

namespace edlgp::gp {

void EvolutionConfig::validate() const
{
    auto fail = [](std::string const& m) { throw ConfigError(m); };
    if (population_size < 1) {
        fail("population_size must be at least 1");
    }
    if (generations < 0) {
        fail("generations must be nonnegative");
    }
    if (crossover_rate < 0 || mutation_rate < 0 || elitism_rate < 0) {
        fail("rates must be nonnegative");
    }
    if (std::abs(crossover_rate + mutation_rate + elitism_rate - 1.0) > 1e-9) {
        fail("crossover_rate + mutation_rate + elitism_rate must equal 1");
    }
    if (tournament_size < 1) {
        fail("tournament_size must be at least 1");
    }
    if (init_depth_min < 2 || init_depth_min > init_depth_max) {
        fail("init depths must satisfy 2 <= init_depth_min <= init_depth_max");
    }
    if (init_depth_max > max_depth) {
        fail("init_depth_max exceeds max_depth");
    }
    if (crossover_retry_limit < 1) {
        fail("crossover_retry_limit must be at least 1");
    }
    if (mutation_extra_depth < 0) {
        fail("mutation_depth must be nonnegative");
    }
    if (parallel < 1) {
        fail("parallel must be at least 1");
    }
}

OffspringCounts offspring_counts(EvolutionConfig const& config)
{
    int const n = config.population_size;
    int elites = std::max(1, static_cast<int>(std::lround(config.elitism_rate * n)));
    elites = std::min(elites, n);
    int crossover = 2 * static_cast<int>(std::lround(config.crossover_rate * n / 2.0));
    crossover = std::min(crossover, n - elites);
    if (crossover % 2 != 0) {
        --crossover;
    }
    return { elites, crossover, n - elites - crossover };
}

std::uint64_t evaluation_seed(std::uint64_t run_seed, std::string const& genotype_text) noexcept
{
    return derive_seed(run_seed, std::string_view(genotype_text));
}

namespace {

class Evaluator {
public:
    Evaluator(EvolutionConfig const& config, PrimitiveSet const& pset, FitnessFunction const& fitness, EvolveHooks const& hooks, EvolutionResult& result)
        : config_(config)
        , pset_(pset)
        , fitness_(fitness)
        , hooks_(hooks)
        , result_(result)
    {
    }

    void evaluate(std::vector<Individual>& pop, int generation)
    {
        std::vector<std::string> texts(pop.size());
        std::vector<std::string> pending;
        std::vector<Tree const*> pending_trees;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (pop[i].fitness) {
                continue;
            }
            texts[i] = render(pop[i].genotype, pset_);
            if (!memo_.contains(texts[i]) && std::find(pending.begin(), pending.end(), texts[i]) == pending.end()) {
                pending.push_back(texts[i]);
                pending_trees.push_back(&pop[i].genotype);
            }
        }

        std::vector<double> scores(pending.size(), 0.0);
        std::vector<std::string> errors(pending.size());
        auto work = [&](std::size_t k) {
            try {
                double const f = fitness_(*pending_trees[k], evaluation_seed(config_.seed, pending[k]));
                scores[k] = std::isfinite(f) ? f : 0.0;
                if (!std::isfinite(f)) {
                    errors[k] = "non-finite fitness";
                }
            } catch (std::exception const& e) {
                scores[k] = 0.0;
                errors[k] = e.what();
                if (errors[k].empty()) {
                    errors[k] = "unknown failure";
                }
            }
        };
        auto const workers = std::min<std::size_t>(static_cast<std::size_t>(config_.parallel), pending.size());
        if (workers <= 1) {
            for (std::size_t k = 0; k < pending.size(); ++k) {
                work(k);
            }
        } else {
            std::atomic<std::size_t> next { 0 };
            std::vector<std::thread> threads;
            for (std::size_t w = 0; w < workers; ++w) {
                threads.emplace_back([&] {
                    for (std::size_t k = next++; k < pending.size(); k = next++) {
                        work(k);
                    }
                });
            }
            for (auto& t : threads) {
                t.join();
            }
        }
        for (std::size_t k = 0; k < pending.size(); ++k) {
            memo_[pending[k]] = scores[k];
            if (!errors[k].empty()) {
                auto msg = "generation " + std::to_string(generation) + ": evaluation of " + pending[k] + " failed: " + errors[k];
                result_.warnings.push_back(msg);
                if (hooks_.on_warning) {
                    hooks_.on_warning(msg);
                }
            }
        }
        result_.evaluations += pending.size();
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (!pop[i].fitness) {
                pop[i].fitness = memo_.at(texts[i]);
            }
        }
    }

private:
    EvolutionConfig const& config_;
    PrimitiveSet const& pset_;
    FitnessFunction const& fitness_;
    EvolveHooks const& hooks_;
    EvolutionResult& result_;
    std::unordered_map<std::string, double> memo_;
};

std::vector<std::size_t> ranking(std::vector<Individual> const& pop)
{
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitter(pop[a], pop[b]); });
    return order;
}

} // namespace

EvolutionResult evolve(EvolutionConfig const& config, PrimitiveSet const& pset, FitnessFunction const& fitness, EvolveHooks const& hooks)
{
    config.validate();
    auto const start = std::chrono::steady_clock::now();
    EvolutionResult result;
    Evaluator evaluator(config, pset, fitness, hooks, result);
    Rng rng(derive_seed(config.seed, "evolve"));
    auto const counts = offspring_counts(config);

    std::vector<Individual> pop;
    for (auto& t : ramped_half_and_half(pset, config.population_size, config.init_depth_min, config.init_depth_max, rng)) {
        pop.push_back(Individual { std::move(t), std::nullopt });
    }

    auto track_best = [&](std::vector<Individual> const& p) {
        for (auto const& ind : p) {
            if (!result.best.fitness || fitter(ind, result.best)) {
                result.best = ind;
            }
        }
    };

    // generations = 0 still evaluates and logs the initial population
    int const rounds = std::max(1, config.generations);
    for (int g = 0; g < rounds; ++g) {
        if (hooks.on_generation_start) {
            hooks.on_generation_start(g);
        }
        evaluator.evaluate(pop, g);
        track_best(pop);

        auto const order = ranking(pop);
        GenerationStats stats;
        stats.generation = g;
        stats.best_fitness = *pop[order.front()].fitness;
        stats.best_tree_size = pop[order.front()].genotype.size();
        double fsum = 0.0;
        double ssum = 0.0;
        for (auto const& ind : pop) {
            fsum += *ind.fitness;
            ssum += static_cast<double>(ind.genotype.size());
        }
        stats.mean_fitness = fsum / static_cast<double>(pop.size());
        stats.mean_tree_size = ssum / static_cast<double>(pop.size());
        stats.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.log.push_back(stats);
        if (hooks.on_generation_end) {
            hooks.on_generation_end(stats);
        }

        if (g + 1 == rounds) {
            break;
        }
        std::vector<Individual> next;
        next.reserve(pop.size());
        for (int e = 0; e < counts.elites; ++e) {
            next.push_back(pop[order[static_cast<std::size_t>(e)]]);
        }
        for (int c = 0; c < counts.crossover; c += 2) {
            auto const& a = pop[tournament_select(pop, config.tournament_size, rng)].genotype;
            auto const& b = pop[tournament_select(pop, config.tournament_size, rng)].genotype;
            auto [x, y] = subtree_crossover(a, b, config.max_depth, config.crossover_retry_limit, rng);
            next.push_back(Individual { std::move(x), std::nullopt });
            next.push_back(Individual { std::move(y), std::nullopt });
        }
        for (int m = 0; m < counts.mutation; ++m) {
            auto const& p = pop[tournament_select(pop, config.tournament_size, rng)].genotype;
            next.push_back(Individual { subtree_mutation(p, pset, config.max_depth, rng, config.mutation_extra_depth), std::nullopt });
        }
        pop = std::move(next);
    }
    result.final_population = std::move(pop);
    return result;
}

} // namespace edlgp::gp
