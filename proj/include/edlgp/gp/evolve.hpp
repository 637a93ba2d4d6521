#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/gp/variation.hpp"

namespace edlgp::gp {

struct EvolutionConfig {
    int population_size { 100 };
    int generations { 50 };
    double crossover_rate { 0.5 };
    double mutation_rate { 0.49 };
    double elitism_rate { 0.01 };
    int tournament_size { 5 };
    int init_depth_min { 2 };
    int init_depth_max { 10 };
    int max_depth { 10 };
    std::uint64_t seed { 0 };
    bool cascade_oof { true };
    int crossover_retry_limit { 10 };
    int mutation_extra_depth { 2 };
    int parallel { 1 };

    // Throws ConfigError.
    void validate() const;
};

struct GenerationStats {
    int generation { 0 };
    double best_fitness { 0.0 };
    double mean_fitness { 0.0 };
    double mean_tree_size { 0.0 };
    std::size_t best_tree_size { 0 };
    double elapsed_s { 0.0 };
};

struct OffspringCounts {
    int elites;
    int crossover;
    int mutation;
};

// elites = max(1, round(e N)), crossover = round(c N) rounded to even,
// mutation = the rest.
[[nodiscard]] OffspringCounts offspring_counts(EvolutionConfig const& config);

// Fitness in [0, 100] for a genotype; throwing marks a failed evaluation.
// The seed is derived from the run seed and the genotype text, so equal
// genotypes always score equally and parallel schedules match serial ones.
using FitnessFunction = std::function<double(Tree const& genotype, std::uint64_t seed)>;

struct EvolveHooks {
    std::function<void(int generation)> on_generation_start;
    std::function<void(GenerationStats const&)> on_generation_end;
    std::function<void(std::string const&)> on_warning;
};

struct EvolutionResult {
    Individual best;
    std::vector<Individual> final_population;
    std::vector<GenerationStats> log;
    std::size_t evaluations { 0 };
    std::vector<std::string> warnings;
};

[[nodiscard]] std::uint64_t evaluation_seed(std::uint64_t run_seed, std::string const& genotype_text) noexcept;

// Generation g in 0..generations-1 evaluates and logs the population, then
// (except after the last) breeds the next. generations = 0 evaluates and
// logs the initial population only.
[[nodiscard]] EvolutionResult evolve(EvolutionConfig const& config, PrimitiveSet const& pset, FitnessFunction const& fitness, EvolveHooks const& hooks = {});

} // namespace edlgp::gp
