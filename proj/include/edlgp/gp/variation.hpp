#pragma once

#include <optional>
#include <span>
#include <utility>

#include "edlgp/core/random.hpp"
#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/gp/tree.hpp"

namespace edlgp::gp {

struct Individual {
    Tree genotype;
    std::optional<double> fitness;
};

// True when a ranks before b: higher fitness, then smaller tree.
[[nodiscard]] bool fitter(Individual const& a, Individual const& b);

// Index of the tournament winner among `size` draws with replacement. Ties
// go to the smaller tree, then the earlier index.
[[nodiscard]] std::size_t tournament_select(std::span<Individual const> population, int size, Rng& rng);

// Swaps a random non-root subtree of a with a same-typed non-root subtree of b.
// Up to retry_limit attempts; returns copies of the parents when none succeeds.
[[nodiscard]] std::pair<Tree, Tree> subtree_crossover(Tree const& a, Tree const& b, int max_depth, int retry_limit, Rng& rng);

// Replaces a random non-root subtree with a grow subtree of the same type whose
// target depth is min(room, min_height + U{0..extra_depth}). A parameter
// terminal instead takes a different value of its domain.
[[nodiscard]] Tree subtree_mutation(Tree const& parent, PrimitiveSet const& pset, int max_depth, Rng& rng, int extra_depth = 2);

} // namespace edlgp::gp
