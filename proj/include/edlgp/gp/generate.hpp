#pragma once

#include <vector>

#include "edlgp/core/random.hpp"
#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/gp/tree.hpp"

namespace edlgp::gp {

enum class GenMethod { Full, Grow };

// Random subtree of type `type`. Full expands functions until target_depth;
// grow may stop early at terminals. When no primitive fits in the remaining
// depth, the shallowest legal completion is used. `as_root` restricts the
// top node to the root primitives.
[[nodiscard]] Tree generate_tree(PrimitiveSet const& pset, GenMethod method, int target_depth, GpType type, Rng& rng, bool as_root = false);

// Root-constrained program of type PROBS.
[[nodiscard]] Tree generate_genotype(PrimitiveSet const& pset, GenMethod method, int target_depth, Rng& rng);

// Individual i uses full when i is even, grow when odd, and target depth
// depth_min + (i / 2) mod (depth_max - depth_min + 1).
[[nodiscard]] std::vector<Tree> ramped_half_and_half(PrimitiveSet const& pset, int count, int depth_min, int depth_max, Rng& rng);

} // namespace edlgp::gp
