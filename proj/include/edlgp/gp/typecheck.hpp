#pragma once

#include <optional>
#include <string>

#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/gp/tree.hpp"

namespace edlgp::gp {

// Structural and signature check of an arbitrary subtree against the set.
[[nodiscard]] std::optional<std::string> tree_error(Tree const& tree, PrimitiveSet const& pset);

// tree_error plus: root is a root primitive and height <= max_depth.
[[nodiscard]] std::optional<std::string> genotype_error(Tree const& tree, PrimitiveSet const& pset, int max_depth);

} // namespace edlgp::gp
