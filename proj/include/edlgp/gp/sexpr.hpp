#pragma once

#include <string>
#include <string_view>

#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/gp/tree.hpp"

namespace edlgp::gp {

// Canonical text: (Sum2 (RF (Hist (Mean Gray)) t=100 d=20) (LR (SIFT Gray)))
[[nodiscard]] std::string render(Tree const& tree, PrimitiveSet const& pset);
[[nodiscard]] std::string render_subtree(Tree const& tree, std::size_t root, PrimitiveSet const& pset);

// Parses and type-checks against the primitive signatures. Throws ParseError
// with the character offset of the offending token. Root constraints and
// depth are not checked here (see genotype_error).
[[nodiscard]] Tree parse(std::string_view text, PrimitiveSet const& pset);

} // namespace edlgp::gp
