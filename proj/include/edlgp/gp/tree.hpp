#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edlgp/gp/types.hpp"

namespace edlgp::gp {

enum class NodeKind : std::uint8_t { Function, Channel, Param };

// `value` is the primitive index (Function), the Channel, or the index into
// the parameter domain's label list (Param).
struct Node {
    NodeKind kind;
    GpType type;
    std::uint8_t arity { 0 };
    std::uint16_t value { 0 };

    bool operator==(Node const&) const = default;
};

// Prefix-order node list. Immutable value type; edits return new trees.
class Tree {
public:
    Tree() = default;
    explicit Tree(std::vector<Node> nodes);

    [[nodiscard]] std::vector<Node> const& nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }
    [[nodiscard]] Node const& operator[](std::size_t i) const { return nodes_[i]; }

    // One past the last node of the subtree rooted at i.
    [[nodiscard]] std::size_t subtree_end(std::size_t i) const;
    [[nodiscard]] std::vector<std::size_t> children(std::size_t i) const;
    [[nodiscard]] Tree subtree(std::size_t i) const;
    [[nodiscard]] Tree replace(std::size_t i, Tree const& replacement) const;

    // Root has depth 0; height is the maximum node depth.
    [[nodiscard]] std::vector<int> depths() const;
    [[nodiscard]] int depth_of(std::size_t i) const;
    [[nodiscard]] int height() const;

    bool operator==(Tree const&) const = default;

private:
    std::vector<Node> nodes_;
};

} // namespace edlgp::gp
