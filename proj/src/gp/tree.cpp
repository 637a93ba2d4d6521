#include "edlgp/gp/tree.hpp"

#include <algorithm>

#include "edlgp/core/error.hpp"

namespace edlgp::gp {

Tree::Tree(std::vector<Node> nodes)
    : nodes_(std::move(nodes))
{
    if (!nodes_.empty() && subtree_end(0) != nodes_.size()) {
        throw InternalError("malformed prefix tree");
    }
}

std::size_t Tree::subtree_end(std::size_t i) const
{
    std::size_t pending = 1;
    std::size_t j = i;
    while (pending > 0) {
        if (j >= nodes_.size()) {
            throw InternalError("truncated prefix tree");
        }
        pending += nodes_[j].arity;
        --pending;
        ++j;
    }
    return j;
}

std::vector<std::size_t> Tree::children(std::size_t i) const
{
    std::vector<std::size_t> out;
    out.reserve(nodes_[i].arity);
    std::size_t c = i + 1;
    for (int k = 0; k < nodes_[i].arity; ++k) {
        out.push_back(c);
        c = subtree_end(c);
    }
    return out;
}

Tree Tree::subtree(std::size_t i) const
{
    auto const end = subtree_end(i);
    Tree t;
    t.nodes_.assign(nodes_.begin() + static_cast<std::ptrdiff_t>(i), nodes_.begin() + static_cast<std::ptrdiff_t>(end));
    return t;
}

Tree Tree::replace(std::size_t i, Tree const& replacement) const
{
    auto const end = subtree_end(i);
    Tree t;
    t.nodes_.reserve(nodes_.size() - (end - i) + replacement.size());
    t.nodes_.insert(t.nodes_.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(i));
    t.nodes_.insert(t.nodes_.end(), replacement.nodes_.begin(), replacement.nodes_.end());
    t.nodes_.insert(t.nodes_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
    return t;
}

std::vector<int> Tree::depths() const
{
    std::vector<int> out(nodes_.size(), 0);
    // stack of (depth, remaining children) for open function nodes
    std::vector<std::pair<int, int>> open;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        int const d = open.empty() ? 0 : open.back().first + 1;
        out[i] = d;
        if (!open.empty() && --open.back().second == 0) {
            open.pop_back();
        }
        if (nodes_[i].arity > 0) {
            open.emplace_back(d, nodes_[i].arity);
        }
    }
    return out;
}

int Tree::depth_of(std::size_t i) const
{
    return depths().at(i);
}

int Tree::height() const
{
    auto const d = depths();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

} // namespace edlgp::gp
