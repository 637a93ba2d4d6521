#include "edlgp/gp/typecheck.hpp"

namespace edlgp::gp {

namespace {

// Checks the subtree at i; returns one past its end, or sets err.
std::size_t check(Tree const& tree, std::size_t i, PrimitiveSet const& pset, std::string& err)
{
    if (i >= tree.size()) {
        err = "truncated tree";
        return i;
    }
    auto const& n = tree[i];
    switch (n.kind) {
    case NodeKind::Channel:
        if (n.arity != 0 || n.type != GpType::Image || !pset.has_channel(static_cast<Channel>(n.value))) {
            err = "invalid channel terminal at node " + std::to_string(i);
        }
        return i + 1;
    case NodeKind::Param: {
        auto const* d = pset.param_domain(n.type);
        if (n.arity != 0 || d == nullptr || n.value >= d->labels.size()) {
            err = "invalid parameter terminal at node " + std::to_string(i);
        }
        return i + 1;
    }
    case NodeKind::Function: {
        if (n.value >= pset.primitives().size()) {
            err = "unknown primitive at node " + std::to_string(i);
            return i + 1;
        }
        auto const& p = pset.primitive(n.value);
        if (n.type != p.return_type || n.arity != p.child_types.size()) {
            err = "node " + std::to_string(i) + " (" + p.name + ") disagrees with its signature";
            return i + 1;
        }
        std::size_t c = i + 1;
        for (std::size_t k = 0; k < p.child_types.size(); ++k) {
            if (c >= tree.size()) {
                err = "missing child " + std::to_string(k) + " of " + p.name;
                return c;
            }
            if (tree[c].type != p.child_types[k]) {
                err = p.name + " child " + std::to_string(k) + " has type " + std::string(type_name(tree[c].type)) + ", expected " + std::string(type_name(p.child_types[k]));
                return c;
            }
            c = check(tree, c, pset, err);
            if (!err.empty()) {
                return c;
            }
        }
        return c;
    }
    }
    err = "unknown node kind";
    return i + 1;
}

} // namespace

std::optional<std::string> tree_error(Tree const& tree, PrimitiveSet const& pset)
{
    if (tree.empty()) {
        return "empty tree";
    }
    std::string err;
    auto const end = check(tree, 0, pset, err);
    if (!err.empty()) {
        return err;
    }
    if (end != tree.size()) {
        return "trailing nodes after the root subtree";
    }
    return std::nullopt;
}

std::optional<std::string> genotype_error(Tree const& tree, PrimitiveSet const& pset, int max_depth)
{
    if (auto e = tree_error(tree, pset)) {
        return e;
    }
    if (tree[0].kind != NodeKind::Function || !pset.is_root_primitive(tree[0].value)) {
        return "root is not a summation primitive";
    }
    if (int const h = tree.height(); h > max_depth) {
        return "depth " + std::to_string(h) + " exceeds " + std::to_string(max_depth);
    }
    return std::nullopt;
}

} // namespace edlgp::gp
