#include "edlgp/gp/generate.hpp"

#include <algorithm>

#include "edlgp/core/error.hpp"

namespace edlgp::gp {

namespace {

class Generator {
public:
    Generator(PrimitiveSet const& pset, GenMethod method, Rng& rng)
        : pset_(pset)
        , method_(method)
        , rng_(rng)
        , ratio_(pset.terminal_ratio())
    {
    }

    void emit(GpType type, int remaining, bool as_root)
    {
        auto const* domain = pset_.param_domain(type);
        if (domain != nullptr && pset_.producers(type).empty()) {
            emit_param(type, *domain);
            return;
        }
        std::vector<std::size_t> fitting;
        for (auto p : pset_.producers(type)) {
            if ((!as_root || pset_.is_root_primitive(p)) && pset_.primitive_min_height(p) <= remaining) {
                fitting.push_back(p);
            }
        }
        bool const terminal_ok = !as_root && pset_.has_terminal(type);
        if (terminal_ok) {
            bool take = remaining <= 0 || fitting.empty();
            if (!take && method_ == GenMethod::Grow) {
                take = uniform01(rng_) < ratio_;
            }
            if (take) {
                emit_terminal(type);
                return;
            }
        }
        if (fitting.empty()) {
            fitting = shortest_completion(type, as_root);
        }
        emit_function(fitting[uniform_index(rng_, fitting.size())], remaining);
    }

private:
    // Producers of minimal height, then minimal arity.
    std::vector<std::size_t> shortest_completion(GpType type, bool as_root) const
    {
        std::vector<std::size_t> best;
        int best_h = 0;
        std::size_t best_arity = 0;
        for (auto p : pset_.producers(type)) {
            if (as_root && !pset_.is_root_primitive(p)) {
                continue;
            }
            int const h = pset_.primitive_min_height(p);
            if (h < 0) {
                continue;
            }
            auto const arity = pset_.primitive(p).child_types.size();
            if (best.empty() || h < best_h || (h == best_h && arity < best_arity)) {
                best = { p };
                best_h = h;
                best_arity = arity;
            } else if (h == best_h && arity == best_arity) {
                best.push_back(p);
            }
        }
        if (best.empty()) {
            throw InternalError("no primitive can produce type " + std::string(type_name(type)));
        }
        return best;
    }

    void emit_function(std::size_t p, int remaining)
    {
        auto const& prim = pset_.primitive(p);
        nodes_.push_back(Node { NodeKind::Function, prim.return_type, static_cast<std::uint8_t>(prim.child_types.size()), static_cast<std::uint16_t>(p) });
        for (auto c : prim.child_types) {
            emit(c, remaining - 1, false);
        }
    }

    void emit_terminal(GpType type)
    {
        if (type == GpType::Image) {
            auto const& ch = pset_.channels();
            nodes_.push_back(Node { NodeKind::Channel, GpType::Image, 0, static_cast<std::uint16_t>(ch[uniform_index(rng_, ch.size())]) });
            return;
        }
        emit_param(type, *pset_.param_domain(type));
    }

    void emit_param(GpType type, ParamDomain const& d)
    {
        nodes_.push_back(Node { NodeKind::Param, type, 0, static_cast<std::uint16_t>(d.active[uniform_index(rng_, d.active.size())]) });
    }

    PrimitiveSet const& pset_;
    GenMethod method_;
    Rng& rng_;
    double ratio_;

public:
    std::vector<Node> nodes_;
};

} // namespace

Tree generate_tree(PrimitiveSet const& pset, GenMethod method, int target_depth, GpType type, Rng& rng, bool as_root)
{
    if (pset.min_height(type) < 0) {
        throw InternalError("type " + std::string(type_name(type)) + " is not producible");
    }
    Generator g(pset, method, rng);
    g.emit(type, target_depth, as_root);
    return Tree(std::move(g.nodes_));
}

Tree generate_genotype(PrimitiveSet const& pset, GenMethod method, int target_depth, Rng& rng)
{
    return generate_tree(pset, method, target_depth, GpType::Probs, rng, true);
}

std::vector<Tree> ramped_half_and_half(PrimitiveSet const& pset, int count, int depth_min, int depth_max, Rng& rng)
{
    if (depth_min > depth_max) {
        throw ConfigError("init_depth_min exceeds init_depth_max");
    }
    int const span = depth_max - depth_min + 1;
    std::vector<Tree> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        auto const method = i % 2 == 0 ? GenMethod::Full : GenMethod::Grow;
        int const depth = depth_min + (i / 2) % span;
        out.push_back(generate_genotype(pset, method, depth, rng));
    }
    return out;
}

} // namespace edlgp::gp
