#include "edlgp/gp/variation.hpp"

#include <algorithm>

#include "edlgp/core/error.hpp"
#include "edlgp/gp/generate.hpp"

namespace edlgp::gp {

bool fitter(Individual const& a, Individual const& b)
{
    if (!a.fitness || !b.fitness) {
        throw InternalError("comparing unevaluated individuals");
    }
    if (*a.fitness != *b.fitness) {
        return *a.fitness > *b.fitness;
    }
    return a.genotype.size() < b.genotype.size();
}

std::size_t tournament_select(std::span<Individual const> population, int size, Rng& rng)
{
    if (population.empty()) {
        throw InternalError("tournament on an empty population");
    }
    if (size < 1) {
        throw InternalError("tournament size must be positive");
    }
    std::size_t best = uniform_index(rng, population.size());
    if (!population[best].fitness) {
        throw InternalError("tournament met an unevaluated individual");
    }
    for (int k = 1; k < size; ++k) {
        auto const c = uniform_index(rng, population.size());
        if (!population[c].fitness) {
            throw InternalError("tournament met an unevaluated individual");
        }
        if (fitter(population[c], population[best]) || (!fitter(population[best], population[c]) && c < best)) {
            best = c;
        }
    }
    return best;
}

std::pair<Tree, Tree> subtree_crossover(Tree const& a, Tree const& b, int max_depth, int retry_limit, Rng& rng)
{
    if (a.size() < 2 || b.size() < 2) {
        return { a, b };
    }
    std::vector<std::size_t> matches;
    for (int attempt = 0; attempt < retry_limit; ++attempt) {
        auto const i = 1 + uniform_index(rng, a.size() - 1);
        matches.clear();
        for (std::size_t j = 1; j < b.size(); ++j) {
            if (b[j].type == a[i].type) {
                matches.push_back(j);
            }
        }
        if (matches.empty()) {
            continue;
        }
        auto const j = matches[uniform_index(rng, matches.size())];
        auto child_a = a.replace(i, b.subtree(j));
        auto child_b = b.replace(j, a.subtree(i));
        if (child_a.height() <= max_depth && child_b.height() <= max_depth) {
            return { std::move(child_a), std::move(child_b) };
        }
    }
    return { a, b };
}

Tree subtree_mutation(Tree const& parent, PrimitiveSet const& pset, int max_depth, Rng& rng, int extra_depth)
{
    if (parent.size() < 2) {
        return parent;
    }
    auto const i = 1 + uniform_index(rng, parent.size() - 1);
    auto const& site = parent[i];
    if (site.kind == NodeKind::Param) {
        auto const* d = pset.param_domain(site.type);
        if (d == nullptr) {
            throw InternalError("parameter node without domain");
        }
        std::vector<std::size_t> others;
        for (auto v : d->active) {
            if (v != site.value) {
                others.push_back(v);
            }
        }
        if (others.empty()) {
            return parent;
        }
        Node n = site;
        n.value = static_cast<std::uint16_t>(others[uniform_index(rng, others.size())]);
        return parent.replace(i, Tree({ n }));
    }
    int const room = max_depth - parent.depth_of(i);
    int const target = std::min(room, pset.min_height(site.type) + uniform_int(rng, 0, std::max(extra_depth, 0)));
    return parent.replace(i, generate_tree(pset, GenMethod::Grow, target, site.type, rng));
}

} // namespace edlgp::gp
