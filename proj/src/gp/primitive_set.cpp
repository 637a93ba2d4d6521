#include "edlgp/gp/primitive_set.hpp"

#include <algorithm>

#include "edlgp/core/error.hpp"

namespace edlgp::gp {

namespace {

std::size_t slot(GpType t) { return static_cast<std::size_t>(t); }

} // namespace

std::size_t PrimitiveSet::add_primitive(Primitive p)
{
    if (find(p.name)) {
        throw ConfigError("duplicate primitive name " + p.name);
    }
    if (!p.child_keys.empty() && p.child_keys.size() != p.child_types.size()) {
        throw ConfigError("primitive " + p.name + ": child_keys length differs from arity");
    }
    if (p.child_types.size() > 255) {
        throw ConfigError("primitive " + p.name + ": arity too large");
    }
    primitives_.push_back(std::move(p));
    refresh();
    return primitives_.size() - 1;
}

void PrimitiveSet::add_channel(Channel c)
{
    if (!has_channel(c)) {
        channels_.push_back(c);
        refresh();
    }
}

void PrimitiveSet::set_param_domain(ParamDomain d)
{
    if (d.type == GpType::Image || d.type == GpType::Features || d.type == GpType::Probs) {
        throw ConfigError("parameter domain on a data type");
    }
    if (d.labels.size() != d.values.size() || d.labels.empty()) {
        throw ConfigError("parameter domain " + d.key + ": labels and values must be nonempty and aligned");
    }
    if (d.active.empty()) {
        for (std::size_t i = 0; i < d.labels.size(); ++i) {
            d.active.push_back(i);
        }
    }
    for (auto a : d.active) {
        if (a >= d.labels.size()) {
            throw ConfigError("parameter domain " + d.key + ": active index out of range");
        }
    }
    auto it = std::find_if(domains_.begin(), domains_.end(), [&](ParamDomain const& x) { return x.type == d.type; });
    if (it != domains_.end()) {
        *it = std::move(d);
    } else {
        domains_.push_back(std::move(d));
    }
    refresh();
}

void PrimitiveSet::set_root_primitives(std::vector<std::string> const& names)
{
    roots_.clear();
    for (auto const& n : names) {
        auto i = find(n);
        if (!i) {
            throw ConfigError("unknown root primitive " + n);
        }
        roots_.push_back(*i);
    }
}

std::optional<std::size_t> PrimitiveSet::find(std::string_view name) const
{
    for (std::size_t i = 0; i < primitives_.size(); ++i) {
        if (primitives_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

bool PrimitiveSet::has_channel(Channel c) const noexcept
{
    return std::find(channels_.begin(), channels_.end(), c) != channels_.end();
}

ParamDomain const* PrimitiveSet::param_domain(GpType t) const noexcept
{
    for (auto const& d : domains_) {
        if (d.type == t) {
            return &d;
        }
    }
    return nullptr;
}

ParamDomain const* PrimitiveSet::param_domain_by_key(std::string_view key) const noexcept
{
    for (auto const& d : domains_) {
        if (d.key == key) {
            return &d;
        }
    }
    return nullptr;
}

bool PrimitiveSet::is_root_primitive(std::size_t i) const noexcept
{
    return std::find(roots_.begin(), roots_.end(), i) != roots_.end();
}

std::string const& PrimitiveSet::child_key(std::size_t i, std::size_t k) const
{
    auto const& p = primitive(i);
    if (!p.child_keys.empty() && !p.child_keys.at(k).empty()) {
        return p.child_keys[k];
    }
    auto const* d = param_domain(p.child_types.at(k));
    if (d == nullptr) {
        throw InternalError("primitive " + p.name + ": child " + std::to_string(k) + " has no parameter domain");
    }
    return d->key;
}

std::vector<std::size_t> const& PrimitiveSet::producers(GpType t) const
{
    return producers_[slot(t)];
}

bool PrimitiveSet::has_terminal(GpType t) const noexcept
{
    if (t == GpType::Image) {
        return !channels_.empty();
    }
    return param_domain(t) != nullptr;
}

int PrimitiveSet::min_height(GpType t) const
{
    return min_height_[slot(t)];
}

int PrimitiveSet::primitive_min_height(std::size_t i) const
{
    return primitive_min_height_.at(i);
}

double PrimitiveSet::terminal_ratio() const noexcept
{
    auto const terminals = static_cast<double>(channels_.size() + domains_.size());
    auto const total = terminals + static_cast<double>(primitives_.size());
    return total == 0.0 ? 0.0 : terminals / total;
}

void PrimitiveSet::refresh()
{
    for (auto& v : producers_) {
        v.clear();
    }
    for (std::size_t i = 0; i < primitives_.size(); ++i) {
        producers_[slot(primitives_[i].return_type)].push_back(i);
    }
    std::fill(min_height_.begin(), min_height_.end(), -1);
    for (int t = 0; t < kGpTypeCount; ++t) {
        if (has_terminal(static_cast<GpType>(t))) {
            min_height_[static_cast<std::size_t>(t)] = 0;
        }
    }
    primitive_min_height_.assign(primitives_.size(), -1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < primitives_.size(); ++i) {
            int h = 0;
            bool ok = true;
            for (auto c : primitives_[i].child_types) {
                int const m = min_height_[slot(c)];
                if (m < 0) {
                    ok = false;
                    break;
                }
                h = std::max(h, m);
            }
            if (!ok) {
                continue;
            }
            h += 1;
            if (primitive_min_height_[i] < 0 || h < primitive_min_height_[i]) {
                primitive_min_height_[i] = h;
                changed = true;
            }
            int& tm = min_height_[slot(primitives_[i].return_type)];
            if (tm < 0 || h < tm) {
                tm = h;
                changed = true;
            }
        }
    }
}

} // namespace edlgp::gp
