#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edlgp/gp/types.hpp"

namespace edlgp::gp {

struct Primitive {
    std::string name;
    std::vector<GpType> child_types;
    GpType return_type;
    Layer layer;
    int op { 0 }; // opaque tag for the executor
    // Per-child key for parameter children ("o1", "o2"); empty entries (or
    // an empty list) fall back to the domain's key.
    std::vector<std::string> child_keys;
};

// Finite value list for a parameter type. `labels` are the serialized forms.
// Generation and mutation draw only from `active`; parsing accepts any label.
struct ParamDomain {
    GpType type;
    std::string key;
    std::vector<std::string> labels;
    std::vector<double> values;
    std::vector<std::size_t> active;
};

class PrimitiveSet {
public:
    std::size_t add_primitive(Primitive p);
    void add_channel(Channel c);
    void set_param_domain(ParamDomain d);
    void set_root_primitives(std::vector<std::string> const& names);

    [[nodiscard]] std::vector<Primitive> const& primitives() const noexcept { return primitives_; }
    [[nodiscard]] Primitive const& primitive(std::size_t i) const { return primitives_.at(i); }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
    [[nodiscard]] std::vector<Channel> const& channels() const noexcept { return channels_; }
    [[nodiscard]] bool has_channel(Channel c) const noexcept;
    [[nodiscard]] ParamDomain const* param_domain(GpType t) const noexcept;
    [[nodiscard]] ParamDomain const* param_domain_by_key(std::string_view key) const noexcept;
    [[nodiscard]] std::vector<std::size_t> const& root_primitives() const noexcept { return roots_; }
    [[nodiscard]] bool is_root_primitive(std::size_t i) const noexcept;

    // Key used when rendering child `k` of primitive `i` (parameter children only).
    [[nodiscard]] std::string const& child_key(std::size_t i, std::size_t k) const;

    [[nodiscard]] std::vector<std::size_t> const& producers(GpType t) const;
    [[nodiscard]] bool has_terminal(GpType t) const noexcept;
    // Smallest subtree height producing `t`; -1 if unreachable.
    [[nodiscard]] int min_height(GpType t) const;
    [[nodiscard]] int primitive_min_height(std::size_t i) const;

    // Share of terminal choices among all symbols: one per channel, one per
    // parameter type, one per primitive. Used by grow.
    [[nodiscard]] double terminal_ratio() const noexcept;

private:
    void refresh();

    std::vector<Primitive> primitives_;
    std::vector<Channel> channels_;
    std::vector<ParamDomain> domains_;
    std::vector<std::size_t> roots_;
    std::vector<std::vector<std::size_t>> producers_ = std::vector<std::vector<std::size_t>>(kGpTypeCount);
    std::vector<int> min_height_ = std::vector<int>(kGpTypeCount, -1);
    std::vector<int> primitive_min_height_;
};

} // namespace edlgp::gp
