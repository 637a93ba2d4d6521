#include "edlgp/gp/sexpr.hpp"

#include <cctype>

#include "edlgp/core/error.hpp"

namespace edlgp::gp {

namespace {

void render_node(Tree const& tree, std::size_t& i, std::size_t parent, std::size_t child_slot, PrimitiveSet const& pset, std::string& out)
{
    auto const& n = tree[i];
    switch (n.kind) {
    case NodeKind::Channel:
        out += channel_name(static_cast<Channel>(n.value));
        ++i;
        return;
    case NodeKind::Param: {
        auto const* d = pset.param_domain(n.type);
        if (d == nullptr || n.value >= d->labels.size()) {
            throw InternalError("parameter node without a domain value");
        }
        out += parent == static_cast<std::size_t>(-1) ? d->key : pset.child_key(tree[parent].value, child_slot);
        out += '=';
        out += d->labels[n.value];
        ++i;
        return;
    }
    case NodeKind::Function: {
        std::size_t const self = i;
        out += '(';
        out += pset.primitive(n.value).name;
        ++i;
        for (std::size_t k = 0; k < n.arity; ++k) {
            out += ' ';
            render_node(tree, i, self, k, pset, out);
        }
        out += ')';
        return;
    }
    }
}

class Parser {
public:
    Parser(std::string_view text, PrimitiveSet const& pset)
        : text_(text)
        , pset_(pset)
    {
    }

    Tree run()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("empty genotype", pos_);
        }
        if (text_[pos_] == '(') {
            parse_function(std::nullopt);
        } else {
            auto const start = pos_;
            auto const atom = read_atom();
            auto ch = channel_from_name(atom);
            if (!ch || !pset_.has_channel(*ch)) {
                throw ParseError("expected '(' or a channel, got '" + std::string(atom) + "'", start);
            }
            nodes_.push_back(Node { NodeKind::Channel, GpType::Image, 0, static_cast<std::uint16_t>(*ch) });
        }
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError("trailing characters after genotype", pos_);
        }
        return Tree(std::move(nodes_));
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string_view read_atom()
    {
        auto const start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    void parse_function(std::optional<GpType> expected)
    {
        auto const open = pos_;
        ++pos_; // '('
        skip_space();
        auto const name_pos = pos_;
        auto const name = read_atom();
        if (name.empty()) {
            throw ParseError("expected a primitive name", name_pos);
        }
        auto idx = pset_.find(name);
        if (!idx) {
            throw ParseError("unknown primitive '" + std::string(name) + "'", name_pos);
        }
        auto const& prim = pset_.primitive(*idx);
        if (expected && prim.return_type != *expected) {
            throw ParseError("primitive " + prim.name + " returns " + std::string(type_name(prim.return_type)) + " where " + std::string(type_name(*expected)) + " is required", name_pos);
        }
        nodes_.push_back(Node { NodeKind::Function, prim.return_type, static_cast<std::uint8_t>(prim.child_types.size()), static_cast<std::uint16_t>(*idx) });
        for (std::size_t k = 0; k < prim.child_types.size(); ++k) {
            skip_space();
            if (pos_ >= text_.size()) {
                throw ParseError("unexpected end of input inside " + prim.name, pos_);
            }
            if (text_[pos_] == ')') {
                throw ParseError(prim.name + " expects " + std::to_string(prim.child_types.size()) + " arguments, got " + std::to_string(k), pos_);
            }
            parse_arg(*idx, k);
        }
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("unclosed '(' opened here", open);
        }
        if (text_[pos_] != ')') {
            throw ParseError(prim.name + " expects " + std::to_string(prim.child_types.size()) + " arguments", pos_);
        }
        ++pos_;
    }

    void parse_arg(std::size_t parent, std::size_t k)
    {
        GpType const want = pset_.primitive(parent).child_types[k];
        if (text_[pos_] == '(') {
            parse_function(want);
            return;
        }
        auto const start = pos_;
        auto const atom = read_atom();
        auto const eq = atom.find('=');
        if (eq == std::string_view::npos) {
            auto ch = channel_from_name(atom);
            if (!ch) {
                throw ParseError("unknown terminal '" + std::string(atom) + "'", start);
            }
            if (!pset_.has_channel(*ch)) {
                throw ParseError("channel " + std::string(atom) + " is not available for this dataset", start);
            }
            if (want != GpType::Image) {
                throw ParseError("channel where " + std::string(type_name(want)) + " is required", start);
            }
            nodes_.push_back(Node { NodeKind::Channel, GpType::Image, 0, static_cast<std::uint16_t>(*ch) });
            return;
        }
        auto const key = atom.substr(0, eq);
        auto const label = atom.substr(eq + 1);
        auto const* domain = pset_.param_domain(want);
        if (domain == nullptr) {
            throw ParseError("parameter '" + std::string(atom) + "' where " + std::string(type_name(want)) + " is required", start);
        }
        if (key != pset_.child_key(parent, k)) {
            throw ParseError("expected parameter " + pset_.child_key(parent, k) + ", got " + std::string(key), start);
        }
        for (std::size_t v = 0; v < domain->labels.size(); ++v) {
            if (domain->labels[v] == label) {
                nodes_.push_back(Node { NodeKind::Param, want, 0, static_cast<std::uint16_t>(v) });
                return;
            }
        }
        throw ParseError("value '" + std::string(label) + "' outside the domain of " + std::string(key), start + eq + 1);
    }

    std::string_view text_;
    PrimitiveSet const& pset_;
    std::size_t pos_ { 0 };
    std::vector<Node> nodes_;
};

} // namespace

std::string render(Tree const& tree, PrimitiveSet const& pset)
{
    return render_subtree(tree, 0, pset);
}

std::string render_subtree(Tree const& tree, std::size_t root, PrimitiveSet const& pset)
{
    std::string out;
    std::size_t i = root;
    render_node(tree, i, static_cast<std::size_t>(-1), 0, pset, out);
    return out;
}

Tree parse(std::string_view text, PrimitiveSet const& pset)
{
    return Parser(text, pset).run();
}

} // namespace edlgp::gp
