#include "ends/space.hpp"

#include "ends/set_algebra.hpp"

namespace ends {

SpacePtr Space::ray_space(TreePtr t) {
    if (!t->is_infinite())
        throw unsupported_space_error("ray space needs an infinite presentation");
    auto s = std::make_shared<Space>();
    s->kind = Kind::ray_space;
    s->tree = std::move(t);
    return s;
}

SpacePtr Space::branch_space(TreePtr t) {
    if (!t->is_infinite())
        throw unsupported_space_error("branch space needs an infinite presentation");
    auto s = std::make_shared<Space>();
    s->kind = Kind::branch_space;
    s->tree = std::move(t);
    return s;
}

SpacePtr Space::kappa(std::string symbol) {
    auto s = std::make_shared<Space>();
    s->kind = Kind::kappa;
    s->kappa_symbol = std::move(symbol);
    return s;
}

SpacePtr Space::discrete(int n) {
    if (n < 1 || n > 64) throw unsupported_space_error("discrete size out of range");
    auto s = std::make_shared<Space>();
    s->kind = Kind::discrete;
    s->size = n;
    return s;
}

SpacePtr Space::product(std::vector<SpacePtr> fs) {
    if (fs.empty()) throw unsupported_space_error("empty product");
    auto s = std::make_shared<Space>();
    s->kind = Kind::product;
    s->factors = std::move(fs);
    return s;
}

SpacePtr Space::subspace(SpacePtr parent, std::vector<Cell> clopen_cells) {
    auto s = std::make_shared<Space>();
    s->kind = Kind::subspace;
    s->parent = parent;
    // keep the clip pairwise disjoint so traces have additive counts
    OpenSet o = open_make(*parent, std::move(clopen_cells));
    for (const Cell& c : o.cells)
        if (!cell_is_open(*parent, c))
            throw unsupported_space_error("subspace clip is not open");
    s->clip = std::move(o.cells);
    return s;
}

std::string Space::describe() const {
    switch (kind) {
    case Kind::ray_space: return "rays(" + tree->preset_id() + ")";
    case Kind::branch_space: return "branches(" + tree->preset_id() + ")";
    case Kind::kappa: return "cofinite(" + kappa_symbol + ")";
    case Kind::discrete: return "discrete(" + std::to_string(size) + ")";
    case Kind::product: {
        std::string out = "product(";
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) out += " x ";
            out += factors[i]->describe();
        }
        return out + ")";
    }
    case Kind::subspace: return "subspace(" + parent->describe() + ")";
    }
    return "?";
}

Cell whole_cell(const Space& s) {
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space:
        return make_tree_cell(Word{});
    case Space::Kind::kappa:
        return Cell{KappaSet{true, {}}};
    case Space::Kind::discrete:
        return Cell{DiscreteSet{s.size >= 64 ? ~0ull : ((1ull << s.size) - 1)}};
    case Space::Kind::product: {
        ProductCell pc;
        for (auto& f : s.factors) pc.parts.push_back(whole_cell(*f));
        return Cell{pc};
    }
    case Space::Kind::subspace:
        return whole_cell(*s.parent);
    }
    throw std::logic_error("whole_cell");
}

std::string cell_str(const Cell& c) {
    if (std::holds_alternative<TreeCell>(c.v)) {
        const TreeCell& t = c.tree();
        std::string out = "[" + node_str(t.anchor);
        if (!t.holes.empty()) {
            out += " \\ {";
            for (size_t i = 0; i < t.holes.size(); ++i) {
                if (i) out += ",";
                out += node_str(t.holes[i]);
            }
            out += "}";
        }
        return out + "]";
    }
    if (std::holds_alternative<KappaSet>(c.v)) {
        const KappaSet& k = c.kappa();
        std::string out = k.cofinite ? "K\\{" : "{";
        for (size_t i = 0; i < k.elems.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(k.elems[i]);
        }
        return out + "}";
    }
    if (std::holds_alternative<DiscreteSet>(c.v)) {
        std::string out = "{";
        bool first = true;
        for (int i = 0; i < 64; ++i)
            if (c.discrete().bits >> i & 1) {
                if (!first) out += ",";
                out += std::to_string(i);
                first = false;
            }
        return out + "}";
    }
    std::string out = "(";
    const auto& parts = c.product().parts;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " x ";
        out += cell_str(parts[i]);
    }
    return out + ")";
}

std::string point_str(const Point& p) {
    if (std::holds_alternative<Ray>(p.v)) return p.ray().str();
    if (std::holds_alternative<long long>(p.v)) {
        long long k = p.kappa();
        return k == 0 ? "pt0" : "iso" + std::to_string(k);
    }
    if (std::holds_alternative<int>(p.v)) return "#" + std::to_string(p.discrete());
    std::string out = "(";
    const auto& t = p.tuple();
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += point_str(t[i]);
    }
    return out + ")";
}

int cell_cmp(const Cell& a, const Cell& b) {
    if (a.v.index() != b.v.index()) return a.v.index() < b.v.index() ? -1 : 1;
    if (std::holds_alternative<TreeCell>(a.v)) {
        const TreeCell& x = a.tree();
        const TreeCell& y = b.tree();
        if (int c = node_cmp(x.anchor, y.anchor)) return c;
        size_t n = std::min(x.holes.size(), y.holes.size());
        for (size_t i = 0; i < n; ++i)
            if (int c = node_cmp(x.holes[i], y.holes[i])) return c;
        if (x.holes.size() != y.holes.size()) return x.holes.size() < y.holes.size() ? -1 : 1;
        return 0;
    }
    if (std::holds_alternative<KappaSet>(a.v)) {
        const KappaSet& x = a.kappa();
        const KappaSet& y = b.kappa();
        if (x.cofinite != y.cofinite) return x.cofinite ? 1 : -1;
        if (x.elems != y.elems) return x.elems < y.elems ? -1 : 1;
        return 0;
    }
    if (std::holds_alternative<DiscreteSet>(a.v)) {
        auto x = a.discrete().bits, y = b.discrete().bits;
        return x == y ? 0 : (x < y ? -1 : 1);
    }
    const auto& xs = a.product().parts;
    const auto& ys = b.product().parts;
    if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
    for (size_t i = 0; i < xs.size(); ++i)
        if (int c = cell_cmp(xs[i], ys[i])) return c;
    return 0;
}

} // namespace ends
