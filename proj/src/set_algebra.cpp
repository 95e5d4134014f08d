#include "ends/set_algebra.hpp"

#include <algorithm>

namespace ends {

namespace {

NodeId canon_node(NodeId n) {
    if (!is_upper(n)) return n;
    UpperNode u = upper(n);
    // all nodes of one upper chain have the same cylinder
    u.plus = 0;
    u.ray = canonical_ray(u.ray);
    return u;
}

struct TreeAlg {
    const OrderTree& tree;

    // Finite-word holes strictly above `from`.
    static std::vector<Word> finite_holes(const Word& from, const std::vector<NodeId>& holes) {
        std::vector<Word> out;
        for (const NodeId& h : holes)
            if (!is_upper(h) && is_prefix(from, lower_word(h)) && lower_word(h) != from)
                out.push_back(lower_word(h));
        return out;
    }

    // Lexicographically least extension of `from` longer than every finite
    // hole and avoiding each of them as a prefix. nullopt when the finite
    // holes block the whole subtree. Upper holes never block a lower escape:
    // the escape extended by a constant tail is a rational lower ray.
    std::optional<Word> escape(const Word& from, const std::vector<Word>& fholes) const {
        size_t target = from.size() + 1;
        for (const Word& h : fholes) target = std::max(target, h.size() + 1);
        int max_label = 1;
        for (const Word& h : fholes)
            for (int c : h) max_label = std::max(max_label, c);
        std::vector<Word> stack{from};
        while (!stack.empty()) {
            Word cur = stack.back();
            stack.pop_back();
            bool blocked = false;
            for (const Word& h : fholes)
                if (is_prefix(h, cur)) { blocked = true; break; }
            if (blocked) continue;
            if (cur.size() >= target) return cur;
            int arity = tree.child_count(cur);
            int width = arity < 0 ? max_label + 2 : arity;
            // push in reverse so the least label is explored first
            for (int c = width - 1; c >= 0; --c) {
                Word cw = cur;
                cw.push_back(c);
                if (tree.word_exists(cw)) stack.push_back(cw);
            }
        }
        return std::nullopt;
    }

    bool empty_cell(const NodeId& anchor, const std::vector<NodeId>& holes) const {
        for (const NodeId& h : holes)
            if (node_le(h, anchor)) return true;
        if (is_upper(anchor)) {
            for (const NodeId& h : holes)
                if (node_lt(anchor, h)) return true; // same cylinder after collapse
            return false;
        }
        return !escape(lower_word(anchor), finite_holes(lower_word(anchor), holes)).has_value();
    }

    std::vector<NodeId> holes_above(const NodeId& n, const std::vector<NodeId>& holes) const {
        std::vector<NodeId> out;
        for (const NodeId& h : holes)
            if (node_lt(n, h)) out.push_back(h);
        return out;
    }

    std::optional<TreeCell> canon(TreeCell c) const {
        c.anchor = canon_node(c.anchor);
        std::vector<NodeId> hs;
        for (NodeId& h : c.holes) {
            h = canon_node(h);
            if (node_le(h, c.anchor)) return std::nullopt; // anchor cylinder swallowed
            if (node_lt(c.anchor, h)) hs.push_back(h);     // holes elsewhere are vacuous
        }
        // keep maximal cylinders only
        std::sort(hs.begin(), hs.end(), [](const NodeId& a, const NodeId& b) { return node_cmp(a, b) < 0; });
        hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
        std::vector<NodeId> maximal;
        for (const NodeId& h : hs) {
            bool covered = false;
            for (const NodeId& g : hs)
                if (g != h && node_lt(g, h)) { covered = true; break; }
            if (!covered) maximal.push_back(h);
        }
        hs = std::move(maximal);

        if (is_upper(c.anchor)) return TreeCell{c.anchor, {}};

        // collapse dead subtrees: replace the holes under a blocked ancestor
        // by the ancestor itself
        bool changed = true;
        while (changed) {
            changed = false;
            // a strict ancestor can only be blocked by finite-word holes, so
            // candidates below their maximum depth suffice
            size_t max_fh = 0;
            for (const NodeId& h : hs)
                if (!is_upper(h)) max_fh = std::max(max_fh, lower_word(h).size());
            std::vector<NodeId> candidates;
            const Word& aw = lower_word(c.anchor);
            for (const NodeId& h : hs) {
                size_t hd = is_upper(h) ? max_fh : lower_word(h).size();
                for (size_t d = aw.size() + 1; d < hd; ++d) {
                    Word p = is_upper(h) ? upper(h).ray.prefix(d)
                                         : Word(lower_word(h).begin(), lower_word(h).begin() + d);
                    if (is_prefix(aw, p)) candidates.push_back(p);
                }
            }
            std::sort(candidates.begin(), candidates.end(),
                      [](const NodeId& a, const NodeId& b) { return node_cmp(a, b) < 0; });
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            for (const NodeId& a : candidates) {
                if (std::find(hs.begin(), hs.end(), a) != hs.end()) continue;
                if (empty_cell(a, holes_above(a, hs))) {
                    std::vector<NodeId> next{a};
                    for (const NodeId& h : hs)
                        if (!node_lt(a, h)) next.push_back(h);
                    std::sort(next.begin(), next.end(),
                              [](const NodeId& x, const NodeId& y) { return node_cmp(x, y) < 0; });
                    hs = std::move(next);
                    changed = true;
                    break;
                }
            }
        }

        // push the anchor past exhausted child levels
        if (empty_cell(c.anchor, hs)) return std::nullopt;
        int arity = tree.child_count(lower_word(c.anchor));
        if (arity >= 0) {
            std::vector<NodeId> alive;
            for (const NodeId& s : tree.successors(c.anchor, arity)) {
                if (!empty_cell(s, hs)) alive.push_back(s);
            }
            if (alive.empty()) return std::nullopt;
            if (alive.size() == 1) return canon(TreeCell{alive[0], hs});
        }
        return TreeCell{c.anchor, hs};
    }
};


KappaSet kappa_intersect(const KappaSet& a, const KappaSet& b) {
    KappaSet out;
    if (!a.cofinite && !b.cofinite) {
        std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                              std::back_inserter(out.elems));
        return out;
    }
    if (a.cofinite && b.cofinite) {
        out.cofinite = true;
        std::set_union(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                       std::back_inserter(out.elems));
        return out;
    }
    const KappaSet& fin = a.cofinite ? b : a;
    const KappaSet& cof = a.cofinite ? a : b;
    std::set_difference(fin.elems.begin(), fin.elems.end(), cof.elems.begin(), cof.elems.end(),
                        std::back_inserter(out.elems));
    return out;
}

// Difference of kappa sets is again a kappa set.
KappaSet kappa_subtract(const KappaSet& a, const KappaSet& b) {
    if (!b.cofinite) {
        if (!a.cofinite) {
            KappaSet out;
            std::set_difference(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                                std::back_inserter(out.elems));
            return out;
        }
        KappaSet out;
        out.cofinite = true;
        std::set_union(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                       std::back_inserter(out.elems));
        return out;
    }
    KappaSet bc{false, b.elems}; // complement of a cofinite set
    return kappa_intersect(a, bc);
}

} // namespace

std::optional<Cell> cell_canon(const Space& s, const Cell& c) {
    if (s.kind == Space::Kind::subspace) {
        auto base = cell_canon(*s.parent, c);
        if (!base) return std::nullopt;
        if (cell_is_empty(s, *base)) return std::nullopt;
        return base;
    }
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space: {
        TreeAlg alg{*s.tree};
        auto t = alg.canon(c.tree());
        if (!t) return std::nullopt;
        return Cell{*t};
    }
    case Space::Kind::kappa: {
        KappaSet k = c.kappa();
        std::sort(k.elems.begin(), k.elems.end());
        k.elems.erase(std::unique(k.elems.begin(), k.elems.end()), k.elems.end());
        if (!k.cofinite && k.elems.empty()) return std::nullopt;
        return Cell{k};
    }
    case Space::Kind::discrete: {
        DiscreteSet d = c.discrete();
        d.bits &= whole_cell(s).discrete().bits;
        if (d.bits == 0) return std::nullopt;
        return Cell{d};
    }
    case Space::Kind::product: {
        const auto& parts = c.product().parts;
        if (parts.size() != s.factors.size())
            throw domain_mismatch_error("product cell arity mismatch");
        ProductCell out;
        for (size_t i = 0; i < parts.size(); ++i) {
            auto p = cell_canon(*s.factors[i], parts[i]);
            if (!p) return std::nullopt;
            out.parts.push_back(*p);
        }
        return Cell{out};
    }
    default:
        throw std::logic_error("cell_canon");
    }
}

bool point_in_space(const Space& s, const Point& p) {
    switch (s.kind) {
    case Space::Kind::ray_space:
        return std::holds_alternative<Ray>(p.v) && s.tree->ray_valid(p.ray());
    case Space::Kind::branch_space:
        return std::holds_alternative<Ray>(p.v) && s.tree->ray_is_branch(p.ray());
    case Space::Kind::kappa:
        return std::holds_alternative<long long>(p.v) && p.kappa() >= 0;
    case Space::Kind::discrete:
        return std::holds_alternative<int>(p.v) && p.discrete() >= 0 && p.discrete() < s.size;
    case Space::Kind::product: {
        if (!std::holds_alternative<std::vector<Point>>(p.v)) return false;
        const auto& t = p.tuple();
        if (t.size() != s.factors.size()) return false;
        for (size_t i = 0; i < t.size(); ++i)
            if (!point_in_space(*s.factors[i], t[i])) return false;
        return true;
    }
    case Space::Kind::subspace: {
        if (!point_in_space(*s.parent, p)) return false;
        for (const Cell& c : s.clip)
            if (cell_contains(*s.parent, c, p)) return true;
        return false;
    }
    }
    return false;
}

bool cell_contains(const Space& s, const Cell& c, const Point& p) {
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space: {
        const TreeCell& t = c.tree();
        const Ray& r = p.ray();
        if (!node_in_ray(t.anchor, r)) return false;
        for (const NodeId& h : t.holes)
            if (node_in_ray(h, r)) return false;
        return true;
    }
    case Space::Kind::kappa: {
        const KappaSet& k = c.kappa();
        bool listed = std::binary_search(k.elems.begin(), k.elems.end(), p.kappa());
        return k.cofinite ? !listed : listed;
    }
    case Space::Kind::discrete:
        return (c.discrete().bits >> p.discrete()) & 1;
    case Space::Kind::product: {
        const auto& parts = c.product().parts;
        const auto& t = p.tuple();
        for (size_t i = 0; i < parts.size(); ++i)
            if (!cell_contains(*s.factors[i], parts[i], t[i])) return false;
        return true;
    }
    case Space::Kind::subspace:
        return cell_contains(*s.parent, c, p) && point_in_space(s, p);
    }
    return false;
}

std::optional<Cell> cell_intersect(const Space& s, const Cell& a, const Cell& b) {
    if (s.kind == Space::Kind::subspace) {
        auto i = cell_intersect(*s.parent, a, b);
        if (!i || cell_is_empty(s, *i)) return std::nullopt;
        return i;
    }
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space: {
        const TreeCell& x = a.tree();
        const TreeCell& y = b.tree();
        NodeId ax = canon_node(x.anchor), ay = canon_node(y.anchor);
        if (!node_comparable(ax, ay)) return std::nullopt;
        TreeCell out;
        out.anchor = node_le(ax, ay) ? ay : ax;
        out.holes = x.holes;
        out.holes.insert(out.holes.end(), y.holes.begin(), y.holes.end());
        return cell_canon(s, Cell{out});
    }
    case Space::Kind::kappa:
        return cell_canon(s, Cell{kappa_intersect(a.kappa(), b.kappa())});
    case Space::Kind::discrete:
        return cell_canon(s, Cell{DiscreteSet{a.discrete().bits & b.discrete().bits}});
    case Space::Kind::product: {
        ProductCell out;
        const auto& xs = a.product().parts;
        const auto& ys = b.product().parts;
        for (size_t i = 0; i < xs.size(); ++i) {
            auto pi = cell_intersect(*s.factors[i], xs[i], ys[i]);
            if (!pi) return std::nullopt;
            out.parts.push_back(*pi);
        }
        return Cell{out};
    }
    default:
        throw std::logic_error("cell_intersect");
    }
}

std::vector<Cell> cell_subtract(const Space& s, const Cell& a, const Cell& b) {
    auto ca = cell_canon(s, a);
    if (!ca) return {};
    auto meet = cell_intersect(s, *ca, b);
    if (!meet) return {*ca};

    if (s.kind == Space::Kind::subspace) {
        std::vector<Cell> pieces = cell_subtract(*s.parent, *ca, b);
        std::vector<Cell> out;
        for (const Cell& p : pieces)
            if (!cell_is_empty(s, p)) out.push_back(p);
        return out;
    }

    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space: {
        const TreeCell& x = ca->tree();
        const TreeCell& m = meet->tree();
        std::vector<Cell> out;
        // rays missing the meet anchor
        TreeCell p0{x.anchor, x.holes};
        p0.holes.push_back(m.anchor);
        if (auto c0 = cell_canon(s, Cell{p0})) out.push_back(*c0);
        // rays through one of the meet's holes
        for (const NodeId& h : m.holes) {
            TreeCell ph{h, x.holes};
            if (auto ch = cell_canon(s, Cell{ph})) out.push_back(*ch);
        }
        return out;
    }
    case Space::Kind::kappa: {
        auto r = cell_canon(s, Cell{kappa_subtract(ca->kappa(), b.kappa())});
        if (!r) return {};
        return {*r};
    }
    case Space::Kind::discrete: {
        auto r = cell_canon(s, Cell{DiscreteSet{ca->discrete().bits & ~b.discrete().bits}});
        if (!r) return {};
        return {*r};
    }
    case Space::Kind::product: {
        const auto& xs = ca->product().parts;
        const auto& ms = meet->product().parts;
        std::vector<Cell> out;
        // peel factor by factor: pieces agree with the meet on a prefix of
        // coordinates and avoid it at the next one
        for (size_t i = 0; i < xs.size(); ++i) {
            auto tail_pieces = cell_subtract(*s.factors[i], xs[i], ms[i]);
            for (const Cell& piece : tail_pieces) {
                ProductCell pc;
                for (size_t j = 0; j < xs.size(); ++j) {
                    if (j < i) pc.parts.push_back(ms[j]);
                    else if (j == i) pc.parts.push_back(piece);
                    else pc.parts.push_back(xs[j]);
                }
                out.push_back(Cell{pc});
            }
        }
        return out;
    }
    default:
        throw std::logic_error("cell_subtract");
    }
}

bool cell_is_empty(const Space& s, const Cell& c) {
    if (s.kind == Space::Kind::subspace) {
        for (const Cell& clip : s.clip)
            if (cell_intersect(*s.parent, c, clip)) return false;
        return true;
    }
    return !cell_canon(s, c).has_value();
}

std::optional<Point> cell_witness(const Space& s, const Cell& c) {
    if (s.kind == Space::Kind::subspace) {
        for (const Cell& clip : s.clip) {
            auto i = cell_intersect(*s.parent, c, clip);
            if (i)
                if (auto w = cell_witness(*s.parent, *i)) return w;
        }
        return std::nullopt;
    }
    auto cc = cell_canon(s, c);
    if (!cc) return std::nullopt;
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space: {
        const TreeCell& t = cc->tree();
        if (is_upper(t.anchor)) {
            const UpperNode& u = upper(t.anchor);
            return Point{Ray{u.ray, u.top}};
        }
        TreeAlg alg{*s.tree};
        auto esc = alg.escape(lower_word(t.anchor),
                              TreeAlg::finite_holes(lower_word(t.anchor), t.holes));
        if (!esc) return std::nullopt;
        // constant extension: rational, so valid in branch spaces and clear
        // of every upper hole
        return Point{make_ray(*esc, Word{0})};
    }
    case Space::Kind::kappa: {
        const KappaSet& k = cc->kappa();
        if (!k.cofinite) return Point{k.elems.front()};
        long long v = 0;
        while (std::binary_search(k.elems.begin(), k.elems.end(), v)) ++v;
        return Point{v};
    }
    case Space::Kind::discrete: {
        for (int i = 0; i < 64; ++i)
            if (cc->discrete().bits >> i & 1) return Point{i};
        return std::nullopt;
    }
    case Space::Kind::product: {
        std::vector<Point> t;
        for (size_t i = 0; i < s.factors.size(); ++i) {
            auto w = cell_witness(*s.factors[i], cc->product().parts[i]);
            if (!w) return std::nullopt;
            t.push_back(*w);
        }
        return Point{t};
    }
    default:
        return std::nullopt;
    }
}

int cell_count_class(const Space& s, const Cell& c) {
    if (s.kind == Space::Kind::subspace) {
        int total = 0;
        for (const Cell& clip : s.clip) {
            auto i = cell_intersect(*s.parent, c, clip);
            if (i) total += cell_count_class(*s.parent, *i);
            if (total >= 2) return 2;
        }
        return total;
    }
    auto cc = cell_canon(s, c);
    if (!cc) return 0;
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space:
        // a nonempty cell anchored at a finite node contains a whole deep
        // cylinder, hence continuum many points
        return is_upper(cc->tree().anchor) ? 1 : 2;
    case Space::Kind::kappa: {
        const KappaSet& k = cc->kappa();
        if (k.cofinite) return 2;
        return k.elems.size() >= 2 ? 2 : static_cast<int>(k.elems.size());
    }
    case Space::Kind::discrete: {
        int n = 0;
        for (int i = 0; i < 64 && n < 2; ++i) n += (cc->discrete().bits >> i) & 1;
        return n;
    }
    case Space::Kind::product: {
        int acc = 1;
        for (size_t i = 0; i < s.factors.size(); ++i) {
            int f = cell_count_class(*s.factors[i], cc->product().parts[i]);
            if (f == 0) return 0;
            acc = std::min(2, acc * f);
        }
        return acc;
    }
    default:
        return 0;
    }
}

bool cell_is_singleton(const Space& s, const Cell& c) { return cell_count_class(s, c) == 1; }

bool cell_subset(const Space& s, const Cell& a, const Cell& b) {
    return cell_subtract(s, a, b).empty();
}

bool cell_disjoint(const Space& s, const Cell& a, const Cell& b) {
    auto i = cell_intersect(s, a, b);
    return !i || cell_is_empty(s, *i);
}

CmpResult cmp_basic_opens(const Space& s, const Cell& a, const Cell& b) {
    if (cell_disjoint(s, a, b)) return CmpResult::disjoint;
    bool ab = cell_subset(s, a, b);
    bool ba = cell_subset(s, b, a);
    if (ab && ba) return CmpResult::equal;
    if (ab) return CmpResult::a_inside_b;
    if (ba) return CmpResult::b_inside_a;
    throw nestedness_violation("sets overlap without containment: " + cell_str(a) + " vs " +
                                   cell_str(b),
                               a, b);
}

OpenSet open_make(const Space& s, std::vector<Cell> cells) {
    OpenSet out;
    for (const Cell& c : cells) {
        std::vector<Cell> pieces{c};
        for (const Cell& have : out.cells) {
            std::vector<Cell> next;
            for (const Cell& p : pieces) {
                auto sub = cell_subtract(s, p, have);
                next.insert(next.end(), sub.begin(), sub.end());
            }
            pieces = std::move(next);
        }
        out.cells.insert(out.cells.end(), pieces.begin(), pieces.end());
    }
    std::sort(out.cells.begin(), out.cells.end(),
              [](const Cell& a, const Cell& b) { return cell_cmp(a, b) < 0; });
    return out;
}

OpenSet open_union(const Space& s, const OpenSet& a, const OpenSet& b) {
    std::vector<Cell> cells = a.cells;
    cells.insert(cells.end(), b.cells.begin(), b.cells.end());
    return open_make(s, std::move(cells));
}

OpenSet open_intersect_cell(const Space& s, const OpenSet& a, const Cell& c) {
    OpenSet out;
    for (const Cell& x : a.cells)
        if (auto i = cell_intersect(s, x, c)) out.cells.push_back(*i);
    std::sort(out.cells.begin(), out.cells.end(),
              [](const Cell& x, const Cell& y) { return cell_cmp(x, y) < 0; });
    return out;
}

OpenSet open_subtract_cell(const Space& s, const OpenSet& a, const Cell& c) {
    OpenSet out;
    for (const Cell& x : a.cells) {
        auto sub = cell_subtract(s, x, c);
        out.cells.insert(out.cells.end(), sub.begin(), sub.end());
    }
    std::sort(out.cells.begin(), out.cells.end(),
              [](const Cell& x, const Cell& y) { return cell_cmp(x, y) < 0; });
    return out;
}

bool open_contains(const Space& s, const OpenSet& a, const Point& p) {
    for (const Cell& c : a.cells)
        if (cell_contains(s, c, p)) return true;
    return false;
}

bool open_covers_cell(const Space& s, const OpenSet& a, const Cell& target) {
    std::vector<Cell> residual{target};
    for (const Cell& c : a.cells) {
        std::vector<Cell> next;
        for (const Cell& r : residual) {
            auto sub = cell_subtract(s, r, c);
            next.insert(next.end(), sub.begin(), sub.end());
        }
        residual = std::move(next);
        if (residual.empty()) return true;
    }
    for (const Cell& r : residual)
        if (!cell_is_empty(s, r)) return false;
    return true;
}

std::string open_str(const OpenSet& a) {
    if (a.cells.empty()) return "{}";
    std::string out;
    for (size_t i = 0; i < a.cells.size(); ++i) {
        if (i) out += " u ";
        out += cell_str(a.cells[i]);
    }
    return out;
}

std::vector<Cell> refine_to_disjoint_basics(const Space& s, const std::vector<OpenSet>& cover,
                                            const Cell& target) {
    std::vector<Cell> residual{target};
    for (const OpenSet& o : cover)
        for (const Cell& c : o.cells) {
            std::vector<Cell> next;
            for (const Cell& r : residual) {
                auto sub = cell_subtract(s, r, c);
                next.insert(next.end(), sub.begin(), sub.end());
            }
            residual = std::move(next);
        }
    for (const Cell& r : residual)
        if (auto w = cell_witness(s, r))
            throw coverage_error("cover misses " + point_str(*w) + " of " + cell_str(target), *w);

    // B_i minus everything before it, processing subset-minimal elements
    // first so the outer elements end up trimmed to the leftovers
    std::vector<Cell> pool;
    for (const OpenSet& o : cover) pool.insert(pool.end(), o.cells.begin(), o.cells.end());
    std::vector<Cell> ordered;
    while (!pool.empty()) {
        size_t pick = pool.size();
        for (size_t i = 0; i < pool.size(); ++i) {
            bool minimal = true;
            for (size_t j = 0; j < pool.size(); ++j)
                if (j != i && cell_subset(s, pool[j], pool[i]) && pool[j] != pool[i]) {
                    minimal = false;
                    break;
                }
            if (!minimal) continue;
            if (pick == pool.size() || cell_cmp(pool[i], pool[pick]) < 0) pick = i;
        }
        if (pick == pool.size()) pick = 0; // equal-set cycles: take any
        ordered.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<long>(pick));
    }

    std::vector<Cell> out;
    std::vector<Cell> seen;
    for (const Cell& c : ordered) {
        std::vector<Cell> pieces;
        if (auto i = cell_intersect(s, c, target)) pieces.push_back(*i);
        for (const Cell& prev : seen) {
            std::vector<Cell> next;
            for (const Cell& p : pieces) {
                auto sub = cell_subtract(s, p, prev);
                next.insert(next.end(), sub.begin(), sub.end());
            }
            pieces = std::move(next);
        }
        out.insert(out.end(), pieces.begin(), pieces.end());
        seen.push_back(c);
    }
    return out;
}

bool cell_is_open(const Space& s, const Cell& c) {
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space:
    case Space::Kind::discrete:
        return true;
    case Space::Kind::kappa: {
        const KappaSet& k = c.kappa();
        if (k.cofinite) return true;
        return !std::binary_search(k.elems.begin(), k.elems.end(), 0ll);
    }
    case Space::Kind::product: {
        for (size_t i = 0; i < s.factors.size(); ++i)
            if (!cell_is_open(*s.factors[i], c.product().parts[i])) return false;
        return true;
    }
    case Space::Kind::subspace:
        return cell_is_open(*s.parent, c);
    }
    return false;
}

bool point_isolated(const Space& s, const Point& p) {
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space:
        // a chain through a top is the only point of its top's cylinder
        return p.ray().top.has_value();
    case Space::Kind::kappa:
        return p.kappa() != 0;
    case Space::Kind::discrete:
        return true;
    case Space::Kind::product: {
        for (size_t i = 0; i < s.factors.size(); ++i)
            if (!point_isolated(*s.factors[i], p.tuple()[i])) return false;
        return true;
    }
    case Space::Kind::subspace:
        // exact for open subspaces, and every clip is open
        return point_isolated(*s.parent, p);
    }
    return false;
}

std::vector<Point> sample_points(const Space& s, const Budget& b) {
    std::vector<Point> out;
    switch (s.kind) {
    case Space::Kind::ray_space:
    case Space::Kind::branch_space: {
        for (const Ray& r : s.tree->sample_rays(b)) {
            if (s.kind == Space::Kind::branch_space && !s.tree->ray_is_branch(r)) continue;
            out.push_back(Point{r});
        }
        return out;
    }
    case Space::Kind::kappa: {
        for (long long v : {0ll, 1ll, 2ll, 3ll, 4ll, 5ll, 17ll}) out.push_back(Point{v});
        return out;
    }
    case Space::Kind::discrete: {
        for (int i = 0; i < s.size; ++i) out.push_back(Point{i});
        return out;
    }
    case Space::Kind::product: {
        std::vector<std::vector<Point>> fs;
        for (auto& f : s.factors) fs.push_back(sample_points(*f, b));
        std::vector<std::vector<Point>> tuples{{}};
        for (auto& f : fs) {
            std::vector<std::vector<Point>> next;
            for (auto& t : tuples)
                for (auto& p : f) {
                    if (next.size() >= 600) break;
                    auto t2 = t;
                    t2.push_back(p);
                    next.push_back(t2);
                }
            tuples = std::move(next);
        }
        for (auto& t : tuples) out.push_back(Point{t});
        return out;
    }
    case Space::Kind::subspace: {
        for (const Point& p : sample_points(*s.parent, b))
            if (point_in_space(s, p)) out.push_back(p);
        return out;
    }
    }
    return out;
}

} // namespace ends
