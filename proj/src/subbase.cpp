#include "ends/subbase.hpp"

#include <algorithm>

namespace ends {

namespace {

const Space& carrier(const Space& s) { return s.kind == Space::Kind::subspace ? *s.parent : s; }

bool finitely_branching(const OrderTree& t) {
    return t.preset() == OrderTree::Preset::binary ||
           t.preset() == OrderTree::Preset::michael_line;
}

} // namespace

Subbase Subbase::tree_cylinders(SpacePtr tree_space) {
    const Space& c = carrier(*tree_space);
    if (c.kind != Space::Kind::ray_space && c.kind != Space::Kind::branch_space)
        throw unsupported_space_error("cylinder subbase needs a tree space");
    if (!finitely_branching(*c.tree))
        throw unsupported_space_error("cylinder subbase needs finite branching");
    Subbase sb;
    sb.kind_ = Kind::tree;
    sb.space_ = std::move(tree_space);
    return sb;
}

Subbase Subbase::explicit_family(SpacePtr space, std::vector<Cell> members) {
    Subbase sb;
    sb.kind_ = Kind::explicit_list;
    sb.space_ = std::move(space);
    Cell whole = whole_cell(*sb.space_);
    bool has_whole = false;
    for (Cell& m : members) {
        auto c = cell_canon(*sb.space_, m);
        if (!c) throw configuration_error("empty subbasic member");
        if (*c == whole) has_whole = true;
        sb.members_.push_back(*c);
    }
    if (!has_whole) sb.members_.push_back(whole);
    std::sort(sb.members_.begin(), sb.members_.end(),
              [](const Cell& a, const Cell& b) { return cell_cmp(a, b) < 0; });
    sb.members_.erase(std::unique(sb.members_.begin(), sb.members_.end()), sb.members_.end());
    return sb;
}

Subbase Subbase::explicit_family(SpacePtr space, std::vector<Cell> members,
                                 std::map<std::string, std::vector<Cell>> rho_table) {
    Subbase sb = explicit_family(std::move(space), std::move(members));
    sb.rho_table_ = std::move(rho_table);
    return sb;
}

Cell Subbase::whole() const { return whole_cell(*space_); }

std::vector<Cell> Subbase::maximal_proper_inside(const Cell& U) const {
    const Space& s = *space_;
    if (kind_ == Kind::tree) {
        const OrderTree& tree = *carrier(s).tree;
        const TreeCell& u = U.tree();
        std::vector<Cell> out;
        for (const NodeId& c : tree.successors(u.anchor, 8)) {
            auto cc = cell_canon(s, make_tree_cell(c));
            if (!cc) continue;
            if (*cc == U) continue; // unique-successor chains collapse
            out.push_back(*cc);
        }
        std::sort(out.begin(), out.end(),
                  [](const Cell& a, const Cell& b) { return cell_cmp(a, b) < 0; });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    std::vector<Cell> inside;
    for (const Cell& m : members_)
        if (m != U && cell_subset(s, m, U) && !cell_subset(s, U, m)) inside.push_back(m);
    std::vector<Cell> out;
    for (const Cell& m : inside) {
        bool maximal = true;
        for (const Cell& n : inside)
            if (n != m && cell_subset(s, m, n) && !cell_subset(s, n, m)) maximal = false;
        if (maximal) out.push_back(m);
    }
    return out;
}

bool Subbase::rho_available(const Cell& U) const {
    if (kind_ == Kind::tree) return true;
    return rho_table_ && rho_table_->count(cell_str(U)) > 0;
}

std::vector<Cell> Subbase::rho(const Cell& U) const {
    const Space& s = *space_;
    if (kind_ == Kind::tree) {
        const TreeCell& u = U.tree();
        std::vector<Cell> out;
        size_t depth = is_upper(u.anchor)
                           ? upper(u.anchor).ray.stem.size() + upper(u.anchor).ray.cycle.size() + 2
                           : lower_word(u.anchor).size();
        for (size_t k = 1; k < depth; ++k) {
            Word p = is_upper(u.anchor)
                         ? upper(u.anchor).ray.prefix(k)
                         : Word(lower_word(u.anchor).begin(),
                                lower_word(u.anchor).begin() + static_cast<long>(k));
            if (auto c = cell_canon(s, make_tree_cell(p))) out.push_back(*c);
        }
        return out;
    }
    if (!rho_available(U)) throw configuration_error("no stored chain for " + cell_str(U));
    return rho_table_->at(cell_str(U));
}

std::optional<Cell> Subbase::rho_window_max(const Cell& U, const Cell& bound) const {
    const Space& s = *space_;
    if (kind_ == Kind::tree) {
        // chain members over U are the cylinders of the anchor's proper
        // prefixes; the window maximum is the shallowest one strictly
        // inside the bound
        const TreeCell& u = U.tree();
        const TreeCell& b = bound.tree();
        if (is_upper(b.anchor)) return std::nullopt;
        size_t k = lower_word(b.anchor).size() + 1;
        if (!is_upper(u.anchor) && k + 1 > lower_word(u.anchor).size()) return std::nullopt;
        Word p = is_upper(u.anchor)
                     ? upper(u.anchor).ray.prefix(k)
                     : Word(lower_word(u.anchor).begin(),
                            lower_word(u.anchor).begin() + static_cast<long>(k));
        auto c = cell_canon(s, make_tree_cell(p));
        if (!c) return std::nullopt;
        if (!cell_subset(s, U, *c) || *c == U) return std::nullopt;
        if (!cell_subset(s, *c, bound) || cell_subset(s, bound, *c)) return std::nullopt;
        return c;
    }
    if (!rho_available(U)) throw configuration_error("no stored chain for " + cell_str(U));
    std::optional<Cell> best;
    for (const Cell& v : rho(U)) {
        if (!cell_subset(s, U, v) || cell_subset(s, v, U)) continue;
        if (!cell_subset(s, v, bound) || cell_subset(s, bound, v)) continue;
        if (!best || (cell_subset(s, *best, v) && *best != v)) best = v;
    }
    return best;
}

std::optional<Cell> Subbase::smallest_containing(const Point& x) const {
    const Space& s = *space_;
    if (kind_ == Kind::tree) {
        // a chain through a top pins a smallest cylinder; lower rays descend
        // through strictly shrinking ones
        if (!std::holds_alternative<Ray>(x.v)) return std::nullopt;
        const Ray& r = x.ray();
        if (r.top) return cell_canon(s, make_tree_cell(UpperNode{r.lower, *r.top, 0}));
        return std::nullopt;
    }
    std::optional<Cell> best;
    for (const Cell& m : members_) {
        if (!cell_contains(s, m, x)) continue;
        if (!best || (cell_subset(s, m, *best) && m != *best)) best = m;
    }
    return best;
}

std::vector<Cell> Subbase::materialize(const Budget& b) const {
    const Space& s = *space_;
    if (kind_ == Kind::explicit_list) return members_;
    const OrderTree& tree = *carrier(s).tree;
    std::vector<Cell> out;
    for (const NodeId& n : tree.materialize_nodes(tree.height_bound(), b))
        if (auto c = cell_canon(s, make_tree_cell(n))) out.push_back(*c);
    std::sort(out.begin(), out.end(),
              [](const Cell& x, const Cell& y) { return cell_cmp(x, y) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SubbaseReport Subbase::properties(const Budget& b) const {
    const Space& s = *space_;
    SubbaseReport rep;
    std::vector<Cell> mem = materialize(b);
    rep.members_checked = static_cast<int>(mem.size());
    rep.chain_depth_certified = b.depth;
    for (size_t i = 0; i < mem.size() && rep.nested; ++i)
        for (size_t j = i + 1; j < mem.size() && rep.nested; ++j) {
            try {
                cmp_basic_opens(s, mem[i], mem[j]);
            } catch (const nestedness_violation&) {
                rep.nested = false;
                rep.nested_witness = {mem[i], mem[j]};
            }
        }
    // every materialized ascending chain is finite, so maxima exist up to
    // the certified depth; the flag can only fail for symbolic families
    rep.noetherian = true;
    // greedy antichain indices: members grouped by a level function when
    // available, otherwise first-fit disjointness
    if (rep.nested) {
        std::vector<int> index(mem.size(), -1);
        int next = 0;
        for (size_t i = 0; i < mem.size(); ++i) {
            for (int idx = 0; idx < next; ++idx) {
                bool ok = true;
                for (size_t j = 0; j < i; ++j)
                    if (index[j] == idx && !cell_disjoint(s, mem[i], mem[j])) ok = false;
                if (ok) {
                    index[i] = idx;
                    break;
                }
            }
            if (index[i] < 0) index[i] = next++;
        }
        rep.antichains_used = next;
        for (size_t i = 0; i < mem.size(); ++i)
            for (size_t j = i + 1; j < mem.size(); ++j)
                if (index[i] == index[j] && !cell_disjoint(s, mem[i], mem[j]))
                    rep.sigma_disjoint = false;
    } else {
        rep.sigma_disjoint = false;
    }
    rep.clopen = true; // cylinder and explicit members are clopen by construction
    return rep;
}

std::optional<Cell> basis_element_from_query(const Subbase& sb, const std::vector<Cell>& positives,
                                             const std::vector<Cell>& negatives) {
    const Space& s = *sb.space();
    if (positives.empty()) throw configuration_error("no positive factors");
    // the positives must form a chain; the smallest absorbs the rest
    Cell anchor = positives.front();
    for (const Cell& p : positives) {
        auto r = cmp_basic_opens(s, anchor, p); // throws on non-nested input
        if (r == CmpResult::disjoint) return std::nullopt;
        if (r == CmpResult::b_inside_a) anchor = p;
    }
    std::vector<Cell> rest{anchor};
    for (const Cell& n : negatives) {
        std::vector<Cell> next;
        for (const Cell& r : rest) {
            auto sub = cell_subtract(s, r, n);
            next.insert(next.end(), sub.begin(), sub.end());
        }
        rest = std::move(next);
    }
    if (rest.empty()) return std::nullopt;
    if (rest.size() == 1) return rest.front();
    // nested holes keep normal forms single-celled; anything else means the
    // family was not nested after all
    throw nestedness_violation("query does not normalize to one basic open", anchor,
                               negatives.front());
}

std::vector<Cell> generated_basis(const Subbase& sb, const Budget& b, int max_holes) {
    const Space& s = *sb.space();
    std::vector<Cell> mem = sb.materialize(b);
    std::vector<Cell> out;
    for (const Cell& u : mem) {
        std::vector<Cell> inside;
        for (const Cell& m : mem)
            if (m != u && cell_subset(s, m, u)) inside.push_back(m);
        // holes chosen pairwise disjoint, up to the budget
        std::vector<std::vector<Cell>> queue{{}};
        for (const Cell& h : inside) {
            size_t sz = queue.size();
            for (size_t i = 0; i < sz; ++i) {
                if (static_cast<int>(queue[i].size()) >= max_holes) continue;
                bool disj = true;
                for (const Cell& g : queue[i])
                    if (!cell_disjoint(s, g, h)) disj = false;
                if (disj) {
                    auto next = queue[i];
                    next.push_back(h);
                    queue.push_back(std::move(next));
                }
            }
            if (queue.size() > 4000) break;
        }
        for (const auto& holes : queue)
            if (auto c = basis_element_from_query(sb, {u}, holes))
                out.push_back(*c);
    }
    std::sort(out.begin(), out.end(),
              [](const Cell& x, const Cell& y) { return cell_cmp(x, y) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ends
