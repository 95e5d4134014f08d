#include "ends/strategies.hpp"

#include <algorithm>

namespace ends {

namespace {

const Space& tree_carrier(const Space& s) {
    const Space& c = s.kind == Space::Kind::subspace ? *s.parent : s;
    if (c.kind != Space::Kind::ray_space && c.kind != Space::Kind::branch_space)
        throw unsupported_space_error("tree strategy needs a ray or branch space");
    return c;
}

// min index i with t < hat(m)_i; the stored cofinal sequence of an upper
// limit node is the sequence of its ray's proper prefixes, so the witness is
// the successor of t along that ray. The root's sequence is empty.
std::optional<NodeId> hat_witness(const OrderTree& tree, const NodeId& t, const NodeId& m) {
    NodeId mh = tree.hat(m);
    if (!is_upper(mh)) return std::nullopt; // root: no cofinal element above t
    if (!node_lt(t, mh)) return std::nullopt;
    const Word& tw = lower_word(t);
    return upper(mh).ray.prefix(tw.size() + 1);
}

} // namespace

TypedCover pitz_typed_cover(const SpacePtr& space, const Cell& target, int width_budget) {
    const Space& s = *space;
    const OrderTree& tree = *tree_carrier(s).tree;
    auto tc = cell_canon(s, target);
    if (!tc) throw protocol_error("cover of an empty set requested");
    const TreeCell& v = tc->tree();
    const NodeId t = v.anchor;
    const std::vector<NodeId> fset = v.holes;

    TypedCover out;
    struct HoleData {
        NodeId m;
        NodeId mh;
        std::optional<NodeId> wit; // hat(m)_{i(m)}
    };
    std::vector<HoleData> hd;
    for (const NodeId& m : fset) hd.push_back({m, tree.hat(m), hat_witness(tree, t, m)});

    auto add_piece = [&](int kind, NodeId anchor, std::vector<NodeId> lambda) {
        TypedCoverPiece p;
        p.kind = kind;
        p.formula_anchor = anchor;
        p.lambda = lambda;
        Cell formula = make_tree_cell(std::move(anchor), std::move(lambda));
        p.realized = cell_intersect(s, formula, *tc);
        out.pieces.push_back(std::move(p));
    };

    // type 1: one piece per successor of the anchor
    std::vector<NodeId> succ = tree.successors(t, width_budget);
    bool exhaustive = tree.successors_exhaustive(t, width_budget);
    for (const NodeId& su : succ) {
        std::vector<NodeId> lambda;
        for (const HoleData& h : hd)
            if (h.wit && node_lt(su, *h.wit)) lambda.push_back(*h.wit);
        lambda.insert(lambda.end(), fset.begin(), fset.end());
        add_piece(1, su, std::move(lambda));
    }
    // types 2 and 3: approach control for holes with a limit node below them
    for (const HoleData& h : hd) {
        if (!h.wit) continue;
        std::vector<NodeId> lambda2;
        for (const HoleData& g : hd) {
            if (g.wit && node_lt(*h.wit, *g.wit)) lambda2.push_back(*g.wit);
            if (node_lt(*h.wit, g.mh)) lambda2.push_back(g.mh);
            if (node_lt(*h.wit, g.m)) lambda2.push_back(g.m);
        }
        add_piece(2, *h.wit, std::move(lambda2));

        std::vector<NodeId> lambda3;
        for (const HoleData& g : hd) {
            if (g.wit && node_lt(h.mh, *g.wit)) lambda3.push_back(*g.wit);
            if (node_lt(h.mh, g.m)) lambda3.push_back(g.m);
        }
        add_piece(3, h.mh, std::move(lambda3));
    }

    // assemble the played cover: nonempty realizations, deduplicated
    std::vector<Cell> played;
    for (const TypedCoverPiece& p : out.pieces)
        if (p.realized && std::find(played.begin(), played.end(), *p.realized) == played.end())
            played.push_back(*p.realized);
    std::sort(played.begin(), played.end(),
              [](const Cell& a, const Cell& b) { return cell_cmp(a, b) < 0; });
    out.cover.pieces = std::move(played);

    if (!exhaustive) {
        // countably many further successors: expose them through a rest
        std::vector<NodeId> region_holes = fset;
        for (const NodeId& su : succ) region_holes.push_back(su);
        auto region = cell_canon(s, make_tree_cell(t, region_holes));
        if (region) {
            Cover::Rest rest;
            rest.label = "type-1 pieces over the remaining successors";
            rest.region = *region;
            Cell target_cell = *tc;
            SpacePtr sp = space;
            rest.materialize = [sp, target_cell, t, fset](const Cell& probe) -> std::optional<Cell> {
                if (!std::holds_alternative<TreeCell>(probe.v)) return std::nullopt;
                const NodeId& pa = probe.tree().anchor;
                const Word& tw = lower_word(t);
                Word child;
                if (!is_upper(pa)) {
                    const Word& w = lower_word(pa);
                    if (w.size() <= tw.size() || !is_prefix(tw, w)) return std::nullopt;
                    child = Word(w.begin(), w.begin() + static_cast<long>(tw.size()) + 1);
                } else {
                    if (!upper(pa).ray.contains_word(tw)) return std::nullopt;
                    child = upper(pa).ray.prefix(tw.size() + 1);
                }
                if (!sp->tree && sp->kind != Space::Kind::subspace) return std::nullopt;
                const OrderTree& tr = *tree_carrier(*sp).tree;
                if (!tr.word_exists(child)) return std::nullopt;
                Cell formula = make_tree_cell(child, fset);
                return cell_intersect(*sp, formula, target_cell);
            };
            out.cover.rest = std::move(rest);
        }
    }
    return out;
}

StrategyHandle pitz_tree_strategy(SpacePtr space, int width_budget) {
    tree_carrier(*space);
    StrategyHandle h;
    h.player = PlayerId::II;
    h.stationary = true;
    h.finite_state = true;
    h.name = "pitz";
    h.next_cover = [space, width_budget](const MatchState&,
                                         const std::vector<Cell>& last) -> std::optional<Cover> {
        std::vector<Cover> per_cell;
        for (const Cell& c : last) per_cell.push_back(pitz_typed_cover(space, c, width_budget).cover);
        if (per_cell.size() == 1) return per_cell.front();
        Cover merged;
        for (Cover& c : per_cell) {
            merged.pieces.insert(merged.pieces.end(), c.pieces.begin(), c.pieces.end());
            if (c.rest) {
                if (merged.rest) return std::nullopt; // one symbolic rest at a time
                merged.rest = c.rest;
            }
        }
        return merged;
    };
    return h;
}

} // namespace ends
