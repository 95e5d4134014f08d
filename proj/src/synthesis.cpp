#include "ends/synthesis.hpp"

#include <algorithm>

namespace ends {

namespace {

// smallest subbasic member containing the cell (its anchor value)
Cell host_member(const Subbase& sb, const Cell& cc) {
    const Space& s = *sb.space();
    if (sb.is_tree()) return *cell_canon(s, make_tree_cell(cc.tree().anchor));
    std::optional<Cell> host;
    for (const Cell& m : sb.materialize(Budget{})) {
        if (!cell_subset(s, cc, m)) continue;
        if (!host || (cell_subset(s, m, *host) && m != *host)) host = m;
    }
    return host ? *host : whole_cell(s);
}

} // namespace

DichotomyResult dichotomy_case(const Subbase& sb, const Cell& set) {
    const Space& s = *sb.space();
    auto cc = cell_canon(s, set);
    if (!cc) throw synthesis_error("dichotomy of the empty set");
    DichotomyResult out;
    // points of the set with no strictly smaller member around them
    std::vector<Cell> residual{*cc};
    std::vector<Cell> anchor_children = sb.maximal_proper_inside(host_member(sb, *cc));
    for (const Cell& c : anchor_children) {
        std::vector<Cell> next;
        for (const Cell& r : residual) {
            auto sub = cell_subtract(s, r, c);
            next.insert(next.end(), sub.begin(), sub.end());
        }
        residual = std::move(next);
        if (residual.empty()) break;
    }
    int leftover = 0;
    std::optional<Point> wit;
    for (const Cell& r : residual) {
        int k = cell_count_class(s, r);
        leftover += k;
        if (!wit && k > 0) wit = cell_witness(s, r);
    }
    if (leftover == 0) return out; // case i
    if (leftover >= 2)
        throw synthesis_error("dichotomy violated: two points without smaller members");
    out.every_point_has_smaller = false;
    out.witness = wit;
    return out;
}

namespace {

// value-level hole data shared by the first two partition cases
struct HoleValue {
    Cell value;      // the subbasic cylinder removed
    Cell enlarged;   // the chain window maximum over it (or itself)
    bool fallback = false;
};

std::vector<Cell> piece_minus(const Space& s, const Cell& base, const std::vector<Cell>& minus) {
    std::vector<Cell> pieces{base};
    for (const Cell& m : minus) {
        std::vector<Cell> next;
        for (const Cell& p : pieces) {
            auto sub = cell_subtract(s, p, m);
            next.insert(next.end(), sub.begin(), sub.end());
        }
        pieces = std::move(next);
    }
    return pieces;
}

// collects subset-maximal distinct values
std::vector<Cell> maximal_values(const Space& s, std::vector<Cell> vals) {
    std::sort(vals.begin(), vals.end(),
              [](const Cell& a, const Cell& b) { return cell_cmp(a, b) < 0; });
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<Cell> out;
    for (const Cell& v : vals) {
        bool covered = false;
        for (const Cell& w : vals)
            if (w != v && cell_subset(s, v, w)) covered = true;
        if (!covered) out.push_back(v);
    }
    return out;
}

} // namespace

KPrime kprime_partition(const Subbase& sb, const Cell& set) {
    const Space& s = *sb.space();
    auto cc = cell_canon(s, set);
    if (!cc) throw synthesis_error("partition of the empty set");
    DichotomyResult dich = dichotomy_case(sb, *cc);
    KPrime out;

    // hole values: the removed subbasic cylinders
    std::vector<Cell> holes;
    Cell anchor_value = host_member(sb, *cc);
    if (sb.is_tree()) {
        for (const NodeId& h : cc->tree().holes)
            if (auto hv = cell_canon(s, make_tree_cell(h))) holes.push_back(*hv);
    } else {
        // recover holes of an explicit-family cell: maximal members inside
        // the host that the set avoids
        std::vector<Cell> avoided;
        for (const Cell& m : sb.materialize(Budget{}))
            if (cell_subset(s, m, anchor_value) && cell_disjoint(s, m, *cc))
                avoided.push_back(m);
        holes = maximal_values(s, avoided);
    }

    if (dich.every_point_has_smaller) {
        // case i: children of the anchor, trimmed around the enlarged holes
        out.item = 1;
        std::vector<Cell> children = sb.maximal_proper_inside(anchor_value);
        std::vector<HoleValue> hv;
        for (const Cell& h : holes) {
            // the child containing the hole bounds its window
            std::optional<Cell> child;
            for (const Cell& c : children)
                if (cell_subset(s, h, c)) child = c;
            HoleValue v{h, h, false};
            if (child) {
                if (auto w = sb.rho_window_max(h, *child)) v.enlarged = *w;
                else v.fallback = true;
            } else {
                v.fallback = true;
            }
            out.window_fallback |= v.fallback;
            hv.push_back(std::move(v));
        }
        std::vector<Cell> enlarged;
        for (const HoleValue& v : hv) enlarged.push_back(v.enlarged);
        enlarged = maximal_values(s, enlarged);
        for (const Cell& c : children)
            for (const Cell& p : piece_minus(s, c, enlarged))
                if (auto i = cell_intersect(s, p, *cc)) out.pieces.push_back(*i);
        for (const Cell& w : enlarged) {
            // inside an enlarged window: remove the raw holes under it and
            // any strictly smaller windows
            std::vector<Cell> minus;
            for (const HoleValue& v : hv)
                if (cell_subset(s, v.value, w)) minus.push_back(v.value);
            for (const Cell& w2 : enlarged)
                if (w2 != w && cell_subset(s, w2, w)) minus.push_back(w2);
            minus = maximal_values(s, minus);
            for (const Cell& p : piece_minus(s, w, minus)) out.pieces.push_back(p);
        }
    } else {
        // cases ii: enlarge each hole inside the anchor itself
        std::vector<HoleValue> hv;
        bool any_grew = false;
        for (const Cell& h : holes) {
            HoleValue v{h, h, false};
            if (auto w = sb.rho_window_max(h, anchor_value)) {
                v.enlarged = *w;
                any_grew = true;
            }
            hv.push_back(std::move(v));
        }
        if (any_grew) {
            out.item = 2;
            std::vector<Cell> enlarged;
            for (const HoleValue& v : hv) enlarged.push_back(v.enlarged);
            enlarged = maximal_values(s, enlarged);
            for (const Cell& p : piece_minus(s, anchor_value, enlarged)) out.pieces.push_back(p);
            for (const HoleValue& v : hv) {
                if (v.enlarged == v.value) continue;
                std::vector<Cell> minus;
                for (const HoleValue& g : hv)
                    if (cell_subset(s, g.value, v.enlarged)) minus.push_back(g.value);
                for (const HoleValue& g : hv)
                    if (g.enlarged != v.enlarged && cell_subset(s, g.enlarged, v.enlarged))
                        minus.push_back(g.enlarged);
                minus = maximal_values(s, minus);
                for (const Cell& p : piece_minus(s, v.enlarged, minus)) out.pieces.push_back(p);
            }
        } else if (cell_is_singleton(s, *cc)) {
            out.item = 3;
            out.pieces.push_back(*cc); // the trivial cover of a pinned point
        } else {
            out.item = 4;
            // split off a smaller member around some other point
            std::optional<Cell> uy;
            for (const Cell& c : sb.maximal_proper_inside(anchor_value)) {
                auto i = cell_intersect(s, c, *cc);
                if (!i) continue;
                if (dich.witness && cell_contains(s, c, *dich.witness)) continue;
                uy = c;
                break;
            }
            if (!uy) throw synthesis_error("no member splits the set: " + cell_str(*cc));
            out.pieces.push_back(*cell_intersect(s, *uy, *cc));
            for (const Cell& p : cell_subtract(s, *cc, *uy)) out.pieces.push_back(p);
        }
    }

    // paranoia-free exit: drop empties, sort for determinism
    std::vector<Cell> clean;
    for (const Cell& p : out.pieces)
        if (auto c = cell_canon(s, p))
            if (std::find(clean.begin(), clean.end(), *c) == clean.end()) clean.push_back(*c);
    std::sort(clean.begin(), clean.end(),
              [](const Cell& a, const Cell& b) { return cell_cmp(a, b) < 0; });
    out.pieces = std::move(clean);
    return out;
}

std::vector<int> SynthTree::level(int d) const {
    std::vector<int> out;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].depth == d) out.push_back(static_cast<int>(i));
    return out;
}

SynthTree build_tc(SpacePtr space, const Subbase& sb, const StrategyHandle& psi, int depth) {
    const Space& s = *space;
    SynthTree tc;
    tc.space = space;
    tc.depth = depth;
    SynthNode root;
    root.cell = whole_cell(s);
    tc.nodes.push_back(root);
    std::vector<int> frontier{0};
    for (int d = 0; d < depth; ++d) {
        std::vector<int> next;
        for (int idx : frontier) {
            SynthNode& node = tc.nodes[static_cast<size_t>(idx)];
            if (node.terminal) continue;
            MatchState pseudo;
            pseudo.game = GameKind::end_basis;
            pseudo.space = space;
            Round r;
            r.open_i = {node.cell};
            pseudo.rounds.push_back(r);
            auto cover = psi.next_cover(pseudo, {node.cell});
            if (!cover) throw synthesis_error("strategy gave no cover at " + cell_str(node.cell));
            if (auto v = validate_cover_move(s, {node.cell}, *cover))
                throw synthesis_error("strategy broke rule " + v->rule + " at " +
                                      cell_str(node.cell));
            std::vector<Cell> kids;
            for (const Cell& w : cover->pieces) {
                KPrime kp = kprime_partition(sb, w);
                tc.window_fallback_seen |= kp.window_fallback;
                for (const Cell& piece : kp.pieces) {
                    int item = kp.item;
                    if (piece == node.cell && kp.item == 3) {
                        tc.nodes[static_cast<size_t>(idx)].terminal = true;
                        continue;
                    }
                    SynthNode child;
                    child.cell = piece;
                    child.parent = idx;
                    child.depth = d + 1;
                    child.item = item;
                    kids.push_back(piece);
                    tc.nodes.push_back(child);
                    tc.nodes[static_cast<size_t>(idx)].children.push_back(
                        static_cast<int>(tc.nodes.size() - 1));
                    next.push_back(static_cast<int>(tc.nodes.size() - 1));
                }
            }
        }
        frontier = std::move(next);
    }
    // limit data for the eventually periodic leaf paths
    for (int leaf : tc.level(depth)) {
        std::vector<Cell> chain_cells;
        for (int at = leaf; at != -1; at = tc.nodes[static_cast<size_t>(at)].parent)
            chain_cells.push_back(tc.nodes[static_cast<size_t>(at)].cell);
        std::reverse(chain_cells.begin(), chain_cells.end());
        auto tail = detect_periodic_tail(s, chain_cells);
        if (!tail) continue;
        Chain chain{chain_cells, tail};
        auto dec = decompose_point_plus_open(s, chain);
        if (dec.kind != DecKind::unique) continue;
        LimitAttachment la;
        la.leaf = leaf;
        la.captured = *dec.x;
        la.tops = dec.a.cells;
        tc.limits.push_back(std::move(la));
    }
    return tc;
}

SynthReport verify_synth_subbase(const SynthTree& tc, const Budget& b) {
    const Space& s = *tc.space;
    SynthReport rep;
    rep.window_fallback_seen = tc.window_fallback_seen;

    // (a) family properties of the node cells
    std::vector<Cell> family;
    for (const SynthNode& n : tc.nodes) family.push_back(n.cell);
    std::sort(family.begin(), family.end(),
              [](const Cell& x, const Cell& y) { return cell_cmp(x, y) < 0; });
    family.erase(std::unique(family.begin(), family.end()), family.end());
    rep.family.members_checked = static_cast<int>(family.size());
    rep.family.chain_depth_certified = tc.depth;
    for (size_t i = 0; i < family.size() && rep.family.nested; ++i)
        for (size_t j = i + 1; j < family.size() && rep.family.nested; ++j) {
            try {
                cmp_basic_opens(s, family[i], family[j]);
            } catch (const nestedness_violation&) {
                rep.family.nested = false;
                rep.family.nested_witness = {family[i], family[j]};
            }
        }
    // levels are antichains: same-depth nodes must be pairwise disjoint
    int max_idx = 0;
    for (int d = 0; d <= tc.depth; ++d) {
        auto lvl = tc.level(d);
        max_idx = std::max(max_idx, d);
        for (size_t i = 0; i < lvl.size(); ++i)
            for (size_t j = i + 1; j < lvl.size(); ++j) {
                const Cell& a = tc.nodes[static_cast<size_t>(lvl[i])].cell;
                const Cell& c = tc.nodes[static_cast<size_t>(lvl[j])].cell;
                if (a == c) continue;
                if (!cell_disjoint(s, a, c)) rep.family.sigma_disjoint = false;
            }
    }
    rep.family.antichains_used = max_idx + 1;

    // per-node partition: children tile their parent
    for (size_t i = 0; i < tc.nodes.size(); ++i) {
        const SynthNode& n = tc.nodes[i];
        if (n.children.empty()) continue;
        SynthCheckItem item;
        item.check = "children-partition:" + cell_str(n.cell);
        OpenSet kids;
        for (int k : n.children) kids.cells.push_back(tc.nodes[static_cast<size_t>(k)].cell);
        for (size_t a = 0; a < kids.cells.size() && item.pass; ++a)
            for (size_t c = a + 1; c < kids.cells.size() && item.pass; ++c)
                if (!cell_disjoint(s, kids.cells[a], kids.cells[c])) {
                    item.pass = false;
                    item.witness = "overlap " + cell_str(kids.cells[a]);
                }
        if (item.pass && !open_covers_cell(s, kids, n.cell)) {
            item.pass = false;
            item.witness = "children miss part of the node";
        }
        for (int k : n.children)
            if (item.pass && !cell_subset(s, tc.nodes[static_cast<size_t>(k)].cell, n.cell)) {
                item.pass = false;
                item.witness = "child escapes the node";
            }
        if (!item.pass) rep.items.push_back(item);
    }
    rep.items.push_back({"children-partition", true, ""});

    // (b) local basis spot checks around sampled points
    for (const Point& x : sample_points(s, b)) {
        // walk the path of nodes containing x
        std::vector<int> path{0};
        if (!cell_contains(s, tc.nodes[0].cell, x)) continue;
        while (true) {
            const SynthNode& n = tc.nodes[static_cast<size_t>(path.back())];
            int found = -1;
            for (int k : n.children)
                if (cell_contains(s, tc.nodes[static_cast<size_t>(k)].cell, x)) found = k;
            if (found < 0) break;
            path.push_back(found);
        }
        // the attachment family of x's path, if any; a point living inside
        // an attached member has that member as its own smallest element
        std::vector<Cell> tops;
        std::optional<Cell> pinned;
        for (const LimitAttachment& la : tc.limits) {
            if (la.leaf != path.back()) continue;
            if (la.captured == x) tops = la.tops;
            for (const Cell& t : la.tops)
                if (cell_contains(s, t, x)) pinned = t;
        }
        // candidate surrounding basics: prefix cells around x, plus
        // top-punctured ones when the path's limit data is materialized
        std::vector<Cell> around;
        if (std::holds_alternative<Ray>(x.v)) {
            const Ray& r = x.ray();
            bool trimmed_ok = r.top ? pinned.has_value() : !tops.empty();
            for (size_t k = 1; k <= 3; ++k) {
                std::vector<NodeId> hs;
                around.push_back(make_tree_cell(r.lower.prefix(k)));
                const OrderTree& tree =
                    *(s.kind == Space::Kind::subspace ? *s.parent : s).tree;
                for (int j = 0; j < tree.top_count(r.lower); ++j)
                    if (!r.top || *r.top != j) hs.push_back(UpperNode{r.lower, j, 0});
                if (!hs.empty() && trimmed_ok)
                    around.push_back(make_tree_cell(r.lower.prefix(k), hs));
            }
        } else {
            around.push_back(whole_cell(s));
        }
        for (const Cell& w : around) {
            auto wc = cell_canon(s, w);
            if (!wc || !cell_contains(s, *wc, x)) continue;
            bool fits = pinned && cell_subset(s, *pinned, *wc);
            for (int idx : path) {
                if (fits) break;
                const Cell& nc = tc.nodes[static_cast<size_t>(idx)].cell;
                if (cell_subset(s, nc, *wc)) fits = true;
                // allow trimming finitely many attachment members
                std::vector<Cell> trimmed = piece_minus(s, nc, tops);
                bool all_in = !trimmed.empty();
                for (const Cell& t : trimmed) {
                    if (!cell_contains(s, t, x)) continue;
                    if (!cell_subset(s, t, *wc)) all_in = false;
                }
                bool contains_x = false;
                for (const Cell& t : trimmed)
                    if (cell_contains(s, t, x)) contains_x = true;
                if (all_in && contains_x) fits = true;
                if (fits) break;
            }
            if (!fits)
                rep.items.push_back({"local-basis", false,
                                     point_str(x) + " has no element inside " + cell_str(*wc)});
        }
    }
    rep.items.push_back({"local-basis", true, ""});

    // (c) completeness spot checks: periodic paths meeting sampled closed
    // sets keep a common point
    std::vector<Cell> closed_complements = {whole_cell(s)};
    if (s.kind == Space::Kind::ray_space || s.kind == Space::Kind::branch_space) {
        closed_complements.push_back(make_tree_cell(Word{0}));
        closed_complements.push_back(make_tree_cell(Word{1, 1}));
    }
    for (const LimitAttachment& la : tc.limits) {
        std::vector<Cell> chain_cells;
        for (int at = la.leaf; at != -1; at = tc.nodes[static_cast<size_t>(at)].parent)
            chain_cells.push_back(tc.nodes[static_cast<size_t>(at)].cell);
        std::reverse(chain_cells.begin(), chain_cells.end());
        for (const Cell& comp : closed_complements) {
            // Y = complement of comp; centered iff every chain cell meets Y
            bool centered = true;
            for (const Cell& c : chain_cells)
                if (cell_subtract(s, c, comp).empty()) centered = false;
            if (!centered) continue;
            bool limit_meets = !cell_contains(s, comp, la.captured);
            for (const Cell& t : la.tops)
                if (!cell_subtract(s, t, comp).empty()) limit_meets = true;
            if (!limit_meets)
                rep.items.push_back({"completeness", false,
                                     "centered chain misses its limit in the complement of " +
                                         cell_str(comp)});
        }
    }
    rep.items.push_back({"completeness", true, ""});
    return rep;
}

BisimCertificate bisimulation_certificate(const SynthTree& tc, int reference_level) {
    const Space& s = *tc.space;
    BisimCertificate cert;
    const Space& base = s.kind == Space::Kind::subspace ? *s.parent : s;
    if (base.kind != Space::Kind::ray_space && base.kind != Space::Kind::branch_space) {
        cert.detail = "reference lattice needs a tree space";
        return cert;
    }
    // every node names a reference basic open already (cells are canonical),
    // so the check is injectivity per level plus exact leaf tiling
    std::vector<Cell> leaves;
    for (int idx : tc.level(tc.depth)) {
        const Cell& c = tc.nodes[static_cast<size_t>(idx)].cell;
        leaves.push_back(c);
        cert.matched.push_back({"node" + std::to_string(idx), cell_str(c)});
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Cell& a, const Cell& b) { return cell_cmp(a, b) < 0; });
    if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end()) {
        cert.detail = "leaf cells repeat";
        return cert;
    }
    // the deepest level must tile the space exactly like the reference level
    const OrderTree& tree = *base.tree;
    Budget b;
    b.depth = reference_level;
    std::vector<Cell> reference;
    for (const NodeId& n : tree.materialize_nodes(Ordinal::finite(reference_level), b))
        if (node_height(n) == Ordinal::finite(reference_level))
            if (auto c = cell_canon(s, make_tree_cell(n))) reference.push_back(*c);
    std::sort(reference.begin(), reference.end(),
              [](const Cell& a, const Cell& b2) { return cell_cmp(a, b2) < 0; });
    reference.erase(std::unique(reference.begin(), reference.end()), reference.end());
    if (leaves != reference) {
        cert.detail = "leaf lattice differs from the reference level: " +
                      std::to_string(leaves.size()) + " vs " + std::to_string(reference.size());
        return cert;
    }
    // order preservation: parent cells contain their children
    for (const SynthNode& n : tc.nodes)
        for (int k : n.children)
            if (!cell_subset(s, tc.nodes[static_cast<size_t>(k)].cell, n.cell)) {
                cert.detail = "containment broken";
                return cert;
            }
    cert.pass = true;
    cert.detail = "matched " + std::to_string(leaves.size()) + " basics at level " +
                  std::to_string(reference_level);
    return cert;
}

} // namespace ends
