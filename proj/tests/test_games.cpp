#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ends/strategies.hpp"
#include "ends/transfer.hpp"

using namespace ends;

namespace {

Budget deep_budget() {
    Budget b;
    b.ray_stem = 4;
    return b;
}

// Every sampled point is in the whole chain iff it equals x or lies in A.
void verify_decomposition(const Space& s, const MatchState& m, int depth) {
    REQUIRE(m.verdict.dec.kind == DecKind::unique);
    REQUIRE(m.verdict.dec.x);
    const Point& x = *m.verdict.dec.x;
    CHECK(point_in_space(s, x));
    CHECK_FALSE(open_contains(s, m.verdict.dec.a, x));
    Budget b;
    b.ray_stem = depth;
    Chain chain{m.chain_cells, m.tail};
    for (const Point& p : sample_points(s, b)) {
        bool in_limit = chain_limit_contains(s, chain, p);
        bool in_xa = p == x || open_contains(s, m.verdict.dec.a, p);
        CAPTURE(point_str(p));
        CHECK(in_limit == in_xa);
    }
}

} // namespace

TEST_CASE("move validation catches rule breaches") {
    auto s = Space::ray_space(OrderTree::binary());
    MatchState st;
    st.game = GameKind::end_basis;
    st.space = s;
    // legal: a nonempty basic open
    CHECK_FALSE(validate_open_move(*s, GameKind::end_basis, st, {make_tree_cell(Word{0})}));
    // empty move
    CHECK(validate_open_move(*s, GameKind::end_basis, st,
                             {make_tree_cell(Word{0}, {Word{0, 0}, Word{0, 1}})}));
    // overlapping cover
    Cover bad;
    bad.pieces = {make_tree_cell(Word{0}), make_tree_cell(Word{0, 0})};
    auto v = validate_cover_move(*s, {make_tree_cell(Word{0})}, bad);
    REQUIRE(v);
    CHECK(v->rule == "disjointness");
    // cover missing a point reports a witness descriptor
    Cover partial;
    partial.pieces = {make_tree_cell(Word{0, 0})};
    auto v2 = validate_cover_move(*s, {make_tree_cell(Word{0})}, partial);
    REQUIRE(v2);
    CHECK(v2->rule == "coverage");
    // piece escaping the covered set
    Cover escape;
    escape.pieces = {make_tree_cell(Word{0}), make_tree_cell(Word{1})};
    auto v3 = validate_cover_move(*s, {make_tree_cell(Word{0})}, escape);
    REQUIRE(v3);
    CHECK(v3->rule == "piece-containment");
    // second round containment
    Round r;
    r.open_i = {make_tree_cell(Word{0})};
    Cover c;
    c.pieces = {make_tree_cell(Word{0, 0}), make_tree_cell(Word{0, 1})};
    r.cover_ii = c;
    st.rounds.push_back(r);
    CHECK_FALSE(validate_open_move(*s, GameKind::end_basis, st, {make_tree_cell(Word{0, 0, 1})}));
    auto v4 = validate_open_move(*s, GameKind::end_basis, st, {make_tree_cell(Word{1})});
    REQUIRE(v4);
    CHECK(v4->rule == "containment");
}

TEST_CASE("typed cover on the binary tree splits into successors") {
    auto s = Space::ray_space(OrderTree::binary());
    auto tc = pitz_typed_cover(s, make_tree_cell(Word{0, 1}));
    REQUIRE(tc.cover.pieces.size() == 2);
    CHECK(tc.cover.pieces[0] == make_tree_cell(Word{0, 1, 0}));
    CHECK(tc.cover.pieces[1] == make_tree_cell(Word{0, 1, 1}));
    CHECK_FALSE(tc.cover.rest);
    // every output passes validation
    CHECK_FALSE(validate_cover_move(*s, {make_tree_cell(Word{0, 1})}, tc.cover));
}

TEST_CASE("typed cover on the michael line handles a top hole") {
    auto s = Space::ray_space(OrderTree::michael_line());
    RayShape irr = canonical_ray({{}, {0, 1}});
    NodeId top0 = UpperNode{irr, 0, 0};
    Cell target = make_tree_cell(Word{0}, {top0});
    auto tc = pitz_typed_cover(s, target);
    // records include type 1 pieces, a type 2 piece anchored at the cofinal
    // witness, and a type 3 piece anchored at the hole's own limit node
    bool saw1 = false, saw2 = false, saw3 = false;
    for (const auto& p : tc.pieces) {
        if (p.kind == 1) saw1 = true;
        if (p.kind == 2) {
            saw2 = true;
            CHECK(p.formula_anchor == NodeId{Word{0, 1}});
        }
        if (p.kind == 3) {
            saw3 = true;
            CHECK(p.formula_anchor == NodeId{top0});
            // the formula piece would leave the covered set, so it realizes
            // to nothing and is not played
            CHECK_FALSE(p.realized);
        }
    }
    CHECK(saw1);
    CHECK(saw2);
    CHECK(saw3);
    CHECK_FALSE(validate_cover_move(*s, {target}, tc.cover));
    // union is exactly the target on sampled points
    auto pts = sample_points(*s, deep_budget());
    for (const Point& p : pts) {
        bool in_cover = false;
        for (const Cell& c : tc.cover.pieces)
            if (cell_contains(*s, c, p)) in_cover = true;
        CHECK(in_cover == cell_contains(*s, target, p));
    }
}

TEST_CASE("typed covers are exact partitions at depth") {
    for (auto tree : {OrderTree::binary(), OrderTree::michael_line()}) {
        auto s = Space::ray_space(tree);
        auto pts = sample_points(*s, deep_budget());
        std::vector<Cell> targets = {
            make_tree_cell(Word{}),
            make_tree_cell(Word{0}, {Word{0, 1, 0}}),
            make_tree_cell(Word{1}, {Word{1, 0}, Word{1, 1, 1}}),
        };
        if (tree->preset() == OrderTree::Preset::michael_line) {
            RayShape irr = canonical_ray({{}, {0, 1}});
            targets.push_back(make_tree_cell(Word{0}, {NodeId{UpperNode{irr, 0, 0}}}));
            targets.push_back(make_tree_cell(
                Word{0}, {NodeId{UpperNode{irr, 0, 0}}, NodeId{UpperNode{irr, 1, 0}}}));
            targets.push_back(make_tree_cell(
                Word{}, {NodeId{UpperNode{irr, 1, 0}}, Word{1, 1}}));
        }
        for (const Cell& t : targets) {
            auto tc = pitz_typed_cover(s, t);
            CHECK_FALSE(validate_cover_move(*s, {t}, tc.cover));
            for (const Point& p : pts) {
                int hits = 0;
                for (const Cell& c : tc.cover.pieces)
                    if (cell_contains(*s, c, p)) ++hits;
                CAPTURE(cell_str(t));
                CAPTURE(point_str(p));
                CHECK(hits == (cell_contains(*s, t, p) ? 1 : 0));
            }
        }
    }
}

TEST_CASE("baire covers use a width budget with an exact rest") {
    auto s = Space::ray_space(OrderTree::baire());
    Cell target = make_tree_cell(Word{2}, {Word{2, 1}});
    auto tc = pitz_typed_cover(s, target, 3);
    REQUIRE(tc.cover.rest);
    CHECK_FALSE(validate_cover_move(*s, {target}, tc.cover));
    // a move through an unmaterialized child still finds its piece
    auto piece = tc.cover.rest->materialize(make_tree_cell(Word{2, 7, 1}));
    REQUIRE(piece);
    CHECK(cell_subset(*s, make_tree_cell(Word{2, 7, 1}), *piece));
    CHECK(cell_subset(*s, *piece, tc.cover.rest->region));
}

TEST_CASE("leftmost descent against the tree strategy") {
    auto s = Space::ray_space(OrderTree::binary());
    auto m = play_end_match(s, GameKind::end_basis, i_tracker(s, make_ray({}, {0})),
                            pitz_tree_strategy(s), 16);
    CHECK(m.verdict.winner == Winner::player_II);
    CHECK(m.verdict.adjudicated);
    REQUIRE(m.verdict.dec.x);
    CHECK(m.verdict.dec.x->ray() == make_ray({}, {0}));
    CHECK(m.verdict.dec.a.cells.empty());
    CHECK(replay_validates(m));
    verify_decomposition(*s, m, 5);
}

TEST_CASE("michael descent captures the ray plus its top cylinders") {
    auto s = Space::ray_space(OrderTree::michael_line());
    Ray irr = make_ray({}, {0, 1});
    auto m = play_end_match(s, GameKind::end_basis, i_tracker(s, irr), pitz_tree_strategy(s), 16);
    CHECK(m.verdict.winner == Winner::player_II);
    REQUIRE(m.verdict.dec.x);
    CHECK(m.verdict.dec.x->ray() == irr);
    // A is the union of the two top cylinders
    REQUIRE(m.verdict.dec.a.cells.size() == 2);
    verify_decomposition(*s, m, 5);

    // excluding one top leaves the other in the open part
    TrackerOptions opt;
    opt.top_mask = 0b01;
    auto m2 = play_end_match(s, GameKind::end_basis, i_tracker(s, irr, opt),
                             pitz_tree_strategy(s), 16);
    CHECK(m2.verdict.winner == Winner::player_II);
    REQUIRE(m2.verdict.dec.a.cells.size() == 1);
    CHECK(m2.verdict.dec.a.cells[0] == make_tree_cell(UpperNode{irr.lower, 1, 0}));
    verify_decomposition(*s, m2, 5);
}

TEST_CASE("stalling on a whole piece hands the match to player I") {
    auto s = Space::ray_space(OrderTree::binary());
    // against the trivial cover the stable chain is a fat clopen set
    auto m = play_end_match(s, GameKind::end_basis, i_stall(make_tree_cell(Word{0})),
                            ii_trivial_cover(), 12);
    CHECK(m.verdict.winner == Winner::player_I);
    CHECK(m.verdict.dec.kind == DecKind::no_decomposition);
}

TEST_CASE("stalling in a singleton piece is a capture") {
    auto s = Space::ray_space(OrderTree::michael_line());
    RayShape irr = canonical_ray({{}, {0, 1}});
    auto m = play_end_match(s, GameKind::end_basis,
                            i_stall(make_tree_cell(UpperNode{irr, 0, 0})), ii_trivial_cover(), 12);
    CHECK(m.verdict.winner == Winner::player_II);
    REQUIRE(m.verdict.dec.x);
    CHECK(m.verdict.dec.x->ray() == Ray{irr, 0});
}

TEST_CASE("illegal cover forfeits for player II") {
    auto s = Space::ray_space(OrderTree::binary());
    auto m = play_end_match(s, GameKind::end_basis, i_tracker(s, make_ray({}, {0})),
                            ii_overlapping_cover(), 8);
    CHECK(m.verdict.winner == Winner::player_I);
    CHECK(m.verdict.reason.rfind("forfeit:II", 0) == 0);
}

TEST_CASE("seeded automata lose to the tree strategy with verified splits") {
    for (auto tree : {OrderTree::binary(), OrderTree::michael_line()}) {
        auto s = Space::ray_space(tree);
        auto pitz = pitz_tree_strategy(s);
        for (unsigned long long seed = 1; seed <= 25; ++seed) {
            auto m = play_end_match(s, GameKind::end_basis, i_seeded_automaton(s, seed), pitz, 48);
            CAPTURE(tree->preset_id());
            CAPTURE(seed);
            REQUIRE(m.verdict.winner == Winner::player_II);
            REQUIRE(m.verdict.adjudicated);
            CHECK(replay_validates(m));
            verify_decomposition(*s, m, 4);
        }
    }
}

TEST_CASE("banach mazur on the ray space") {
    auto s = Space::ray_space(OrderTree::binary());
    auto m = play_bm_match(s, bm_i_tracker(s, make_ray({}, {1})), bm_ii_shrink(s), 16);
    CHECK(m.verdict.winner == Winner::player_II);
    CHECK(m.verdict.bm_nonempty);
    CHECK(replay_validates(m));
}

TEST_CASE("banach mazur gap play on the branch space") {
    auto s = Space::branch_space(OrderTree::michael_line());
    TrackerOptions opt;
    opt.top_mask = 0b11; // forbid both tops of the tracked irrational
    auto gap = bm_i_tracker(s, make_ray({}, {0, 1}), opt);
    // a cooperating shrinker follows the descent into the gap: two branches
    // excluded, the lower ray not a branch, intersection empty
    auto lost = play_bm_match(s, gap, bm_ii_identity(), 16);
    CHECK(lost.verdict.winner == Winner::player_I);
    CHECK_FALSE(lost.verdict.bm_nonempty);
    // the child shrinker deviates off the tracked ray and escapes
    auto won = play_bm_match(s, gap, bm_ii_shrink(s), 16);
    CHECK(won.verdict.winner == Winner::player_II);
    CHECK(won.verdict.bm_nonempty);
}

TEST_CASE("unrestricted game accepts finite unions") {
    auto s = Space::ray_space(OrderTree::binary());
    auto ii = unrestricted_from_basis_ii(s, pitz_tree_strategy(s));
    StrategyHandle two_cells;
    two_cells.player = PlayerId::I;
    two_cells.stationary = true;
    two_cells.finite_state = true;
    two_cells.name = "two-cells";
    two_cells.next_open = [s](const MatchState& st) -> std::optional<std::vector<Cell>> {
        if (st.rounds.empty())
            return std::vector<Cell>{make_tree_cell(Word{0, 0}), make_tree_cell(Word{1, 1})};
        // descend leftmost inside the first piece afterwards
        const Cover& cov = *st.rounds.back().cover_ii;
        const TreeCell& p = cov.pieces.front().tree();
        Word w = lower_word(p.anchor);
        w.push_back(0);
        auto cell = cell_canon(*s, make_tree_cell(w, p.holes));
        if (!cell) return std::nullopt;
        return std::vector<Cell>{*cell};
    };
    auto m = play_end_match(s, GameKind::end_unrestricted, two_cells, ii, 12);
    CHECK(m.verdict.winner == Winner::player_II);
    CHECK(replay_validates(m));
}

TEST_CASE("match transcripts are deterministic") {
    auto s = Space::ray_space(OrderTree::michael_line());
    auto a = play_end_match(s, GameKind::end_basis, i_seeded_automaton(s, 7),
                            pitz_tree_strategy(s), 32);
    auto b = play_end_match(s, GameKind::end_basis, i_seeded_automaton(s, 7),
                            pitz_tree_strategy(s), 32);
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (size_t i = 0; i < a.rounds.size(); ++i) {
        CHECK(a.rounds[i].open_i == b.rounds[i].open_i);
        REQUIRE(a.rounds[i].cover_ii.has_value() == b.rounds[i].cover_ii.has_value());
        if (a.rounds[i].cover_ii)
            CHECK(a.rounds[i].cover_ii->pieces == b.rounds[i].cover_ii->pieces);
    }
    CHECK(a.verdict.reason == b.verdict.reason);
}

TEST_CASE("limit open part obeys the trichotomy against subbasic cylinders") {
    auto s = Space::ray_space(OrderTree::michael_line());
    Ray irr = make_ray({}, {0, 1});
    auto m = play_end_match(s, GameKind::end_basis, i_tracker(s, irr), pitz_tree_strategy(s), 16);
    REQUIRE(m.verdict.dec.kind == DecKind::unique);
    const OpenSet& a = m.verdict.dec.a;
    REQUIRE_FALSE(a.cells.empty());
    Budget b;
    b.ray_stem = 3;
    for (const NodeId& n : s->tree->materialize_nodes(Ordinal::omega_plus(1), b)) {
        auto u = cell_canon(*s, make_tree_cell(n));
        if (!u) continue;
        bool disjoint = true, u_in_a = open_covers_cell(*s, a, *u), a_in_u = true;
        for (const Cell& c : a.cells) {
            if (!cell_disjoint(*s, c, *u)) disjoint = false;
            if (!cell_subset(*s, c, *u)) a_in_u = false;
        }
        CAPTURE(node_str(n));
        CHECK((disjoint ? 1 : 0) + (u_in_a ? 1 : 0) + (a_in_u ? 1 : 0) >= 1);
        // at least one holds, and disjointness never coexists with containment
        if (disjoint) CHECK_FALSE(u_in_a);
    }
}

TEST_CASE("cofinal subchains decompose identically") {
    auto s = Space::ray_space(OrderTree::michael_line());
    Ray irr = make_ray({}, {0, 1});
    TrackerOptions opt;
    opt.top_mask = 0b01;
    auto m = play_end_match(s, GameKind::end_basis, i_tracker(s, irr, opt),
                            pitz_tree_strategy(s), 24);
    REQUIRE(m.verdict.dec.kind == DecKind::unique);
    // drop every other move: still cofinal in the same descent
    std::vector<Cell> sub;
    for (size_t i = 0; i < m.chain_cells.size(); i += 2) sub.push_back(m.chain_cells[i]);
    auto tail = detect_periodic_tail(*s, sub);
    REQUIRE(tail);
    auto dec = decompose_point_plus_open(*s, Chain{sub, tail});
    REQUIRE(dec.kind == DecKind::unique);
    CHECK(*dec.x == *m.verdict.dec.x);
    CHECK(dec.a.cells == m.verdict.dec.a.cells);
}
