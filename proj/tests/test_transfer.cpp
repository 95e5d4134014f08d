#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ends/transfer.hpp"

#include <random>

using namespace ends;

namespace {

OpenSet complement_of_cylinder(const Space& s, const Word& w) {
    auto cells = cell_subtract(s, whole_cell(s), make_tree_cell(w));
    return open_make(s, cells);
}

} // namespace

TEST_CASE("banach mazur answer built from the cover strategy") {
    auto s = Space::ray_space(OrderTree::binary());
    auto bm_ii = bm_from_end_strategy(s, pitz_tree_strategy(s));
    // translated answer always shrinks into a child cylinder
    for (unsigned long long seed = 1; seed <= 10; ++seed) {
        auto m = play_bm_match(s, bm_i_seeded(s, seed), bm_ii, 24);
        CAPTURE(seed);
        CHECK(m.verdict.winner == Winner::player_II);
        CHECK(m.verdict.bm_nonempty);
        CHECK(replay_validates(m));
    }
    // a forfeiting source forfeits identically
    StrategyHandle dead;
    dead.player = PlayerId::II;
    dead.next_cover = [](const MatchState&, const std::vector<Cell>&) -> std::optional<Cover> {
        return std::nullopt;
    };
    auto bm_dead = bm_from_end_strategy(s, dead);
    auto m = play_bm_match(s, bm_i_tracker(s, make_ray({}, {0})), bm_dead, 8);
    CHECK(m.verdict.winner == Winner::player_I);
    CHECK(m.verdict.reason.rfind("forfeit:II", 0) == 0);
    // non-stationary sources are rejected
    StrategyHandle nonstat = pitz_tree_strategy(s);
    nonstat.stationary = false;
    CHECK_THROWS_AS(bm_from_end_strategy(s, nonstat), std::invalid_argument);
}

TEST_CASE("whenever the source wins, the translated answer wins (cover to shrink)") {
    for (auto tree : {OrderTree::binary(), OrderTree::michael_line()}) {
        auto s = Space::ray_space(tree);
        auto pitz = pitz_tree_strategy(s);
        auto bm_ii = bm_from_end_strategy(s, pitz);
        int adjudicable = 0;
        for (unsigned long long seed = 1; seed <= 15; ++seed) {
            auto src = play_end_match(s, GameKind::end_basis, i_seeded_automaton(s, seed), pitz, 48);
            auto tgt = play_bm_match(s, bm_i_seeded(s, seed), bm_ii, 32);
            if (src.verdict.adjudicated && tgt.verdict.adjudicated) {
                ++adjudicable;
                if (src.verdict.winner == Winner::player_II)
                    CHECK(tgt.verdict.winner == Winner::player_II);
            }
        }
        CHECK(adjudicable >= 13);
    }
}

TEST_CASE("opening player transfer carries the embedded history") {
    auto s = Space::branch_space(OrderTree::michael_line());
    TrackerOptions gap;
    gap.top_mask = 0b11;
    auto sigma_bm = bm_i_tracker(s, make_ray({}, {0, 1}), gap);
    auto end_i = end_I_from_bm_I(s, sigma_bm);
    // the gap descent empties the intersection in both games
    auto src = play_bm_match(s, sigma_bm, bm_ii_identity(), 16);
    REQUIRE(src.verdict.winner == Winner::player_I);
    auto tgt = play_end_match(s, GameKind::end_basis, end_i, ii_trivial_cover(), 16);
    CHECK(tgt.verdict.winner == Winner::player_I);
    CHECK(tgt.verdict.dec.kind == DecKind::empty_intersection);
    CHECK(replay_validates(tgt));
}

TEST_CASE("transfer preserves the loser on a small discrete space") {
    auto s = Space::discrete(2);
    auto sigma_bm = bm_i_stall(Cell{DiscreteSet{0b01}});
    auto end_i = end_I_from_bm_I(s, sigma_bm);
    auto src = play_bm_match(s, sigma_bm, bm_ii_identity(), 8);
    CHECK(src.verdict.winner == Winner::player_II); // squatting on a point empties nothing
    auto tgt = play_end_match(s, GameKind::end_basis, end_i, ii_trivial_cover(), 8);
    CHECK(tgt.verdict.winner == Winner::player_II);
    CHECK(tgt.verdict.dec.kind == DecKind::unique);
}

TEST_CASE("stalling source stalls the produced handle identically") {
    auto s = Space::ray_space(OrderTree::binary());
    auto sigma_bm = bm_i_stall(make_tree_cell(Word{0}));
    auto end_i = end_I_from_bm_I(s, sigma_bm);
    auto m = play_end_match(s, GameKind::end_basis, end_i, ii_trivial_cover(), 10);
    // constant play against the trivial cover squats on a fat clopen set
    CHECK(m.verdict.winner == Winner::player_I);
    CHECK(m.verdict.dec.kind == DecKind::no_decomposition);
    for (const Round& r : m.rounds) CHECK(r.open_i.front() == make_tree_cell(Word{0}));
}

TEST_CASE("glued strategy wins on the punctured cantor space") {
    auto cantor = Space::ray_space(OrderTree::binary());
    // opens removing a shrinking cylinder around each eventually constant ray
    std::vector<Word> rational_tails = {
        {0, 0, 0}, {1, 1, 1}, {0, 1, 1, 1}, {1, 0, 0, 0}, {0, 0, 1, 1, 1}, {1, 1, 0, 0, 0}};
    GlueInputs in;
    in.parent = cantor;
    for (const Word& w : rational_tails) in.opens.push_back(complement_of_cylinder(*cantor, w));
    size_t blocks = in.opens.size();
    in.block_index = [blocks](int n) { return n % static_cast<int>(blocks); };
    GluedStrategy glued = gdelta_glue_strategy(in);

    // player I descends with a nonempty cycle: the captured ray is irrational
    for (unsigned long long seed = 1; seed <= 12; ++seed) {
        std::mt19937_64 rng(seed);
        Word cyc = rng() % 2 ? Word{0, 1} : Word{1, 0};
        Word stem;
        for (size_t i = 0, len = rng() % 3; i < len; ++i)
            stem.push_back(static_cast<int>(rng() % 2));
        Ray track = make_ray(stem, cyc);
        if (!point_in_space(*glued.subspace, Point{track})) continue;
        auto m = play_end_match(glued.subspace, GameKind::end_basis,
                                i_tracker(glued.subspace, track), glued.handle, 24);
        CAPTURE(seed);
        CHECK(m.verdict.winner == Winner::player_II);
        REQUIRE(m.verdict.dec.x);
        CHECK(m.verdict.dec.x->ray() == track);
        CHECK(replay_validates(m));
    }
}

TEST_CASE("degenerate glue over the whole space behaves like the block strategy") {
    auto cantor = Space::ray_space(OrderTree::binary());
    GlueInputs in;
    in.parent = cantor;
    for (int i = 0; i < 3; ++i) in.opens.push_back(OpenSet{{whole_cell(*cantor)}});
    in.block_index = [](int n) { return n % 3; };
    GluedStrategy glued = gdelta_glue_strategy(in);
    auto m = play_end_match(glued.subspace, GameKind::end_basis,
                            i_tracker(glued.subspace, make_ray({}, {0, 1})), glued.handle, 16);
    CHECK(m.verdict.winner == Winner::player_II);

    // one nontrivial block, the rest whole
    GlueInputs one;
    one.parent = cantor;
    one.opens.push_back(complement_of_cylinder(*cantor, Word{1, 1, 1}));
    one.opens.push_back(OpenSet{{whole_cell(*cantor)}});
    one.block_index = [](int n) { return n % 2; };
    GluedStrategy g1 = gdelta_glue_strategy(one);
    auto m1 = play_end_match(g1.subspace, GameKind::end_basis,
                             i_tracker(g1.subspace, make_ray({}, {0, 1})), g1.handle, 16);
    CHECK(m1.verdict.winner == Winner::player_II);
}

TEST_CASE("product strategy defeats the sampled stationary family") {
    auto prod = Space::product({Space::ray_space(OrderTree::binary()), Space::kappa()});
    auto ce = product_counterexample_strategy(prod, canonical_ray({{}, {0}}));
    for (unsigned long long seed = 1; seed <= 12; ++seed) {
        auto ii = sampled_product_ii(prod, seed);
        auto m = play_end_match(prod, GameKind::end_basis, ce, ii, 24);
        CAPTURE(seed);
        REQUIRE(m.verdict.winner == Winner::player_I);
        CHECK(m.verdict.dec.kind == DecKind::no_decomposition);
        // evidence shape: a captured ray crossed with a shrinking cofinite set
        CHECK(m.verdict.dec.evidence.find("ray:") != std::string::npos);
        CHECK(m.verdict.dec.evidence.find("cofinite-shrinking") != std::string::npos);
        CHECK(m.verdict.dec.evidence.find("no open subset") != std::string::npos);
        CHECK(replay_validates(m));
    }
    // first move: the cylinder of the branch's first node times everything
    MatchState st;
    st.game = GameKind::end_basis;
    st.space = prod;
    auto first = ce.next_open(st);
    REQUIRE(first);
    CHECK(first->front() ==
          Cell{ProductCell{{make_tree_cell(Word{0}), Cell{KappaSet{true, {}}}}}});
}

TEST_CASE("illegal covers on the product forfeit before the limit") {
    auto prod = Space::product({Space::ray_space(OrderTree::binary()), Space::kappa()});
    auto ce = product_counterexample_strategy(prod, canonical_ray({{}, {0}}));
    StrategyHandle bad;
    bad.player = PlayerId::II;
    bad.stationary = true;
    bad.finite_state = true;
    bad.name = "bad-product";
    bad.next_cover = [](const MatchState&, const std::vector<Cell>& last) -> std::optional<Cover> {
        Cover c;
        c.pieces = last;
        c.pieces.push_back(last.front()); // duplicate: overlapping cover
        return c;
    };
    auto m = play_end_match(prod, GameKind::end_basis, ce, bad, 8);
    CHECK(m.verdict.winner == Winner::player_I);
    CHECK(m.verdict.reason.rfind("forfeit:II", 0) == 0);
}

TEST_CASE("interleaved counter play relays the refined covers") {
    auto prod = Space::product({Space::ray_space(OrderTree::binary()), Space::kappa()});
    auto ce = product_counterexample_strategy(prod, canonical_ray({{}, {0}}));
    auto m = thm3_counter_play(prod, ce, sampled_product_ii(prod, 3), 20);
    CHECK(m.verdict.winner == Winner::player_I);
    CHECK(m.verdict.dec.kind == DecKind::no_decomposition);

    // a forfeiting second player loses a short transcript
    StrategyHandle dead;
    dead.player = PlayerId::II;
    dead.next_cover = [](const MatchState&, const std::vector<Cell>&) -> std::optional<Cover> {
        return std::nullopt;
    };
    auto m2 = thm3_counter_play(prod, ce, dead, 20);
    CHECK(m2.verdict.winner == Winner::player_I);
    CHECK(m2.rounds.size() == 1);

    // a stalling first player hands the verdict to the stabilized chain
    auto cantor_point = Space::product({Space::ray_space(OrderTree::binary()), Space::discrete(1)});
    StrategyHandle stall = i_stall(whole_cell(*cantor_point));
    auto m3 = thm3_counter_play(cantor_point, stall, ii_trivial_cover(), 12);
    CHECK(m3.verdict.winner == Winner::player_I);
    CHECK(m3.verdict.dec.kind == DecKind::no_decomposition);
    // replaying the same stabilized chain through the plain decomposition
    Chain chain{m3.chain_cells, m3.tail};
    auto dec = decompose_point_plus_open(*cantor_point, chain);
    CHECK(dec.kind == m3.verdict.dec.kind);
}
