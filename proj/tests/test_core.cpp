#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ends/order_tree.hpp"

using namespace ends;

TEST_CASE("ordinal coding and parsing") {
    CHECK(Ordinal::finite(3) < Ordinal::omega_plus(0));
    CHECK(Ordinal::omega_plus(0) < Ordinal::omega_plus(3));
    CHECK(Ordinal::parse("omega+3") == Ordinal::omega_plus(3));
    CHECK(Ordinal::parse("12") == Ordinal::finite(12));
    CHECK(Ordinal::omega_plus(3).str() == "omega+3");
    CHECK(Ordinal::finite(0).is_limit());
    CHECK(Ordinal::omega_plus(0).is_limit());
    CHECK_FALSE(Ordinal::omega_plus(1).is_limit());
}

TEST_CASE("word roundtrip") {
    CHECK(word_parse("010") == Word{0, 1, 0});
    CHECK(word_parse("0.12.3") == Word{0, 12, 3});
    CHECK(word_parse("-") == Word{});
    CHECK(word_str(Word{0, 1}) == "01");
    CHECK(word_str(Word{0, 12}) == "0.12");
    CHECK(word_str(Word{}) == "-");
    CHECK(is_prefix(Word{0, 1}, Word{0, 1, 0}));
    CHECK_FALSE(is_prefix(Word{1}, Word{0, 1}));
}

TEST_CASE("ray canonicalization merges equivalent descriptors") {
    // 0 . (10)^w unrolls as 0101... = (01)^w
    RayShape a = canonical_ray({{0}, {1, 0}});
    RayShape b = canonical_ray({{}, {0, 1}});
    CHECK(a == b);
    // cycle reduced to its primitive root
    CHECK(canonical_ray({{}, {0, 1, 0, 1}}) == canonical_ray({{}, {0, 1}}));
    // stem absorbed into a constant cycle
    CHECK(canonical_ray({{0, 0, 0}, {0}}) == RayShape{{}, {0}});
    CHECK(same_unrolling({{0}, {1, 0}}, {{}, {0, 1}}));
    CHECK_FALSE(same_unrolling({{}, {0}}, {{}, {0, 1}}));
    // two descriptors denote the same ray iff unrollings agree to the bound
    RayShape c{{0, 1, 0}, {1, 0}};
    CHECK(same_unrolling(c, canonical_ray(c)));
}

TEST_CASE("node order") {
    NodeId root = Word{};
    NodeId n0 = Word{0};
    NodeId n01 = Word{0, 1};
    NodeId n1 = Word{1};
    CHECK(node_le(root, n01));
    CHECK(node_lt(n0, n01));
    CHECK_FALSE(node_comparable(n0, n1));

    RayShape irr = canonical_ray({{}, {0, 1}});
    NodeId top0 = UpperNode{irr, 0, 0};
    NodeId top0p2 = UpperNode{irr, 0, 2};
    NodeId top1 = UpperNode{irr, 1, 0};
    CHECK(node_le(n0, top0)); // 0 is a prefix of (01)^w
    CHECK_FALSE(node_le(n1, top0));
    CHECK(node_lt(top0, top0p2));
    CHECK_FALSE(node_comparable(top0, top1));
    CHECK_FALSE(node_le(top0, n01));
    CHECK(node_height(top0p2) == Ordinal::omega_plus(2));
}

TEST_CASE("binary preset basics") {
    auto t = OrderTree::binary();
    CHECK(t->child_count({}) == 2);
    CHECK(t->word_exists(Word{0, 1, 1}));
    CHECK_FALSE(t->word_exists(Word{0, 2}));
    // 2^d nodes at height d
    Budget b;
    b.depth = 5;
    auto nodes = t->materialize_nodes(Ordinal::finite(5), b);
    int at5 = 0;
    for (auto& n : nodes)
        if (node_height(n) == Ordinal::finite(5)) ++at5;
    CHECK(at5 == 32);
    // no limit nodes above the root
    CHECK(t->top_count(canonical_ray({{}, {0, 1}})) == 0);
    CHECK(t->tops_of(make_ray({}, {0})).empty());
}

TEST_CASE("baire preset children are countable") {
    auto t = OrderTree::baire();
    CHECK(t->child_count({}) == -1);
    CHECK(t->word_exists(Word{7, 3, 11}));
    auto succ = t->successors(Word{}, 4);
    CHECK(succ.size() == 4);
    CHECK_FALSE(t->successors_exhaustive(Word{}, 4));
}

TEST_CASE("michael line tops") {
    auto t = OrderTree::michael_line();
    Ray irr = make_ray({}, {0, 1});
    auto tops = t->tops_of(irr);
    REQUIRE(tops.size() == 2); // two tops above each irrational branch
    CHECK(node_height(tops[0]) == Ordinal::omega_plus(0));
    // no node at height omega above the eventually constant ray 0^w
    CHECK(t->tops_of(make_ray({}, {0})).empty());
    CHECK(t->tops_of(make_ray({1, 1, 0}, {1})).empty());
    // a chain through a top has no tops of its own
    CHECK(t->tops_of(Ray{irr.lower, 0}).empty());
    // unique successors above height omega
    auto s = t->successors(UpperNode{irr.lower, 0, 0}, 8);
    REQUIRE(s.size() == 1);
    CHECK(node_height(s[0]) == Ordinal::omega_plus(1));
    CHECK(t->ray_is_branch(Ray{irr.lower, 0}));
    CHECK_FALSE(t->ray_is_branch(irr));            // extendable by a top
    CHECK(t->ray_is_branch(make_ray({}, {0})));    // rational, maximal
}

TEST_CASE("invalid ray descriptors are rejected") {
    auto t = OrderTree::binary();
    CHECK_THROWS_AS(t->tops_of(make_ray({0, 2}, {0})), invalid_ray_error);
    CHECK_THROWS_AS(t->require_ray(Ray{{{0}, {}}, std::nullopt}), invalid_ray_error);
    CHECK_THROWS_AS(t->require_ray(Ray{canonical_ray({{}, {0}}), 0}), invalid_ray_error);
}

TEST_CASE("finite tree presets") {
    auto path = OrderTree::from_preset_id("path4");
    CHECK(path->height_bound() == Ordinal::finite(3));
    CHECK(path->child_count({}) == 1);
    CHECK(path->child_count(Word{0, 0, 0}) == 0);
    CHECK_THROWS_AS(OrderTree::finite_tree({Word{0}}), presentation_error);
    CHECK_THROWS_AS(OrderTree::finite_tree({Word{}, Word{0, 0}}), presentation_error);
    CHECK_THROWS_AS(OrderTree::from_preset_id("nonsense"), presentation_error);
}

TEST_CASE("antichain decomposition uses heights") {
    Budget b;
    b.depth = 5;
    auto bin = OrderTree::binary();
    auto d = bin->antichain_decomposition(Ordinal::finite(5), b);
    CHECK(d.antichains_used == 6); // levels 0..5
    // equal index implies pairwise incomparable, exhaustively
    auto nodes = bin->materialize_nodes(Ordinal::finite(5), b);
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j) {
            if (d.index.at(node_str(nodes[i])) != d.index.at(node_str(nodes[j]))) continue;
            CHECK_FALSE(node_comparable(nodes[i], nodes[j]));
        }

    auto mich = OrderTree::michael_line();
    Budget mb;
    mb.depth = 3;
    mb.ray_stem = 2;
    auto md = mich->antichain_decomposition(Ordinal::omega_plus(3), mb);
    auto mnodes = mich->materialize_nodes(Ordinal::omega_plus(3), mb);
    int omega_idx = -1;
    for (auto& n : mnodes) {
        if (node_height(n) == Ordinal::omega_plus(0)) {
            int idx = md.index.at(node_str(n));
            if (omega_idx == -1) omega_idx = idx;
            CHECK(idx == omega_idx); // the height-omega level is one antichain
        }
    }
    for (size_t i = 0; i < mnodes.size(); ++i)
        for (size_t j = i + 1; j < mnodes.size(); ++j) {
            if (md.index.at(node_str(mnodes[i])) != md.index.at(node_str(mnodes[j]))) continue;
            CHECK_FALSE(node_comparable(mnodes[i], mnodes[j]));
        }
    // depth beyond the bound is rejected
    CHECK_THROWS_AS(bin->antichain_decomposition(Ordinal::omega_plus(3), b), presentation_error);

    // a chain needs one antichain per node
    auto path = OrderTree::from_preset_id("path4");
    auto pd = path->antichain_decomposition(Ordinal::finite(3), b);
    CHECK(pd.antichains_used == 4);
}

TEST_CASE("basic open membership from descriptors") {
    auto bin = OrderTree::binary();
    Ray zeros = make_ray({}, {0});
    CHECK(bin->basic_open_membership(Word{0}, {}, zeros));
    CHECK_FALSE(bin->basic_open_membership(Word{}, {Word{0}}, zeros));
    CHECK_THROWS_AS(bin->basic_open_membership(Word{2}, {}, zeros), domain_mismatch_error);

    auto mich = OrderTree::michael_line();
    Ray irr = make_ray({}, {0, 1});
    Ray through_top{irr.lower, 0};
    NodeId top0 = UpperNode{irr.lower, 0, 0};
    CHECK(mich->basic_open_membership(top0, {}, through_top));
    CHECK_FALSE(mich->basic_open_membership(top0, {}, irr));
    CHECK_FALSE(mich->basic_open_membership(top0, {}, Ray{irr.lower, 1}));
    // monotone: s <= t implies [t]-membership implies [s]-membership
    CHECK(mich->basic_open_membership(Word{0}, {}, through_top));
}

TEST_CASE("cofinal sequences") {
    auto mich = OrderTree::michael_line();
    RayShape irr = canonical_ray({{}, {0, 1}});
    NodeId top = UpperNode{irr, 0, 0};
    auto pre = mich->cofinal_prefix(top, 3);
    REQUIRE(pre.size() == 3);
    CHECK(lower_word(pre[0]) == Word{0});
    CHECK(lower_word(pre[1]) == Word{0, 1});
    CHECK(lower_word(pre[2]) == Word{0, 1, 0});
    // root is a limit node with an empty cofinal sequence
    CHECK(mich->is_limit_node(Word{}));
    CHECK(mich->cofinal_prefix(Word{}, 5).empty());
    CHECK(mich->hat(Word{0, 1}) == NodeId{Word{}});
    CHECK(mich->hat(UpperNode{irr, 0, 2}) == NodeId{top});
}

TEST_CASE("custom preset keeps explicit words") {
    auto t = OrderTree::from_preset_id("custom:-,0,1,00");
    CHECK(t->preset() == OrderTree::Preset::custom);
    CHECK(t->word_exists(Word{0, 0}));
    CHECK_FALSE(t->word_exists(Word{0, 1}));
}

TEST_CASE("order trichotomy and cylinder disjointness on samples") {
    auto mich = OrderTree::michael_line();
    Budget b;
    b.depth = 3;
    b.ray_stem = 2;
    auto nodes = mich->materialize_nodes(Ordinal::omega_plus(2), b);
    auto rays = mich->sample_rays(b);
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = 0; j < nodes.size(); ++j) {
            const NodeId& t = nodes[i];
            const NodeId& s = nodes[j];
            int rel = (node_le(t, s) ? 1 : 0) + (node_lt(s, t) ? 1 : 0) +
                      (!node_comparable(t, s) ? 1 : 0);
            CHECK(rel == 1); // exactly one of <=, >, incomparable
            if (!node_comparable(t, s)) {
                for (const Ray& r : rays) {
                    bool both = mich->basic_open_membership(t, {}, r) &&
                                mich->basic_open_membership(s, {}, r);
                    CHECK_FALSE(both);
                }
            }
            // membership is monotone along the order
            if (node_le(s, t))
                for (const Ray& r : rays)
                    if (mich->basic_open_membership(t, {}, r))
                        CHECK(mich->basic_open_membership(s, {}, r));
        }
}
