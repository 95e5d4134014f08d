#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ends/graph_ends.hpp"
#include "ends/products.hpp"

using namespace ends;

TEST_CASE("ladder ends") {
    auto g = GraphPresentation::ladder();
    // one rung leaves two infinite components
    auto e = end_partition(g, {Vertex{0, 0}, Vertex{0, 1}}, 20);
    CHECK(e.infinite_count() == 2);
    // the two side rays with no separator share a component
    RayWalk top = straight_walk(Vertex{1, 0}, Vertex{1, 0});
    RayWalk bottom = straight_walk(Vertex{1, 1}, Vertex{1, 0});
    CHECK(rays_equivalent(g, top, bottom, {}, 20) == TailRelation::same_component);
    // forward versus backward across the middle rung
    RayWalk back = straight_walk(Vertex{-1, 0}, Vertex{-1, 0});
    CHECK(rays_equivalent(g, top, back, {Vertex{0, 0}, Vertex{0, 1}}, 20) ==
          TailRelation::separated);
    CHECK(rays_equivalent(g, top, top, {}, 20) == TailRelation::same_component);
}

TEST_CASE("grid has one end at radius 20") {
    auto g = GraphPresentation::grid();
    auto e = end_partition(g, {Vertex{0, 0}, Vertex{1, 0}, Vertex{0, 1}}, 20);
    CHECK(e.infinite_count() == 1);
}

TEST_CASE("binary tree graph ends split at the root") {
    auto g = GraphPresentation::binary_tree_graph();
    RayWalk left = straight_walk(Vertex{1, 0}, Vertex{1, 0});   // 0,00,000...
    RayWalk right = straight_walk(Vertex{1, 1}, Vertex{1, 3});  // widths double: use stem form
    // build the all-ones walk explicitly
    RayWalk ones;
    for (long long k = 1; k <= 24; ++k) ones.stem.push_back(Vertex{k, (1ll << k) - 1});
    ones.shift = Vertex{0, 0}; // never consulted within the radius
    CHECK(rays_equivalent(g, left, ones, {g.root()}, 16) == TailRelation::separated);
    CHECK_THROWS_AS(rays_equivalent(g, straight_walk(Vertex{0, 5}, Vertex{1, 0}), left, {}, 8),
                    invalid_walk_error);
}

TEST_CASE("domination by disjoint connections") {
    auto kr = GraphPresentation::kappa_rays(5);
    // the first vertex of another ray dominates the distinguished one
    RayWalk xi = straight_walk(Vertex{0, 0}, Vertex{0, 1});
    CHECK(dominates(kr, Vertex{1, 0}, xi, 5, 12));
    // no ladder vertex dominates a side ray at three connections
    auto lad = GraphPresentation::ladder();
    RayWalk side = straight_walk(Vertex{2, 0}, Vertex{1, 0});
    CHECK_FALSE(dominates(lad, Vertex{0, 0}, side, 3, 15));
    CHECK(dominates(lad, Vertex{0, 0}, side, 2, 15));
    // a vertex on the ray counts for every budget
    CHECK(dominates(lad, Vertex{5, 0}, side, 7, 15));
}

TEST_CASE("end space models per preset") {
    CHECK(end_space_model(GraphPresentation::ladder(), 20)->kind == Space::Kind::discrete);
    CHECK(end_space_model(GraphPresentation::grid(), 20)->size == 1);
    CHECK(end_space_model(GraphPresentation::binary_tree_graph(), 10)->kind ==
          Space::Kind::ray_space);
    CHECK(end_space_model(GraphPresentation::kappa_rays(-1), 10)->kind == Space::Kind::kappa);

    auto rep = end_space_model_report(GraphPresentation::kappa_rays(5), 12);
    CHECK(rep.points == 6);
    CHECK(rep.isolated_certified == 5);
    CHECK(rep.limit_point_nonisolated);

    auto lrep = end_space_model_report(GraphPresentation::ladder(), 20);
    CHECK(lrep.points == 2);
    CHECK(lrep.isolated_certified == 2);
}

TEST_CASE("refinement coherence across growing separators") {
    auto g = GraphPresentation::ladder();
    std::vector<std::vector<Vertex>> seps = {
        {Vertex{0, 0}, Vertex{0, 1}},
        {Vertex{-1, 0}, Vertex{-1, 1}, Vertex{0, 0}, Vertex{0, 1}, Vertex{1, 0}, Vertex{1, 1}},
    };
    auto chain = end_partition_chain(g, seps, 16);
    REQUIRE(chain.stages.size() == 2);
    REQUIRE(chain.refine.size() == 1);
    // every finer component lands in exactly one coarser component
    for (int target : chain.refine[0]) CHECK(target >= 0);
}

TEST_CASE("tree systems and their threads") {
    auto sys = system_from_tree(OrderTree::binary(), 3, 2);
    CHECK(sys.level_sizes == std::vector<int>{1, 2, 4, 8});
    auto threads = inverse_limit_depth(sys, 3);
    CHECK(threads.size() == 8); // bijective with the deepest level
    for (const Thread& t : threads)
        for (size_t l = 1; l < t.coords.size(); ++l)
            CHECK(sys.bonding[l][static_cast<size_t>(t.coords[l])] == t.coords[l - 1]);

    auto baire = system_from_tree(OrderTree::baire(), 2, 3);
    CHECK(baire.level_sizes == std::vector<int>{1, 3, 9});

    CHECK_THROWS_AS(system_from_tree(OrderTree::michael_line(), 2, 2), unsupported_space_error);
    CHECK_THROWS_AS(system_from_tree(OrderTree::from_preset_id("path4"), 2, 2),
                    unsupported_space_error);
}

TEST_CASE("hand built systems are validated") {
    InverseSystem sys;
    sys.level_sizes = {1, 3, 3};
    sys.labels = {{"r"}, {"a", "b", "c"}, {"x", "y", "z"}};
    sys.bonding = {{}, {0, 0, 0}, {0, 1, 2}};
    check_system(sys);
    CHECK(inverse_limit_depth(sys, 2).size() == 3); // fiber choices along bondings
    InverseSystem broken = sys;
    broken.bonding[2][1] = 9;
    CHECK_THROWS_AS(check_system(broken), invariant_violation);
    CHECK_THROWS_AS(inverse_limit_depth(sys, 5), invariant_violation);
}

TEST_CASE("level-wise products multiply the levels") {
    auto b = system_from_tree(OrderTree::binary(), 3, 2);
    auto prod = levelwise_product({b, b});
    CHECK(prod.level_sizes == std::vector<int>{1, 4, 16, 64});
    // single factor: same sizes and bonding
    auto single = levelwise_product({b});
    CHECK(single.level_sizes == b.level_sizes);
    CHECK(single.bonding == b.bonding);
}

TEST_CASE("product lattice certificates") {
    auto cert = check_product_homeo({OrderTree::binary(), OrderTree::binary()}, 3, 2);
    CHECK(cert.pass);
    CHECK(cert.threads == 64);
    auto cert2 = check_product_homeo({OrderTree::binary(), OrderTree::baire()}, 3, 3);
    CHECK(cert2.pass);
    CHECK(cert2.threads == 216);
    auto cert3 = check_product_homeo({OrderTree::binary()}, 3, 2);
    CHECK(cert3.pass);
    CHECK(cert3.threads == 8);
}

TEST_CASE("tail relation is an equivalence on sampled walks at fixed budget") {
    auto g = GraphPresentation::ladder();
    std::vector<RayWalk> walks = {
        straight_walk(Vertex{1, 0}, Vertex{1, 0}),
        straight_walk(Vertex{2, 1}, Vertex{1, 0}),
        straight_walk(Vertex{-1, 0}, Vertex{-1, 0}),
        straight_walk(Vertex{-3, 1}, Vertex{-1, 0}),
    };
    std::vector<Vertex> sep = {Vertex{0, 0}, Vertex{0, 1}};
    auto rel = [&](const RayWalk& a, const RayWalk& b) {
        return rays_equivalent(g, a, b, sep, 16);
    };
    for (const auto& w : walks) CHECK(rel(w, w) == TailRelation::same_component);
    for (const auto& a : walks)
        for (const auto& b : walks) CHECK(rel(a, b) == rel(b, a));
    for (const auto& a : walks)
        for (const auto& b : walks)
            for (const auto& c : walks)
                if (rel(a, b) == TailRelation::same_component &&
                    rel(b, c) == TailRelation::same_component)
                    CHECK(rel(a, c) == TailRelation::same_component);
}
