#pragma once

#include "ends/game.hpp"

namespace ends {

// One formula piece of the tree strategy's cover. `realized` is the formula
// open intersected with the covered set; empty realizations stay recorded
// but are not played.
struct TypedCoverPiece {
    int kind = 1; // 1, 2, 3
    NodeId formula_anchor;
    std::vector<NodeId> lambda;
    std::optional<Cell> realized;
};

struct TypedCover {
    std::vector<TypedCoverPiece> pieces;
    Cover cover;
};

// The stationary Player II strategy on the ray/branch space of a special
// tree: split into successor pieces, steering hole approach through the
// designated cofinal sequences.
TypedCover pitz_typed_cover(const SpacePtr& space, const Cell& target, int width_budget = 3);
StrategyHandle pitz_tree_strategy(SpacePtr space, int width_budget = 3);

// Plain handles used as opponents and in tests.
StrategyHandle ii_trivial_cover();
StrategyHandle ii_overlapping_cover(); // intentionally illegal
StrategyHandle i_stall(Cell first_move);

struct TrackerOptions {
    int top_mask = 0;    // bit j: exclude the j-th top of the tracked ray
    bool add_deviation = false;
    int step = 1;        // descent speed per round
};
StrategyHandle i_tracker(SpacePtr space, Ray track, TrackerOptions opt = {});

// Deterministic finite-state opponent family; every member descends an
// eventually periodic ray, so matches against stationary handles stay
// adjudicable.
StrategyHandle i_seeded_automaton(SpacePtr space, unsigned long long seed);

// Banach-Mazur handles.
StrategyHandle bm_ii_shrink(SpacePtr space);
StrategyHandle bm_ii_identity();
StrategyHandle bm_i_tracker(SpacePtr space, Ray track, TrackerOptions opt = {});
StrategyHandle bm_i_stall(Cell first_move);
StrategyHandle bm_i_seeded(SpacePtr space, unsigned long long seed);

// Registry used by the command line: name + seed -> handle.
StrategyHandle strategy_by_name(const std::string& name, SpacePtr space, unsigned long long seed);

// Helper shared by descent strategies: the cover piece riding the ray.
std::optional<Cell> piece_along_ray(const Space& s, const Cover& cover, const RayShape& x);
std::optional<Cell> piece_containing_point(const Space& s, const Cover& cover, const Point& p,
                                           int probe_depth = 8);

} // namespace ends
