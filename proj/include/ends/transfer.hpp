#pragma once

#include "ends/strategies.hpp"

namespace ends {

// Banach-Mazur answer built from a stationary winning cover strategy: pick
// the cover element around a deterministic tracking point.
StrategyHandle bm_from_end_strategy(SpacePtr space, const StrategyHandle& end_ii);

// Opening-player transfer: the produced handle replays the Banach-Mazur
// strategy inside whichever cover element accepts its next move, carrying
// the embedded history in the transcript.
StrategyHandle end_I_from_bm_I(SpacePtr space, const StrategyHandle& bm_i);

// Glued answer on the intersection of a clopen-open sequence: round n lifts
// the move into the block's open set, consults that block's strategy and
// traces the cover back.
struct GlueInputs {
    SpacePtr parent;
    std::vector<OpenSet> opens;             // the materialized A_n sequence
    std::function<int(int)> block_index;    // round -> block
};
struct GluedStrategy {
    SpacePtr subspace; // intersection of the materialized opens
    StrategyHandle handle;
};
GluedStrategy gdelta_glue_strategy(const GlueInputs& in, bool audit_blocks = true);

// Player I on the product of a tree ray space with the cofinite point
// space: descend a designated branch while growing the excluded finite set.
StrategyHandle product_counterexample_strategy(SpacePtr product_space, RayShape designated);

// Stationary Player II family on that product: split the tree factor to a
// seeded depth and peel seeded singletons off the cofinite factor.
StrategyHandle sampled_product_ii(SpacePtr product_space, unsigned long long seed);

// Interleaved match: the cover answers of `psi_ii` are refined into
// `phi_i`'s basis and fed back; returns the transcript of the match that
// `psi_ii` loses when `phi_i` wins.
MatchState thm3_counter_play(SpacePtr space, const StrategyHandle& phi_i,
                             const StrategyHandle& psi_ii, int horizon);

// Extends a basis strategy to arbitrary finite unions by covering each
// union with disjoint basics first.
StrategyHandle unrestricted_from_basis_ii(SpacePtr space, const StrategyHandle& basis_ii);

} // namespace ends
