#pragma once

#include <functional>

#include "ends/decompose.hpp"

namespace ends {

enum class GameKind { end_basis, end_unrestricted, banach_mazur };
enum class PlayerId { I, II };
enum class Winner { none, player_I, player_II };

// Player II's answer: pairwise disjoint basic pieces covering Player I's
// open. Infinite covers list a width-budgeted prefix plus a `rest` that can
// materialize the piece containing a probe; `region` is the exact union of
// the unmaterialized pieces.
struct Cover {
    std::vector<Cell> pieces;
    struct Rest {
        std::string label;
        Cell region;
        std::function<std::optional<Cell>(const Cell& probe)> materialize;
    };
    std::optional<Rest> rest;
};

struct Violation {
    std::string rule;
    std::string detail;
};

struct Round {
    std::vector<Cell> open_i;       // single cell unless the game is unrestricted
    std::optional<Cover> cover_ii;  // end games
    std::optional<Cell> shrink_ii;  // Banach-Mazur
    int entered_piece = -1;         // index into the previous cover; -2 = rest
};

struct Verdict {
    Winner winner = Winner::none;
    bool adjudicated = false; // true when decided by the symbolic limit
    std::string reason;
    Decomposition dec;        // end games
    bool bm_nonempty = false; // Banach-Mazur
};

struct MatchState {
    GameKind game = GameKind::end_basis;
    SpacePtr space;
    int horizon = 64;
    std::vector<Round> rounds;
    std::vector<Cell> chain_cells; // the descending chain fed to adjudication
    std::optional<ChainTail> tail;
    Verdict verdict;
    std::vector<std::string> audit;
};

// A strategy is a pure function of the visible history. `stationary` marks
// handles that only consult the last opposing move; `finite_state` marks
// handles whose matches admit periodic-tail extrapolation.
struct StrategyHandle {
    PlayerId player = PlayerId::I;
    bool stationary = true;
    bool finite_state = true;
    std::string name;

    std::function<std::optional<std::vector<Cell>>(const MatchState&)> next_open; // I, end games
    std::function<std::optional<Cover>(const MatchState&, const std::vector<Cell>&)>
        next_cover;                                                               // II, end games
    std::function<std::optional<Cell>(const MatchState&)> bm_open;                // I, BM
    std::function<std::optional<Cell>(const MatchState&, const Cell&)> bm_shrink; // II, BM
};

std::optional<Violation> validate_open_move(const Space& s, GameKind game, const MatchState& st,
                                            const std::vector<Cell>& open);
std::optional<Violation> validate_cover_move(const Space& s, const std::vector<Cell>& target,
                                             const Cover& cover);
std::optional<Violation> validate_bm_move(const Space& s, const MatchState& st, const Cell& move,
                                          PlayerId who);

// Piece of the cover containing the probe cell, materializing from `rest`
// when needed. Returns (index, piece); index -2 marks a rest piece.
std::optional<std::pair<int, Cell>> cover_piece_containing(const Space& s, const Cover& cover,
                                                           const Cell& probe);

MatchState play_end_match(SpacePtr space, GameKind game, const StrategyHandle& sI,
                          const StrategyHandle& sII, int horizon);
MatchState play_bm_match(SpacePtr space, const StrategyHandle& sI, const StrategyHandle& sII,
                         int horizon);

// Re-runs every recorded move through validation; true when clean.
bool replay_validates(const MatchState& st);

} // namespace ends
