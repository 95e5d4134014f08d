#pragma once

#include "ends/set_algebra.hpp"

namespace ends {

struct protocol_error : std::runtime_error {
    explicit protocol_error(const std::string& m) : std::runtime_error(m) {}
};

// Finite-state certificate for a descending cell chain: from round `start`
// the moves repeat with period `period` up to an anchor shift.
struct ChainTail {
    int start = 0;
    int period = 1;
};

struct Chain {
    std::vector<Cell> cells;       // observed strictly descending moves
    std::optional<ChainTail> tail; // extrapolation certificate
};

// Tries to certify the observed cells as eventually periodic. Requires at
// least two full periods of evidence.
std::optional<ChainTail> detect_periodic_tail(const Space& s, const std::vector<Cell>& cells);

enum class DecKind { unique, no_decomposition, not_adjudicable, empty_intersection };

struct Decomposition {
    DecKind kind = DecKind::not_adjudicable;
    std::optional<Point> x;
    OpenSet a;              // exact for tree limits; materialized front for symbolic ones
    bool a_symbolic_cofinite = false;
    std::string evidence;

    bool ii_wins() const { return kind == DecKind::unique; }
};

// Symbolic summary of the intersection of a certified chain.
struct LimitSummary {
    int total = 0;      // 0, 1, 2 = "two or more"
    int noninterior = 0;
    std::optional<Point> noninterior_point; // when noninterior == 1
    std::optional<Point> single_point;      // when total == 1
    OpenSet interior;                       // open part (materialized cells)
    bool interior_symbolic_cofinite = false;
    bool has_open_subset = false;
    std::string shape;
};

LimitSummary chain_limit(const Space& s, const Chain& chain);

// Exact membership of a finite-state point in the intersection of the chain.
bool chain_limit_contains(const Space& s, const Chain& chain, const Point& p);

// The unique point-plus-open reading of the intersection, when there is one.
Decomposition decompose_point_plus_open(const Space& s, const Chain& chain);

// Intersection nonempty (the Banach-Mazur winning condition).
bool chain_limit_nonempty(const Space& s, const Chain& chain);

} // namespace ends
