#pragma once

#include <optional>

#include "ends/space.hpp"

namespace ends {

struct nestedness_violation : std::runtime_error {
    Cell witness_a, witness_b;
    nestedness_violation(const std::string& m, Cell a, Cell b)
        : std::runtime_error(m), witness_a(std::move(a)), witness_b(std::move(b)) {}
};

// Canonical form; nullopt when the cell denotes the empty set. Two cells
// denote the same subset of the space iff their canonical forms are equal,
// which is what makes serialized equality semantic equality.
std::optional<Cell> cell_canon(const Space& s, const Cell& c);

bool point_in_space(const Space& s, const Point& p);
bool cell_contains(const Space& s, const Cell& c, const Point& p);

std::optional<Cell> cell_intersect(const Space& s, const Cell& a, const Cell& b);
// a minus b as pairwise disjoint canonical cells
std::vector<Cell> cell_subtract(const Space& s, const Cell& a, const Cell& b);

bool cell_is_empty(const Space& s, const Cell& c);
// Least point of the cell in the deterministic point order; nullopt if empty.
std::optional<Point> cell_witness(const Space& s, const Cell& c);

// 0, 1, 2 meaning "two or more" (symbolically infinite counts report 2).
int cell_count_class(const Space& s, const Cell& c);
bool cell_is_singleton(const Space& s, const Cell& c);

bool cell_subset(const Space& s, const Cell& a, const Cell& b);
bool cell_disjoint(const Space& s, const Cell& a, const Cell& b);

enum class CmpResult { disjoint, equal, a_inside_b, b_inside_a };
// Comparison for nested families; partial overlap throws nestedness_violation.
CmpResult cmp_basic_opens(const Space& s, const Cell& a, const Cell& b);

// Finite unions kept pairwise disjoint and canonical.
struct OpenSet {
    std::vector<Cell> cells;

    bool empty() const { return cells.empty(); }
};

OpenSet open_make(const Space& s, std::vector<Cell> cells); // disjointify + canon
OpenSet open_union(const Space& s, const OpenSet& a, const OpenSet& b);
OpenSet open_intersect_cell(const Space& s, const OpenSet& a, const Cell& c);
OpenSet open_subtract_cell(const Space& s, const OpenSet& a, const Cell& c);
bool open_contains(const Space& s, const OpenSet& a, const Point& p);
bool open_covers_cell(const Space& s, const OpenSet& a, const Cell& target);
std::string open_str(const OpenSet& a);

// Subtraction-scheme refinement: pairwise disjoint cells, each inside some
// cover element, whose union is exactly `target`. Throws coverage_error with
// a witness point when the cover misses part of the target.
struct coverage_error : std::runtime_error {
    Point witness;
    coverage_error(const std::string& m, Point w) : std::runtime_error(m), witness(std::move(w)) {}
};
std::vector<Cell> refine_to_disjoint_basics(const Space& s, const std::vector<OpenSet>& cover,
                                            const Cell& target);

// Is the cell open in the space (every cell is, except kappa finite sets
// containing the limit point and product combinations thereof).
bool cell_is_open(const Space& s, const Cell& c);
bool point_isolated(const Space& s, const Point& p);

// Deterministic sample of finite-state points for membership checks.
std::vector<Point> sample_points(const Space& s, const Budget& b);

} // namespace ends
