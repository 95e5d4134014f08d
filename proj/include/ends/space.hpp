#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ends/order_tree.hpp"

namespace ends {

struct Cell;

// [anchor, holes]: the subbasic cylinder of `anchor` minus the cylinders of
// the holes. Canonical form (see cell_canon): holes strictly inside the
// anchor, pairwise disjoint, maximal, sorted; upper nodes collapsed to their
// top; the anchor pushed down past exhausted child levels.
struct TreeCell {
    NodeId anchor;
    std::vector<NodeId> holes;

    friend bool operator==(const TreeCell&, const TreeCell&) = default;
};

// Subset of the cofinite-filter point space: an explicit finite set of point
// codes, or the complement of one. Code 0 is the limit point, codes >= 1 are
// isolated. kappa itself stays symbolic.
struct KappaSet {
    bool cofinite = false;
    std::vector<long long> elems; // sorted, unique

    friend bool operator==(const KappaSet&, const KappaSet&) = default;
};

struct DiscreteSet {
    std::uint64_t bits = 0;

    friend bool operator==(const DiscreteSet&, const DiscreteSet&) = default;
};

struct ProductCell {
    std::vector<Cell> parts;

    friend bool operator==(const ProductCell&, const ProductCell&) = default;
};

struct Cell {
    std::variant<TreeCell, KappaSet, DiscreteSet, ProductCell> v;

    friend bool operator==(const Cell&, const Cell&) = default;

    const TreeCell& tree() const { return std::get<TreeCell>(v); }
    const KappaSet& kappa() const { return std::get<KappaSet>(v); }
    const DiscreteSet& discrete() const { return std::get<DiscreteSet>(v); }
    const ProductCell& product() const { return std::get<ProductCell>(v); }
};

inline Cell make_tree_cell(NodeId anchor, std::vector<NodeId> holes = {}) {
    return Cell{TreeCell{std::move(anchor), std::move(holes)}};
}

struct Point {
    std::variant<Ray, long long, int, std::vector<Point>> v;

    friend bool operator==(const Point&, const Point&) = default;

    const Ray& ray() const { return std::get<Ray>(v); }
    long long kappa() const { return std::get<long long>(v); }
    int discrete() const { return std::get<int>(v); }
    const std::vector<Point>& tuple() const { return std::get<std::vector<Point>>(v); }
};

std::string cell_str(const Cell& c);
std::string point_str(const Point& p);
int cell_cmp(const Cell& a, const Cell& b); // total order for deterministic listings

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

// Symbolic topological space model. Immutable; set operations live in
// set_algebra.hpp.
struct Space {
    enum class Kind { ray_space, branch_space, kappa, discrete, product, subspace };

    Kind kind;
    TreePtr tree;                 // ray_space / branch_space
    std::string kappa_symbol;     // kappa
    int size = 0;                 // discrete (<= 64)
    std::vector<SpacePtr> factors;
    SpacePtr parent;              // subspace
    std::vector<Cell> clip;       // subspace: the clopen set, pairwise disjoint cells

    static SpacePtr ray_space(TreePtr t);
    static SpacePtr branch_space(TreePtr t);
    static SpacePtr kappa(std::string symbol = "omega1");
    static SpacePtr discrete(int n);
    static SpacePtr product(std::vector<SpacePtr> fs);
    static SpacePtr subspace(SpacePtr parent, std::vector<Cell> clopen_cells);

    std::string describe() const;
};

Cell whole_cell(const Space& s);

struct unsupported_space_error : std::runtime_error {
    explicit unsupported_space_error(const std::string& m) : std::runtime_error(m) {}
};

} // namespace ends
