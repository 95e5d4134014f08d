#pragma once

#include <map>

#include "ends/set_algebra.hpp"

namespace ends {

struct configuration_error : std::runtime_error {
    explicit configuration_error(const std::string& m) : std::runtime_error(m) {}
};

struct SubbaseReport {
    bool nested = true;
    std::optional<std::pair<Cell, Cell>> nested_witness;
    bool noetherian = true;
    int chain_depth_certified = 0;
    bool sigma_disjoint = true;
    int antichains_used = 0;
    bool clopen = true;
    int members_checked = 0;

    bool pass() const { return nested && noetherian && sigma_disjoint && clopen; }
};

// A nested noetherian clopen family containing the whole space, queried by
// value. Tree spaces use the cylinder family; finite spaces may carry an
// explicit list with an optional table of fixed cofinal chains.
class Subbase {
  public:
    static Subbase tree_cylinders(SpacePtr tree_space);
    static Subbase explicit_family(SpacePtr space, std::vector<Cell> members);
    static Subbase explicit_family(SpacePtr space, std::vector<Cell> members,
                                   std::map<std::string, std::vector<Cell>> rho_table);

    const SpacePtr& space() const { return space_; }
    Cell whole() const;
    bool is_tree() const { return kind_ == Kind::tree; }

    // subbasic members strictly inside U that are maximal with that property
    std::vector<Cell> maximal_proper_inside(const Cell& U) const;
    // the fixed cofinal chain in { V : U < V < X }; presentation order
    std::vector<Cell> rho(const Cell& U) const;
    bool rho_available(const Cell& U) const;
    // largest chain member strictly over U and strictly inside `bound`
    std::optional<Cell> rho_window_max(const Cell& U, const Cell& bound) const;
    std::optional<Cell> smallest_containing(const Point& x) const;

    std::vector<Cell> materialize(const Budget& b) const;
    SubbaseReport properties(const Budget& b) const;

  private:
    enum class Kind { tree, explicit_list };
    Kind kind_ = Kind::tree;
    SpacePtr space_;
    std::vector<Cell> members_;
    std::optional<std::map<std::string, std::vector<Cell>>> rho_table_;
};

// Normal form of a finite intersection of members and member complements:
// the smallest positive absorbs the rest. Refuses non-nested positives.
std::optional<Cell> basis_element_from_query(const Subbase& sb, const std::vector<Cell>& positives,
                                             const std::vector<Cell>& negatives);

// Budgeted enumeration of the generated basis in normal form.
std::vector<Cell> generated_basis(const Subbase& sb, const Budget& b, int max_holes);

} // namespace ends
