#pragma once

#include "ends/order_tree.hpp"

namespace ends {

// Finite discrete levels with one-step bonding maps; deeper compositions
// follow by chaining, so coherence reduces to range validity.
struct InverseSystem {
    std::vector<int> level_sizes;
    std::vector<std::vector<std::string>> labels; // per level, per point
    std::vector<std::vector<int>> bonding;        // bonding[n][i]: level n point i -> level n-1

    int depth() const { return static_cast<int>(level_sizes.size()) - 1; }
    int ancestor(int level, int i, int target_level) const;
};

struct invariant_violation : std::runtime_error {
    explicit invariant_violation(const std::string& m) : std::runtime_error(m) {}
};

void check_system(const InverseSystem& sys); // throws with a witness

// Levels are the height-n nodes, bonding is the ancestor map. Only pruned
// height-omega presentations qualify.
InverseSystem system_from_tree(const TreePtr& tree, int depth, int width);

InverseSystem levelwise_product(const std::vector<InverseSystem>& systems);

struct Thread {
    std::vector<int> coords; // one point per level, coherent under bonding

    friend bool operator==(const Thread&, const Thread&) = default;
};

std::vector<Thread> inverse_limit_depth(const InverseSystem& sys, int d);

struct ProductHomeoCertificate {
    bool pass = false;
    std::string detail;
    int depth = 0;
    long long matched_basics = 0;
    long long threads = 0;
    // associated-tree node label -> factor node labels
    std::vector<std::pair<std::string, std::string>> correspondence;
};

// Depth-d lattice isomorphism between the associated tree of the level-wise
// product and the product of the factor trees: counts, ancestry, and the
// containment relation all match under the tuple correspondence.
ProductHomeoCertificate check_product_homeo(const std::vector<TreePtr>& trees, int d, int width);

} // namespace ends
