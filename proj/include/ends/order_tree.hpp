#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ends/node.hpp"

namespace ends {

struct presentation_error : std::runtime_error {
    explicit presentation_error(const std::string& m) : std::runtime_error(m) {}
};
struct invalid_ray_error : std::runtime_error {
    explicit invalid_ray_error(const std::string& m) : std::runtime_error(m) {}
};
struct domain_mismatch_error : std::runtime_error {
    explicit domain_mismatch_error(const std::string& m) : std::runtime_error(m) {}
};

// Materialization limits for the countable parts of a presentation.
struct Budget {
    int depth = 5;      // finite-height levels to enumerate
    int width = 3;      // children per node when the child set is countable
    int ray_stem = 4;   // stems of sampled rays
    int upper_plus = 3; // levels above omega
};

// Height interleaved into the naturals; distinct heights get distinct
// indices, so levels stay antichains.
struct AntichainDecomposition {
    std::map<std::string, int> index; // node_str -> antichain index
    Ordinal depth_certificate;
    int antichains_used = 0;
};

// A finitely presented order-theoretic tree of height < omega*2.
//
// Finite-height nodes are words over the child alphabet. Limit nodes sit
// above eventually periodic rays and are followed by unique successor
// chains. The root counts as a limit node with an empty cofinal sequence.
class OrderTree {
  public:
    enum class Preset { binary, baire, finite_tree, michael_line, custom };

    static std::shared_ptr<const OrderTree> binary();
    static std::shared_ptr<const OrderTree> baire();
    static std::shared_ptr<const OrderTree> michael_line();
    // Explicit prefix-closed node set; `custom` tag keeps the spec words.
    static std::shared_ptr<const OrderTree> finite_tree(std::vector<Word> nodes);
    static std::shared_ptr<const OrderTree> custom(std::vector<Word> nodes);
    // "binary", "baire", "michael_line", "finite:<w1,w2,...>", "path4"
    static std::shared_ptr<const OrderTree> from_preset_id(const std::string& id);

    Preset preset() const { return preset_; }
    const std::string& preset_id() const { return preset_id_; }
    Ordinal height_bound() const { return height_bound_; }
    bool has_upper_levels() const { return height_bound_ > Ordinal::omega_plus(0); }
    bool is_infinite() const { return preset_ != Preset::finite_tree && preset_ != Preset::custom; }

    // -1 means countably many children.
    int child_count(const Word& w) const;
    bool word_exists(const Word& w) const;
    bool node_exists(const NodeId& n) const;

    // Number of tops above the chain denoted by a lower ray shape.
    int top_count(const RayShape& r) const;

    // All height-limit nodes whose strict down-set equals the given ray.
    std::vector<NodeId> tops_of(const Ray& r) const;

    // Checks the descriptor denotes a chain of this tree with no maximal
    // element; throws invalid_ray_error otherwise.
    void require_ray(const Ray& r) const;
    bool ray_valid(const Ray& r) const;
    // Maximal chains: lower rays with no tops, or chains through a top.
    bool ray_is_branch(const Ray& r) const;

    std::vector<NodeId> successors(const NodeId& n, int width) const;
    bool successors_exhaustive(const NodeId& n, int width) const;

    // Fixed cofinal sequence of a limit node, presentation order: the first
    // k proper predecessors. Empty for the root.
    std::vector<NodeId> cofinal_prefix(const NodeId& limit_node, int k) const;
    bool is_limit_node(const NodeId& n) const;
    // Greatest limit node <= n (the root when no other exists).
    NodeId hat(const NodeId& n) const;

    std::vector<NodeId> materialize_nodes(Ordinal depth, const Budget& b) const;
    std::vector<Ray> sample_rays(const Budget& b, bool include_upper = true) const;

    AntichainDecomposition antichain_decomposition(Ordinal depth, const Budget& b) const;

    // Eq-(1)-style membership: ray contains the anchor and avoids every hole.
    bool basic_open_membership(const NodeId& anchor, const std::vector<NodeId>& holes,
                               const Ray& r) const;

  private:
    OrderTree() = default;
    Preset preset_ = Preset::binary;
    std::string preset_id_;
    Ordinal height_bound_;
    int arity_ = 2;                           // -1 for countable branching
    std::set<Word> explicit_nodes_;           // finite/custom presets
    int michael_tops_ = 2;

    int antichain_index(const NodeId& n) const;
};

using TreePtr = std::shared_ptr<const OrderTree>;

} // namespace ends
