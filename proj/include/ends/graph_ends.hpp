#pragma once

#include <functional>

#include "ends/space.hpp"

namespace ends {

// Vertices carry a preset-specific coordinate pair; adjacency is an oracle.
struct Vertex {
    long long a = 0;
    long long b = 0;

    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct invalid_walk_error : std::runtime_error {
    explicit invalid_walk_error(const std::string& m) : std::runtime_error(m) {}
};

// Locally finite graph presentations (one designated hub may have countable
// degree). Presets: two-sided ladder, the grid, the binary tree graph, and
// a star of rays dominated through their first vertices.
class GraphPresentation {
  public:
    enum class Preset { ladder, grid, binary_tree_graph, kappa_rays };

    static GraphPresentation ladder();
    static GraphPresentation grid();
    static GraphPresentation binary_tree_graph();
    // kappa < 0 keeps the ray family symbolic; enumeration stays budgeted.
    static GraphPresentation kappa_rays(long long kappa);
    static GraphPresentation from_preset_id(const std::string& id, long long kappa = 5);

    Preset preset() const { return preset_; }
    long long kappa() const { return kappa_; }
    bool vertex_exists(const Vertex& v) const;
    std::vector<Vertex> neighbors(const Vertex& v, int budget) const;
    Vertex root() const;
    std::string describe() const;

  private:
    Preset preset_ = Preset::ladder;
    long long kappa_ = -1;
};

// Eventually periodic walk: vertex sequence stem then a coordinate shift
// applied forever. Enough for the preset rays.
struct RayWalk {
    std::vector<Vertex> stem;
    Vertex shift; // applied to the last stem vertex repeatedly

    Vertex at(size_t i) const;
};

RayWalk straight_walk(Vertex from, Vertex shift);

struct EndApprox {
    std::vector<Vertex> separator;
    // component id per escape direction; components that reach the budget
    // radius are flagged infinite
    struct Component {
        int id = 0;
        bool infinite = false;
        bool undetermined = false;
        Vertex representative;
        long long size_within_radius = 0;
    };
    std::vector<Component> components;
    int infinite_count() const {
        int n = 0;
        for (const auto& c : components) n += c.infinite ? 1 : 0;
        return n;
    }
};

struct EndChain {
    std::vector<EndApprox> stages;
    // refinement: stage k+1 component -> stage k component (by index)
    std::vector<std::vector<int>> refine;
};

EndApprox end_partition(const GraphPresentation& g, const std::vector<Vertex>& separator,
                        int radius);
EndChain end_partition_chain(const GraphPresentation& g,
                             const std::vector<std::vector<Vertex>>& separators, int radius);

enum class TailRelation { same_component, separated, undetermined };
TailRelation rays_equivalent(const GraphPresentation& g, const RayWalk& r, const RayWalk& s,
                             const std::vector<Vertex>& separator, int radius);

// k vertex-disjoint connections from v to the walk within the radius,
// decided by unit-capacity augmenting paths on the truncation.
bool dominates(const GraphPresentation& g, const Vertex& v, const RayWalk& r, int k, int radius);

// Symbolic space models for the classified presets.
SpacePtr end_space_model(const GraphPresentation& g, int radius);

struct EndModelReport {
    SpacePtr space;
    int points = -1; // -1 = symbolic
    int isolated_certified = 0;
    bool limit_point_nonisolated = false;
    std::string note;
};

// Model construction plus the isolation analysis over the sampled separator
// family (singleton ray roots and hub prefixes).
EndModelReport end_space_model_report(const GraphPresentation& g, int radius);

} // namespace ends
