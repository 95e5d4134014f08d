#pragma once

#include "ends/game.hpp"
#include "ends/subbase.hpp"

namespace ends {

struct DichotomyResult {
    bool every_point_has_smaller = true; // case i
    std::optional<Point> witness;        // case ii: the pinned point
};

// Exactly one of: every point of the set has a strictly smaller subbasic
// neighborhood, or a unique point is pinned by the set's anchor.
DichotomyResult dichotomy_case(const Subbase& sb, const Cell& set);

struct KPrime {
    int item = 1; // which of the four partition cases fired
    std::vector<Cell> pieces;
    bool window_fallback = false; // some chain window was empty
};

// The canonical disjoint refinement of a basic open set into basis elements.
KPrime kprime_partition(const Subbase& sb, const Cell& set);

struct SynthNode {
    Cell cell;
    int parent = -1;
    int depth = 0;
    int item = 0;            // partition case that produced this node
    bool terminal = false;   // pinned singleton: the partition is a fixpoint
    std::vector<int> children;
};

struct LimitAttachment {
    int leaf = -1;
    Point captured;
    std::vector<Cell> tops; // the disjoint family attached above the ray
};

struct SynthTree {
    SpacePtr space;
    int depth = 0;
    std::vector<SynthNode> nodes;
    std::vector<LimitAttachment> limits;
    bool window_fallback_seen = false;

    std::vector<int> level(int d) const;
};

struct synthesis_error : std::runtime_error {
    explicit synthesis_error(const std::string& m) : std::runtime_error(m) {}
};

// Materializes the strategy tree: children of a node are the canonical
// refinements of the answer cover's elements; eventually periodic paths get
// their limit data attached.
SynthTree build_tc(SpacePtr space, const Subbase& sb, const StrategyHandle& psi, int depth);

struct SynthCheckItem {
    std::string check;
    bool pass = true;
    std::string witness;
};

struct SynthReport {
    SubbaseReport family;
    std::vector<SynthCheckItem> items;
    bool window_fallback_seen = false;

    bool pass() const {
        if (!family.pass()) return false;
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
};

// (a) nested/noetherian/sigma-disjoint on the node family, (b) local basis
// spot checks around sampled points, (c) completeness spot checks against
// sampled closed sets.
SynthReport verify_synth_subbase(const SynthTree& tc, const Budget& b);

struct BisimCertificate {
    bool pass = false;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> matched; // node -> reference cell
};

// Depth-d correspondence between the synthesized node lattice and the
// reference space's cylinder lattice: every node names a reference basic
// open, the map is injective and order-preserving, and the deepest level
// partitions the space exactly like a full reference level.
BisimCertificate bisimulation_certificate(const SynthTree& tc, int reference_level);

} // namespace ends
