#pragma once

#include <json.hpp>

#include "ends/game.hpp"
#include "ends/graph_ends.hpp"
#include "ends/products.hpp"
#include "ends/synthesis.hpp"

namespace ends {

// Deterministic serialization: insertion-ordered objects, canonical cell
// forms, no floats. Identical inputs give identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json node_to_json(const NodeId& n);
NodeId node_from_json(const Json& j);
Json ray_to_json(const Ray& r);
Json cell_to_json(const Cell& c);
Json point_to_json(const Point& p);
Json open_to_json(const OpenSet& o);
Json cover_to_json(const Cover& c);
Json match_to_json(const MatchState& m);
Json subbase_report_to_json(const SubbaseReport& r);
Json synth_to_json(const SynthTree& t);
Json synth_report_to_json(const SynthReport& r);
Json bisim_to_json(const BisimCertificate& c);
Json end_partition_to_json(const EndApprox& e);
Json end_model_to_json(const EndModelReport& r);
Json product_cert_to_json(const ProductHomeoCertificate& c);
Json antichain_to_json(const AntichainDecomposition& d);
Json tree_presentation_to_json(const OrderTree& t, const Budget& b);

std::string winner_str(Winner w);

} // namespace ends
