#include "ends/json_io.hpp"

namespace ends {

Json node_to_json(const NodeId& n) {
    if (!is_upper(n)) return Json{{"w", word_str(lower_word(n))}};
    const UpperNode& u = upper(n);
    Json j;
    j["stem"] = word_str(u.ray.stem);
    j["cycle"] = word_str(u.ray.cycle);
    j["top"] = u.top;
    if (u.plus) j["plus"] = u.plus;
    return j;
}

NodeId node_from_json(const Json& j) {
    if (j.contains("w")) return word_parse(j["w"].get<std::string>());
    UpperNode u;
    u.ray = canonical_ray({word_parse(j["stem"].get<std::string>()),
                           word_parse(j["cycle"].get<std::string>())});
    u.top = j["top"].get<int>();
    u.plus = j.value("plus", 0);
    return u;
}

Json ray_to_json(const Ray& r) {
    Json j;
    j["stem"] = word_str(r.lower.stem);
    j["cycle"] = word_str(r.lower.cycle);
    if (r.top) j["top"] = *r.top;
    return j;
}

Json cell_to_json(const Cell& c) {
    Json j;
    if (std::holds_alternative<TreeCell>(c.v)) {
        const TreeCell& t = c.tree();
        j["anchor"] = node_to_json(t.anchor);
        Json holes = Json::array();
        for (const NodeId& h : t.holes) holes.push_back(node_to_json(h));
        j["holes"] = holes;
        return j;
    }
    if (std::holds_alternative<KappaSet>(c.v)) {
        const KappaSet& k = c.kappa();
        j["kappa"] = k.cofinite ? "cofinite" : "finite";
        j["elems"] = k.elems;
        return j;
    }
    if (std::holds_alternative<DiscreteSet>(c.v)) {
        Json bits = Json::array();
        for (int i = 0; i < 64; ++i)
            if (c.discrete().bits >> i & 1) bits.push_back(i);
        j["points"] = bits;
        return j;
    }
    Json parts = Json::array();
    for (const Cell& p : c.product().parts) parts.push_back(cell_to_json(p));
    j["product"] = parts;
    return j;
}

Json point_to_json(const Point& p) {
    if (std::holds_alternative<Ray>(p.v)) return ray_to_json(p.ray());
    if (std::holds_alternative<long long>(p.v)) return Json{{"kappa", p.kappa()}};
    if (std::holds_alternative<int>(p.v)) return Json{{"point", p.discrete()}};
    Json parts = Json::array();
    for (const Point& q : p.tuple()) parts.push_back(point_to_json(q));
    return Json{{"tuple", parts}};
}

Json open_to_json(const OpenSet& o) {
    Json cells = Json::array();
    for (const Cell& c : o.cells) cells.push_back(cell_to_json(c));
    return cells;
}

Json cover_to_json(const Cover& c) {
    Json j;
    Json pieces = Json::array();
    for (const Cell& p : c.pieces) pieces.push_back(cell_to_json(p));
    j["pieces"] = pieces;
    if (c.rest) {
        j["rest"] = Json{{"label", c.rest->label}, {"region", cell_to_json(c.rest->region)}};
    }
    return j;
}

std::string winner_str(Winner w) {
    switch (w) {
    case Winner::player_I: return "I";
    case Winner::player_II: return "II";
    default: return "undetermined";
    }
}

Json match_to_json(const MatchState& m) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["game"] = m.game == GameKind::banach_mazur
                    ? "banach-mazur"
                    : (m.game == GameKind::end_basis ? "end" : "end-unrestricted");
    j["space"] = m.space->describe();
    j["horizon"] = m.horizon;
    Json rounds = Json::array();
    for (const Round& r : m.rounds) {
        Json jr;
        Json open = Json::array();
        for (const Cell& c : r.open_i) open.push_back(cell_to_json(c));
        jr["I"] = open;
        if (r.cover_ii) jr["II"] = cover_to_json(*r.cover_ii);
        if (r.shrink_ii) jr["II"] = cell_to_json(*r.shrink_ii);
        if (r.entered_piece != -1) jr["entered"] = r.entered_piece;
        rounds.push_back(jr);
    }
    j["rounds"] = rounds;
    Json v;
    v["winner"] = winner_str(m.verdict.winner);
    v["reason"] = m.verdict.reason;
    v["adjudicated"] = m.verdict.adjudicated;
    if (m.verdict.adjudicated && m.game != GameKind::banach_mazur) {
        Json d;
        switch (m.verdict.dec.kind) {
        case DecKind::unique: d["kind"] = "unique"; break;
        case DecKind::no_decomposition: d["kind"] = "no-decomposition"; break;
        case DecKind::empty_intersection: d["kind"] = "empty"; break;
        default: d["kind"] = "not-adjudicable";
        }
        if (m.verdict.dec.x) d["x"] = point_to_json(*m.verdict.dec.x);
        d["A"] = open_to_json(m.verdict.dec.a);
        if (m.verdict.dec.a_symbolic_cofinite) d["A_symbolic"] = "cofinite";
        d["evidence"] = m.verdict.dec.evidence;
        v["decomposition"] = d;
    }
    if (m.game == GameKind::banach_mazur && m.verdict.adjudicated)
        v["nonempty"] = m.verdict.bm_nonempty;
    j["verdict"] = v;
    if (m.tail) j["tail"] = Json{{"start", m.tail->start}, {"period", m.tail->period}};
    if (!m.audit.empty()) j["audit"] = m.audit;
    return j;
}

Json subbase_report_to_json(const SubbaseReport& r) {
    Json j;
    j["nested"] = r.nested;
    if (r.nested_witness)
        j["nested_witness"] = Json::array(
            {cell_to_json(r.nested_witness->first), cell_to_json(r.nested_witness->second)});
    j["noetherian"] = r.noetherian;
    j["chain_depth_certified"] = r.chain_depth_certified;
    j["sigma_disjoint"] = r.sigma_disjoint;
    j["antichains_used"] = r.antichains_used;
    j["clopen"] = r.clopen;
    j["members_checked"] = r.members_checked;
    j["pass"] = r.pass();
    return j;
}

Json synth_to_json(const SynthTree& t) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["space"] = t.space->describe();
    j["depth"] = t.depth;
    Json nodes = Json::array();
    for (const SynthNode& n : t.nodes) {
        Json jn;
        jn["cell"] = cell_to_json(n.cell);
        jn["parent"] = n.parent;
        jn["depth"] = n.depth;
        if (n.item) jn["item"] = n.item;
        if (n.terminal) jn["terminal"] = true;
        nodes.push_back(jn);
    }
    j["nodes"] = nodes;
    Json limits = Json::array();
    for (const LimitAttachment& la : t.limits) {
        Json jl;
        jl["leaf"] = la.leaf;
        jl["captured"] = point_to_json(la.captured);
        Json tops = Json::array();
        for (const Cell& c : la.tops) tops.push_back(cell_to_json(c));
        jl["attached"] = tops;
        limits.push_back(jl);
    }
    j["limits"] = limits;
    return j;
}

Json synth_report_to_json(const SynthReport& r) {
    Json j;
    j["family"] = subbase_report_to_json(r.family);
    Json items = Json::array();
    for (const auto& i : r.items) {
        Json ji;
        ji["check"] = i.check;
        ji["pass"] = i.pass;
        if (!i.witness.empty()) ji["witness"] = i.witness;
        items.push_back(ji);
    }
    j["items"] = items;
    if (r.window_fallback_seen) j["window_fallback_seen"] = true;
    j["pass"] = r.pass();
    return j;
}

Json bisim_to_json(const BisimCertificate& c) {
    Json j;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    Json m = Json::array();
    for (const auto& [k, v] : c.matched) m.push_back(Json::array({k, v}));
    j["matched"] = m;
    return j;
}

Json end_partition_to_json(const EndApprox& e) {
    Json j;
    Json sep = Json::array();
    for (const Vertex& v : e.separator) sep.push_back(Json::array({v.a, v.b}));
    j["separator"] = sep;
    Json comps = Json::array();
    for (const auto& c : e.components) {
        Json jc;
        jc["id"] = c.id;
        jc["infinite"] = c.infinite;
        jc["representative"] = Json::array({c.representative.a, c.representative.b});
        jc["size_within_radius"] = c.size_within_radius;
        comps.push_back(jc);
    }
    j["components"] = comps;
    j["infinite_components"] = e.infinite_count();
    return j;
}

Json end_model_to_json(const EndModelReport& r) {
    Json j;
    j["space"] = r.space->describe();
    j["points"] = r.points;
    j["isolated_certified"] = r.isolated_certified;
    j["limit_point_nonisolated"] = r.limit_point_nonisolated;
    j["note"] = r.note;
    return j;
}

Json product_cert_to_json(const ProductHomeoCertificate& c) {
    Json j;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    j["depth"] = c.depth;
    j["matched_basics"] = c.matched_basics;
    j["threads"] = c.threads;
    Json corr = Json::array();
    for (const auto& [k, v] : c.correspondence) corr.push_back(Json::array({k, v}));
    j["correspondence"] = corr;
    return j;
}

Json antichain_to_json(const AntichainDecomposition& d) {
    Json j;
    j["depth_certificate"] = d.depth_certificate.str();
    j["antichains_used"] = d.antichains_used;
    Json idx = Json::object();
    for (const auto& [k, v] : d.index) idx[k] = v;
    j["index"] = idx;
    return j;
}

Json tree_presentation_to_json(const OrderTree& t, const Budget& b) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["preset"] = t.preset_id();
    j["height_bound"] = t.height_bound().str();
    j["budget"] = Json{{"depth", b.depth},
                       {"width", b.width},
                       {"ray_stem", b.ray_stem},
                       {"upper_plus", b.upper_plus}};
    return j;
}

} // namespace ends
