// Command line workbench: build presets, play and adjudicate matches, run
// verification suites, synthesize strategy trees, and export JSON traces.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ends/acceptance.hpp"
#include "ends/repl.hpp"
#include "ends/strategies.hpp"
#include "ends/synthesis.hpp"
#include "ends/transfer.hpp"

using namespace ends;

namespace {

struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};

int default_budget() {
    if (const char* env = std::getenv("ENDGAME_BUDGET")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
        }
    }
    return 3;
}

SpacePtr space_by_name(const std::string& name) {
    if (name == "binary-rays") return Space::ray_space(OrderTree::binary());
    if (name == "michael-rays") return Space::ray_space(OrderTree::michael_line());
    if (name == "baire-rays") return Space::ray_space(OrderTree::baire());
    if (name == "binary-branches") return Space::branch_space(OrderTree::binary());
    if (name == "michael-branches") return Space::branch_space(OrderTree::michael_line());
    if (name == "kappa") return Space::kappa();
    if (name.rfind("discrete:", 0) == 0) return Space::discrete(std::stoi(name.substr(9)));
    if (name == "product-counterexample" || name == "product-ce")
        return Space::product({Space::ray_space(OrderTree::binary()), Space::kappa()});
    throw usage_error("unknown space selector: " + name);
}

StrategyHandle player_by_name(const std::string& name, SpacePtr space, unsigned long long seed) {
    if (name == "product-ce")
        return product_counterexample_strategy(space, canonical_ray({{}, {0}}));
    if (name == "sampled") return sampled_product_ii(space, seed);
    if (name == "bm-from-pitz") return bm_from_end_strategy(space, pitz_tree_strategy(space));
    if (name == "gap")
        return bm_i_tracker(space, make_ray({}, {0, 1}), TrackerOptions{0b11, false, 1});
    return strategy_by_name(name, space, seed);
}

void write_artifact(const std::string& path, const Json& j) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

int cmd_examples() {
    Budget b;
    for (const char* id : {"binary", "baire", "michael_line", "path4"}) {
        auto t = OrderTree::from_preset_id(id);
        std::cout << tree_presentation_to_json(*t, b).dump() << "\n";
    }
    auto mich = OrderTree::michael_line();
    Ray irr = make_ray({}, {0, 1});
    std::cout << "tops above " << irr.str() << ": " << mich->tops_of(irr).size() << "\n";
    std::cout << "tops above " << make_ray({}, {0}).str() << ": "
              << mich->tops_of(make_ray({}, {0})).size() << "\n";
    auto s = Space::ray_space(OrderTree::binary());
    auto m = play_end_match(s, GameKind::end_basis, i_tracker(s, make_ray({}, {0})),
                            pitz_tree_strategy(s), 12);
    std::cout << "demo match: winner " << winner_str(m.verdict.winner) << ", "
              << m.verdict.dec.evidence << "\n";
    return 0;
}

int cmd_play(const std::string& space_name, const std::string& p1, const std::string& p2,
             const std::string& game, int horizon, unsigned long long seed,
             const std::string& out_path) {
    SpacePtr space = space_by_name(space_name);
    StrategyHandle i = player_by_name(p1, space, seed);
    StrategyHandle ii = player_by_name(p2, space, seed + 1);
    MatchState m;
    if (game == "bm") {
        m = play_bm_match(space, i, ii, horizon);
    } else {
        GameKind kind = game == "end-unrestricted" ? GameKind::end_unrestricted
                                                   : GameKind::end_basis;
        m = play_end_match(space, kind, i, ii, horizon);
    }
    Json j = match_to_json(m);
    write_artifact(out_path, j);
    std::cout << "winner: " << winner_str(m.verdict.winner) << " (" << m.verdict.reason << ")\n";
    if (m.verdict.adjudicated && m.verdict.dec.x)
        std::cout << "captured: " << point_str(*m.verdict.dec.x) << ", open part "
                  << open_str(m.verdict.dec.a) << "\n";
    if (!out_path.empty()) std::cout << "transcript: " << out_path << "\n";
    return m.verdict.winner == Winner::none && !m.verdict.adjudicated ? 1 : 0;
}

int cmd_interactive(const std::string& space_name, const std::string& p2, int horizon,
                    unsigned long long seed) {
    SpacePtr space = space_by_name(space_name);
    ReplSession session = make_repl_session(space, player_by_name(p2, space, seed), horizon);
    std::cout << "you open on " << space->describe()
              << "; moves: ANCHOR [HOLE ...] (e.g. `0 -`), quit to stop\n";
    std::string line;
    while (!session.done && std::getline(std::cin, line)) {
        if (line.empty()) continue;
        std::cout << repl_step(session, line) << "\n";
    }
    if (!session.done) std::cout << repl_step(session, "quit") << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& tree_id, const std::string& depth_str,
               unsigned long long seed, const std::string& out_path) {
    Json report;
    report["schema"] = kSchemaVersion;
    report["suite"] = suite;
    report["seed"] = seed;
    bool pass = true;
    if (suite == "subbase") {
        auto tree = OrderTree::from_preset_id(tree_id);
        Ordinal depth = Ordinal::parse(depth_str);
        Budget b;
        b.depth = depth.limit_part ? b.depth : depth.finite_part;
        auto s = Space::ray_space(tree);
        auto sb = Subbase::tree_cylinders(s);
        auto rep = sb.properties(b);
        auto anti = tree->antichain_decomposition(depth, b);
        report["properties"] = subbase_report_to_json(rep);
        report["antichains"] = antichain_to_json(anti);
        pass = rep.pass();
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << tree_id << " cylinder family: "
                  << rep.members_checked << " members, " << anti.antichains_used
                  << " antichains to depth " << depth.str() << "\n";
    } else if (suite == "all") {
        Json list = Json::array();
        for (const CriterionResult& r : run_acceptance(seed)) {
            Json jr;
            jr["criterion"] = r.number;
            jr["title"] = r.title;
            jr["pass"] = r.pass;
            jr["detail"] = r.detail;
            list.push_back(jr);
            pass = pass && r.pass;
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.number << ": " << r.detail << "\n";
        }
        report["criteria"] = list;
    } else {
        static const std::map<std::string, int> suites = {
            {"strategy", 1}, {"partition", 2}, {"synth", 3},      {"transfer", 4},
            {"glue", 5},     {"product-ce", 6}, {"products", 7},  {"ends", 8},
            {"determinism", 9}};
        auto it = suites.find(suite);
        if (it == suites.end()) throw usage_error("unknown suite: " + suite);
        CriterionResult r = run_criterion(it->second, seed);
        report["title"] = r.title;
        report["pass"] = r.pass;
        report["detail"] = r.detail;
        report["artifact"] = r.artifact;
        pass = r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.detail << "\n";
    }
    report["pass"] = pass;
    write_artifact(out_path, report);
    if (!out_path.empty()) std::cout << "report: " << out_path << "\n";
    return pass ? 0 : 1;
}

int cmd_synth(const std::string& space_name, int depth, const std::string& out_path) {
    SpacePtr space = space_by_name(space_name);
    auto sb = Subbase::tree_cylinders(space);
    auto tc = build_tc(space, sb, pitz_tree_strategy(space), depth);
    Budget b;
    auto rep = verify_synth_subbase(tc, b);
    Json j = synth_to_json(tc);
    j["report"] = synth_report_to_json(rep);
    write_artifact(out_path, j);
    std::cout << tc.nodes.size() << " nodes to depth " << depth << ", verification "
              << (rep.pass() ? "passed" : "FAILED") << "\n";
    return rep.pass() ? 0 : 1;
}

int cmd_product(const std::string& trees_csv, int depth, int width, const std::string& out_path) {
    std::vector<TreePtr> trees;
    size_t pos = 0;
    while (pos <= trees_csv.size()) {
        size_t comma = trees_csv.find(',', pos);
        if (comma == std::string::npos) comma = trees_csv.size();
        trees.push_back(OrderTree::from_preset_id(trees_csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    auto cert = check_product_homeo(trees, depth, width);
    write_artifact(out_path, product_cert_to_json(cert));
    std::cout << (cert.pass ? "certificate: " : "FAILED: ") << cert.detail << ", threads "
              << cert.threads << "\n";
    return cert.pass ? 0 : 1;
}

int cmd_ends(const std::string& graph_id, int radius, long long kappa,
             const std::string& out_path) {
    auto g = GraphPresentation::from_preset_id(graph_id, kappa);
    std::vector<Vertex> sep;
    if (g.preset() == GraphPresentation::Preset::ladder) sep = {Vertex{0, 0}, Vertex{0, 1}};
    else sep = {g.root()};
    auto e = end_partition(g, sep, radius);
    auto rep = end_space_model_report(g, radius);
    Json j;
    j["schema"] = kSchemaVersion;
    j["graph"] = g.describe();
    j["partition"] = end_partition_to_json(e);
    j["model"] = end_model_to_json(rep);
    write_artifact(out_path, j);
    std::cout << g.describe() << ": " << e.infinite_count() << " infinite components; model "
              << rep.space->describe() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic workbench for end spaces and topological games"};
    app.require_subcommand(1);
    int budget = default_budget();

    auto* ex = app.add_subcommand("examples", "build the presets and print demo summaries");

    auto* play = app.add_subcommand("play", "run and adjudicate a match");
    std::string space_name = "binary-rays", p1 = "leftmost", p2 = "pitz", game = "end";
    std::string out_path;
    int horizon = 64;
    unsigned long long seed = 1;
    play->add_option("--space", space_name, "space selector");
    play->add_option("--pI", p1, "opening player");
    play->add_option("--pII", p2, "answering player");
    play->add_option("--game", game, "end | end-unrestricted | bm");
    play->add_option("--horizon", horizon, "rounds before adjudication");
    play->add_option("--seed", seed, "seed for sampled handles");
    play->add_option("--out", out_path, "transcript path");

    auto* inter = app.add_subcommand("play-interactive", "type the opening moves yourself");
    std::string ispace = "binary-rays", ip2 = "pitz";
    int ihorizon = 64;
    unsigned long long iseed = 1;
    inter->add_option("--space", ispace, "space selector");
    inter->add_option("--pII", ip2, "answering player");
    inter->add_option("--horizon", ihorizon, "round limit");
    inter->add_option("--seed", iseed, "seed");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all", tree_id = "binary", depth_str = "5", vout;
    unsigned long long vseed = 2026;
    verify->add_option("--suite", suite,
                       "subbase|strategy|partition|synth|transfer|glue|product-ce|products|ends|"
                       "determinism|all");
    verify->add_option("--tree", tree_id, "tree preset for subbase checks");
    verify->add_option("--depth", depth_str, "depth (e.g. 5 or omega+3)");
    verify->add_option("--seed", vseed, "seed");
    verify->add_option("--out", vout, "report path");

    auto* synth = app.add_subcommand("synth", "build and verify a strategy tree");
    std::string sspace = "binary-rays", sout;
    int sdepth = 4;
    synth->add_option("--space", sspace, "space selector");
    synth->add_option("--depth", sdepth, "materialization depth");
    synth->add_option("--out", sout, "export path");

    auto* product = app.add_subcommand("product", "level-wise product certificates");
    std::string trees_csv = "binary,binary", pout;
    int pdepth = 3;
    product->add_option("--trees", trees_csv, "comma separated tree presets");
    product->add_option("--depth", pdepth, "certificate depth");
    product->add_option("--width", budget, "children budget for countable levels");
    product->add_option("--out", pout, "export path");

    auto* endsc = app.add_subcommand("ends", "graph end computation");
    std::string graph_id = "ladder", eout;
    int radius = 20;
    long long kappa = 5;
    endsc->add_option("--graph", graph_id, "ladder|grid|binary_tree_graph|kappa_rays");
    endsc->add_option("--radius", radius, "search radius");
    endsc->add_option("--kappa", kappa, "ray count (-1 symbolic)");
    endsc->add_option("--out", eout, "export path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage error
    }
    try {
        if (ex->parsed()) return cmd_examples();
        if (play->parsed()) return cmd_play(space_name, p1, p2, game, horizon, seed, out_path);
        if (inter->parsed()) return cmd_interactive(ispace, ip2, ihorizon, iseed);
        if (verify->parsed()) return cmd_verify(suite, tree_id, depth_str, vseed, vout);
        if (synth->parsed()) return cmd_synth(sspace, sdepth, sout);
        if (product->parsed()) return cmd_product(trees_csv, pdepth, budget, pout);
        if (endsc->parsed()) return cmd_ends(graph_id, radius, kappa, eout);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
