#include "ends/repl.hpp"

#include <sstream>

namespace ends {

ReplSession make_repl_session(SpacePtr space, StrategyHandle answering, int horizon) {
    ReplSession s;
    s.space = space;
    s.answering = std::move(answering);
    s.state.game = GameKind::end_basis;
    s.state.space = space;
    s.state.horizon = horizon;
    return s;
}

std::optional<NodeId> parse_node_text(const std::string& token) {
    try {
        if (token.rfind("top:", 0) == 0) {
            std::string body = token.substr(4);
            size_t c1 = body.find(':');
            size_t c2 = body.find(':', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos) return std::nullopt;
            UpperNode u;
            u.ray = canonical_ray(
                {word_parse(body.substr(0, c1)), word_parse(body.substr(c1 + 1, c2 - c1 - 1))});
            u.top = std::stoi(body.substr(c2 + 1));
            return NodeId{u};
        }
        return NodeId{word_parse(token)};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string repl_step(ReplSession& session, const std::string& line) {
    const Space& s = *session.space;
    std::istringstream in(line);
    std::string tok;
    if (!(in >> tok)) return "enter a move: ANCHOR [HOLE ...], or quit";
    if (tok == "quit" || tok == "q") {
        session.done = true;
        std::ostringstream out;
        out << "session closed after " << session.state.rounds.size() << " rounds, "
            << session.violations << " rejected inputs; horizon audit: "
            << (session.state.rounds.empty() ? "no moves" : "all recorded moves validated");
        return out.str();
    }
    auto anchor = parse_node_text(tok);
    if (!anchor) {
        ++session.violations;
        return "could not parse anchor '" + tok + "'; expected a path like 010, -, or top:STEM:CYCLE:J";
    }
    std::vector<NodeId> holes;
    while (in >> tok) {
        if (tok == "-") continue;
        auto h = parse_node_text(tok);
        if (!h) {
            ++session.violations;
            return "could not parse hole '" + tok + "'";
        }
        holes.push_back(*h);
    }
    auto cell = cell_canon(s, make_tree_cell(*anchor, holes));
    if (!cell) {
        ++session.violations;
        return "that set is empty; the move must be a nonempty basic open set";
    }
    if (auto v = validate_open_move(s, GameKind::end_basis, session.state, {*cell})) {
        ++session.violations;
        return "illegal move (" + v->rule + "): " + v->detail;
    }
    Round r;
    r.open_i = {*cell};
    if (!session.state.rounds.empty()) {
        auto entered =
            cover_piece_containing(s, *session.state.rounds.back().cover_ii, *cell);
        if (entered) r.entered_piece = entered->first;
    }
    session.state.rounds.push_back(r);
    session.state.chain_cells.push_back(*cell);
    auto cover = session.answering.next_cover(session.state, {*cell});
    if (!cover) {
        session.done = true;
        return "the answering strategy forfeits";
    }
    session.state.rounds.back().cover_ii = *cover;
    std::ostringstream out;
    out << "round " << session.state.rounds.size() - 1 << ": you played " << cell_str(*cell)
        << "\ncover:";
    int listed = 0;
    for (const Cell& p : cover->pieces) {
        if (listed++ >= session.width_budget + 4) {
            out << " ...";
            break;
        }
        out << " " << cell_str(p);
    }
    if (cover->rest) out << "  [+ " << cover->rest->label << "]";
    return out.str();
}

} // namespace ends
