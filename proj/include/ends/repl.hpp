#pragma once

#include "ends/game.hpp"

namespace ends {

// Interactive match: a human types the opening player's moves against a
// fixed answering strategy. Moves parse as "ANCHOR [HOLE ...]" where an
// anchor or hole is a node path like 010 (or - for the root) or
// top:STEM:CYCLE:J for a limit node. "quit" closes the session.
struct ReplSession {
    SpacePtr space;
    StrategyHandle answering;
    MatchState state;
    int width_budget = 3;
    bool done = false;
    int violations = 0;
};

ReplSession make_repl_session(SpacePtr space, StrategyHandle answering, int horizon = 64);

// One exchange; the reply always describes what happened. Illegal or
// unparsable input leaves the state unchanged.
std::string repl_step(ReplSession& session, const std::string& line);

std::optional<NodeId> parse_node_text(const std::string& token);

} // namespace ends
