#include "ends/game.hpp"

namespace ends {

namespace {

std::optional<Cell> open_union_subset_piece(const Space& s, const std::vector<Cell>& open,
                                            const Cell& piece) {
    for (const Cell& c : open)
        if (!cell_subset(s, c, piece)) return std::nullopt;
    return piece;
}

} // namespace

std::optional<std::pair<int, Cell>> cover_piece_containing(const Space& s, const Cover& cover,
                                                           const Cell& probe) {
    for (size_t i = 0; i < cover.pieces.size(); ++i)
        if (cell_subset(s, probe, cover.pieces[i])) return {{static_cast<int>(i), cover.pieces[i]}};
    if (cover.rest) {
        auto piece = cover.rest->materialize(probe);
        if (piece && cell_subset(s, probe, *piece)) return {{-2, *piece}};
    }
    return std::nullopt;
}

std::optional<Violation> validate_open_move(const Space& s, GameKind game, const MatchState& st,
                                            const std::vector<Cell>& open) {
    if (open.empty()) return Violation{"nonempty-move", "player I declared nothing"};
    if (game != GameKind::end_unrestricted && open.size() != 1)
        return Violation{"basic-move", "basis games take a single basic open set"};
    for (const Cell& c : open) {
        if (cell_is_empty(s, c)) return Violation{"nonempty-move", "empty set " + cell_str(c)};
        if (!cell_is_open(s, c)) return Violation{"open-move", "not open: " + cell_str(c)};
    }
    for (size_t i = 0; i < open.size(); ++i)
        for (size_t j = i + 1; j < open.size(); ++j)
            if (!cell_disjoint(s, open[i], open[j]))
                return Violation{"normal-form", "move cells overlap"};
    if (st.rounds.empty()) return std::nullopt;
    const Cover& prev = *st.rounds.back().cover_ii;
    for (const Cell& piece : prev.pieces)
        if (open_union_subset_piece(s, open, piece)) return std::nullopt;
    if (prev.rest) {
        auto piece = prev.rest->materialize(open.front());
        if (piece && cell_subset(s, *piece, prev.rest->region) &&
            open_union_subset_piece(s, open, *piece))
            return std::nullopt;
    }
    return Violation{"containment", "move is not inside one element of the previous cover"};
}

std::optional<Violation> validate_cover_move(const Space& s, const std::vector<Cell>& target,
                                             const Cover& cover) {
    if (cover.pieces.empty() && !cover.rest)
        return Violation{"nonempty-cover", "player II declared nothing"};
    for (const Cell& p : cover.pieces) {
        if (cell_is_empty(s, p)) return Violation{"nonempty-piece", "empty piece " + cell_str(p)};
        if (!cell_is_open(s, p)) return Violation{"open-piece", "not open: " + cell_str(p)};
    }
    for (size_t i = 0; i < cover.pieces.size(); ++i)
        for (size_t j = i + 1; j < cover.pieces.size(); ++j)
            if (!cell_disjoint(s, cover.pieces[i], cover.pieces[j]))
                return Violation{"disjointness", "pieces " + cell_str(cover.pieces[i]) + " and " +
                                                     cell_str(cover.pieces[j]) + " overlap"};
    // pieces stay inside the covered set
    auto inside_target = [&](const Cell& p) {
        std::vector<Cell> residual{p};
        for (const Cell& t : target) {
            std::vector<Cell> next;
            for (const Cell& r : residual) {
                auto sub = cell_subtract(s, r, t);
                next.insert(next.end(), sub.begin(), sub.end());
            }
            residual = std::move(next);
        }
        for (const Cell& r : residual)
            if (!cell_is_empty(s, r)) return false;
        return true;
    };
    for (const Cell& p : cover.pieces)
        if (!inside_target(p))
            return Violation{"piece-containment", "piece leaves the covered set: " + cell_str(p)};
    if (cover.rest) {
        if (!inside_target(cover.rest->region))
            return Violation{"piece-containment", "rest region leaves the covered set"};
        for (const Cell& p : cover.pieces)
            if (!cell_disjoint(s, p, cover.rest->region))
                return Violation{"disjointness", "rest region overlaps piece " + cell_str(p)};
    }
    // exact coverage: target minus pieces minus rest region is empty
    std::vector<Cell> residual = target;
    auto subtract_all = [&](const Cell& c) {
        std::vector<Cell> next;
        for (const Cell& r : residual) {
            auto sub = cell_subtract(s, r, c);
            next.insert(next.end(), sub.begin(), sub.end());
        }
        residual = std::move(next);
    };
    for (const Cell& p : cover.pieces) subtract_all(p);
    if (cover.rest) subtract_all(cover.rest->region);
    for (const Cell& r : residual)
        if (auto w = cell_witness(s, r))
            return Violation{"coverage", "cover misses " + point_str(*w)};
    return std::nullopt;
}

std::optional<Violation> validate_bm_move(const Space& s, const MatchState& st, const Cell& move,
                                          PlayerId who) {
    if (cell_is_empty(s, move)) return Violation{"nonempty-move", "empty set"};
    if (!cell_is_open(s, move)) return Violation{"open-move", "not open: " + cell_str(move)};
    const Cell* prev = nullptr;
    if (who == PlayerId::I) {
        if (!st.rounds.empty()) prev = &*st.rounds.back().shrink_ii;
    } else {
        prev = &st.rounds.back().open_i.front();
    }
    if (prev && !cell_subset(s, move, *prev))
        return Violation{"containment", cell_str(move) + " is not inside " + cell_str(*prev)};
    return std::nullopt;
}

namespace {

void forfeit(MatchState& st, PlayerId who, const std::string& why) {
    st.verdict.winner = who == PlayerId::I ? Winner::player_II : Winner::player_I;
    st.verdict.adjudicated = false;
    st.verdict.reason = std::string("forfeit:") + (who == PlayerId::I ? "I" : "II") + ": " + why;
}

void adjudicate_end(MatchState& st) {
    const Space& s = *st.space;
    if (st.chain_cells.empty()) {
        st.verdict.reason = "no moves";
        return;
    }
    st.tail = detect_periodic_tail(s, st.chain_cells);
    if (!st.tail) {
        st.verdict.winner = Winner::none;
        st.verdict.reason = "undetermined(horizon): no periodic tail detected";
        return;
    }
    Chain chain{st.chain_cells, st.tail};
    st.verdict.dec = decompose_point_plus_open(s, chain);
    st.verdict.adjudicated = st.verdict.dec.kind != DecKind::not_adjudicable;
    switch (st.verdict.dec.kind) {
    case DecKind::unique:
        st.verdict.winner = Winner::player_II;
        st.verdict.reason = "decomposition";
        break;
    case DecKind::empty_intersection:
    case DecKind::no_decomposition:
        st.verdict.winner = Winner::player_I;
        st.verdict.reason = "no-decomposition";
        break;
    default:
        st.verdict.winner = Winner::none;
        st.verdict.reason = "undetermined(horizon)";
    }
}

} // namespace

MatchState play_end_match(SpacePtr space, GameKind game, const StrategyHandle& sI,
                          const StrategyHandle& sII, int horizon) {
    MatchState st;
    st.game = game;
    st.space = space;
    st.horizon = horizon;
    const Space& s = *space;
    for (int n = 0; n < horizon; ++n) {
        auto open = sI.next_open(st);
        if (!open) {
            forfeit(st, PlayerId::I, "no move");
            return st;
        }
        // canonicalize for stable transcripts
        std::vector<Cell> open_c;
        for (const Cell& c : *open)
            if (auto cc = cell_canon(s, c)) open_c.push_back(*cc);
            else open_c.push_back(c); // kept so validation can name the offence
        if (auto v = validate_open_move(s, game, st, open_c)) {
            st.audit.push_back("I: " + v->rule + ": " + v->detail);
            forfeit(st, PlayerId::I, v->rule);
            return st;
        }
        Round r;
        r.open_i = open_c;
        if (!st.rounds.empty()) {
            auto entered = cover_piece_containing(s, *st.rounds.back().cover_ii, open_c.front());
            if (entered) {
                r.entered_piece = entered->first;
                if (game == GameKind::end_unrestricted) st.chain_cells.push_back(entered->second);
            }
        }
        if (game != GameKind::end_unrestricted) st.chain_cells.push_back(open_c.front());
        st.rounds.push_back(r);

        auto cover = sII.next_cover(st, open_c);
        if (!cover) {
            forfeit(st, PlayerId::II, "no cover");
            return st;
        }
        if (auto v = validate_cover_move(s, open_c, *cover)) {
            st.audit.push_back("II: " + v->rule + ": " + v->detail);
            forfeit(st, PlayerId::II, v->rule);
            return st;
        }
        st.rounds.back().cover_ii = std::move(cover);
    }
    if (sI.finite_state && sII.finite_state) adjudicate_end(st);
    else st.verdict.reason = "undetermined(horizon): non-finite-state handles";
    return st;
}

MatchState play_bm_match(SpacePtr space, const StrategyHandle& sI, const StrategyHandle& sII,
                         int horizon) {
    MatchState st;
    st.game = GameKind::banach_mazur;
    st.space = space;
    st.horizon = horizon;
    const Space& s = *space;
    for (int n = 0; n < horizon; ++n) {
        auto open = sI.bm_open(st);
        if (!open) {
            forfeit(st, PlayerId::I, "no move");
            return st;
        }
        auto open_c = cell_canon(s, *open);
        Cell oc = open_c ? *open_c : *open;
        if (auto v = validate_bm_move(s, st, oc, PlayerId::I)) {
            st.audit.push_back("I: " + v->rule + ": " + v->detail);
            forfeit(st, PlayerId::I, v->rule);
            return st;
        }
        Round r;
        r.open_i = {oc};
        st.rounds.push_back(r);
        st.chain_cells.push_back(oc);

        auto shrink = sII.bm_shrink(st, oc);
        if (!shrink) {
            forfeit(st, PlayerId::II, "no move");
            return st;
        }
        auto shrink_c = cell_canon(s, *shrink);
        Cell sc = shrink_c ? *shrink_c : *shrink;
        if (auto v = validate_bm_move(s, st, sc, PlayerId::II)) {
            st.audit.push_back("II: " + v->rule + ": " + v->detail);
            forfeit(st, PlayerId::II, v->rule);
            return st;
        }
        st.rounds.back().shrink_ii = sc;
        st.chain_cells.push_back(sc);
    }
    if (sI.finite_state && sII.finite_state) {
        st.tail = detect_periodic_tail(s, st.chain_cells);
        if (st.tail) {
            Chain chain{st.chain_cells, st.tail};
            st.verdict.bm_nonempty = chain_limit_nonempty(s, chain);
            st.verdict.adjudicated = true;
            st.verdict.winner = st.verdict.bm_nonempty ? Winner::player_II : Winner::player_I;
            st.verdict.reason = st.verdict.bm_nonempty ? "nonempty-intersection"
                                                       : "empty-intersection";
        } else {
            st.verdict.reason = "undetermined(horizon): no periodic tail detected";
        }
    } else {
        st.verdict.reason = "undetermined(horizon): non-finite-state handles";
    }
    return st;
}

bool replay_validates(const MatchState& st) {
    const Space& s = *st.space;
    MatchState probe;
    probe.game = st.game;
    probe.space = st.space;
    for (const Round& r : st.rounds) {
        if (st.game == GameKind::banach_mazur) {
            if (validate_bm_move(s, probe, r.open_i.front(), PlayerId::I)) return false;
            probe.rounds.push_back(Round{r.open_i, std::nullopt, std::nullopt, r.entered_piece});
            if (r.shrink_ii) {
                if (validate_bm_move(s, probe, *r.shrink_ii, PlayerId::II)) return false;
                probe.rounds.back().shrink_ii = r.shrink_ii;
            }
        } else {
            if (validate_open_move(s, st.game, probe, r.open_i)) return false;
            probe.rounds.push_back(Round{r.open_i, std::nullopt, std::nullopt, r.entered_piece});
            if (r.cover_ii) {
                if (validate_cover_move(s, r.open_i, *r.cover_ii)) return false;
                probe.rounds.back().cover_ii = r.cover_ii;
            }
        }
    }
    return true;
}

} // namespace ends
