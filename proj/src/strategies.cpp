#include "ends/strategies.hpp"

#include <random>

namespace ends {

std::optional<Cell> piece_along_ray(const Space& s, const Cover& cover, const RayShape& x) {
    (void)s;
    const Cell* best = nullptr;
    size_t best_depth = 0;
    for (const Cell& p : cover.pieces) {
        if (!std::holds_alternative<TreeCell>(p.v)) continue;
        const NodeId& a = p.tree().anchor;
        if (is_upper(a)) {
            if (upper(a).ray == x) return p; // a top piece pins the descent
            continue;
        }
        const Word& w = lower_word(a);
        if (!x.contains_word(w)) continue;
        if (!best || w.size() >= best_depth) {
            best = &p;
            best_depth = w.size();
        }
    }
    if (best) return *best;
    if (cover.rest) {
        size_t probe_len = 1;
        for (const Cell& p : cover.pieces)
            if (std::holds_alternative<TreeCell>(p.v) && !is_upper(p.tree().anchor))
                probe_len = std::max(probe_len, lower_word(p.tree().anchor).size() + 1);
        probe_len = std::max(probe_len, x.stem.size() + x.cycle.size() + 1);
        return cover.rest->materialize(make_tree_cell(x.prefix(probe_len)));
    }
    return std::nullopt;
}

std::optional<Cell> piece_containing_point(const Space& s, const Cover& cover, const Point& p,
                                           int probe_depth) {
    for (const Cell& c : cover.pieces)
        if (cell_contains(s, c, p)) return c;
    if (cover.rest && std::holds_alternative<Ray>(p.v)) {
        auto piece = cover.rest->materialize(
            make_tree_cell(p.ray().lower.prefix(static_cast<size_t>(probe_depth))));
        if (piece && cell_contains(s, *piece, p)) return piece;
    }
    if (cover.rest && cell_contains(s, cover.rest->region, p)) return std::nullopt;
    return std::nullopt;
}

StrategyHandle ii_trivial_cover() {
    StrategyHandle h;
    h.player = PlayerId::II;
    h.stationary = true;
    h.finite_state = true;
    h.name = "trivial";
    h.next_cover = [](const MatchState&, const std::vector<Cell>& last) -> std::optional<Cover> {
        Cover c;
        c.pieces = last; // the covered set covers itself
        return c;
    };
    return h;
}

StrategyHandle ii_overlapping_cover() {
    StrategyHandle h;
    h.player = PlayerId::II;
    h.stationary = true;
    h.finite_state = true;
    h.name = "overlapper";
    h.next_cover = [](const MatchState& st, const std::vector<Cell>& last) -> std::optional<Cover> {
        Cover c;
        c.pieces = last;
        const Space& s = *st.space;
        // add a second copy of a shrunk front cell to break disjointness
        if (std::holds_alternative<TreeCell>(last.front().v)) {
            const TreeCell& t = last.front().tree();
            if (!is_upper(t.anchor)) {
                Word w = lower_word(t.anchor);
                w.push_back(0);
                if (auto extra = cell_canon(s, make_tree_cell(w, t.holes)))
                    c.pieces.push_back(*extra);
            }
        } else {
            c.pieces.push_back(last.front());
        }
        return c;
    };
    return h;
}

StrategyHandle i_stall(Cell first_move) {
    StrategyHandle h;
    h.player = PlayerId::I;
    h.stationary = true;
    h.finite_state = true;
    h.name = "stall";
    h.next_open = [first_move](const MatchState& st) -> std::optional<std::vector<Cell>> {
        if (st.rounds.empty()) return std::vector<Cell>{first_move};
        const Space& s = *st.space;
        const std::vector<Cell>& mine = st.rounds.back().open_i;
        const Cover& cover = *st.rounds.back().cover_ii;
        // replay the same open when legal, otherwise squat on a whole piece
        for (const Cell& p : cover.pieces)
            if (cell_subset(s, mine.front(), p)) return mine;
        if (!cover.pieces.empty()) return std::vector<Cell>{cover.pieces.front()};
        return std::nullopt;
    };
    h.bm_open = [first_move](const MatchState& st) -> std::optional<Cell> {
        if (st.rounds.empty()) return first_move;
        return *st.rounds.back().shrink_ii; // repeat the opponent's shrink
    };
    return h;
}

namespace {

struct DescentState {
    Ray track;
    int step = 1;
    int top_mask = 0;
    bool add_deviation = false;
};

// Next move of a descent strategy: ride the tracked ray one piece deeper.
std::optional<std::vector<Cell>> descend_move(const Space& s, const MatchState& st,
                                              const DescentState& d) {
    const OrderTree& tree = *(s.kind == Space::Kind::subspace ? *s.parent : s).tree;
    const RayShape& x = d.track.lower;
    NodeId anchor;
    std::vector<NodeId> holes;
    if (st.rounds.empty()) {
        anchor = x.prefix(static_cast<size_t>(d.step));
    } else {
        auto piece = piece_along_ray(s, *st.rounds.back().cover_ii, x);
        if (!piece) return std::nullopt;
        const TreeCell& pc = piece->tree();
        holes = pc.holes;
        if (is_upper(pc.anchor)) {
            anchor = pc.anchor; // pinned at a top: stall on the piece
        } else {
            anchor = x.prefix(lower_word(pc.anchor).size() + static_cast<size_t>(d.step));
        }
    }
    for (int j = 0; j < tree.top_count(x); ++j)
        if (d.top_mask >> j & 1) holes.push_back(UpperNode{x, j, 0});
    if (d.add_deviation && !is_upper(anchor)) {
        Word dev = lower_word(anchor);
        size_t at = dev.size();
        int next = x.at(at);
        dev.push_back(next == 0 ? 1 : 0);
        if (tree.word_exists(dev)) {
            dev.push_back(x.at(at + 1));
            if (tree.word_exists(dev)) holes.push_back(dev);
            else holes.pop_back();
        }
    }
    auto cell = cell_canon(s, make_tree_cell(anchor, holes));
    if (!cell) return std::nullopt;
    return std::vector<Cell>{*cell};
}

} // namespace

StrategyHandle i_tracker(SpacePtr space, Ray track, TrackerOptions opt) {
    StrategyHandle h;
    h.player = PlayerId::I;
    h.stationary = true;
    h.finite_state = true;
    h.name = "tracker(" + track.str() + ")";
    DescentState d{track, std::max(1, opt.step), opt.top_mask, opt.add_deviation};
    h.next_open = [space, d](const MatchState& st) { return descend_move(*space, st, d); };
    return h;
}

StrategyHandle i_seeded_automaton(SpacePtr space, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    const Space& base = space->kind == Space::Kind::subspace ? *space->parent : *space;
    int alphabet = base.tree && base.tree->preset() == OrderTree::Preset::baire ? 3 : 2;

    Word stem, cycle;
    size_t stem_len = rng() % 3;
    for (size_t i = 0; i < stem_len; ++i) stem.push_back(static_cast<int>(rng() % alphabet));
    size_t cyc_len = 1 + rng() % 2;
    for (size_t i = 0; i < cyc_len; ++i) cycle.push_back(static_cast<int>(rng() % alphabet));
    Ray track = make_ray(stem, cycle);

    int states = 1 + static_cast<int>(rng() % 3);
    struct Rule {
        int step;
        int top_mask;
        bool dev;
    };
    std::vector<Rule> rules;
    for (int i = 0; i < states; ++i)
        rules.push_back({1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 4),
                         rng() % 3 == 0});

    StrategyHandle h;
    h.player = PlayerId::I;
    h.stationary = false; // consults the round counter through its state cycle
    h.finite_state = true;
    h.name = "automaton(" + std::to_string(seed) + ")";
    h.next_open = [space, track, rules, states](const MatchState& st) {
        int state = static_cast<int>(st.rounds.size()) % states;
        const Rule& r = rules[static_cast<size_t>(state)];
        DescentState d{track, r.step, r.top_mask, r.dev};
        return descend_move(*space, st, d);
    };
    return h;
}

StrategyHandle bm_ii_shrink(SpacePtr space) {
    StrategyHandle h;
    h.player = PlayerId::II;
    h.stationary = true;
    h.finite_state = true;
    h.name = "bm-shrink";
    h.bm_shrink = [space](const MatchState&, const Cell& last) -> std::optional<Cell> {
        const Space& s = *space;
        if (std::holds_alternative<TreeCell>(last.v)) {
            const TreeCell& t = last.tree();
            if (!is_upper(t.anchor)) {
                const OrderTree& tree =
                    *(s.kind == Space::Kind::subspace ? *s.parent : s).tree;
                int width = 4;
                for (const NodeId& c : tree.successors(t.anchor, width)) {
                    auto cand = cell_canon(s, make_tree_cell(c, t.holes));
                    if (cand) return cand;
                }
            }
        }
        return last; // identity shrink is always legal
    };
    return h;
}

StrategyHandle bm_ii_identity() {
    StrategyHandle h;
    h.player = PlayerId::II;
    h.stationary = true;
    h.finite_state = true;
    h.name = "bm-identity";
    h.bm_shrink = [](const MatchState&, const Cell& last) -> std::optional<Cell> { return last; };
    return h;
}

StrategyHandle bm_i_tracker(SpacePtr space, Ray track, TrackerOptions opt) {
    StrategyHandle h;
    h.player = PlayerId::I;
    h.stationary = true;
    h.finite_state = true;
    h.name = "bm-tracker(" + track.str() + ")";
    DescentState d{track, std::max(1, opt.step), opt.top_mask, opt.add_deviation};
    h.bm_open = [space, d](const MatchState& st) -> std::optional<Cell> {
        const Space& s = *space;
        const OrderTree& tree = *(s.kind == Space::Kind::subspace ? *s.parent : s).tree;
        const RayShape& x = d.track.lower;
        std::vector<NodeId> holes;
        size_t depth = static_cast<size_t>(d.step);
        if (!st.rounds.empty()) {
            const Cell& prev = *st.rounds.back().shrink_ii;
            if (!std::holds_alternative<TreeCell>(prev.v)) return prev;
            const TreeCell& pc = prev.tree();
            holes = pc.holes;
            if (is_upper(pc.anchor)) return prev;
            if (!x.contains_word(lower_word(pc.anchor))) return prev; // ray left: stall
            depth = lower_word(pc.anchor).size() + static_cast<size_t>(d.step);
        }
        for (int j = 0; j < tree.top_count(x); ++j)
            if (d.top_mask >> j & 1) holes.push_back(UpperNode{x, j, 0});
        auto cell = cell_canon(s, make_tree_cell(x.prefix(depth), holes));
        if (!cell) return std::nullopt;
        return *cell;
    };
    return h;
}

StrategyHandle bm_i_stall(Cell first_move) {
    StrategyHandle h = i_stall(first_move);
    h.name = "bm-stall";
    return h;
}

StrategyHandle bm_i_seeded(SpacePtr space, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    const Space& base = space->kind == Space::Kind::subspace ? *space->parent : *space;
    int alphabet = base.tree && base.tree->preset() == OrderTree::Preset::baire ? 3 : 2;
    Word stem, cycle;
    size_t stem_len = rng() % 2;
    for (size_t i = 0; i < stem_len; ++i) stem.push_back(static_cast<int>(rng() % alphabet));
    size_t cyc_len = 1 + rng() % 2;
    for (size_t i = 0; i < cyc_len; ++i) cycle.push_back(static_cast<int>(rng() % alphabet));
    TrackerOptions opt;
    opt.step = 1 + static_cast<int>(rng() % 2);
    opt.top_mask = static_cast<int>(rng() % 4);
    StrategyHandle h = bm_i_tracker(space, make_ray(stem, cycle), opt);
    h.name = "bm-seeded(" + std::to_string(seed) + ")";
    return h;
}

StrategyHandle strategy_by_name(const std::string& name, SpacePtr space,
                                unsigned long long seed) {
    if (name == "pitz") return pitz_tree_strategy(space);
    if (name == "trivial") return ii_trivial_cover();
    if (name == "overlapper") return ii_overlapping_cover();
    if (name == "leftmost") return i_tracker(space, make_ray({}, {0}));
    if (name == "alternating") return i_tracker(space, make_ray({}, {0, 1}));
    if (name == "stall") return i_stall(whole_cell(*space));
    if (name == "automaton") return i_seeded_automaton(space, seed);
    if (name == "bm-shrink") return bm_ii_shrink(space);
    if (name == "bm-leftmost") return bm_i_tracker(space, make_ray({}, {0}));
    if (name == "bm-seeded") return bm_i_seeded(space, seed);
    if (name == "bm-stall") return bm_i_stall(whole_cell(*space));
    throw std::invalid_argument("unknown strategy: " + name);
}

} // namespace ends
