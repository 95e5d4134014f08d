#include "ends/order_tree.hpp"

#include <algorithm>

namespace ends {

std::shared_ptr<const OrderTree> OrderTree::binary() {
    auto t = std::shared_ptr<OrderTree>(new OrderTree());
    t->preset_ = Preset::binary;
    t->preset_id_ = "binary";
    t->height_bound_ = Ordinal::omega_plus(0);
    t->arity_ = 2;
    return t;
}

std::shared_ptr<const OrderTree> OrderTree::baire() {
    auto t = std::shared_ptr<OrderTree>(new OrderTree());
    t->preset_ = Preset::baire;
    t->preset_id_ = "baire";
    t->height_bound_ = Ordinal::omega_plus(0);
    t->arity_ = -1;
    return t;
}

std::shared_ptr<const OrderTree> OrderTree::michael_line() {
    auto t = std::shared_ptr<OrderTree>(new OrderTree());
    t->preset_ = Preset::michael_line;
    t->preset_id_ = "michael_line";
    // Node heights reach omega+k for finite k; tree height is omega+omega.
    t->height_bound_ = Ordinal{2, 0};
    t->arity_ = 2;
    t->michael_tops_ = 2;
    return t;
}

std::shared_ptr<const OrderTree> OrderTree::finite_tree(std::vector<Word> nodes) {
    if (nodes.empty()) throw presentation_error("empty node set");
    std::set<Word> ns(nodes.begin(), nodes.end());
    if (!ns.count(Word{})) throw presentation_error("missing root");
    size_t max_h = 0;
    for (const Word& w : ns) {
        max_h = std::max(max_h, w.size());
        if (w.empty()) continue;
        Word parent(w.begin(), w.end() - 1);
        if (!ns.count(parent)) throw presentation_error("not prefix-closed at " + word_str(w));
        if (w.back() < 0) throw presentation_error("negative label in " + word_str(w));
    }
    auto t = std::shared_ptr<OrderTree>(new OrderTree());
    t->preset_ = Preset::finite_tree;
    t->preset_id_ = "finite";
    t->height_bound_ = Ordinal::finite(static_cast<int>(max_h));
    t->explicit_nodes_ = std::move(ns);
    return t;
}

std::shared_ptr<const OrderTree> OrderTree::custom(std::vector<Word> nodes) {
    auto base = finite_tree(std::move(nodes));
    auto t = std::shared_ptr<OrderTree>(new OrderTree(*base));
    t->preset_ = Preset::custom;
    t->preset_id_ = "custom";
    return t;
}

std::shared_ptr<const OrderTree> OrderTree::from_preset_id(const std::string& id) {
    if (id == "binary") return binary();
    if (id == "baire") return baire();
    if (id == "michael_line" || id == "michael") return michael_line();
    if (id == "path4") {
        std::vector<Word> ns;
        for (int k = 0; k <= 3; ++k) ns.push_back(Word(static_cast<size_t>(k), 0));
        return finite_tree(ns);
    }
    if (id.rfind("finite:", 0) == 0 || id.rfind("custom:", 0) == 0) {
        std::vector<Word> ns;
        std::string body = id.substr(7);
        size_t pos = 0;
        while (pos <= body.size()) {
            size_t comma = body.find(',', pos);
            if (comma == std::string::npos) comma = body.size();
            ns.push_back(word_parse(body.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return id[0] == 'f' ? finite_tree(ns) : custom(ns);
    }
    throw presentation_error("unknown preset: " + id);
}

int OrderTree::child_count(const Word& w) const {
    switch (preset_) {
    case Preset::binary:
    case Preset::michael_line:
        return 2;
    case Preset::baire:
        return -1;
    default: {
        int n = 0;
        Word c = w;
        c.push_back(0);
        for (;; ++n) {
            c.back() = n;
            if (!explicit_nodes_.count(c)) break;
        }
        return n;
    }
    }
}

bool OrderTree::word_exists(const Word& w) const {
    switch (preset_) {
    case Preset::binary:
    case Preset::michael_line:
        return std::all_of(w.begin(), w.end(), [](int c) { return c == 0 || c == 1; });
    case Preset::baire:
        return std::all_of(w.begin(), w.end(), [](int c) { return c >= 0; });
    default:
        return explicit_nodes_.count(w) > 0;
    }
}

bool OrderTree::node_exists(const NodeId& n) const {
    if (!is_upper(n)) return word_exists(lower_word(n));
    if (preset_ != Preset::michael_line) return false;
    const UpperNode& u = upper(n);
    if (u.ray != canonical_ray(u.ray)) return false;
    for (size_t i = 0; i < u.ray.stem.size() + u.ray.cycle.size(); ++i)
        if (u.ray.at(i) != 0 && u.ray.at(i) != 1) return false;
    return u.top >= 0 && u.top < top_count(u.ray) && u.plus >= 0;
}

int OrderTree::top_count(const RayShape& r) const {
    if (preset_ != Preset::michael_line) return 0;
    // Rational rays are the eventually constant ones; they get no tops.
    return r.eventually_constant() ? 0 : michael_tops_;
}

bool OrderTree::ray_valid(const Ray& r) const {
    if (r.lower.cycle.empty()) return false; // finite chains have maximal elements
    if (r.lower != canonical_ray(r.lower)) return false;
    for (size_t i = 0; i < r.lower.stem.size() + r.lower.cycle.size(); ++i) {
        Word p = r.lower.prefix(i + 1);
        if (!word_exists(p)) return false;
    }
    if (r.top && (*r.top < 0 || *r.top >= top_count(r.lower))) return false;
    return true;
}

void OrderTree::require_ray(const Ray& r) const {
    if (!ray_valid(r)) throw invalid_ray_error("descriptor is not a ray of this tree: " + r.str());
}

bool OrderTree::ray_is_branch(const Ray& r) const {
    if (!ray_valid(r)) return false;
    if (r.top) return true; // unique successors keep the chain going forever
    return top_count(r.lower) == 0;
}

std::vector<NodeId> OrderTree::tops_of(const Ray& r) const {
    require_ray(r);
    std::vector<NodeId> out;
    if (r.top) return out; // chains through a top have no node at height omega+omega
    for (int j = 0; j < top_count(r.lower); ++j) out.push_back(UpperNode{r.lower, j, 0});
    return out;
}

std::vector<NodeId> OrderTree::successors(const NodeId& n, int width) const {
    std::vector<NodeId> out;
    if (is_upper(n)) {
        const UpperNode& u = upper(n);
        if (node_exists(n)) out.push_back(UpperNode{u.ray, u.top, u.plus + 1});
        return out;
    }
    const Word& w = lower_word(n);
    int k = child_count(w);
    int lim = k < 0 ? width : k;
    for (int c = 0; c < lim; ++c) {
        Word cw = w;
        cw.push_back(c);
        if (word_exists(cw)) out.push_back(cw);
    }
    return out;
}

bool OrderTree::successors_exhaustive(const NodeId& n, int width) const {
    if (is_upper(n)) return true;
    int k = child_count(lower_word(n));
    return k >= 0 && k <= width;
}

bool OrderTree::is_limit_node(const NodeId& n) const {
    if (is_upper(n)) return upper(n).plus == 0;
    return lower_word(n).empty(); // height 0 is a limit ordinal
}

NodeId OrderTree::hat(const NodeId& n) const {
    if (is_upper(n)) {
        UpperNode u = upper(n);
        u.plus = 0;
        return u;
    }
    return Word{};
}

std::vector<NodeId> OrderTree::cofinal_prefix(const NodeId& limit_node, int k) const {
    if (!is_limit_node(limit_node)) throw domain_mismatch_error("not a limit node");
    std::vector<NodeId> out;
    if (!is_upper(limit_node)) return out; // root: empty strict down-set
    const UpperNode& u = upper(limit_node);
    for (int i = 1; i <= k; ++i) out.push_back(u.ray.prefix(static_cast<size_t>(i)));
    return out;
}

std::vector<NodeId> OrderTree::materialize_nodes(Ordinal depth, const Budget& b) const {
    std::vector<NodeId> out;
    int lower_cap = depth.limit_part == 0 ? depth.finite_part : b.depth;
    std::vector<Word> frontier{Word{}};
    out.emplace_back(Word{});
    for (int h = 0; h < lower_cap; ++h) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (const NodeId& c : successors(w, b.width)) {
                next.push_back(lower_word(c));
                out.push_back(c);
            }
        }
        frontier = std::move(next);
    }
    if (depth.limit_part >= 1 && has_upper_levels()) {
        int plus_cap = std::min(depth.finite_part, b.upper_plus);
        for (const Ray& r : sample_rays(b, false)) {
            for (int j = 0; j < top_count(r.lower); ++j)
                for (int p = 0; p <= plus_cap; ++p)
                    out.push_back(UpperNode{r.lower, j, p});
        }
    }
    return out;
}

std::vector<Ray> OrderTree::sample_rays(const Budget& b, bool include_upper) const {
    std::vector<Ray> out;
    if (!is_infinite()) return out;
    std::vector<Word> cycles;
    int w = arity_ < 0 ? b.width : arity_;
    for (int c = 0; c < w; ++c) cycles.push_back(Word{c});
    if (arity_ == 2) {
        cycles.push_back(Word{0, 1});
        cycles.push_back(Word{1, 0});
    }
    std::set<RayShape> seen;
    std::vector<Word> stems{Word{}};
    for (int h = 0; h <= b.ray_stem; ++h) {
        std::vector<Word> next;
        for (const Word& s : stems) {
            if (static_cast<int>(s.size()) == h) {
                for (const Word& cyc : cycles) {
                    RayShape rs = canonical_ray({s, cyc});
                    if (!seen.insert(rs).second) continue;
                    out.push_back(Ray{rs, std::nullopt});
                    if (include_upper)
                        for (int j = 0; j < top_count(rs); ++j) out.push_back(Ray{rs, j});
                }
                for (int c = 0; c < w; ++c) {
                    Word sc = s;
                    sc.push_back(c);
                    if (word_exists(sc)) next.push_back(sc);
                }
            }
        }
        stems = std::move(next);
    }
    return out;
}

int OrderTree::antichain_index(const NodeId& n) const {
    Ordinal h = node_height(n);
    if (!has_upper_levels()) return h.finite_part;
    return h.limit_part == 0 ? 2 * h.finite_part : 2 * h.finite_part + 1;
}

AntichainDecomposition OrderTree::antichain_decomposition(Ordinal depth, const Budget& b) const {
    if (depth > height_bound_) throw presentation_error("depth beyond height bound");
    AntichainDecomposition d;
    d.depth_certificate = depth;
    std::set<int> used;
    for (const NodeId& n : materialize_nodes(depth, b)) {
        if (node_height(n) > depth) continue;
        int idx = antichain_index(n);
        d.index[node_str(n)] = idx;
        used.insert(idx);
    }
    d.antichains_used = static_cast<int>(used.size());
    return d;
}

bool OrderTree::basic_open_membership(const NodeId& anchor, const std::vector<NodeId>& holes,
                                      const Ray& r) const {
    if (!node_exists(anchor)) throw domain_mismatch_error("foreign anchor " + node_str(anchor));
    for (const NodeId& h : holes)
        if (!node_exists(h)) throw domain_mismatch_error("foreign hole " + node_str(h));
    require_ray(r);
    if (!node_in_ray(anchor, r)) return false;
    for (const NodeId& h : holes)
        if (node_in_ray(h, r)) return false;
    return true;
}

} // namespace ends
