#include "ends/products.hpp"

#include "ends/space.hpp"

#include <algorithm>

namespace ends {

int InverseSystem::ancestor(int level, int i, int target_level) const {
    int at = i;
    for (int l = level; l > target_level; --l) at = bonding[static_cast<size_t>(l)][static_cast<size_t>(at)];
    return at;
}

void check_system(const InverseSystem& sys) {
    if (sys.level_sizes.empty()) throw invariant_violation("no levels");
    if (sys.bonding.size() != sys.level_sizes.size())
        throw invariant_violation("bonding rows do not match the levels");
    if (!sys.bonding[0].empty()) throw invariant_violation("level 0 has no bonding");
    for (size_t n = 1; n < sys.level_sizes.size(); ++n) {
        if (static_cast<int>(sys.bonding[n].size()) != sys.level_sizes[n])
            throw invariant_violation("level " + std::to_string(n) + " bonding size mismatch");
        for (size_t i = 0; i < sys.bonding[n].size(); ++i) {
            int t = sys.bonding[n][i];
            if (t < 0 || t >= sys.level_sizes[n - 1])
                throw invariant_violation("bonding escapes level " + std::to_string(n - 1) +
                                          " at point " + std::to_string(i));
        }
    }
}

InverseSystem system_from_tree(const TreePtr& tree, int depth, int width) {
    if (tree->has_upper_levels() || !tree->is_infinite())
        throw unsupported_space_error("system needs a pruned presentation of height omega");
    InverseSystem sys;
    std::vector<Word> level{{}};
    sys.level_sizes.push_back(1);
    sys.labels.push_back({word_str(Word{})});
    sys.bonding.push_back({});
    for (int n = 1; n <= depth; ++n) {
        std::vector<Word> next;
        std::vector<int> bond;
        std::vector<std::string> labels;
        for (size_t i = 0; i < level.size(); ++i) {
            for (const NodeId& c : tree->successors(level[i], width)) {
                next.push_back(lower_word(c));
                bond.push_back(static_cast<int>(i));
                labels.push_back(word_str(lower_word(c)));
            }
        }
        sys.level_sizes.push_back(static_cast<int>(next.size()));
        sys.labels.push_back(std::move(labels));
        sys.bonding.push_back(std::move(bond));
        level = std::move(next);
    }
    check_system(sys);
    return sys;
}

InverseSystem levelwise_product(const std::vector<InverseSystem>& systems) {
    if (systems.empty()) throw invariant_violation("empty product");
    for (const auto& s : systems) check_system(s);
    int depth = systems.front().depth();
    for (const auto& s : systems) depth = std::min(depth, s.depth());
    InverseSystem out;
    // tuples enumerated row-major; bonding acts coordinatewise
    std::vector<std::vector<int>> strides;
    for (int n = 0; n <= depth; ++n) {
        long long size = 1;
        for (const auto& s : systems) size *= s.level_sizes[static_cast<size_t>(n)];
        if (size > 2'000'000) throw unsupported_space_error("product level too large");
        out.level_sizes.push_back(static_cast<int>(size));
        std::vector<std::string> labels;
        std::vector<int> bond;
        for (int idx = 0; idx < size; ++idx) {
            int rest = idx;
            std::string label = "(";
            int parent = 0;
            int parent_stride = 1;
            for (size_t f = systems.size(); f-- > 0;) {
                int sz = systems[f].level_sizes[static_cast<size_t>(n)];
                int coord = rest % sz;
                rest /= sz;
                if (label.size() > 1) label.insert(1, ",");
                label.insert(1, systems[f].labels[static_cast<size_t>(n)][static_cast<size_t>(coord)]);
                if (n > 0) {
                    int pc = systems[f].bonding[static_cast<size_t>(n)][static_cast<size_t>(coord)];
                    parent += pc * parent_stride;
                    parent_stride *= systems[f].level_sizes[static_cast<size_t>(n - 1)];
                }
            }
            label += ")";
            labels.push_back(label);
            if (n > 0) bond.push_back(parent);
        }
        out.labels.push_back(std::move(labels));
        out.bonding.push_back(std::move(bond));
    }
    check_system(out);
    return out;
}

std::vector<Thread> inverse_limit_depth(const InverseSystem& sys, int d) {
    check_system(sys);
    if (d > sys.depth()) throw invariant_violation("depth beyond the materialized levels");
    std::vector<Thread> out;
    // a coherent tuple is determined by its deepest coordinate
    for (int i = 0; i < sys.level_sizes[static_cast<size_t>(d)]; ++i) {
        Thread t;
        t.coords.assign(static_cast<size_t>(d) + 1, 0);
        t.coords[static_cast<size_t>(d)] = i;
        for (int l = d; l > 0; --l)
            t.coords[static_cast<size_t>(l - 1)] =
                sys.bonding[static_cast<size_t>(l)][static_cast<size_t>(t.coords[static_cast<size_t>(l)])];
        out.push_back(std::move(t));
    }
    return out;
}

ProductHomeoCertificate check_product_homeo(const std::vector<TreePtr>& trees, int d, int width) {
    ProductHomeoCertificate cert;
    cert.depth = d;
    std::vector<InverseSystem> systems;
    for (const auto& t : trees) systems.push_back(system_from_tree(t, d, width));
    InverseSystem prod = levelwise_product(systems);

    // thread/node bijection per factor and for the product
    for (const auto& s : systems)
        if (inverse_limit_depth(s, d).size() != static_cast<size_t>(s.level_sizes[static_cast<size_t>(d)])) {
            cert.detail = "factor threads do not match its deepest level";
            return cert;
        }
    auto threads = inverse_limit_depth(prod, d);
    long long tuple_count = 1;
    for (const auto& s : systems) tuple_count *= s.level_sizes[static_cast<size_t>(d)];
    cert.threads = static_cast<long long>(threads.size());
    if (cert.threads != tuple_count) {
        cert.detail = "thread count differs from the product of factor threads";
        return cert;
    }

    // the containment order of the associated tree is the coordinatewise one
    struct NodeRef {
        int level;
        int idx;
    };
    std::vector<NodeRef> nodes;
    for (int n = 0; n <= d; ++n)
        for (int i = 0; i < prod.level_sizes[static_cast<size_t>(n)]; ++i) nodes.push_back({n, i});
    auto le_assoc = [&](const NodeRef& a, const NodeRef& b) {
        if (a.level > b.level) return false;
        return prod.ancestor(b.level, b.idx, a.level) == a.idx;
    };
    auto coords_of = [&](const NodeRef& r) {
        std::vector<int> cs;
        int rest = r.idx;
        for (size_t f = systems.size(); f-- > 0;) {
            int sz = systems[f].level_sizes[static_cast<size_t>(r.level)];
            cs.push_back(rest % sz);
            rest /= sz;
        }
        std::reverse(cs.begin(), cs.end());
        return cs;
    };
    auto le_tuple = [&](const NodeRef& a, const NodeRef& b) {
        if (a.level > b.level) return false;
        auto ca = coords_of(a);
        auto cb = coords_of(b);
        for (size_t f = 0; f < systems.size(); ++f)
            if (systems[f].ancestor(b.level, cb[f], a.level) != ca[f]) return false;
        return true;
    };
    for (const NodeRef& a : nodes)
        for (const NodeRef& b : nodes)
            if (le_assoc(a, b) != le_tuple(a, b)) {
                cert.detail = "containment mismatch at " +
                              prod.labels[static_cast<size_t>(a.level)][static_cast<size_t>(a.idx)] +
                              " vs " +
                              prod.labels[static_cast<size_t>(b.level)][static_cast<size_t>(b.idx)];
                return cert;
            }
    for (int i = 0; i < prod.level_sizes[static_cast<size_t>(d)]; ++i)
        cert.correspondence.push_back(
            {"L" + std::to_string(d) + ":" + std::to_string(i),
             prod.labels[static_cast<size_t>(d)][static_cast<size_t>(i)]});
    cert.matched_basics = static_cast<long long>(nodes.size());
    cert.pass = true;
    cert.detail = "matched " + std::to_string(nodes.size()) + " basics to depth " +
                  std::to_string(d);
    return cert;
}

} // namespace ends
