#pragma once

#include <compare>
#include <string>
#include <variant>

#include "ends/ordinal.hpp"
#include "ends/ray.hpp"

namespace ends {

// A node above a limit level: sits over a fixed lower ray, through top number
// `top`, at height omega+plus. The ray shape is kept canonical.
struct UpperNode {
    RayShape ray;
    int top = 0;
    int plus = 0;

    friend auto operator<=>(const UpperNode&, const UpperNode&) = default;
};

using NodeId = std::variant<Word, UpperNode>;

inline bool is_upper(const NodeId& n) { return n.index() == 1; }
inline const Word& lower_word(const NodeId& n) { return std::get<Word>(n); }
inline const UpperNode& upper(const NodeId& n) { return std::get<UpperNode>(n); }

inline Ordinal node_height(const NodeId& n) {
    if (is_upper(n)) return Ordinal::omega_plus(upper(n).plus);
    return Ordinal::finite(static_cast<int>(lower_word(n).size()));
}

// Tree order. Encodings are self-describing, so comparability does not need
// the presentation.
bool node_le(const NodeId& a, const NodeId& b);
inline bool node_lt(const NodeId& a, const NodeId& b) { return a != b && node_le(a, b); }
inline bool node_comparable(const NodeId& a, const NodeId& b) {
    return node_le(a, b) || node_le(b, a);
}

int node_cmp(const NodeId& a, const NodeId& b); // canonical total order for sorting
std::string node_str(const NodeId& n);

// Membership of a node in the chain denoted by a ray descriptor.
bool node_in_ray(const NodeId& n, const Ray& r);

} // namespace ends
