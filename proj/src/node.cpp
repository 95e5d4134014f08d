#include "ends/node.hpp"

namespace ends {

bool node_le(const NodeId& a, const NodeId& b) {
    if (!is_upper(a)) {
        if (!is_upper(b)) return is_prefix(lower_word(a), lower_word(b));
        return upper(b).ray.contains_word(lower_word(a));
    }
    if (!is_upper(b)) return false;
    const UpperNode& u = upper(a);
    const UpperNode& v = upper(b);
    return u.ray == v.ray && u.top == v.top && u.plus <= v.plus;
}

int node_cmp(const NodeId& a, const NodeId& b) {
    if (is_upper(a) != is_upper(b)) return is_upper(a) ? 1 : -1;
    if (!is_upper(a)) return word_cmp(lower_word(a), lower_word(b));
    const UpperNode& u = upper(a);
    const UpperNode& v = upper(b);
    if (int c = ray_cmp(u.ray, v.ray)) return c;
    if (u.top != v.top) return u.top < v.top ? -1 : 1;
    if (u.plus != v.plus) return u.plus < v.plus ? -1 : 1;
    return 0;
}

std::string node_str(const NodeId& n) {
    if (!is_upper(n)) return word_str(lower_word(n));
    const UpperNode& u = upper(n);
    std::string s = "top(" + u.ray.str() + "," + std::to_string(u.top) + ")";
    if (u.plus > 0) s += "+" + std::to_string(u.plus);
    return s;
}

bool node_in_ray(const NodeId& n, const Ray& r) {
    if (!is_upper(n)) return r.lower.contains_word(lower_word(n));
    if (!r.top) return false;
    const UpperNode& u = upper(n);
    return u.ray == r.lower && u.top == *r.top;
}

} // namespace ends
