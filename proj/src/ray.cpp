#include "ends/ray.hpp"

namespace ends {

namespace {

// Smallest period of the cycle word.
Word primitive_root(const Word& c) {
    for (size_t p = 1; p <= c.size(); ++p) {
        if (c.size() % p != 0) continue;
        bool ok = true;
        for (size_t i = p; i < c.size() && ok; ++i) ok = c[i] == c[i % p];
        if (ok) return Word(c.begin(), c.begin() + p);
    }
    return c;
}

} // namespace

RayShape canonical_ray(RayShape r) {
    if (r.cycle.empty()) return r;
    r.cycle = primitive_root(r.cycle);
    // Pull trailing stem labels into the cycle by rotating it.
    while (!r.stem.empty() && r.stem.back() == r.cycle.back()) {
        r.cycle.pop_back();
        r.cycle.insert(r.cycle.begin(), r.stem.back());
        r.stem.pop_back();
    }
    return r;
}

bool same_unrolling(const RayShape& a, const RayShape& b) {
    size_t bound = std::max(a.stem.size(), b.stem.size()) +
                   2 * std::max(a.cycle.size(), b.cycle.size());
    if (a.cycle.empty() != b.cycle.empty()) return false;
    if (a.cycle.empty()) return a.stem == b.stem;
    for (size_t i = 0; i < bound; ++i)
        if (a.at(i) != b.at(i)) return false;
    return true;
}

int ray_cmp(const RayShape& a, const RayShape& b) {
    if (int c = word_cmp(a.stem, b.stem)) return c;
    return word_cmp(a.cycle, b.cycle);
}

} // namespace ends
