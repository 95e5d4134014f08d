#pragma once

#include <compare>
#include <optional>
#include <string>

#include "ends/word.hpp"

namespace ends {

// Eventually periodic descent path: stem followed by cycle repeated forever.
// Canonical form has a primitive cycle rotated so the stem is as short as
// possible, which makes structural equality coincide with extensional
// equality of the denoted chains.
struct RayShape {
    Word stem;
    Word cycle; // nonempty for an infinite path

    friend auto operator<=>(const RayShape&, const RayShape&) = default;

    int at(size_t i) const {
        if (i < stem.size()) return stem[i];
        return cycle[(i - stem.size()) % cycle.size()];
    }
    Word prefix(size_t n) const {
        Word w;
        w.reserve(n);
        for (size_t i = 0; i < n; ++i) w.push_back(at(i));
        return w;
    }
    bool contains_word(const Word& w) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] != at(i)) return false;
        return true;
    }
    // True when the tail is a single repeated label.
    bool eventually_constant() const { return cycle.size() == 1; }

    std::string str() const { return word_str(stem) + "(" + word_str(cycle) + ")"; }
};

RayShape canonical_ray(RayShape r);

// Decides equality by bounded unrolling; the bound stem+2*cycle is exact for
// eventually periodic sequences.
bool same_unrolling(const RayShape& a, const RayShape& b);

int ray_cmp(const RayShape& a, const RayShape& b);

// A point of a ray or branch space. `lower` is the chain of finite-height
// nodes; when `top` is set the chain continues through that top and the
// unique successors above it.
struct Ray {
    RayShape lower;
    std::optional<int> top;

    friend auto operator<=>(const Ray&, const Ray&) = default;

    std::string str() const {
        std::string s = lower.str();
        if (top) s += "^" + std::to_string(*top);
        return s;
    }
};

inline Ray make_ray(Word stem, Word cycle, std::optional<int> top = std::nullopt) {
    return Ray{canonical_ray({std::move(stem), std::move(cycle)}), top};
}

} // namespace ends
