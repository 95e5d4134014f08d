#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace ends {

// Ordinals coded as omega*limit_part + finite_part. Node heights keep
// limit_part in {0,1}; tree height bounds may use limit_part = 2 for
// omega*2 = omega+omega.
struct Ordinal {
    int limit_part = 0;
    int finite_part = 0;

    friend auto operator<=>(const Ordinal&, const Ordinal&) = default;

    bool is_limit() const { return finite_part == 0; }
    Ordinal succ() const { return {limit_part, finite_part + 1}; }

    std::string str() const {
        if (limit_part == 0) return std::to_string(finite_part);
        std::string head = limit_part == 1 ? "omega" : "omega*" + std::to_string(limit_part);
        if (finite_part == 0) return head;
        return head + "+" + std::to_string(finite_part);
    }

    static Ordinal finite(int n) { return {0, n}; }
    static Ordinal omega_plus(int n) { return {1, n}; }

    // Parses "12", "omega", "omega+3".
    static Ordinal parse(const std::string& s);
};

inline Ordinal Ordinal::parse(const std::string& s) {
    if (s.rfind("omega", 0) == 0) {
        std::string rest = s.substr(5);
        if (rest.empty()) return omega_plus(0);
        if (rest[0] != '+') throw std::invalid_argument("bad ordinal: " + s);
        return omega_plus(std::stoi(rest.substr(1)));
    }
    return finite(std::stoi(s));
}

} // namespace ends
