#include "ends/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace ends {

bool is_prefix(const Word& p, const Word& w) {
    if (p.size() > w.size()) return false;
    return std::equal(p.begin(), p.end(), w.begin());
}

int word_cmp(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

std::string word_str(const Word& w) {
    if (w.empty()) return "-";
    bool digits = std::all_of(w.begin(), w.end(), [](int c) { return c >= 0 && c <= 9; });
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!digits && i > 0) out += '.';
        out += std::to_string(w[i]);
    }
    return out;
}

Word word_parse(const std::string& s) {
    Word w;
    if (s.empty() || s == "-" || s == "e") return w;
    if (s.find('.') != std::string::npos) {
        size_t pos = 0;
        while (pos < s.size()) {
            size_t dot = s.find('.', pos);
            if (dot == std::string::npos) dot = s.size();
            if (dot == pos) throw std::invalid_argument("bad word: " + s);
            w.push_back(std::stoi(s.substr(pos, dot - pos)));
            pos = dot + 1;
        }
        return w;
    }
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad word: " + s);
        w.push_back(c - '0');
    }
    return w;
}

} // namespace ends
