#pragma once

#include <string>
#include <vector>

namespace ends {

// A node path from the root: sequence of child labels.
using Word = std::vector<int>;

bool is_prefix(const Word& p, const Word& w);
int word_cmp(const Word& a, const Word& b); // (length, lex) total order

// Compact form: "010" when every label is a single digit, dotted "0.12.3"
// otherwise; the empty word prints as "-".
std::string word_str(const Word& w);
Word word_parse(const std::string& s);

inline Word word_cat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace ends
