#pragma once

// Small independent oracles for the test suites. These deliberately work on
// plain std::string rewriting so they share no code with the library paths
// they validate.

#include <map>
#include <string>
#include <vector>

#include "morphic/morphism.hpp"

namespace testing_oracle {

using CharRules = std::map<char, std::string>;

inline std::string rewrite_once(const CharRules& rules, const std::string& w) {
    std::string out;
    for (char c : w)
        out += rules.at(c);
    return out;
}

inline std::string rewrite(const CharRules& rules, std::string w, int times) {
    for (int i = 0; i < times; ++i)
        w = rewrite_once(rules, w);
    return w;
}

/// Fixed-point prefix by brute iteration from the start symbol.
inline std::string fixed_point_prefix(const CharRules& rules, char start, std::size_t n) {
    std::string w(1, start);
    while (w.size() < n) {
        std::string next = rewrite_once(rules, w);
        if (next.size() <= w.size() && next == w)
            break;
        w = std::move(next);
    }
    if (w.size() > n)
        w.resize(n);
    return w;
}

/// All occurrence start positions by a quadratic scan.
inline std::vector<std::size_t> naive_occurrences(const std::string& w, const std::string& u) {
    std::vector<std::size_t> out;
    if (u.empty() || u.size() > w.size())
        return out;
    for (std::size_t i = 0; i + u.size() <= w.size(); ++i)
        if (w.compare(i, u.size(), u) == 0)
            out.push_back(i);
    return out;
}

inline morphic::Morphism make_morphism(const std::string& letters,
                                       const std::vector<std::string>& images) {
    return morphic::Morphism::from_strings(morphic::Alphabet::from_chars(letters), images);
}

inline CharRules rules_of(const morphic::Morphism& m) {
    CharRules rules;
    for (morphic::Letter b = 0; b < m.size(); ++b) {
        std::string image;
        for (morphic::Letter c : m.rule(b))
            image += m.alphabet().name(c);
        rules[m.alphabet().name(b)[0]] = image;
    }
    return rules;
}

inline std::string to_chars(const morphic::Alphabet& a, const morphic::Word& w) {
    std::string out;
    for (morphic::Letter b : w)
        out += a.name(b);
    return out;
}

} // namespace testing_oracle
