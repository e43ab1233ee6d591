#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphic/alphabet.hpp"
#include "morphic/errors.hpp"
#include "morphic/matrix.hpp"

namespace morphic {

/// Output-length cap for materialized morphism powers. Iterated images grow
/// exponentially; exceeding the cap raises ResourceLimitError, nothing is
/// silently truncated.
inline constexpr std::size_t kDefaultPowerCap = 100'000'000;

/// A substitution: one replacement word per alphabet letter. Immutable after
/// construction; safe to share across threads.
class Morphism {
public:
    Morphism(Alphabet alphabet, std::vector<Word> rules)
        : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
        if (static_cast<int>(rules_.size()) != alphabet_.size())
            throw InputError("morphism needs exactly one rule per alphabet letter");
        for (const Word& r : rules_)
            check_word(alphabet_, r);
    }

    /// Convenience for single-character alphabets: rules given as strings in
    /// alphabet order.
    static Morphism from_strings(const Alphabet& a, const std::vector<std::string>& images) {
        std::vector<Word> rules;
        rules.reserve(images.size());
        for (const auto& s : images)
            rules.push_back(a.word_from_chars(s));
        return Morphism(a, std::move(rules));
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int size() const { return alphabet_.size(); }

    const Word& rule(Letter b) const {
        if (!alphabet_.contains(b))
            throw InputError("letter index out of range");
        return rules_[static_cast<std::size_t>(b)];
    }

    const std::vector<Word>& rules() const { return rules_; }

    int max_rule_length() const {
        std::size_t k = 0;
        for (const Word& r : rules_)
            k = std::max(k, r.size());
        return static_cast<int>(k);
    }

    bool is_non_erasing() const {
        return std::none_of(rules_.begin(), rules_.end(),
                            [](const Word& r) { return r.empty(); });
    }

    /// k if every rule has length exactly k, nullopt otherwise.
    std::optional<int> uniform_length() const {
        const std::size_t k = rules_.front().size();
        for (const Word& r : rules_)
            if (r.size() != k)
                return std::nullopt;
        return static_cast<int>(k);
    }

    bool is_increasing() const {
        return std::all_of(rules_.begin(), rules_.end(),
                           [](const Word& r) { return r.size() >= 2; });
    }

    friend bool operator==(const Morphism& a, const Morphism& b) {
        return a.alphabet_ == b.alphabet_ && a.rules_ == b.rules_;
    }

private:
    Alphabet alphabet_;
    std::vector<Word> rules_;
};

/// Letter-to-letter map between two alphabets (total on the source).
class Coding {
public:
    Coding(Alphabet source, Alphabet target, std::vector<Letter> map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
        if (static_cast<int>(map_.size()) != source_.size())
            throw InputError("coding must map every source letter");
        for (Letter t : map_)
            if (!target_.contains(t))
                throw InputError("coding image outside the target alphabet");
    }

    static Coding identity(const Alphabet& a) {
        std::vector<Letter> map(static_cast<std::size_t>(a.size()));
        for (Letter b = 0; b < a.size(); ++b)
            map[static_cast<std::size_t>(b)] = b;
        return Coding(a, a, std::move(map));
    }

    const Alphabet& source() const { return source_; }
    const Alphabet& target() const { return target_; }

    Letter operator()(Letter b) const {
        if (!source_.contains(b))
            throw InputError("letter index out of range");
        return map_[static_cast<std::size_t>(b)];
    }

    Word apply(const Word& w) const {
        Word out;
        out.reserve(w.size());
        for (Letter b : w)
            out.push_back((*this)(b));
        return out;
    }

    bool is_identity() const {
        if (!(source_ == target_))
            return false;
        for (Letter b = 0; b < source_.size(); ++b)
            if (map_[static_cast<std::size_t>(b)] != b)
                return false;
        return true;
    }

private:
    Alphabet source_;
    Alphabet target_;
    std::vector<Letter> map_;
};

inline Word apply(const Morphism& m, const Word& w) {
    std::size_t total = 0;
    for (Letter b : w) {
        if (!m.alphabet().contains(b))
            throw InputError("word contains a letter outside the morphism alphabet");
        total += m.rule(b).size();
    }
    Word out;
    out.reserve(total);
    for (Letter b : w) {
        const Word& r = m.rule(b);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

/// t-fold application; t = 0 is the identity. Fails loudly once the next
/// image would exceed the cap.
inline Word power_apply(const Morphism& m, Word w, std::size_t t,
                        std::size_t cap = kDefaultPowerCap) {
    check_word(m.alphabet(), w);
    for (std::size_t step = 0; step < t; ++step) {
        std::size_t next = 0;
        for (Letter b : w) {
            next += m.rule(b).size();
            if (next > cap)
                throw ResourceLimitError("morphism power exceeds the output cap of " +
                                         std::to_string(cap) + " letters");
        }
        w = morphic::apply(m, w);
    }
    return w;
}

/// Letters b with some iterated image empty. Fixed point of the closure
/// "every letter of the rule is already mortal"; stabilizes within n rounds.
inline std::vector<Letter> mortal_letters(const Morphism& m) {
    const int n = m.size();
    std::vector<char> mortal(static_cast<std::size_t>(n), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Letter b = 0; b < n; ++b) {
            if (mortal[static_cast<std::size_t>(b)])
                continue;
            const Word& r = m.rule(b);
            bool all = true;
            for (Letter c : r)
                if (!mortal[static_cast<std::size_t>(c)]) {
                    all = false;
                    break;
                }
            if (all) {
                mortal[static_cast<std::size_t>(b)] = 1;
                changed = true;
            }
        }
    }
    std::vector<Letter> out;
    for (Letter b = 0; b < n; ++b)
        if (mortal[static_cast<std::size_t>(b)])
            out.push_back(b);
    return out;
}

/// True iff the rule for s starts with s and the remaining tail contains a
/// letter that never dies out, so iterating from s yields an infinite word.
inline bool is_prolongable(const Morphism& m, Letter s) {
    if (!m.alphabet().contains(s))
        throw InputError("start letter outside the alphabet");
    const Word& r = m.rule(s);
    if (r.empty() || r.front() != s || r.size() < 2)
        return false;
    const std::vector<Letter> mortal = mortal_letters(m);
    std::vector<char> is_mortal(static_cast<std::size_t>(m.size()), 0);
    for (Letter b : mortal)
        is_mortal[static_cast<std::size_t>(b)] = 1;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!is_mortal[static_cast<std::size_t>(r[i])])
            return true;
    return false;
}

/// Entry (i, j) counts occurrences of letter i in the rule for letter j.
inline IntMatrix matrix_of(const Morphism& m) {
    IntMatrix out(m.size());
    for (Letter j = 0; j < m.size(); ++j)
        for (Letter i : m.rule(j))
            ++out.at(i, j);
    return out;
}

/// Composition: rule of (f after g) for b is f applied to g's rule.
inline Morphism compose(const Morphism& f, const Morphism& g) {
    if (!(f.alphabet() == g.alphabet()))
        throw ConsistencyError("composition needs matching alphabets");
    std::vector<Word> rules;
    rules.reserve(static_cast<std::size_t>(g.size()));
    for (Letter b = 0; b < g.size(); ++b)
        rules.push_back(morphic::apply(f, g.rule(b)));
    return Morphism(f.alphabet(), std::move(rules));
}

/// Letters reachable from s by iterating rules (includes s), ascending.
inline std::vector<Letter> reachable_letters(const Morphism& m, Letter s) {
    if (!m.alphabet().contains(s))
        throw InputError("start letter outside the alphabet");
    std::vector<char> seen(static_cast<std::size_t>(m.size()), 0);
    std::vector<Letter> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
        const Letter b = stack.back();
        stack.pop_back();
        for (Letter c : m.rule(b))
            if (!seen[static_cast<std::size_t>(c)]) {
                seen[static_cast<std::size_t>(c)] = 1;
                stack.push_back(c);
            }
    }
    std::vector<Letter> out;
    for (Letter b = 0; b < m.size(); ++b)
        if (seen[static_cast<std::size_t>(b)])
            out.push_back(b);
    return out;
}

/// Restriction of m to the letters reachable from s, keeping their relative
/// order. The deciders expect their input in this normalized form.
inline Morphism trim_reachable(const Morphism& m, Letter s) {
    const std::vector<Letter> kept = reachable_letters(m, s);
    std::vector<Letter> remap(static_cast<std::size_t>(m.size()), -1);
    std::vector<std::string> names;
    names.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        remap[static_cast<std::size_t>(kept[i])] = static_cast<Letter>(i);
        names.push_back(m.alphabet().name(kept[i]));
    }
    std::vector<Word> rules;
    rules.reserve(kept.size());
    for (Letter b : kept) {
        Word r;
        r.reserve(m.rule(b).size());
        for (Letter c : m.rule(b))
            r.push_back(remap[static_cast<std::size_t>(c)]);
        rules.push_back(std::move(r));
    }
    return Morphism(Alphabet(std::move(names)), std::move(rules));
}

} // namespace morphic
