#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphic/errors.hpp"

namespace morphic {

/// Dense index of a symbol inside an Alphabet.
using Letter = std::int32_t;

/// A finite word as a sequence of alphabet indices; {} is the empty word.
using Word = std::vector<Letter>;

/// Ordered finite set of symbols. The construction order is fixed and is the
/// index order used by every matrix and graph in the library.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
        if (names_.empty())
            throw InputError("alphabet must not be empty");
        index_.reserve(names_.size());
        for (Letter b = 0; b < static_cast<Letter>(names_.size()); ++b) {
            if (names_[static_cast<std::size_t>(b)].empty())
                throw InputError("alphabet symbols must be non-empty");
            auto [it, fresh] = index_.emplace(names_[static_cast<std::size_t>(b)], b);
            (void)it;
            if (!fresh)
                throw InputError("duplicate alphabet symbol '" +
                                 names_[static_cast<std::size_t>(b)] + "'");
        }
    }

    /// One symbol per character, e.g. from_chars("012").
    static Alphabet from_chars(std::string_view letters) {
        std::vector<std::string> names;
        names.reserve(letters.size());
        for (char c : letters)
            names.emplace_back(1, c);
        return Alphabet(std::move(names));
    }

    int size() const { return static_cast<int>(names_.size()); }

    bool contains(Letter b) const { return b >= 0 && b < size(); }

    const std::string& name(Letter b) const {
        if (!contains(b))
            throw InputError("letter index out of range");
        return names_[static_cast<std::size_t>(b)];
    }

    const std::vector<std::string>& names() const { return names_; }

    std::optional<Letter> find(std::string_view symbol) const {
        auto it = index_.find(std::string(symbol));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    Letter index_of(std::string_view symbol) const {
        if (auto b = find(symbol))
            return *b;
        throw InputError("symbol '" + std::string(symbol) + "' is not in the alphabet");
    }

    Word word(std::span<const std::string> symbols) const {
        Word w;
        w.reserve(symbols.size());
        for (const auto& s : symbols)
            w.push_back(index_of(s));
        return w;
    }

    Word word_from_chars(std::string_view s) const {
        Word w;
        w.reserve(s.size());
        for (char c : s)
            w.push_back(index_of(std::string_view(&c, 1)));
        return w;
    }

    bool single_char_symbols() const {
        for (const auto& s : names_)
            if (s.size() != 1)
                return false;
        return true;
    }

    /// Single-character alphabets render words as plain strings, anything else
    /// joins symbols with spaces.
    std::string format(const Word& w) const {
        std::string out;
        const bool compact = single_char_symbols();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!compact && i > 0)
                out += ' ';
            out += name(w[i]);
        }
        return out;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.names_ == b.names_;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Letter> index_;
};

inline void check_word(const Alphabet& a, const Word& w) {
    for (Letter b : w)
        if (!a.contains(b))
            throw InputError("word contains a letter outside the alphabet");
}

} // namespace morphic
