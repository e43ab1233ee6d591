#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "morphic/morphism.hpp"

namespace morphic {

/// Seeded generator with its own rejection-based range sampling, so that a
/// seed reproduces the same instances regardless of standard-library
/// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = eng_();
        while (v >= limit)
            v = eng_();
        return v % bound;
    }

    /// Uniform in [lo, hi], inclusive.
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 eng_;
};

inline Alphabet numbered_alphabet(int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        names.push_back(std::to_string(i));
    return Alphabet(std::move(names));
}

/// Random morphism with rule lengths in [min_len, max_len] over n letters.
inline Morphism random_morphism(Rng& rng, int n, int min_len, int max_len) {
    std::vector<Word> rules;
    rules.reserve(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
        const int len = rng.range(min_len, max_len);
        Word r;
        r.reserve(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i)
            r.push_back(static_cast<Letter>(rng.range(0, n - 1)));
        rules.push_back(std::move(r));
    }
    return Morphism(numbered_alphabet(n), std::move(rules));
}

/// Non-erasing morphism prolongable on letter 0: the rule of 0 starts with 0
/// and has length at least 2.
inline Morphism random_prolongable_morphism(Rng& rng, int n, int max_len) {
    std::vector<Word> rules;
    rules.reserve(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
        const int min_len = b == 0 ? 2 : 1;
        const int len = rng.range(min_len, max_len < min_len ? min_len : max_len);
        Word r;
        r.reserve(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i)
            r.push_back(static_cast<Letter>(rng.range(0, n - 1)));
        if (b == 0)
            r.front() = 0;
        rules.push_back(std::move(r));
    }
    return Morphism(numbered_alphabet(n), std::move(rules));
}

/// k-uniform morphism; prolongable on 0 when requested (needs k >= 2).
inline Morphism random_uniform_morphism(Rng& rng, int n, int k, bool prolongable_on_0) {
    std::vector<Word> rules;
    rules.reserve(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
        Word r;
        r.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            r.push_back(static_cast<Letter>(rng.range(0, n - 1)));
        rules.push_back(std::move(r));
    }
    if (prolongable_on_0)
        rules.front().front() = 0;
    return Morphism(numbered_alphabet(n), std::move(rules));
}

/// Coding onto letters a..; target size in [1, max_target].
inline Coding random_coding(Rng& rng, const Alphabet& source, int max_target) {
    const int target_size = rng.range(1, max_target);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(target_size));
    for (int i = 0; i < target_size; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i % 26)) +
                        (i >= 26 ? std::to_string(i / 26) : ""));
    Alphabet target(std::move(names));
    std::vector<Letter> map;
    map.reserve(static_cast<std::size_t>(source.size()));
    for (int b = 0; b < source.size(); ++b)
        map.push_back(static_cast<Letter>(rng.range(0, target_size - 1)));
    return Coding(source, std::move(target), std::move(map));
}

} // namespace morphic
