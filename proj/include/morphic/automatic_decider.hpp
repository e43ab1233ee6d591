#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "morphic/decision.hpp"
#include "morphic/equivalence.hpp"
#include "morphic/errors.hpp"
#include "morphic/graph.hpp"
#include "morphic/morphism.hpp"
#include "morphic/pair_graph.hpp"

namespace morphic {

/// Tuning of the uniform-morphism decision. The defaults guarantee that the
/// doubled pair graph reaches a relation level at or beyond the Bell number
/// of the alphabet size, and that coverage is probed past the preperiod and
/// period bounds of the per-letter occurrence sets.
struct DeciderConfig {
    enum class ClassStrategy { Auto, Refinement, Doubling };

    int doubling_steps = 0;      // r: the pair graph is doubled r times, level 2^r
    int coverage_squarings = 0;  // occurrence graph squared this many times
    int refinement_cap = 0;      // levels tried before falling back to doubling
    ClassStrategy strategy = ClassStrategy::Auto;

    static DeciderConfig defaults_for(int letter_count) {
        DeciderConfig cfg;
        const int n = std::max(letter_count, 2);
        // Partition count of an n-set is at most n^n = 2^(n log2 n).
        cfg.doubling_steps =
            static_cast<int>(std::ceil(n * std::log2(static_cast<double>(n)))) + 1;
        cfg.coverage_squarings = letter_count * letter_count + 1;
        cfg.refinement_cap = std::max(64, 4 * letter_count);
        return cfg;
    }

    /// 2^doubling_steps must reach the Bell number; coverage must go past the
    /// combined preperiod and period bounds.
    bool valid_for(int letter_count) const {
        const std::uint64_t bell = bell_number(letter_count);
        const bool deep_enough =
            doubling_steps >= 63 ||
            (std::uint64_t{1} << static_cast<unsigned>(doubling_steps)) >= bell;
        return deep_enough && coverage_squarings >= letter_count * letter_count + 1;
    }
};

/// Per-letter sets of letters occurring in the 2^exponent_log2-fold image,
/// read off the repeatedly squared occurrence graph. A letter is in its own
/// set only if the graph actually loops back to it.
struct OccurrenceSets {
    int exponent_log2 = 0;
    std::vector<std::vector<Letter>> letters_in_image;
};

namespace detail {

/// Squares `g` up to `times` times, stopping early once squaring is a no-op
/// (the result of further squarings can no longer change).
inline OccurrenceGraph repeated_square(OccurrenceGraph g, int times) {
    for (int i = 0; i < times; ++i) {
        OccurrenceGraph next = square_graph(g);
        if (next == g)
            break;
        g = std::move(next);
    }
    return g;
}

} // namespace detail

inline OccurrenceSets occurrence_sets_at(const Morphism& m, int exponent_log2) {
    const OccurrenceGraph g = detail::repeated_square(occurrence_graph(m), exponent_log2);
    OccurrenceSets out;
    out.exponent_log2 = exponent_log2;
    out.letters_in_image.reserve(static_cast<std::size_t>(m.size()));
    for (Letter b = 0; b < m.size(); ++b)
        out.letters_in_image.push_back(g.successors(b));
    return out;
}

/// Letters equivalent to the start letter at relation level 2^r, computed by
/// doubling the pair graph r times and testing the start letter's rows. The
/// doubling loop stops early at a fixed point, which cannot change the result.
inline std::vector<Letter> stable_class_of_start(const Morphism& m, const Coding& h,
                                                 Letter s, const DeciderConfig& cfg) {
    if (!m.uniform_length())
        throw PreconditionError("stable classes are computed for uniform morphisms");
    if (!cfg.valid_for(m.size()))
        throw PreconditionError("decider config too shallow for this alphabet");
    if (h.source().size() != m.size())
        throw ConsistencyError("coding source does not match the morphism alphabet");

    PairGraph t = initial_pair_graph(m);
    for (int i = 0; i < cfg.doubling_steps; ++i) {
        PairGraph next = double_pair_graph(t);
        if (next.bits() == t.bits())
            break;
        t = std::move(next);
    }
    std::vector<Letter> out{s};
    for (Letter b = 0; b < m.size(); ++b) {
        if (b == s)
            continue;
        bool same = true;
        for (int nb : t.neighbors(t.pair_index(s, b))) {
            const auto [x, y] = t.pair_at(nb);
            if (h(x) != h(y)) {
                same = false;
                break;
            }
        }
        if (same)
            out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Decides almost periodicity of the coded fixed point of a uniform morphism.
/// The image is almost periodic iff deep enough images of every letter contain
/// some letter equivalent to the start letter at a stable relation level.
/// Needs the alphabet trimmed to the letters reachable from s.
inline Decision decide_automatic(const Morphism& m, const Coding& h, Letter s,
                                 DeciderConfig cfg = {}) {
    if (!m.uniform_length())
        throw UnsupportedError("the coded decision handles uniform morphisms only; "
                               "non-erasing fixed points go to the pure decider");
    if (!is_prolongable(m, s))
        throw PreconditionError("morphism is not prolongable on the start letter");
    if (h.source().size() != m.size())
        throw ConsistencyError("coding source does not match the morphism alphabet");
    if (cfg.doubling_steps == 0 && cfg.coverage_squarings == 0) {
        const auto strategy = cfg.strategy;
        cfg = DeciderConfig::defaults_for(m.size());
        cfg.strategy = strategy;
    }
    if (!cfg.valid_for(m.size()))
        throw PreconditionError("decider config too shallow for this alphabet");

    AutomaticDetail detail;
    detail.coverage_log2 = cfg.coverage_squarings;

    // The relation sequence by level is ultimately periodic, so the class of
    // the start letter at the first repeated relation already is its class at
    // arbitrarily deep levels. If no repeat shows up within the cap, fall back
    // to pair-graph doubling, which reaches a deep level unconditionally.
    bool have_class = false;
    if (cfg.strategy != DeciderConfig::ClassStrategy::Doubling) {
        const RelationProfile profile = relation_sequence_profile(m, h, cfg.refinement_cap);
        if (profile.preperiod) {
            const EquivalenceRelation& stable =
                profile.levels[static_cast<std::size_t>(*profile.preperiod)];
            detail.stable_class = stable.class_of(s);
            detail.class_strategy = "refinement";
            detail.preperiod = *profile.preperiod;
            detail.period = *profile.period;
            have_class = true;
        } else if (cfg.strategy == DeciderConfig::ClassStrategy::Refinement) {
            throw ResourceLimitError("no relation repeat within the refinement cap");
        }
    }
    if (!have_class) {
        detail.stable_class = stable_class_of_start(m, h, s, cfg);
        detail.class_strategy = "doubling";
        detail.doubling_steps = cfg.doubling_steps;
    }

    const OccurrenceSets cover = occurrence_sets_at(m, cfg.coverage_squarings);
    std::vector<char> in_class(static_cast<std::size_t>(m.size()), 0);
    for (Letter b : detail.stable_class)
        in_class[static_cast<std::size_t>(b)] = 1;

    detail.covered.assign(static_cast<std::size_t>(m.size()), 0);
    std::vector<Letter> uncovered;
    for (Letter b = 0; b < m.size(); ++b) {
        const auto& present = cover.letters_in_image[static_cast<std::size_t>(b)];
        const bool hit = std::any_of(present.begin(), present.end(), [&](Letter c) {
            return in_class[static_cast<std::size_t>(c)] != 0;
        });
        detail.covered[static_cast<std::size_t>(b)] = hit;
        if (!hit)
            uncovered.push_back(b);
    }

    Decision d;
    CriterionClause clause;
    clause.name = "deep-images-meet-start-class";
    clause.satisfied = uncovered.empty();
    if (!uncovered.empty())
        clause.detail = std::to_string(uncovered.size()) + " letter(s) never produce the class";
    d.clauses.push_back(clause);
    d.automatic = std::move(detail);
    if (uncovered.empty()) {
        d.verdict = Verdict::AlmostPeriodic;
    } else {
        d.verdict = Verdict::NotAlmostPeriodic;
        d.witness = UncoveredLettersWitness{std::move(uncovered)};
    }
    return d;
}

} // namespace morphic
