#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "morphic/errors.hpp"
#include "morphic/morphism.hpp"

namespace morphic {

/// Partition of an alphabet in canonical form: every letter stores the least
/// letter of its class, so equality of partitions is plain vector equality.
class EquivalenceRelation {
public:
    static EquivalenceRelation from_class_ids(const std::vector<int>& raw) {
        EquivalenceRelation rel;
        rel.rep_.assign(raw.size(), -1);
        std::map<int, Letter> first_seen;
        for (std::size_t b = 0; b < raw.size(); ++b) {
            auto [it, fresh] = first_seen.emplace(raw[b], static_cast<Letter>(b));
            rel.rep_[b] = it->second;
            (void)fresh;
        }
        return rel;
    }

    /// Level-0 relation: letters identified iff the coding maps them equally.
    static EquivalenceRelation from_coding(const Coding& h) {
        std::vector<int> ids;
        ids.reserve(static_cast<std::size_t>(h.source().size()));
        for (Letter b = 0; b < h.source().size(); ++b)
            ids.push_back(h(b));
        return from_class_ids(ids);
    }

    int letter_count() const { return static_cast<int>(rep_.size()); }

    Letter representative(Letter b) const { return rep_[static_cast<std::size_t>(b)]; }

    bool equivalent(Letter a, Letter b) const {
        return rep_[static_cast<std::size_t>(a)] == rep_[static_cast<std::size_t>(b)];
    }

    int class_count() const {
        int c = 0;
        for (std::size_t b = 0; b < rep_.size(); ++b)
            if (rep_[b] == static_cast<Letter>(b))
                ++c;
        return c;
    }

    std::vector<Letter> class_of(Letter b) const {
        std::vector<Letter> out;
        for (Letter c = 0; c < letter_count(); ++c)
            if (equivalent(b, c))
                out.push_back(c);
        return out;
    }

    std::vector<std::vector<Letter>> classes() const {
        std::vector<std::vector<Letter>> out;
        std::vector<int> slot(rep_.size(), -1);
        for (Letter b = 0; b < letter_count(); ++b) {
            const Letter r = representative(b);
            if (slot[static_cast<std::size_t>(r)] == -1) {
                slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
                out.emplace_back();
            }
            out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(b);
        }
        return out;
    }

    friend bool operator==(const EquivalenceRelation& a, const EquivalenceRelation& b) {
        return a.rep_ == b.rep_;
    }
    friend bool operator<(const EquivalenceRelation& a, const EquivalenceRelation& b) {
        return a.rep_ < b.rep_;
    }

private:
    std::vector<Letter> rep_;
};

/// One refinement step for uniform morphisms: letters stay identified at the
/// next level iff their rule images are identified position by position.
inline EquivalenceRelation refine_by_rules(const Morphism& m, const EquivalenceRelation& rel) {
    if (!m.uniform_length())
        throw PreconditionError("positionwise refinement needs a uniform morphism");
    if (rel.letter_count() != m.size())
        throw ConsistencyError("relation does not match the morphism alphabet");
    std::map<std::vector<Letter>, int> signature_ids;
    std::vector<int> ids(static_cast<std::size_t>(m.size()));
    for (Letter b = 0; b < m.size(); ++b) {
        std::vector<Letter> sig;
        sig.reserve(m.rule(b).size());
        for (Letter c : m.rule(b))
            sig.push_back(rel.representative(c));
        auto [it, fresh] = signature_ids.emplace(std::move(sig),
                                                 static_cast<int>(signature_ids.size()));
        (void)fresh;
        ids[static_cast<std::size_t>(b)] = it->second;
    }
    return EquivalenceRelation::from_class_ids(ids);
}

inline constexpr std::size_t kDefaultRelationCap = 1'000'000;

/// Ground-truth relation at a level: letters identified iff their level-fold
/// images agree letter by letter under the coding. Materializes the images,
/// so it is capped and meant for validation at small levels.
inline EquivalenceRelation relation_at_level(const Morphism& m, const Coding& h,
                                             std::size_t level,
                                             std::size_t cap = kDefaultRelationCap) {
    if (h.source().size() != m.size())
        throw ConsistencyError("coding source does not match the morphism alphabet");
    std::map<Word, int> image_ids;
    std::vector<int> ids(static_cast<std::size_t>(m.size()));
    for (Letter b = 0; b < m.size(); ++b) {
        const Word image = h.apply(power_apply(m, Word{b}, level, cap));
        auto [it, fresh] = image_ids.emplace(image, static_cast<int>(image_ids.size()));
        (void)fresh;
        ids[static_cast<std::size_t>(b)] = it->second;
    }
    return EquivalenceRelation::from_class_ids(ids);
}

/// Bell number (count of partitions of an m-element set), saturating at the
/// uint64 maximum.
inline std::uint64_t bell_number(int m) {
    if (m <= 0)
        return 1;
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i <= m; ++i) {
        std::vector<std::uint64_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (std::uint64_t v : row) {
            const std::uint64_t prev = next.back();
            next.push_back(prev > UINT64_MAX - v ? UINT64_MAX : prev + v);
        }
        row = std::move(next);
    }
    return row.front();
}

struct RelationProfile {
    std::vector<EquivalenceRelation> levels;  // levels 0..
    std::optional<int> preperiod;             // first repeated level p
    std::optional<int> period;                // q with relation(p) == relation(p+q)
};

/// Relations at levels 0..max_level via the positionwise recurrence, plus the
/// first repeat if one shows up. Pigeonhole over canonical forms bounds the
/// repeat by the Bell number of the alphabet size.
inline RelationProfile relation_sequence_profile(const Morphism& m, const Coding& h,
                                                 int max_level) {
    RelationProfile out;
    std::map<EquivalenceRelation, int> seen;
    EquivalenceRelation rel = EquivalenceRelation::from_coding(h);
    for (int level = 0; level <= max_level; ++level) {
        if (!out.preperiod) {
            const auto it = seen.find(rel);
            if (it != seen.end()) {
                out.preperiod = it->second;
                out.period = level - it->second;
            } else {
                seen.emplace(rel, level);
            }
        }
        out.levels.push_back(rel);
        if (level < max_level)
            rel = refine_by_rules(m, rel);
    }
    return out;
}

} // namespace morphic
