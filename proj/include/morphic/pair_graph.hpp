#pragma once

#include <utility>
#include <vector>

#include "morphic/detail/bit_matrix.hpp"
#include "morphic/equivalence.hpp"
#include "morphic/errors.hpp"
#include "morphic/morphism.hpp"

namespace morphic {

/// Graph on unordered pairs of distinct letters. At level i, the neighbors of
/// (b, c) are the pairs that must be coding-equal for b and c to be identified
/// at relation level 2^i; each doubling replaces adjacency by two-step
/// reachability and so squares the level.
class PairGraph {
public:
    PairGraph(int letter_count, int level)
        : letters_(letter_count), level_(level), adj_(pair_count(letter_count)) {}

    static int pair_count(int letters) { return letters * (letters - 1) / 2; }

    int letter_count() const { return letters_; }
    int level() const { return level_; }
    int vertex_count() const { return adj_.size(); }

    /// Index of the unordered pair {b, c}, b != c.
    int pair_index(Letter b, Letter c) const {
        if (b == c || b < 0 || c < 0 || b >= letters_ || c >= letters_)
            throw InputError("pair vertices must be two distinct letters");
        if (b > c)
            std::swap(b, c);
        const int row_start = b * (2 * letters_ - b - 1) / 2;
        return row_start + (c - b - 1);
    }

    std::pair<Letter, Letter> pair_at(int index) const {
        Letter b = 0;
        int remaining = index;
        while (remaining >= letters_ - 1 - b) {
            remaining -= letters_ - 1 - b;
            ++b;
        }
        return {b, static_cast<Letter>(b + 1 + remaining)};
    }

    void add_edge(int from, int to) { adj_.set(from, to); }
    bool has_edge(int from, int to) const { return adj_.get(from, to); }

    std::vector<int> neighbors(int from) const { return adj_.row_members(from); }

    const detail::BitMatrix& bits() const { return adj_; }
    detail::BitMatrix& bits() { return adj_; }

    friend bool operator==(const PairGraph& a, const PairGraph& b) {
        return a.letters_ == b.letters_ && a.adj_ == b.adj_;
    }

private:
    int letters_;
    int level_;
    detail::BitMatrix adj_;
};

/// Level-0 pair graph of a uniform morphism: (b, c) points to every unordered
/// pair of letters that differ between the two rule images at some position.
inline PairGraph initial_pair_graph(const Morphism& m) {
    const auto k = m.uniform_length();
    if (!k)
        throw PreconditionError("pair graphs are defined for uniform morphisms");
    PairGraph t(m.size(), 0);
    for (Letter b = 0; b < m.size(); ++b)
        for (Letter c = b + 1; c < m.size(); ++c) {
            const Word& rb = m.rule(b);
            const Word& rc = m.rule(c);
            const int from = t.pair_index(b, c);
            for (int j = 0; j < *k; ++j)
                if (rb[static_cast<std::size_t>(j)] != rc[static_cast<std::size_t>(j)])
                    t.add_edge(from, t.pair_index(rb[static_cast<std::size_t>(j)],
                                                  rc[static_cast<std::size_t>(j)]));
        }
    return t;
}

/// Adjacency becomes two-step reachability; the relation level doubles.
inline PairGraph double_pair_graph(const PairGraph& t) {
    PairGraph out(t.letter_count(), t.level() + 1);
    out.bits() = t.bits().squared();
    return out;
}

/// Relation induced by a pair graph: b ~ c iff every neighbor pair of (b, c)
/// is coding-equal. For a level-i graph this is the relation at level 2^i.
inline EquivalenceRelation relation_from_pair_graph(const PairGraph& t, const Coding& h) {
    const int n = t.letter_count();
    if (h.source().size() != n)
        throw ConsistencyError("coding source does not match the pair graph alphabet");
    // Build the boolean "identified" table, then canonicalize by least member.
    std::vector<char> eq(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1);
    for (Letter b = 0; b < n; ++b)
        for (Letter c = b + 1; c < n; ++c) {
            bool same = true;
            for (int nb : t.neighbors(t.pair_index(b, c))) {
                const auto [x, y] = t.pair_at(nb);
                if (h(x) != h(y)) {
                    same = false;
                    break;
                }
            }
            eq[static_cast<std::size_t>(b) * n + c] = same;
            eq[static_cast<std::size_t>(c) * n + b] = same;
        }
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (Letter b = 0; b < n; ++b) {
        Letter least = b;
        for (Letter c = 0; c < b; ++c)
            if (eq[static_cast<std::size_t>(b) * n + c]) {
                least = c;
                break;
            }
        ids[static_cast<std::size_t>(b)] = least;
    }
    return EquivalenceRelation::from_class_ids(ids);
}

} // namespace morphic
