#pragma once

#include <cstdint>
#include <vector>

#include "morphic/errors.hpp"
#include "morphic/graph.hpp"
#include "morphic/morphism.hpp"

namespace morphic {

/// Partition of the alphabet by iterated image growth. growing: image length
/// diverges; bounded: it stays bounded. unit_image is the bounded letters with
/// a single-letter rule; unit_cycles the letters on cycles made entirely of
/// single-letter rules, where every bounded orbit eventually stays.
struct GrowthClassification {
    int letter_count = 0;
    std::vector<Letter> growing;
    std::vector<Letter> bounded;
    std::vector<Letter> unit_image;
    std::vector<Letter> unit_cycles;
    std::vector<char> growing_mask;

    bool is_growing(Letter b) const {
        return growing_mask[static_cast<std::size_t>(b)] != 0;
    }
};

/// The growth partition, via the cycle structure of the occurrence graph. A
/// letter is bounded iff every cycle it can reach consists of single-letter
/// rules only, i.e. lies inside the stable unit-cycle core.
inline GrowthClassification classify_letters(const Morphism& m) {
    if (!m.is_non_erasing())
        throw PreconditionError("growth classification needs a non-erasing morphism");
    const int n = m.size();
    const OccurrenceGraph g = occurrence_graph(m);

    std::vector<char> unit_rule(static_cast<std::size_t>(n), 0);
    for (Letter b = 0; b < n; ++b)
        unit_rule[static_cast<std::size_t>(b)] = m.rule(b).size() == 1;

    // Cycles lying entirely inside the unit-rule letters. Restrict the graph
    // and look at cyclic components.
    OccurrenceGraph unit_graph(n);
    for (Letter b = 0; b < n; ++b) {
        if (!unit_rule[static_cast<std::size_t>(b)])
            continue;
        for (Letter c : m.rule(b))
            if (unit_rule[static_cast<std::size_t>(c)])
                unit_graph.add_edge(b, c);
    }
    const SCCDecomposition unit_scc = scc_decompose(unit_graph);
    std::vector<char> stable(static_cast<std::size_t>(n), 0);
    for (Letter b = 0; b < n; ++b)
        if (unit_rule[static_cast<std::size_t>(b)] &&
            unit_scc.has_cycle[static_cast<std::size_t>(
                unit_scc.component[static_cast<std::size_t>(b)])])
            stable[static_cast<std::size_t>(b)] = 1;

    // A component is expanding if it contains a cycle that leaves the stable
    // core; reaching one forces unbounded growth.
    const SCCDecomposition scc = scc_decompose(g);
    std::vector<char> grows(static_cast<std::size_t>(n), 0);
    for (Letter b = 0; b < n; ++b) {
        const int c = scc.component[static_cast<std::size_t>(b)];
        if (scc.has_cycle[static_cast<std::size_t>(c)] && !stable[static_cast<std::size_t>(b)])
            grows[static_cast<std::size_t>(b)] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (Letter b = 0; b < n; ++b) {
            if (grows[static_cast<std::size_t>(b)])
                continue;
            for (Letter c : g.successors(b))
                if (grows[static_cast<std::size_t>(c)]) {
                    grows[static_cast<std::size_t>(b)] = 1;
                    changed = true;
                    break;
                }
        }
    }

    GrowthClassification out;
    out.letter_count = n;
    out.growing_mask = grows;
    for (Letter b = 0; b < n; ++b) {
        if (grows[static_cast<std::size_t>(b)]) {
            out.growing.push_back(b);
        } else {
            out.bounded.push_back(b);
            if (unit_rule[static_cast<std::size_t>(b)])
                out.unit_image.push_back(b);
            if (stable[static_cast<std::size_t>(b)])
                out.unit_cycles.push_back(b);
        }
    }
    return out;
}

/// Safe cap on |image^t(b)| for bounded b: n * k^n, saturating. Only used to
/// size buffers, so tightness does not matter. 0 when nothing is bounded.
inline std::uint64_t bounded_length_bound(const Morphism& m, const GrowthClassification& c) {
    if (c.letter_count != m.size())
        throw ConsistencyError("classification does not match the morphism");
    if (c.bounded.empty())
        return 0;
    const std::uint64_t k = static_cast<std::uint64_t>(m.max_rule_length());
    std::uint64_t bound = static_cast<std::uint64_t>(m.size());
    for (int i = 0; i < m.size(); ++i) {
        if (k != 0 && bound > UINT64_MAX / k)
            return UINT64_MAX;
        bound *= k;
    }
    return bound;
}

} // namespace morphic
