#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "morphic/decision.hpp"
#include "morphic/errors.hpp"
#include "morphic/growth.hpp"
#include "morphic/morphism.hpp"

namespace morphic {

/// Functional graph on the growing letters. The rule for a growing letter b
/// splits as (bounded prefix) . c . rest on the left side, with c the first
/// growing letter; the edge b -> c is labeled with that maximal bounded-letter
/// prefix. The right side mirrors this with the maximal bounded suffix.
struct TailGraph {
    TailSide side = TailSide::Left;
    std::vector<Letter> vertices;  // growing letters, ascending
    std::vector<Letter> target;    // parallel to vertices
    std::vector<Word> label;       // bounded-letter word stripped off

    int slot_of(Letter b) const {
        const auto it = std::lower_bound(vertices.begin(), vertices.end(), b);
        if (it == vertices.end() || *it != b)
            return -1;
        return static_cast<int>(it - vertices.begin());
    }
};

namespace detail {

inline TailGraph tail_graph(const Morphism& m, const GrowthClassification& c, TailSide side) {
    if (c.letter_count != m.size())
        throw ConsistencyError("classification does not match the morphism");
    TailGraph t;
    t.side = side;
    t.vertices = c.growing;
    t.target.reserve(t.vertices.size());
    t.label.reserve(t.vertices.size());
    for (Letter b : t.vertices) {
        const Word& r = m.rule(b);
        if (side == TailSide::Left) {
            std::size_t i = 0;
            while (i < r.size() && !c.is_growing(r[i]))
                ++i;
            if (i == r.size())
                throw ConsistencyError(
                    "rule of a growing letter contains no growing letter; "
                    "classification is inconsistent with the morphism");
            t.target.push_back(r[i]);
            t.label.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            std::size_t i = r.size();
            while (i > 0 && !c.is_growing(r[i - 1]))
                --i;
            if (i == 0)
                throw ConsistencyError(
                    "rule of a growing letter contains no growing letter; "
                    "classification is inconsistent with the morphism");
            t.target.push_back(r[i - 1]);
            t.label.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(i), r.end());
        }
    }
    return t;
}

} // namespace detail

inline TailGraph left_tail_graph(const Morphism& m, const GrowthClassification& c) {
    return detail::tail_graph(m, c, TailSide::Left);
}

inline TailGraph right_tail_graph(const Morphism& m, const GrowthClassification& c) {
    return detail::tail_graph(m, c, TailSide::Right);
}

struct TailCycleCheck {
    bool all_empty = true;
    std::optional<TailCycleWitness> witness;
};

/// Every vertex of a functional graph leads to exactly one cycle. True iff
/// every edge lying on a cycle carries the empty label; otherwise reports one
/// offending cycle and edge.
inline TailCycleCheck cycles_all_empty(const TailGraph& t) {
    const int n = static_cast<int>(t.vertices.size());
    std::vector<char> on_cycle(static_cast<std::size_t>(n), 0);
    std::vector<int> state(static_cast<std::size_t>(n), 0); // 0 new, 1 active, 2 done
    for (int start = 0; start < n; ++start) {
        if (state[static_cast<std::size_t>(start)] != 0)
            continue;
        std::vector<int> path;
        int v = start;
        while (state[static_cast<std::size_t>(v)] == 0) {
            state[static_cast<std::size_t>(v)] = 1;
            path.push_back(v);
            v = t.slot_of(t.target[static_cast<std::size_t>(v)]);
        }
        if (state[static_cast<std::size_t>(v)] == 1) {
            // Found a new cycle: the tail of `path` from v onward.
            auto it = std::find(path.begin(), path.end(), v);
            for (; it != path.end(); ++it)
                on_cycle[static_cast<std::size_t>(*it)] = 1;
        }
        for (int u : path)
            state[static_cast<std::size_t>(u)] = 2;
    }

    TailCycleCheck out;
    for (int v = 0; v < n; ++v) {
        if (!on_cycle[static_cast<std::size_t>(v)] ||
            t.label[static_cast<std::size_t>(v)].empty())
            continue;
        // Reconstruct the cycle through v, rotated to start at its least letter.
        std::vector<int> cycle;
        int u = v;
        do {
            cycle.push_back(u);
            u = t.slot_of(t.target[static_cast<std::size_t>(u)]);
        } while (u != v);
        const auto least = std::min_element(cycle.begin(), cycle.end(), [&](int a, int b) {
            return t.vertices[static_cast<std::size_t>(a)] < t.vertices[static_cast<std::size_t>(b)];
        });
        std::rotate(cycle.begin(), least, cycle.end());
        TailCycleWitness w;
        w.side = t.side;
        for (int slot : cycle)
            w.cycle.push_back(t.vertices[static_cast<std::size_t>(slot)]);
        w.edge_from = t.vertices[static_cast<std::size_t>(v)];
        w.label = t.label[static_cast<std::size_t>(v)];
        out.all_empty = false;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

} // namespace morphic
