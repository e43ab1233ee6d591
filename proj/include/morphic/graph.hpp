#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morphic/detail/bit_matrix.hpp"
#include "morphic/errors.hpp"
#include "morphic/morphism.hpp"

namespace morphic {

/// Directed graph on the alphabet: edge b -> c iff c occurs in the rule for b.
/// Adjacency is a packed boolean matrix so squaring is a bit-parallel matrix
/// product.
class OccurrenceGraph {
public:
    explicit OccurrenceGraph(int vertex_count) : adj_(vertex_count) {}

    int size() const { return adj_.size(); }

    void add_edge(Letter u, Letter v) { adj_.set(u, v); }
    bool has_edge(Letter u, Letter v) const { return adj_.get(u, v); }

    std::vector<Letter> successors(Letter u) const {
        std::vector<int> raw = adj_.row_members(u);
        return std::vector<Letter>(raw.begin(), raw.end());
    }

    int out_degree(Letter u) const { return adj_.row_count_set(u); }

    const detail::BitMatrix& bits() const { return adj_; }
    detail::BitMatrix& bits() { return adj_; }

    friend bool operator==(const OccurrenceGraph& a, const OccurrenceGraph& b) {
        return a.adj_ == b.adj_;
    }

private:
    detail::BitMatrix adj_;
};

inline OccurrenceGraph occurrence_graph(const Morphism& m) {
    OccurrenceGraph g(m.size());
    for (Letter b = 0; b < m.size(); ++b)
        for (Letter c : m.rule(b))
            g.add_edge(b, c);
    return g;
}

/// Edge u -> v iff there is a u -> x -> v walk split across the two graphs.
inline OccurrenceGraph multiply(const OccurrenceGraph& a, const OccurrenceGraph& b) {
    if (a.size() != b.size())
        throw ConsistencyError("graph sizes differ");
    OccurrenceGraph out(a.size());
    out.bits() = a.bits().multiplied_by(b.bits());
    return out;
}

/// Graph of the squared morphism: 2-step reachability.
inline OccurrenceGraph square_graph(const OccurrenceGraph& g) { return multiply(g, g); }

/// Mask of vertices reachable from s, s included.
inline std::vector<char> reachable_mask(const OccurrenceGraph& g, Letter s) {
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::vector<Letter> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
        const Letter u = stack.back();
        stack.pop_back();
        for (Letter v : g.successors(u))
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
    }
    return seen;
}

struct SCCDecomposition {
    std::vector<int> component;                      // per vertex, topological order
    int component_count = 0;
    std::vector<std::vector<Letter>> members;        // per component
    std::vector<char> has_cycle;                     // size > 1 or a self-loop
    std::vector<std::pair<int, int>> condensation_edges; // deduplicated, no loops
};

/// Tarjan, iterative. Component ids are renumbered so that condensation edges
/// always go from a lower id to a higher one.
inline SCCDecomposition scc_decompose(const OccurrenceGraph& g) {
    const int n = g.size();
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<Letter> stack;
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int next_index = 0;
    int comp_count = 0;

    struct Frame {
        Letter v;
        std::vector<Letter> succ;
        std::size_t next;
    };
    std::vector<Frame> frames;

    for (Letter root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1)
            continue;
        frames.push_back({root, g.successors(root), 0});
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < f.succ.size()) {
                const Letter w = f.succ[f.next++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
                        next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = 1;
                    frames.push_back({w, g.successors(w), 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)],
                                 index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    while (true) {
                        const Letter w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp[static_cast<std::size_t>(w)] = comp_count;
                        if (w == f.v)
                            break;
                    }
                    ++comp_count;
                }
                const Letter done = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<std::size_t>(frames.back().v)] =
                        std::min(low[static_cast<std::size_t>(frames.back().v)],
                                 low[static_cast<std::size_t>(done)]);
            }
        }
    }

    // Tarjan emits components in reverse topological order; flip the ids.
    SCCDecomposition out;
    out.component_count = comp_count;
    out.component.resize(static_cast<std::size_t>(n));
    for (Letter v = 0; v < n; ++v)
        out.component[static_cast<std::size_t>(v)] = comp_count - 1 - comp[static_cast<std::size_t>(v)];
    out.members.assign(static_cast<std::size_t>(comp_count), {});
    for (Letter v = 0; v < n; ++v)
        out.members[static_cast<std::size_t>(out.component[static_cast<std::size_t>(v)])].push_back(v);
    out.has_cycle.assign(static_cast<std::size_t>(comp_count), 0);
    std::vector<std::vector<char>> edge_seen(static_cast<std::size_t>(comp_count));
    for (auto& row : edge_seen)
        row.assign(static_cast<std::size_t>(comp_count), 0);
    for (Letter u = 0; u < n; ++u) {
        const int cu = out.component[static_cast<std::size_t>(u)];
        for (Letter v : g.successors(u)) {
            const int cv = out.component[static_cast<std::size_t>(v)];
            if (cu == cv) {
                out.has_cycle[static_cast<std::size_t>(cu)] = 1; // self-loop or larger SCC
            } else if (!edge_seen[static_cast<std::size_t>(cu)][static_cast<std::size_t>(cv)]) {
                edge_seen[static_cast<std::size_t>(cu)][static_cast<std::size_t>(cv)] = 1;
                out.condensation_edges.emplace_back(cu, cv);
            }
        }
    }
    for (int c = 0; c < comp_count; ++c)
        if (out.members[static_cast<std::size_t>(c)].size() > 1)
            out.has_cycle[static_cast<std::size_t>(c)] = 1;
    return out;
}

/// Empty and singleton vertex sets count as strongly connected.
inline bool is_strongly_connected(const OccurrenceGraph& g,
                                  const std::vector<Letter>& restrict_to) {
    if (restrict_to.size() <= 1)
        return true;
    std::vector<char> in_set(static_cast<std::size_t>(g.size()), 0);
    for (Letter v : restrict_to)
        in_set[static_cast<std::size_t>(v)] = 1;

    auto sweep = [&](bool forward) {
        std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
        std::vector<Letter> stack{restrict_to.front()};
        seen[static_cast<std::size_t>(restrict_to.front())] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const Letter u = stack.back();
            stack.pop_back();
            for (Letter v = 0; v < g.size(); ++v) {
                if (!in_set[static_cast<std::size_t>(v)] || seen[static_cast<std::size_t>(v)])
                    continue;
                const bool edge = forward ? g.has_edge(u, v) : g.has_edge(v, u);
                if (edge) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        return count == restrict_to.size();
    };
    return sweep(true) && sweep(false);
}

inline bool is_strongly_connected(const OccurrenceGraph& g) {
    std::vector<Letter> all(static_cast<std::size_t>(g.size()));
    std::iota(all.begin(), all.end(), 0);
    return is_strongly_connected(g, all);
}

/// gcd of all cycle lengths (the period of a strongly connected graph),
/// computed from BFS level differences. 0 when the graph has no cycle.
inline int cycle_length_gcd(const OccurrenceGraph& g) {
    const int n = g.size();
    const SCCDecomposition scc = scc_decompose(g);
    int period = 0;
    std::vector<int> level(static_cast<std::size_t>(n), -1);
    for (int c = 0; c < scc.component_count; ++c) {
        if (!scc.has_cycle[static_cast<std::size_t>(c)])
            continue;
        const Letter root = scc.members[static_cast<std::size_t>(c)].front();
        for (Letter v : scc.members[static_cast<std::size_t>(c)])
            level[static_cast<std::size_t>(v)] = -1;
        level[static_cast<std::size_t>(root)] = 0;
        std::vector<Letter> queue{root};
        std::size_t head = 0;
        while (head < queue.size()) {
            const Letter u = queue[head++];
            for (Letter v : g.successors(u)) {
                if (scc.component[static_cast<std::size_t>(v)] != c)
                    continue;
                if (level[static_cast<std::size_t>(v)] == -1) {
                    level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (Letter u : scc.members[static_cast<std::size_t>(c)])
            for (Letter v : g.successors(u)) {
                if (scc.component[static_cast<std::size_t>(v)] != c)
                    continue;
                const int diff = level[static_cast<std::size_t>(u)] + 1 -
                                 level[static_cast<std::size_t>(v)];
                period = std::gcd(period, diff < 0 ? -diff : diff);
            }
    }
    return period;
}

/// Matrix-power definition of primitivity: some power of the occurrence count
/// matrix is entrywise positive. Equivalent to "strongly connected and the
/// cycle-length gcd is 1"; strong connectivity alone is only irreducibility.
inline bool is_primitive(const Morphism& m) {
    const OccurrenceGraph g = occurrence_graph(m);
    if (!is_strongly_connected(g))
        return false;
    return cycle_length_gcd(g) == 1;
}

inline std::string to_dot(const OccurrenceGraph& g, const Alphabet& a,
                          std::string_view graph_name = "occurrence") {
    std::string out = "digraph \"" + std::string(graph_name) + "\" {\n";
    for (Letter v = 0; v < g.size(); ++v)
        out += "  \"" + a.name(v) + "\";\n";
    for (Letter u = 0; u < g.size(); ++u)
        for (Letter v : g.successors(u))
            out += "  \"" + a.name(u) + "\" -> \"" + a.name(v) + "\";\n";
    out += "}\n";
    return out;
}

} // namespace morphic
