#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "expander/errors.hpp"
#include "expander/multigraph.hpp"

namespace expander {

// A maximal run of consecutive blue vertices, together with the black
// vertices its two outer edges attach to (which may coincide).
struct BluePath {
    std::vector<VertexId> chain;
    VertexId end_a = 0;
    VertexId end_b = 0;

    long long size() const { return static_cast<long long>(chain.size()); }

    bool operator==(const BluePath&) const = default;
};

// A multigraph with some of its degree-2, loop-free vertices coloured blue.
// A cycle made entirely of blue vertices is rejected: smoothing it away is
// undefined, and the graphs this library builds never contain one.
class VertexColoredGraph {
public:
    VertexColoredGraph() = default;

    VertexColoredGraph(MultiGraph graph, VertexSet blue)
        : graph_(std::move(graph)), blue_(std::move(blue)) {
        for (VertexId v : blue_) {
            graph_.require_vertex(v);
            if (graph_.multiplicity(v, v) > 0)
                throw PreconditionError("blue vertex " + std::to_string(v) + " has a loop");
            if (graph_.degree(v) != 2)
                throw PreconditionError("blue vertex " + std::to_string(v) + " does not have degree 2");
        }
        reject_fully_blue_cycles();
    }

    const MultiGraph& graph() const { return graph_; }
    const VertexSet& blue_vertices() const { return blue_; }
    bool is_blue(VertexId v) const { return blue_.count(v) > 0; }

    VertexSet black_vertices() const {
        VertexSet out;
        for (VertexId v : graph_.vertices())
            if (!is_blue(v)) out.insert(v);
        return out;
    }

    bool operator==(const VertexColoredGraph&) const = default;

private:
    void reject_fully_blue_cycles() const {
        VertexSet visited;
        for (VertexId v : blue_) {
            if (visited.count(v)) continue;
            // Walk one way from v through blue vertices; a walk that returns
            // to v without meeting a black vertex is a fully blue cycle.
            VertexId prev = v;
            const auto slots = graph_.incident_slots(v);
            VertexId cur = slots[0];
            visited.insert(v);
            while (is_blue(cur)) {
                if (cur == v)
                    throw PreconditionError("fully blue cycle through vertex " + std::to_string(v));
                visited.insert(cur);
                const auto next = other_slot(cur, prev);
                prev = cur;
                cur = next;
            }
        }
    }

    VertexId other_slot(VertexId v, VertexId came_from) const {
        auto slots = graph_.incident_slots(v);
        if (slots[0] == came_from) return slots[1];
        return slots[0];
    }

    MultiGraph graph_;
    VertexSet blue_;
};

// A multigraph with a sub-multiset of its edges coloured blue.
class EdgeColoredGraph {
public:
    EdgeColoredGraph() = default;

    EdgeColoredGraph(MultiGraph graph, std::map<EdgeKey, long long> blue)
        : graph_(std::move(graph)), blue_(std::move(blue)) {
        for (auto it = blue_.begin(); it != blue_.end();) {
            const auto& [key, mult] = *it;
            if (mult < 0) throw PreconditionError("negative blue multiplicity");
            if (mult > graph_.multiplicity(key.first, key.second))
                throw PreconditionError("blue multiplicity exceeds edge multiplicity");
            it = mult == 0 ? blue_.erase(it) : std::next(it);
        }
    }

    const MultiGraph& graph() const { return graph_; }
    const std::map<EdgeKey, long long>& blue_edges() const { return blue_; }

    long long blue_multiplicity(VertexId u, VertexId v) const {
        auto it = blue_.find(make_edge_key(u, v));
        return it == blue_.end() ? 0 : it->second;
    }

    EdgeColoredGraph induced(const VertexSet& keep) const {
        MultiGraph sub = induced_subgraph(graph_, keep);
        std::map<EdgeKey, long long> blue;
        for (const auto& [key, mult] : blue_)
            if (keep.count(key.first) && keep.count(key.second)) blue[key] = mult;
        return EdgeColoredGraph(std::move(sub), std::move(blue));
    }

    bool operator==(const EdgeColoredGraph&) const = default;

private:
    MultiGraph graph_;
    std::map<EdgeKey, long long> blue_;
};

// Every blue vertex in exactly one maximal path. Paths are found in ascending
// order of their smallest blue id; each is oriented so that the smaller
// (endpoint, chain) tuple comes first.
inline std::vector<BluePath> maximal_blue_paths(const VertexColoredGraph& vc) {
    const MultiGraph& g = vc.graph();
    std::vector<BluePath> out;
    VertexSet assigned;
    const auto other_slot = [&](VertexId v, VertexId came_from) {
        auto slots = g.incident_slots(v);
        return slots[0] == came_from ? slots[1] : slots[0];
    };
    for (VertexId v : vc.blue_vertices()) {
        if (assigned.count(v)) continue;
        const auto slots = g.incident_slots(v);
        // Walk to one end.
        std::vector<VertexId> chain{v};
        VertexId prev = v;
        VertexId cur = slots[0];
        while (vc.is_blue(cur)) {
            chain.push_back(cur);
            const VertexId next = other_slot(cur, prev);
            prev = cur;
            cur = next;
        }
        const VertexId end_first = cur;
        std::reverse(chain.begin(), chain.end());
        // Continue to the other end.
        prev = v;
        cur = slots[1];
        while (vc.is_blue(cur)) {
            chain.push_back(cur);
            const VertexId next = other_slot(cur, prev);
            prev = cur;
            cur = next;
        }
        BluePath path;
        path.chain = std::move(chain);
        path.end_a = end_first;
        path.end_b = cur;
        auto reversed = path.chain;
        std::reverse(reversed.begin(), reversed.end());
        if (std::tuple(path.end_b, reversed) < std::tuple(path.end_a, path.chain)) {
            path.chain = std::move(reversed);
            std::swap(path.end_a, path.end_b);
        }
        for (VertexId b : path.chain) assigned.insert(b);
        out.push_back(std::move(path));
    }
    return out;
}

// red(G) for vertex colourings: smooth away all blue vertices, ascending id
// first. The result is independent of the smoothing order; each maximal blue
// path of size l collapses to one edge replacing l+1 edges.
inline MultiGraph red_vertex(const VertexColoredGraph& vc) {
    MultiGraph g = vc.graph();
    for (VertexId v : vc.blue_vertices()) g = smooth_vertex(g, v);
    return g;
}

// red(G) for edge colourings: delete all blue edges, with multiplicity.
inline MultiGraph red_edge(const EdgeColoredGraph& ec) {
    MultiGraph out;
    out.add_vertices(ec.graph().vertices());
    for (const auto& [key, mult] : ec.graph().edge_multiplicities()) {
        const long long kept = mult - ec.blue_multiplicity(key.first, key.second);
        if (kept > 0) out.add_edge(key.first, key.second, kept);
    }
    return out;
}

// d_red(v): the degree of v after blue-edge deletion.
inline long long red_degree(const EdgeColoredGraph& ec, VertexId v) {
    ec.graph().require_vertex(v);
    long long d = 0;
    for (const auto& [key, mult] : ec.graph().edge_multiplicities()) {
        const long long kept = mult - ec.blue_multiplicity(key.first, key.second);
        if (kept <= 0) continue;
        if (key.first == v && key.second == v)
            d += 2 * kept;
        else if (key.first == v || key.second == v)
            d += kept;
    }
    return d;
}

// Lifts an induced subgraph H of red(G), given by its (black) vertex set,
// back to a vertex-coloured induced subgraph H* of G with red(H*) = H.
// A blue vertex survives iff both black endpoints of its path survive.
inline VertexColoredGraph lift(const VertexColoredGraph& g, const VertexSet& h_vertices) {
    for (VertexId v : h_vertices) {
        g.graph().require_vertex(v);
        if (g.is_blue(v))
            throw PreconditionError("lift target contains blue vertex " + std::to_string(v));
    }
    VertexSet kept = h_vertices;
    for (const BluePath& path : maximal_blue_paths(g)) {
        if (h_vertices.count(path.end_a) && h_vertices.count(path.end_b))
            for (VertexId b : path.chain) kept.insert(b);
    }
    MultiGraph sub = induced_subgraph(g.graph(), kept);
    VertexSet blue;
    for (VertexId v : g.blue_vertices())
        if (kept.count(v)) blue.insert(v);
    return VertexColoredGraph(std::move(sub), std::move(blue));
}

}  // namespace expander
