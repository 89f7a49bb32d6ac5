#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "expander/errors.hpp"
#include "expander/rational.hpp"

namespace expander {

// Vertex ids are opaque: they are never renumbered by any operation, so
// subsets stay meaningful across the nested graphs of the deletion processes.
using VertexId = long long;
using VertexSet = std::set<VertexId>;

// Unordered pair, stored with first <= second. A loop has both equal.
using EdgeKey = std::pair<VertexId, VertexId>;

inline EdgeKey make_edge_key(VertexId u, VertexId v) {
    return u <= v ? EdgeKey{u, v} : EdgeKey{v, u};
}

// A multigraph: a vertex set plus an edge multiset that allows loops and
// parallel edges. A loop contributes 2 to the degree of its vertex.
class MultiGraph {
public:
    MultiGraph() = default;

    void add_vertex(VertexId v) { vertices_.insert(v); }

    void add_vertices(const VertexSet& vs) { vertices_.insert(vs.begin(), vs.end()); }

    // Endpoints are inserted into the vertex set if absent.
    void add_edge(VertexId u, VertexId v, long long multiplicity = 1) {
        if (multiplicity < 0) throw DomainError("edge multiplicity must be non-negative");
        if (multiplicity == 0) return;
        vertices_.insert(u);
        vertices_.insert(v);
        edges_[make_edge_key(u, v)] += multiplicity;
    }

    void remove_edge(VertexId u, VertexId v, long long multiplicity = 1) {
        const EdgeKey key = make_edge_key(u, v);
        auto it = edges_.find(key);
        if (it == edges_.end() || it->second < multiplicity)
            throw DomainError("cannot remove more copies of an edge than present");
        it->second -= multiplicity;
        if (it->second == 0) edges_.erase(it);
    }

    // Removes v and every edge incident to it.
    void remove_vertex(VertexId v) {
        if (!vertices_.erase(v)) throw DomainError("unknown vertex id " + std::to_string(v));
        for (auto it = edges_.begin(); it != edges_.end();) {
            if (it->first.first == v || it->first.second == v)
                it = edges_.erase(it);
            else
                ++it;
        }
    }

    bool has_vertex(VertexId v) const { return vertices_.count(v) > 0; }

    long long multiplicity(VertexId u, VertexId v) const {
        auto it = edges_.find(make_edge_key(u, v));
        return it == edges_.end() ? 0 : it->second;
    }

    const VertexSet& vertices() const { return vertices_; }
    const std::map<EdgeKey, long long>& edge_multiplicities() const { return edges_; }

    long long vertex_count() const { return static_cast<long long>(vertices_.size()); }

    // e(G): total edge multiplicity, loops counted once.
    long long edge_count() const {
        long long total = 0;
        for (const auto& [key, mult] : edges_) total += mult;
        return total;
    }

    // Number of non-loop incident edge slots plus twice the number of loops.
    long long degree(VertexId v) const {
        require_vertex(v);
        long long d = 0;
        for (const auto& [key, mult] : edges_) {
            if (key.first == v && key.second == v)
                d += 2 * mult;
            else if (key.first == v || key.second == v)
                d += mult;
        }
        return d;
    }

    // Distinct adjacent vertices; loops do not make v its own neighbour.
    std::vector<VertexId> neighbors(VertexId v) const {
        require_vertex(v);
        std::vector<VertexId> out;
        for (const auto& [key, mult] : edges_) {
            if (key.first == v && key.second != v)
                out.push_back(key.second);
            else if (key.second == v && key.first != v)
                out.push_back(key.first);
        }
        return out;
    }

    // The two incident edge slots of a degree-2, loop-free vertex, as the
    // vertices at the far end (equal for a parallel pair).
    std::vector<VertexId> incident_slots(VertexId v) const {
        require_vertex(v);
        std::vector<VertexId> slots;
        for (const auto& [key, mult] : edges_) {
            if (key.first == v && key.second == v) {
                slots.insert(slots.end(), 2 * mult, v);
            } else if (key.first == v) {
                slots.insert(slots.end(), mult, key.second);
            } else if (key.second == v) {
                slots.insert(slots.end(), mult, key.first);
            }
        }
        std::sort(slots.begin(), slots.end());
        return slots;
    }

    void require_vertex(VertexId v) const {
        if (!has_vertex(v)) throw DomainError("unknown vertex id " + std::to_string(v));
    }

    bool operator==(const MultiGraph& other) const = default;

private:
    VertexSet vertices_;
    std::map<EdgeKey, long long> edges_;
};

inline void require_subset(const MultiGraph& g, const VertexSet& x, const char* what = "subset") {
    for (VertexId v : x)
        if (!g.has_vertex(v))
            throw DomainError(std::string(what) + " member " + std::to_string(v) +
                              " is not a vertex of the host graph");
}

inline VertexSet complement(const MultiGraph& g, const VertexSet& x) {
    require_subset(g, x);
    VertexSet out;
    for (VertexId v : g.vertices())
        if (!x.count(v)) out.insert(v);
    return out;
}

// vol(X) = sum of degrees over X.
inline long long volume(const MultiGraph& g, const VertexSet& x) {
    require_subset(g, x);
    long long total = 0;
    for (VertexId v : x) total += g.degree(v);
    return total;
}

// Edges with exactly one endpoint in X, with multiplicity. Loops never count.
inline long long cut_size(const MultiGraph& g, const VertexSet& x) {
    require_subset(g, x);
    long long total = 0;
    for (const auto& [key, mult] : g.edge_multiplicities()) {
        if (key.first == key.second) continue;
        if (x.count(key.first) != x.count(key.second)) total += mult;
    }
    return total;
}

// Edges with both endpoints in X, loops counted once.
inline long long edges_inside(const MultiGraph& g, const VertexSet& x) {
    require_subset(g, x);
    long long total = 0;
    for (const auto& [key, mult] : g.edge_multiplicities())
        if (x.count(key.first) && x.count(key.second)) total += mult;
    return total;
}

// h_G(X) = e_G(X, X-bar) / min(vol(X), vol(X-bar)). Exact.
inline Rational edge_expansion(const MultiGraph& g, const VertexSet& x) {
    require_subset(g, x);
    if (x.empty() || x.size() == g.vertices().size())
        throw PreconditionError("edge expansion requires a nonempty proper vertex subset");
    const long long vol_x = volume(g, x);
    const long long vol_rest = 2 * g.edge_count() - vol_x;
    const long long min_side = std::min(vol_x, vol_rest);
    if (min_side == 0)
        throw DegenerateInputError("edge expansion undefined: min-side volume is zero");
    return Rational(cut_size(g, x), min_side);
}

// A vertex subset attaining an expansion value, with the quantities behind it.
struct ExpansionCertificate {
    VertexSet witness;
    long long boundary_edges = 0;
    long long min_side_volume = 0;
    Rational h_value{0};

    bool operator==(const ExpansionCertificate&) const = default;
};

inline MultiGraph induced_subgraph(const MultiGraph& g, const VertexSet& keep) {
    require_subset(g, keep, "keep set");
    MultiGraph out;
    out.add_vertices(keep);
    for (const auto& [key, mult] : g.edge_multiplicities())
        if (keep.count(key.first) && keep.count(key.second))
            out.add_edge(key.first, key.second, mult);
    return out;
}

// Replaces a degree-2, loop-free vertex and its two incident edges by a
// single edge joining its neighbours. Coinciding neighbours yield a loop,
// already-adjacent ones a parallel edge.
inline MultiGraph smooth_vertex(const MultiGraph& g, VertexId v) {
    g.require_vertex(v);
    if (g.multiplicity(v, v) > 0)
        throw PreconditionError("cannot smooth vertex " + std::to_string(v) + ": incident loop");
    if (g.degree(v) != 2)
        throw PreconditionError("cannot smooth vertex " + std::to_string(v) + ": degree is not 2");
    const std::vector<VertexId> slots = g.incident_slots(v);
    MultiGraph out = g;
    out.remove_vertex(v);
    out.add_edge(slots[0], slots[1]);
    return out;
}

// V(h) and E(h) contained in V(g) and E(g), multiplicities included.
inline bool is_subgraph(const MultiGraph& h, const MultiGraph& g) {
    for (VertexId v : h.vertices())
        if (!g.has_vertex(v)) return false;
    for (const auto& [key, mult] : h.edge_multiplicities())
        if (g.multiplicity(key.first, key.second) < mult) return false;
    return true;
}

// Edge multiset difference on the full vertex set of g (the paper's G \ H).
inline MultiGraph edge_difference(const MultiGraph& g, const MultiGraph& h) {
    if (!is_subgraph(h, g)) throw PreconditionError("edge difference requires h to be a subgraph of g");
    MultiGraph out;
    out.add_vertices(g.vertices());
    for (const auto& [key, mult] : g.edge_multiplicities()) {
        const long long rest = mult - h.multiplicity(key.first, key.second);
        if (rest > 0) out.add_edge(key.first, key.second, rest);
    }
    return out;
}

inline bool is_connected(const MultiGraph& g) {
    if (g.vertices().empty()) return true;
    VertexSet seen;
    std::vector<VertexId> stack{*g.vertices().begin()};
    seen.insert(stack.back());
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : g.neighbors(v))
            if (seen.insert(w).second) stack.push_back(w);
    }
    return seen.size() == g.vertices().size();
}

// Connected components, discovered in ascending order of their smallest id.
inline std::vector<VertexSet> connected_components(const MultiGraph& g) {
    std::vector<VertexSet> out;
    VertexSet seen;
    for (VertexId start : g.vertices()) {
        if (seen.count(start)) continue;
        VertexSet comp;
        std::vector<VertexId> stack{start};
        comp.insert(start);
        seen.insert(start);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(v))
                if (comp.insert(w).second) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

namespace detail {

// Shared enumeration engine over the nonempty proper subsets of a graph with
// at most 63 vertices: subsets by increasing cardinality, lexicographic on the
// sorted-id tuple within each cardinality. Every deterministic subset search
// in the library goes through this order.
class SubsetScan {
public:
    explicit SubsetScan(const MultiGraph& g) {
        ids_.assign(g.vertices().begin(), g.vertices().end());
        const std::size_t n = ids_.size();
        if (n > 63) throw DegenerateInputError("subset enumeration supports at most 63 vertices");
        degree_.resize(n);
        adjacency_.assign(n, 0);
        std::map<VertexId, int> index;
        for (std::size_t i = 0; i < n; ++i) index[ids_[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < n; ++i) degree_[i] = g.degree(ids_[i]);
        for (const auto& [key, mult] : g.edge_multiplicities()) {
            if (key.first == key.second) continue;
            const int a = index[key.first];
            const int b = index[key.second];
            edges_.push_back({a, b, mult});
            adjacency_[a] |= 1ULL << b;
            adjacency_[b] |= 1ULL << a;
        }
        total_volume_ = 2 * g.edge_count();
    }

    int size() const { return static_cast<int>(ids_.size()); }
    long long total_volume() const { return total_volume_; }

    long long volume(std::uint64_t mask) const {
        long long total = 0;
        for (int i = 0; i < size(); ++i)
            if (mask >> i & 1) total += degree_[i];
        return total;
    }

    long long cut(std::uint64_t mask) const {
        long long total = 0;
        for (const auto& e : edges_)
            if (((mask >> e.a & 1) ^ (mask >> e.b & 1)) != 0) total += e.mult;
        return total;
    }

    bool connected(std::uint64_t mask) const {
        if (mask == 0) return false;
        const std::uint64_t start = mask & (~mask + 1);
        std::uint64_t reached = start;
        std::uint64_t frontier = start;
        while (frontier != 0) {
            std::uint64_t next = 0;
            std::uint64_t f = frontier;
            while (f != 0) {
                const int i = std::countr_zero(f);
                f &= f - 1;
                next |= adjacency_[i] & mask & ~reached;
            }
            reached |= next;
            frontier = next;
        }
        return reached == mask;
    }

    VertexSet to_set(std::uint64_t mask) const {
        VertexSet out;
        for (int i = 0; i < size(); ++i)
            if (mask >> i & 1) out.insert(ids_[i]);
        return out;
    }

    // Visits subsets in (cardinality, lexicographic) order until the visitor
    // returns true; returns that subset's mask, or nullopt when exhausted.
    template <typename Pred>
    std::optional<std::uint64_t> first_subset(const Pred& pred) const {
        const int n = size();
        std::vector<int> pick;
        for (int k = 1; k < n; ++k) {
            pick.resize(k);
            for (int i = 0; i < k; ++i) pick[i] = i;
            while (true) {
                std::uint64_t mask = 0;
                for (int i : pick) mask |= 1ULL << i;
                if (pred(mask)) return mask;
                int pos = k - 1;
                while (pos >= 0 && pick[pos] == n - k + pos) --pos;
                if (pos < 0) break;
                ++pick[pos];
                for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
            }
        }
        return std::nullopt;
    }

private:
    struct ScanEdge {
        int a;
        int b;
        long long mult;
    };

    std::vector<VertexId> ids_;
    std::vector<long long> degree_;
    std::vector<std::uint64_t> adjacency_;
    std::vector<ScanEdge> edges_;
    long long total_volume_ = 0;
};

}  // namespace detail

// Exact Cheeger constant with a witness. For connected graphs it suffices to
// scan subsets X with G[X] connected and vol(X) <= vol(X-bar): a disconnected
// or heavy X never beats all pieces of its light side. Disconnected input
// yields 0 with a zero-cut certificate so the trimming processes can be
// probed on intermediate states.
inline std::pair<Rational, ExpansionCertificate> cheeger_constant(const MultiGraph& g) {
    if (g.vertex_count() < 2)
        throw DegenerateInputError("Cheeger constant requires at least two vertices");
    if (!is_connected(g)) {
        const VertexSet first = connected_components(g).front();
        ExpansionCertificate cert;
        cert.witness = first;
        cert.boundary_edges = 0;
        const long long vol_x = volume(g, first);
        cert.min_side_volume = std::min(vol_x, 2 * g.edge_count() - vol_x);
        cert.h_value = Rational(0);
        return {Rational(0), cert};
    }

    const detail::SubsetScan scan(g);
    std::optional<Rational> best;
    std::uint64_t best_mask = 0;
    long long best_cut = 0;
    long long best_vol = 0;
    scan.first_subset([&](std::uint64_t mask) {
        const long long vol = scan.volume(mask);
        if (2 * vol > scan.total_volume()) return false;
        if (!scan.connected(mask)) return false;
        const Rational h(scan.cut(mask), vol);
        if (!best || h < *best) {
            best = h;
            best_mask = mask;
            best_cut = scan.cut(mask);
            best_vol = vol;
        }
        return false;  // full scan; first subset attaining the minimum wins
    });
    if (!best)
        throw DegenerateInputError("Cheeger constant undefined: no valid subset");
    ExpansionCertificate cert;
    cert.witness = scan.to_set(best_mask);
    cert.boundary_edges = best_cut;
    cert.min_side_volume = best_vol;
    cert.h_value = *best;
    return {*best, cert};
}

struct ExpanderCheck {
    bool is_expander = false;
    std::optional<ExpansionCertificate> violation;
};

// True iff the Cheeger constant is at least kappa; otherwise carries the
// minimising set as the violating certificate.
inline ExpanderCheck is_kappa_expander(const MultiGraph& g, const Rational& kappa) {
    const auto [value, cert] = cheeger_constant(g);
    if (value >= kappa) return {true, std::nullopt};
    return {false, cert};
}

}  // namespace expander
