#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "expander/coloring.hpp"
#include "expander/errors.hpp"
#include "expander/multigraph.hpp"
#include "expander/rational.hpp"

namespace expander {

// e_G(X, Y) for disjoint vertex sets: edges with one endpoint in each.
inline long long cross_edges(const MultiGraph& g, const VertexSet& x, const VertexSet& y) {
    long long total = 0;
    for (const auto& [key, mult] : g.edge_multiplicities()) {
        const bool a_in_x = x.count(key.first) > 0;
        const bool b_in_x = x.count(key.second) > 0;
        const bool a_in_y = y.count(key.first) > 0;
        const bool b_in_y = y.count(key.second) > 0;
        if ((a_in_x && b_in_y) || (a_in_y && b_in_x)) total += mult;
    }
    return total;
}

namespace detail {

inline std::string braces(const VertexSet& x) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (VertexId v : x) {
        if (!first) out << ",";
        out << v;
        first = false;
    }
    out << "}";
    return out.str();
}

inline nlohmann::json set_to_json(const VertexSet& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (VertexId v : x) arr.push_back(v);
    return arr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The trimming process: repeatedly remove low-expansion sets until the
// remainder expands.

struct TrimStep {
    VertexSet removed;
    long long down = 0;
    long long diff = 0;
    long long out = 0;

    bool operator==(const TrimStep&) const = default;
};

struct TrimTrace {
    std::vector<TrimStep> steps;
    long long delta_total = 0;  // sum of diff over all steps
    long long out_total = 0;    // sum of out over all steps
    VertexSet final_kept;
    VertexSet isolated_dropped;

    std::string to_text() const {
        std::ostringstream outs;
        long i = 0;
        for (const auto& step : steps) {
            ++i;
            outs << "step " << i << " X=" << detail::braces(step.removed) << " down=" << step.down
                 << " diff=" << step.diff << " out=" << step.out << "\n";
        }
        return outs.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["process"] = "trim";
        j["steps"] = nlohmann::json::array();
        long i = 0;
        for (const auto& step : steps) {
            ++i;
            j["steps"].push_back({{"step", i},
                                  {"X", detail::set_to_json(step.removed)},
                                  {"down", step.down},
                                  {"diff", step.diff},
                                  {"out", step.out}});
        }
        j["Delta"] = delta_total;
        j["O"] = out_total;
        j["final_kept"] = detail::set_to_json(final_kept);
        j["isolated_dropped"] = detail::set_to_json(isolated_dropped);
        return j;
    }
};

// A nonempty X with vol(X) <= vol(X-bar) and e(X, X-bar) < (kappa/3) vol(X),
// or nullopt when the graph is a kappa/3-expander. Only connected induced X
// are scanned; a disconnected low-expansion set always contains a connected
// light piece that also qualifies. First hit in enumeration order.
inline std::optional<VertexSet> find_bad_set_theorem2(const MultiGraph& h_i, const Rational& kappa) {
    if (h_i.vertices().empty()) throw PreconditionError("bad-set search on an empty graph");
    if (h_i.vertex_count() < 2) return std::nullopt;
    const detail::SubsetScan scan(h_i);
    const auto hit = scan.first_subset([&](std::uint64_t mask) {
        const long long vol = scan.volume(mask);
        if (2 * vol > scan.total_volume()) return false;
        if (!scan.connected(mask)) return false;
        return Rational(3 * scan.cut(mask)) < kappa * Rational(vol);
    });
    if (!hit) return std::nullopt;
    return scan.to_set(*hit);
}

struct TrimResult {
    MultiGraph core;
    TrimTrace trace;
};

// Iteratively deletes bad sets from h until the remainder is a kappa/3
// expander. g is the ambient kappa-expander; it enters only the diff/out
// bookkeeping of the trace. Zero-degree vertices left at termination carry
// no edges and are dropped from the output (recorded in the trace).
inline TrimResult trim_to_expander(const MultiGraph& g, const MultiGraph& h, const Rational& kappa) {
    if (kappa <= Rational(0) || kappa > Rational(1))
        throw PreconditionError("trim requires 0 < kappa <= 1");
    if (!is_subgraph(h, g)) throw PreconditionError("trim requires h to be a subgraph of g");

    const MultiGraph outside = edge_difference(g, h);
    TrimResult result;
    result.core = h;
    while (!result.core.vertices().empty()) {
        const auto bad = find_bad_set_theorem2(result.core, kappa);
        if (!bad) break;
        TrimStep step;
        step.removed = *bad;
        step.down = cut_size(result.core, *bad);
        step.diff = edges_inside(g, *bad) - edges_inside(h, *bad);
        step.out = cut_size(outside, *bad);
        result.trace.delta_total += step.diff;
        result.trace.out_total += step.out;
        result.trace.steps.push_back(std::move(step));
        VertexSet keep;
        for (VertexId v : result.core.vertices())
            if (!bad->count(v)) keep.insert(v);
        result.core = induced_subgraph(result.core, keep);
    }
    VertexSet keep;
    for (VertexId v : result.core.vertices()) {
        if (result.core.degree(v) == 0)
            result.trace.isolated_dropped.insert(v);
        else
            keep.insert(v);
    }
    if (!result.trace.isolated_dropped.empty()) result.core = induced_subgraph(result.core, keep);
    result.trace.final_kept = result.core.vertices();
    return result;
}

// ---------------------------------------------------------------------------
// Blue-path pruning.

// Smallest integer strictly greater than (alpha/(1-alpha)) (1 + 1/kappa) / eps.
inline long long choose_M_prop7(const Rational& kappa, const Rational& epsilon, const Rational& alpha) {
    if (alpha <= Rational(0) || alpha >= Rational(1))
        throw PreconditionError("choose_M_prop7 requires 0 < alpha < 1");
    if (kappa <= Rational(0) || epsilon <= Rational(0))
        throw PreconditionError("choose_M_prop7 requires positive kappa and epsilon");
    const Rational bound = (alpha / (Rational(1) - alpha)) * (Rational(1) + Rational(1) / kappa) / epsilon;
    return floor_plus_one(bound);
}

struct PruneResult {
    VertexColoredGraph component;  // C_M
    long long big_m = 0;
    long long long_blue_paths = 0;  // p_M
};

// Deletes the blue vertices of every blue path of size greater than M and
// returns the connected component of the remainder maximising e(red(C)).
// Ties go to the first component in discovery order (ascending smallest id).
inline PruneResult prune_long_blue_paths(const VertexColoredGraph& g, const Rational& kappa,
                                         const Rational& epsilon, const Rational& alpha) {
    if (g.graph().vertices().empty()) throw DegenerateInputError("prune on an empty graph");
    PruneResult result;
    result.big_m = choose_M_prop7(kappa, epsilon, alpha);

    VertexSet keep = g.graph().vertices();
    for (const BluePath& path : maximal_blue_paths(g)) {
        if (path.size() > result.big_m) {
            ++result.long_blue_paths;
            for (VertexId v : path.chain) keep.erase(v);
        }
    }
    const MultiGraph pruned = induced_subgraph(g.graph(), keep);

    std::optional<long long> best_red_edges;
    for (const VertexSet& comp : connected_components(pruned)) {
        VertexSet blue;
        for (VertexId v : comp)
            if (g.is_blue(v)) blue.insert(v);
        VertexColoredGraph candidate(induced_subgraph(pruned, comp), blue);
        const long long red_edges = red_vertex(candidate).edge_count();
        if (!best_red_edges || red_edges > *best_red_edges) {
            best_red_edges = red_edges;
            result.component = std::move(candidate);
        }
    }
    return result;
}

// Replacing every edge of a kappa-expander by a path of at most M edges
// yields a kappa/(2M-1)-expander.
inline Rational subdivision_expansion_bound(const Rational& kappa, long long big_m) {
    if (big_m < 1) throw PreconditionError("subdivision bound requires M >= 1");
    return kappa / Rational(2 * big_m - 1);
}

// Adding edges to a kappa-expander multiplying no degree by more than M
// yields a kappa/M-expander.
inline Rational edge_addition_expansion_bound(const Rational& kappa, long long big_m) {
    if (big_m < 1) throw PreconditionError("edge-addition bound requires M >= 1");
    return kappa / Rational(big_m);
}

// ---------------------------------------------------------------------------
// The two-case induced-core algorithm.

// V* = { v : deg(v) >= M d_red(v) }. Vertices isolated after blue deletion
// always qualify.
inline VertexSet heavy_vertex_set(const EdgeColoredGraph& g, long long big_m) {
    if (big_m < 1) throw PreconditionError("heavy vertex set requires M >= 1");
    VertexSet out;
    for (VertexId v : g.graph().vertices())
        if (g.graph().degree(v) >= big_m * red_degree(g, v)) out.insert(v);
    return out;
}

// Smallest integer M with 1/(M alpha) <= epsilon, i.e. ceil(1/(alpha epsilon)).
inline long long choose_M_lemma13(const Rational& epsilon, const Rational& alpha) {
    if (epsilon <= Rational(0) || alpha <= Rational(0))
        throw PreconditionError("choose_M_lemma13 requires positive epsilon and alpha");
    return ceil_rational(Rational(1) / (alpha * epsilon));
}

struct InducedStep {
    VertexSet removed;
    int case_id = 0;  // 0 = heavy-vertex step, then 1 or 2
    long long up = 0;
    long long down = 0;

    bool operator==(const InducedStep&) const = default;
};

struct InducedTrace {
    std::vector<InducedStep> steps;
    long long s_total = 0;  // sum of up over steps i > 0
    VertexSet final_kept;

    std::string to_text() const {
        std::ostringstream outs;
        long i = -1;
        for (const auto& step : steps) {
            ++i;
            outs << "step " << i << " case " << step.case_id << " X=" << detail::braces(step.removed)
                 << " down=" << step.down << " up=" << step.up << "\n";
        }
        return outs.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["process"] = "induce";
        j["steps"] = nlohmann::json::array();
        long i = -1;
        for (const auto& step : steps) {
            ++i;
            j["steps"].push_back({{"step", i},
                                  {"case", step.case_id},
                                  {"X", detail::set_to_json(step.removed)},
                                  {"up", step.up},
                                  {"down", step.down}});
        }
        j["S"] = s_total;
        j["final_kept"] = detail::set_to_json(final_kept);
        return j;
    }
};

struct InducedCoreResult {
    EdgeColoredGraph core;  // G*
    long long big_m = 0;
    InducedTrace trace;
};

// Step 0 removes the heavy vertices. Afterwards, Case 1 removes any set whose
// total volume dwarfs its red volume, else Case 2 removes a light set with low
// red expansion, else the algorithm stops. A Case-1 set exists iff some single
// vertex qualifies (both sides of its inequality are sums of per-vertex
// terms), so the Case-1 scan inspects singletons in ascending id order.
inline InducedCoreResult extract_induced_core(const EdgeColoredGraph& g, const Rational& kappa,
                                              const Rational& epsilon, const Rational& alpha) {
    if (kappa <= Rational(0) || kappa > Rational(1))
        throw PreconditionError("induced-core extraction requires 0 < kappa <= 1");

    InducedCoreResult result;
    result.big_m = choose_M_lemma13(epsilon, alpha);
    const long long m3 = 3 * result.big_m;
    const MultiGraph red_full = red_edge(g);

    VertexSet removed;  // Y_{i-1}
    VertexSet remaining = g.graph().vertices();

    const VertexSet heavy = heavy_vertex_set(g, result.big_m);
    {
        InducedStep step0;
        step0.removed = heavy;
        step0.case_id = 0;
        step0.up = 0;
        step0.down = cross_edges(red_full, heavy, complement(red_full, heavy));
        result.trace.steps.push_back(std::move(step0));
        for (VertexId v : heavy) {
            removed.insert(v);
            remaining.erase(v);
        }
    }

    while (!remaining.empty()) {
        const EdgeColoredGraph g_i = g.induced(remaining);
        const MultiGraph h_i = red_edge(g_i);

        std::optional<VertexSet> pick;
        int case_id = 0;
        for (VertexId v : remaining) {
            if (g_i.graph().degree(v) >= m3 * h_i.degree(v)) {
                pick = VertexSet{v};
                case_id = 1;
                break;
            }
        }
        if (!pick && h_i.vertex_count() >= 2) {
            const detail::SubsetScan scan(h_i);
            const auto hit = scan.first_subset([&](std::uint64_t mask) {
                const long long vol = scan.volume(mask);
                if (2 * vol > scan.total_volume()) return false;
                if (!scan.connected(mask)) return false;
                return Rational(3 * scan.cut(mask)) <= kappa * Rational(vol);
            });
            if (hit) {
                pick = scan.to_set(*hit);
                case_id = 2;
            }
        }
        if (!pick) break;

        InducedStep step;
        step.removed = *pick;
        step.case_id = case_id;
        step.up = cross_edges(red_full, *pick, removed);
        step.down = cut_size(h_i, *pick);
        result.trace.s_total += step.up;
        result.trace.steps.push_back(std::move(step));
        for (VertexId v : *pick) {
            removed.insert(v);
            remaining.erase(v);
        }
    }

    result.core = g.induced(remaining);
    result.trace.final_kept = remaining;
    return result;
}

}  // namespace expander
