#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "expander/coloring.hpp"
#include "expander/errors.hpp"
#include "expander/multigraph.hpp"

namespace expander {

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline VertexId parse_vertex_id(const std::string& tok, const std::string& source, long line) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, line, "invalid vertex id '" + tok + "'");
    }
}

inline long long parse_count(const std::string& tok, const std::string& source, long line) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, line, "invalid count '" + tok + "'");
    }
}

}  // namespace detail

// Edge-list text: one edge `u v` per line, a loop as `u u`, parallel edges as
// repeated lines, an isolated vertex as `v` alone, `#` lines ignored.
inline MultiGraph parse_edge_list(std::istream& in, const std::string& source = "<input>") {
    MultiGraph g;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto toks = detail::split_tokens(line);
        if (toks.size() == 1) {
            g.add_vertex(detail::parse_vertex_id(toks[0], source, line_no));
        } else if (toks.size() == 2) {
            g.add_edge(detail::parse_vertex_id(toks[0], source, line_no),
                       detail::parse_vertex_id(toks[1], source, line_no));
        } else {
            throw ParseError(source, line_no, "expected `u v` or a lone vertex id");
        }
    }
    return g;
}

struct ColoredGraphText {
    MultiGraph graph;
    VertexSet blue_vertices;
    std::map<EdgeKey, long long> blue_edges;

    bool has_vertex_colors() const { return !blue_vertices.empty(); }
    bool has_edge_colors() const { return !blue_edges.empty(); }

    VertexColoredGraph to_vertex_colored() const {
        if (has_edge_colors())
            throw PreconditionError("expected a vertex-coloured graph, found !blue-edge directives");
        return VertexColoredGraph(graph, blue_vertices);
    }

    EdgeColoredGraph to_edge_colored() const {
        if (has_vertex_colors())
            throw PreconditionError("expected an edge-coloured graph, found !blue-vertex directives");
        return EdgeColoredGraph(graph, blue_edges);
    }
};

// Edge-list format plus directive lines `!blue-vertex v` and `!blue-edge u v k`.
inline ColoredGraphText parse_colored_graph(std::istream& in, const std::string& source = "<input>") {
    ColoredGraphText out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto toks = detail::split_tokens(line);
        if (toks[0] == "!blue-vertex") {
            if (toks.size() != 2) throw ParseError(source, line_no, "expected `!blue-vertex v`");
            out.blue_vertices.insert(detail::parse_vertex_id(toks[1], source, line_no));
        } else if (toks[0] == "!blue-edge") {
            if (toks.size() != 4) throw ParseError(source, line_no, "expected `!blue-edge u v k`");
            const VertexId u = detail::parse_vertex_id(toks[1], source, line_no);
            const VertexId v = detail::parse_vertex_id(toks[2], source, line_no);
            out.blue_edges[make_edge_key(u, v)] += detail::parse_count(toks[3], source, line_no);
        } else if (toks[0][0] == '!') {
            throw ParseError(source, line_no, "unknown directive '" + toks[0] + "'");
        } else if (toks.size() == 1) {
            out.graph.add_vertex(detail::parse_vertex_id(toks[0], source, line_no));
        } else if (toks.size() == 2) {
            out.graph.add_edge(detail::parse_vertex_id(toks[0], source, line_no),
                               detail::parse_vertex_id(toks[1], source, line_no));
        } else {
            throw ParseError(source, line_no, "expected an edge, a vertex, or a directive");
        }
    }
    for (VertexId v : out.blue_vertices) {
        if (!out.graph.has_vertex(v))
            throw ParseError(source, line_no, "!blue-vertex " + std::to_string(v) + " is not a vertex");
    }
    for (const auto& [key, mult] : out.blue_edges) {
        if (out.graph.multiplicity(key.first, key.second) < mult)
            throw ParseError(source, line_no,
                             "!blue-edge multiplicity exceeds edge multiplicity for " +
                                 std::to_string(key.first) + " " + std::to_string(key.second));
    }
    return out;
}

// Deterministic writer: isolated vertices first (ascending), then edges in
// key order, one line per parallel copy.
inline std::string format_edge_list(const MultiGraph& g) {
    std::ostringstream out;
    VertexSet on_edges;
    for (const auto& [key, mult] : g.edge_multiplicities()) {
        on_edges.insert(key.first);
        on_edges.insert(key.second);
    }
    for (VertexId v : g.vertices())
        if (!on_edges.count(v)) out << v << "\n";
    for (const auto& [key, mult] : g.edge_multiplicities())
        for (long long i = 0; i < mult; ++i) out << key.first << " " << key.second << "\n";
    return out.str();
}

inline std::string format_vertex_colored(const VertexColoredGraph& vc) {
    std::ostringstream out;
    out << format_edge_list(vc.graph());
    for (VertexId v : vc.blue_vertices()) out << "!blue-vertex " << v << "\n";
    return out.str();
}

inline std::string format_edge_colored(const EdgeColoredGraph& ec) {
    std::ostringstream out;
    out << format_edge_list(ec.graph());
    for (const auto& [key, mult] : ec.blue_edges())
        out << "!blue-edge " << key.first << " " << key.second << " " << mult << "\n";
    return out.str();
}

inline MultiGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_edge_list(in, path);
}

inline ColoredGraphText load_colored_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_colored_graph(in, path);
}

}  // namespace expander
