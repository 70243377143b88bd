#include "ccn/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ccn {

namespace {

bool significant(const std::string& line, char comment_char) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c != comment_char;
    }
    return false;
}

// returns false for a skippable (blank/comment) line
bool tokens_of(const std::string& line, char comment_char, std::vector<std::string>& out) {
    if (!significant(line, comment_char)) return false;
    out.clear();
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return true;
}

long parse_int(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    long v;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw GraphIoError(std::string("bad ") + what + ": '" + tok + "'");
    }
    if (pos != tok.size()) throw GraphIoError(std::string("bad ") + what + ": '" + tok + "'");
    return v;
}

void add_tolerant(Graph& g, long u, long v, IoWarnings& w) {
    int n = g.vertex_count();
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw GraphIoError("vertex out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) {
        ++w.self_loops;
        return;
    }
    if (g.adjacent(int(u), int(v))) {
        ++w.duplicate_edges;
        return;
    }
    g.add_edge(int(u), int(v));
}

Graph read_edge_list(std::istream& in, IoWarnings& w) {
    std::string line;
    std::vector<std::string> toks;
    long n = -1;
    while (std::getline(in, line)) {
        if (!tokens_of(line, '#', toks)) continue;
        if (toks.size() != 1) throw GraphIoError("expected a single vertex count on the first line");
        n = parse_int(toks[0], "vertex count");
        break;
    }
    if (n <= 0) throw GraphIoError("missing or non-positive vertex count");
    Graph g{int(n)};
    while (std::getline(in, line)) {
        if (!tokens_of(line, '#', toks)) continue;
        if (toks.size() != 2) throw GraphIoError("expected 'u v' on edge line: '" + line + "'");
        add_tolerant(g, parse_int(toks[0], "vertex"), parse_int(toks[1], "vertex"), w);
    }
    return g;
}

Graph read_dimacs(std::istream& in, IoWarnings& w) {
    std::string line;
    std::vector<std::string> toks;
    long n = -1;
    while (std::getline(in, line)) {
        if (!tokens_of(line, 'c', toks)) continue;
        if (toks[0] != "p") throw GraphIoError("expected 'p edge' header before edges");
        if (toks.size() != 4 || (toks[1] != "edge" && toks[1] != "edges" && toks[1] != "col"))
            throw GraphIoError("malformed problem line: '" + line + "'");
        n = parse_int(toks[2], "vertex count");
        break;
    }
    if (n <= 0) throw GraphIoError("missing or non-positive vertex count");
    Graph g{int(n)};
    while (std::getline(in, line)) {
        if (!tokens_of(line, 'c', toks)) continue;
        if (toks[0] != "e" || toks.size() != 3)
            throw GraphIoError("expected 'e u v' edge line: '" + line + "'");
        // 1-based on disk
        add_tolerant(g, parse_int(toks[1], "vertex") - 1, parse_int(toks[2], "vertex") - 1, w);
    }
    return g;
}

} // namespace

Graph read_graph(std::istream& in, GraphFormat fmt, IoWarnings* warnings) {
    IoWarnings local;
    IoWarnings& w = warnings ? *warnings : local;
    Graph g = fmt == GraphFormat::edge_list ? read_edge_list(in, w) : read_dimacs(in, w);
    g.check_invariants();
    return g;
}

void write_graph(const Graph& g, GraphFormat fmt, std::ostream& out) {
    int n = g.vertex_count();
    if (fmt == GraphFormat::edge_list) {
        out << n << "\n";
        for (int u = 0; u < n; ++u)
            g.neighbors(u).for_each([&](int v) {
                if (v > u) out << u << " " << v << "\n";
            });
    } else {
        out << "p edge " << n << " " << g.edge_count() << "\n";
        for (int u = 0; u < n; ++u)
            g.neighbors(u).for_each([&](int v) {
                if (v > u) out << "e " << u + 1 << " " << v + 1 << "\n";
            });
    }
}

GraphFormat detect_format(std::istream& in) {
    std::streampos start = in.tellg();
    std::string line;
    GraphFormat fmt = GraphFormat::edge_list;
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        if (line[i] == 'c' || line[i] == 'p') fmt = GraphFormat::dimacs;
        break;
    }
    in.clear();
    in.seekg(start);
    return fmt;
}

Graph read_graph_file(const std::string& path, IoWarnings* warnings) {
    std::ifstream in(path);
    if (!in) throw GraphIoError("cannot open graph file: " + path);
    GraphFormat fmt = detect_format(in);
    return read_graph(in, fmt, warnings);
}

void write_graph_file(const Graph& g, GraphFormat fmt, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write graph file: " + path);
    write_graph(g, fmt, out);
    if (!out) throw InputError("write failed: " + path);
}

} // namespace ccn
