#pragma once

#include <iosfwd>
#include <string>

#include "ccn/graph.hpp"

namespace ccn {

// Two text formats:
//
//   edge_list   first significant line is the vertex count, then one
//               "u v" pair per line, 0-based; '#' starts a comment
//   dimacs      "c" comments, "p edge <n> <m>" header, "e u v" 1-based
//
// Readers tolerate duplicate edges and self-loops (dropped, counted);
// writers emit edges in lexicographic order so output is canonical.

enum class GraphFormat { edge_list, dimacs };

struct IoWarnings {
    int self_loops = 0;
    int duplicate_edges = 0;
};

struct GraphIoError : InputError {
    using InputError::InputError;
};

Graph read_graph(std::istream& in, GraphFormat fmt, IoWarnings* warnings = nullptr);
void write_graph(const Graph& g, GraphFormat fmt, std::ostream& out);

Graph read_graph_file(const std::string& path, IoWarnings* warnings = nullptr); // format sniffed
void write_graph_file(const Graph& g, GraphFormat fmt, const std::string& path);

// peeks at the first significant line: a "p"/"c" prefix means dimacs
GraphFormat detect_format(std::istream& in);

} // namespace ccn
