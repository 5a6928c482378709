#pragma once

#include <cstddef>
#include <string>

#include "netwalk/graph.hpp"

namespace netwalk {

struct LoadedEdgeList {
    Graph graph;
    std::size_t dropped = 0; // self-loops and duplicate edges silently removed
};

/// Parses "u v" lines (any whitespace on read). Lines starting with '#' are
/// ignored, except "# nodes N" which pins the node count so graphs with
/// trailing isolated nodes round-trip. Malformed lines throw ParseError with
/// the line number.
LoadedEdgeList load_edge_list(const std::string& text);

/// One edge per line, smaller endpoint first, single space, LF endings,
/// preceded by a "# nodes N" header.
std::string save_edge_list(const Graph& g);

LoadedEdgeList load_edge_list_file(const std::string& path);
void save_edge_list_file(const Graph& g, const std::string& path);

} // namespace netwalk
