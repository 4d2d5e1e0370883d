#pragma once

#include <iosfwd>
#include <string>

#include "bpr/graph.hpp"

namespace bpr {

enum class GraphFormat { Graph6, EdgeList, Auto };

/// Parses a header-less graph6 string (one graph).
Graph parseGraph6(const std::string& line);

/// Graph6 encoding of g (header-less).
std::string toGraph6(const Graph& g);

/// Edge-list format: first line "n m", then m lines "u v" (0-based).
Graph parseEdgeList(std::istream& in);
std::string toEdgeList(const Graph& g);

/// Reads one graph from a stream in the given format; Auto sniffs the
/// content (a first line starting with a digit means edge list).
Graph readGraph(std::istream& in, GraphFormat format);

/// Reads from a file, or stdin when path is "-".
Graph readGraphFile(const std::string& path, GraphFormat format);

void writeGraphFile(const std::string& path, const Graph& g, GraphFormat format);

}  // namespace bpr
