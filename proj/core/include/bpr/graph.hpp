#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bpr {

/// Canonical unordered edge: endpoints stored with the smaller id first.
struct Edge {
  int u = -1;
  int v = -1;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
  bool operator!=(const Edge& o) const { return !(*this == o); }
  bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }

  bool touches(int x) const { return u == x || v == x; }
  bool sharesEndpoint(const Edge& o) const {
    return touches(o.u) || touches(o.v);
  }
  int other(int x) const { return x == u ? v : u; }
};

struct EdgeHash {
  size_t operator()(const Edge& e) const {
    return static_cast<size_t>(e.u) * 1000003u + static_cast<size_t>(e.v);
  }
};

struct K4Occurrence {
  std::array<int, 4> vertices;  // sorted ascending

  bool operator==(const K4Occurrence& o) const { return vertices == o.vertices; }
  bool operator<(const K4Occurrence& o) const { return vertices < o.vertices; }
  bool contains(int x) const {
    return vertices[0] == x || vertices[1] == x || vertices[2] == x || vertices[3] == x;
  }
  std::vector<Edge> edges() const;
};

/// Simple undirected graph with dense vertex ids 0..n-1 and sorted adjacency
/// lists. Immutable after construction; all operations are pure queries.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  /// Builds a graph; duplicate edges, loops and out-of-range ids are errors.
  static Graph fromEdges(int n, const std::vector<std::pair<int, int>>& edgeList);

  int vertexCount() const { return static_cast<int>(adj_.size()); }
  int edgeCount() const { return m_; }

  bool hasEdge(int u, int v) const;
  bool hasEdge(const Edge& e) const { return hasEdge(e.u, e.v); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;

  /// Sorted common neighborhood of u and v.
  std::vector<int> commonNeighbors(int u, int v) const;

  /// A copy with the given edges removed (vertex set unchanged).
  Graph withoutEdges(const std::vector<Edge>& removed) const;

  /// A copy with the given edges added; adding an existing edge is an error.
  Graph withEdges(const std::vector<Edge>& added) const;

 private:
  std::vector<std::vector<int>> adj_;
  int m_ = 0;

  void addEdgeUnchecked(int u, int v);
  void finalize();
};

/// Induced subgraph with dense ids plus the mapping back to the parent ids.
struct Subgraph {
  Graph graph;
  std::vector<int> toParent;  // local id -> parent id
};

Subgraph inducedSubgraph(const Graph& g, const std::vector<int>& keep);

/// Connected components after deleting `removedVertices` and `removedEdges`;
/// each component is a sorted vertex list, components ordered by smallest id.
std::vector<std::vector<int>> connectedComponents(const Graph& g,
                                                  const std::vector<int>& removedVertices = {},
                                                  const std::vector<Edge>& removedEdges = {});

bool isConnected(const Graph& g);

/// True iff g has no vertex cut of size < k (and more than k vertices);
/// k must be between 1 and 5.
bool isKConnected(const Graph& g, int k);

/// Articulation vertices (empty for 2-connected graphs), sorted.
std::vector<int> articulationVertices(const Graph& g);

/// All 2-cuts {u,v} of a connected graph without articulation vertices.
std::vector<Edge> separationPairs(const Graph& g);

/// Every 4-clique exactly once, lexicographically by sorted vertex tuple.
std::vector<K4Occurrence> enumerateK4(const Graph& g);

/// Lexicographically first 4-clique, or none (early-exit scan).
std::optional<K4Occurrence> firstK4(const Graph& g);

/// Any 5-clique (lexicographically first), or none.
std::optional<std::array<int, 5>> findK5(const Graph& g);

}  // namespace bpr
