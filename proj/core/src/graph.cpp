#include "bpr/graph.hpp"

#include <algorithm>
#include <numeric>

#include "bpr/log.hpp"

namespace bpr {

std::vector<Edge> K4Occurrence::edges() const {
  std::vector<Edge> out;
  out.reserve(6);
  for (int i = 0; i < 4; i++)
    for (int j = i + 1; j < 4; j++) out.emplace_back(vertices[i], vertices[j]);
  return out;
}

void Graph::addEdgeUnchecked(int u, int v) {
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  m_++;
}

void Graph::finalize() {
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

Graph Graph::fromEdges(int n, const std::vector<std::pair<int, int>>& edgeList) {
  if (n < 0) throw InputError("negative vertex count");
  Graph g(n);
  for (const auto& [u, v] : edgeList) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InputError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
    g.m_++;
  }
  g.finalize();
  for (int v = 0; v < n; v++) {
    for (size_t i = 1; i < g.adj_[v].size(); i++) {
      if (g.adj_[v][i] == g.adj_[v][i - 1])
        throw InputError("duplicate edge " + std::to_string(v) + "-" + std::to_string(g.adj_[v][i]));
    }
  }
  return g;
}

bool Graph::hasEdge(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertexCount() || v >= vertexCount() || u == v) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const int target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < vertexCount(); u++)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<int> Graph::commonNeighbors(int u, int v) const {
  std::vector<int> out;
  std::set_intersection(adj_[u].begin(), adj_[u].end(), adj_[v].begin(), adj_[v].end(),
                        std::back_inserter(out));
  return out;
}

Graph Graph::withoutEdges(const std::vector<Edge>& removed) const {
  Graph g(vertexCount());
  for (int u = 0; u < vertexCount(); u++) {
    for (int v : adj_[u]) {
      if (u >= v) continue;
      if (std::find(removed.begin(), removed.end(), Edge(u, v)) != removed.end()) continue;
      g.addEdgeUnchecked(u, v);
    }
  }
  g.finalize();
  return g;
}

Graph Graph::withEdges(const std::vector<Edge>& added) const {
  Graph g(vertexCount());
  for (int u = 0; u < vertexCount(); u++)
    for (int v : adj_[u])
      if (u < v) g.addEdgeUnchecked(u, v);
  for (const Edge& e : added) {
    BPR_CHECK(!hasEdge(e), "withEdges: edge already present");
    g.addEdgeUnchecked(e.u, e.v);
  }
  g.finalize();
  return g;
}

Subgraph inducedSubgraph(const Graph& g, const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> local(g.vertexCount(), -1);
  for (size_t i = 0; i < sorted.size(); i++) {
    if (sorted[i] < 0 || sorted[i] >= g.vertexCount())
      throw InputError("induced subgraph: unknown vertex id " + std::to_string(sorted[i]));
    local[sorted[i]] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> edgeList;
  for (int u : sorted)
    for (int v : g.neighbors(u))
      if (u < v && local[v] >= 0) edgeList.emplace_back(local[u], local[v]);
  Subgraph sub;
  sub.graph = Graph::fromEdges(static_cast<int>(sorted.size()), edgeList);
  sub.toParent = sorted;
  return sub;
}

std::vector<std::vector<int>> connectedComponents(const Graph& g,
                                                  const std::vector<int>& removedVertices,
                                                  const std::vector<Edge>& removedEdges) {
  const int n = g.vertexCount();
  std::vector<bool> removed(n, false);
  for (int v : removedVertices) {
    if (v >= 0 && v < n) removed[v] = true;
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  auto edgeRemoved = [&](int u, int v) {
    return std::find(removedEdges.begin(), removedEdges.end(), Edge(u, v)) != removedEdges.end();
  };
  for (int s = 0; s < n; s++) {
    if (removed[s] || comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      for (int v : g.neighbors(u)) {
        if (removed[v] || comp[v] >= 0) continue;
        if (!removedEdges.empty() && edgeRemoved(u, v)) continue;
        comp[v] = id;
        stack.push_back(v);
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool isConnected(const Graph& g) {
  if (g.vertexCount() == 0) return true;
  return connectedComponents(g).size() == 1;
}

std::vector<int> articulationVertices(const Graph& g) {
  const int n = g.vertexCount();
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<bool> isArt(n, false);
  int timer = 0;
  // Iterative DFS; childIdx tracks progress through each adjacency list.
  std::vector<size_t> childIdx(n, 0);
  std::vector<int> rootChildren(n, 0);
  std::vector<int> stack;
  for (int root = 0; root < n; root++) {
    if (disc[root] >= 0) continue;
    stack.push_back(root);
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      const int u = stack.back();
      if (childIdx[u] < g.neighbors(u).size()) {
        const int v = g.neighbors(u)[childIdx[u]++];
        if (disc[v] < 0) {
          parent[v] = u;
          if (u == root) rootChildren[root]++;
          disc[v] = low[v] = timer++;
          stack.push_back(v);
        } else if (v != parent[u]) {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        stack.pop_back();
        const int p = parent[u];
        if (p >= 0) {
          low[p] = std::min(low[p], low[u]);
          if (p != root && low[u] >= disc[p]) isArt[p] = true;
        }
      }
    }
    if (rootChildren[root] > 1) isArt[root] = true;
  }
  std::vector<int> out;
  for (int v = 0; v < n; v++)
    if (isArt[v]) out.push_back(v);
  return out;
}

bool isKConnected(const Graph& g, int k) {
  if (k < 1 || k > 5) throw InputError("isKConnected supports 1 <= k <= 5");
  const int n = g.vertexCount();
  if (n <= k) return false;
  if (k == 1) return isConnected(g);
  if (k == 2) return isConnected(g) && articulationVertices(g).empty();
  // G is k-connected iff G - v is (k-1)-connected for every v.
  std::vector<int> keep(n - 1);
  for (int v = 0; v < n; v++) {
    keep.clear();
    for (int u = 0; u < n; u++)
      if (u != v) keep.push_back(u);
    Subgraph sub = inducedSubgraph(g, keep);
    if (!isKConnected(sub.graph, k - 1)) return false;
  }
  return true;
}

std::vector<Edge> separationPairs(const Graph& g) {
  const int n = g.vertexCount();
  std::vector<Edge> out;
  std::vector<int> keep;
  for (int v = 0; v < n; v++) {
    keep.clear();
    for (int u = 0; u < n; u++)
      if (u != v) keep.push_back(u);
    Subgraph sub = inducedSubgraph(g, keep);
    if (!isConnected(sub.graph)) continue;
    for (int a : articulationVertices(sub.graph)) {
      const int u = sub.toParent[a];
      if (u > v) out.emplace_back(v, u);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<K4Occurrence> enumerateK4(const Graph& g) {
  std::vector<K4Occurrence> out;
  const int n = g.vertexCount();
  for (int u = 0; u < n; u++) {
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      // Triangles u < v < w, then extend by a fourth vertex x > w.
      const std::vector<int> common = g.commonNeighbors(u, v);
      for (int w : common) {
        if (w <= v) continue;
        for (int x : common) {
          if (x <= w) continue;
          if (g.hasEdge(w, x)) out.push_back(K4Occurrence{{u, v, w, x}});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<K4Occurrence> firstK4(const Graph& g) {
  const int n = g.vertexCount();
  for (int u = 0; u < n; u++) {
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      const std::vector<int> common = g.commonNeighbors(u, v);
      for (int w : common) {
        if (w <= v) continue;
        for (int x : common) {
          if (x <= w) continue;
          if (g.hasEdge(w, x)) return K4Occurrence{{u, v, w, x}};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::array<int, 5>> findK5(const Graph& g) {
  for (const K4Occurrence& k4 : enumerateK4(g)) {
    const auto& vs = k4.vertices;
    // Any common neighbor of all four extends the clique.
    for (int x : g.neighbors(vs[0])) {
      if (x == vs[1] || x == vs[2] || x == vs[3]) continue;
      if (g.hasEdge(x, vs[1]) && g.hasEdge(x, vs[2]) && g.hasEdge(x, vs[3])) {
        std::array<int, 5> clique{vs[0], vs[1], vs[2], vs[3], x};
        std::sort(clique.begin(), clique.end());
        return clique;
      }
    }
  }
  return std::nullopt;
}

}  // namespace bpr
