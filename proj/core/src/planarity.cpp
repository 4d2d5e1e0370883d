#include "bpr/planarity.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "bpr/log.hpp"

namespace bpr {

namespace {

// Demoucron-Malgrange-Pertuiset planar embedding for biconnected graphs.
// Faces are maintained as directed simple cycles; every directed edge lies
// on exactly one face boundary once fully embedded.
class Demoucron {
 public:
  explicit Demoucron(const Graph& g) : g_(g), n_(g.vertexCount()) {}

  std::optional<std::vector<std::vector<int>>> run() {
    const int m = g_.edgeCount();
    if (n_ >= 3 && m > 3 * n_ - 6) return std::nullopt;
    embeddedV_.assign(n_, false);
    auto cycle = findCycle();
    if (!cycle) {
      // Biconnected input always has a cycle unless it is a single edge.
      return std::nullopt;
    }
    for (int v : *cycle) embeddedV_[v] = true;
    for (size_t i = 0; i < cycle->size(); i++)
      markEmbedded((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]);
    faces_.push_back(*cycle);
    faces_.push_back(std::vector<int>(cycle->rbegin(), cycle->rend()));

    while (embeddedEdgeCount_ < m) {
      if (!embedOneFragment()) return std::nullopt;
    }
    return extractRotation();
  }

 private:
  const Graph& g_;
  int n_;
  std::vector<bool> embeddedV_;
  std::map<Edge, bool> embeddedE_;
  int embeddedEdgeCount_ = 0;
  std::vector<std::vector<int>> faces_;

  bool isEmbedded(int u, int v) const {
    auto it = embeddedE_.find(Edge(u, v));
    return it != embeddedE_.end() && it->second;
  }

  void markEmbedded(int u, int v) {
    bool& slot = embeddedE_[Edge(u, v)];
    BPR_CHECK(!slot, "edge embedded twice");
    slot = true;
    embeddedEdgeCount_++;
  }

  std::optional<std::vector<int>> findCycle() const {
    // Faithful DFS: every non-tree edge is a back edge, so the cycle is the
    // tree path from u down to the back-edge target v.
    std::vector<int> parent(n_, -2);
    std::vector<size_t> childIdx(n_, 0);
    std::vector<bool> onPath(n_, false);
    for (int root = 0; root < n_; root++) {
      if (parent[root] != -2) continue;
      std::vector<int> stack{root};
      parent[root] = -1;
      onPath[root] = true;
      while (!stack.empty()) {
        const int u = stack.back();
        if (childIdx[u] < g_.neighbors(u).size()) {
          const int v = g_.neighbors(u)[childIdx[u]++];
          if (v == parent[u]) continue;
          if (parent[v] != -2) {
            if (!onPath[v]) continue;
            std::vector<int> path{u};
            for (int x = u; x != v;) {
              x = parent[x];
              path.push_back(x);
            }
            return path;
          }
          parent[v] = u;
          onPath[v] = true;
          stack.push_back(v);
        } else {
          onPath[u] = false;
          stack.pop_back();
        }
      }
    }
    return std::nullopt;
  }

  struct Fragment {
    std::vector<int> interior;     // unembedded vertices (empty for a chord)
    std::vector<int> attachments;  // sorted embedded vertices
    Edge chord{-1, -1};
  };

  std::vector<Fragment> computeFragments() const {
    std::vector<Fragment> out;
    // Chords: unembedded edges with both endpoints embedded.
    for (int u = 0; u < n_; u++) {
      if (!embeddedV_[u]) continue;
      for (int v : g_.neighbors(u)) {
        if (v <= u || !embeddedV_[v] || isEmbedded(u, v)) continue;
        Fragment f;
        f.attachments = {u, v};
        f.chord = Edge(u, v);
        out.push_back(std::move(f));
      }
    }
    // Components of unembedded vertices.
    std::vector<bool> seen(n_, false);
    for (int s = 0; s < n_; s++) {
      if (embeddedV_[s] || seen[s]) continue;
      Fragment f;
      std::vector<int> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        f.interior.push_back(u);
        for (int v : g_.neighbors(u)) {
          if (embeddedV_[v]) {
            f.attachments.push_back(v);
          } else if (!seen[v]) {
            seen[v] = true;
            stack.push_back(v);
          }
        }
      }
      std::sort(f.attachments.begin(), f.attachments.end());
      f.attachments.erase(std::unique(f.attachments.begin(), f.attachments.end()),
                          f.attachments.end());
      out.push_back(std::move(f));
    }
    return out;
  }

  std::vector<int> admissibleFaces(const Fragment& f) const {
    std::vector<int> out;
    for (size_t i = 0; i < faces_.size(); i++) {
      const auto& face = faces_[i];
      size_t found = 0;
      for (int a : f.attachments) {
        if (std::find(face.begin(), face.end(), a) != face.end()) found++;
      }
      if (found == f.attachments.size()) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  // Path between two attachments whose interior lies in the fragment.
  std::vector<int> fragmentPath(const Fragment& f) const {
    if (f.chord.u >= 0) return {f.chord.u, f.chord.v};
    const int a1 = f.attachments[0];
    std::vector<int> inFragment(n_, 0);
    for (int v : f.interior) inFragment[v] = 1;
    std::vector<int> parent(n_, -2);
    std::vector<int> queue;
    // Seed with fragment vertices adjacent to a1.
    for (int v : g_.neighbors(a1)) {
      if (inFragment[v] && parent[v] == -2) {
        parent[v] = -1;
        queue.push_back(v);
      }
    }
    for (size_t qi = 0; qi < queue.size(); qi++) {
      int u = queue[qi];
      for (int v : g_.neighbors(u)) {
        if (inFragment[v]) {
          if (parent[v] == -2) {
            parent[v] = u;
            queue.push_back(v);
          }
        } else if (embeddedV_[v] && v != a1) {
          std::vector<int> path{v, u};
          int x = u;
          while (parent[x] >= 0) {
            x = parent[x];
            path.push_back(x);
          }
          path.push_back(a1);
          std::reverse(path.begin(), path.end());
          return path;
        }
      }
    }
    return {};
  }

  bool embedOneFragment() {
    auto fragments = computeFragments();
    BPR_CHECK(!fragments.empty(), "no fragments but edges remain");
    int chosen = -1;
    std::vector<int> chosenFaces;
    for (size_t i = 0; i < fragments.size(); i++) {
      auto adm = admissibleFaces(fragments[i]);
      if (adm.empty()) return false;  // nonplanar
      if (adm.size() == 1) {
        chosen = static_cast<int>(i);
        chosenFaces = adm;
        break;
      }
      if (chosen < 0) {
        chosen = static_cast<int>(i);
        chosenFaces = adm;
      }
    }
    const Fragment& f = fragments[chosen];
    std::vector<int> path = fragmentPath(f);
    BPR_CHECK(path.size() >= 2, "fragment path not found");
    embedPath(path, chosenFaces[0]);
    return true;
  }

  void embedPath(const std::vector<int>& path, int faceIdx) {
    const std::vector<int> face = faces_[faceIdx];
    const int a1 = path.front();
    const int a2 = path.back();
    const auto i1 = std::find(face.begin(), face.end(), a1) - face.begin();
    const auto i2 = std::find(face.begin(), face.end(), a2) - face.begin();
    BPR_CHECK(i1 < static_cast<long>(face.size()) && i2 < static_cast<long>(face.size()),
              "attachments not on chosen face");

    const int k = static_cast<int>(face.size());
    // Walk a1 -> a2 along the face.
    std::vector<int> arc1;
    for (int i = static_cast<int>(i1); face[i % k] != a2; i++) arc1.push_back(face[i % k]);
    arc1.push_back(a2);
    // Walk a2 -> a1 along the face.
    std::vector<int> arc2;
    for (int i = static_cast<int>(i2); face[i % k] != a1; i++) arc2.push_back(face[i % k]);
    arc2.push_back(a1);

    // New face 1: a1..a2 along the face, then path reversed back to a1.
    std::vector<int> f1 = arc1;
    for (size_t i = path.size() - 2; i >= 1; i--) f1.push_back(path[i]);
    // New face 2: a2..a1 along the face, then path forward to a2.
    std::vector<int> f2 = arc2;
    for (size_t i = 1; i + 1 < path.size(); i++) f2.push_back(path[i]);

    faces_[faceIdx] = std::move(f1);
    faces_.push_back(std::move(f2));

    for (size_t i = 0; i + 1 < path.size(); i++) markEmbedded(path[i], path[i + 1]);
    for (size_t i = 1; i + 1 < path.size(); i++) embeddedV_[path[i]] = true;
  }

  std::optional<std::vector<std::vector<int>>> extractRotation() const {
    // succ[v][u] = w for each face corner u -> v -> w.
    std::vector<std::map<int, int>> succ(n_);
    for (const auto& face : faces_) {
      const int k = static_cast<int>(face.size());
      for (int i = 0; i < k; i++) {
        const int u = face[i];
        const int v = face[(i + 1) % k];
        const int w = face[(i + 2) % k];
        succ[v][u] = w;
      }
    }
    std::vector<std::vector<int>> rot(n_);
    for (int v = 0; v < n_; v++) {
      if (g_.degree(v) == 0) continue;
      BPR_CHECK(static_cast<int>(succ[v].size()) == g_.degree(v), "rotation corner count mismatch");
      int start = succ[v].begin()->first;
      int cur = start;
      do {
        rot[v].push_back(cur);
        cur = succ[v].at(cur);
      } while (cur != start && static_cast<int>(rot[v].size()) <= g_.degree(v));
      if (static_cast<int>(rot[v].size()) != g_.degree(v) || cur != start)
        return std::nullopt;  // corners do not close into one cycle
    }
    return rot;
  }
};

}  // namespace

std::vector<std::vector<Edge>> biconnectedComponents(const Graph& g) {
  const int n = g.vertexCount();
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<size_t> childIdx(n, 0);
  std::vector<Edge> edgeStack;
  std::vector<std::vector<Edge>> comps;
  int timer = 0;
  for (int root = 0; root < n; root++) {
    if (disc[root] >= 0) continue;
    std::vector<int> stack{root};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      int u = stack.back();
      if (childIdx[u] < g.neighbors(u).size()) {
        int v = g.neighbors(u)[childIdx[u]++];
        if (disc[v] < 0) {
          edgeStack.emplace_back(u, v);
          parent[v] = u;
          disc[v] = low[v] = timer++;
          stack.push_back(v);
        } else if (v != parent[u] && disc[v] < disc[u]) {
          edgeStack.emplace_back(u, v);
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        stack.pop_back();
        int p = parent[u];
        if (p >= 0) {
          low[p] = std::min(low[p], low[u]);
          if (low[u] >= disc[p]) {
            std::vector<Edge> comp;
            const Edge top(p, u);
            while (!edgeStack.empty()) {
              Edge e = edgeStack.back();
              edgeStack.pop_back();
              comp.push_back(e);
              if (e == top) break;
            }
            comps.push_back(std::move(comp));
          }
        }
      }
    }
  }
  return comps;
}

namespace {

std::optional<std::vector<std::vector<int>>> embedBiconnected(const Graph& g) {
  return Demoucron(g).run();
}

}  // namespace

bool isPlanar(const Graph& g) {
  const int n = g.vertexCount();
  if (n >= 3 && g.edgeCount() > 3 * n - 6) return false;
  for (const auto& compEdges : biconnectedComponents(g)) {
    if (compEdges.size() <= 2) continue;
    std::vector<int> verts;
    for (const Edge& e : compEdges) {
      verts.push_back(e.u);
      verts.push_back(e.v);
    }
    Subgraph sub = inducedSubgraph(g, verts);
    // The induced graph may contain edges of other components that share a
    // pair of vertices; restrict to the component's own edges.
    std::vector<int> local(g.vertexCount(), -1);
    for (size_t i = 0; i < sub.toParent.size(); i++) local[sub.toParent[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edgeList;
    for (const Edge& e : compEdges) edgeList.emplace_back(local[e.u], local[e.v]);
    Graph comp = Graph::fromEdges(sub.graph.vertexCount(), edgeList);
    if (comp.edgeCount() == comp.vertexCount()) continue;  // a single cycle
    if (!embedBiconnected(comp)) return false;
  }
  return true;
}

std::optional<RotationSystem> planarEmbedding(const Graph& g) {
  const int n = g.vertexCount();
  if (n == 0) return RotationSystem{};
  // Fast path: biconnected graphs get a single embedding run.
  if (isConnected(g) && g.edgeCount() >= 3 && articulationVertices(g).empty()) {
    auto r = embedBiconnected(g);
    if (!r) return std::nullopt;
    return RotationSystem{std::move(*r)};
  }
  // Otherwise embed each biconnected piece and splice rotations at shared
  // vertices (the pieces nest into faces of one another).
  RotationSystem rot;
  rot.order.resize(n);
  for (const auto& compEdges : biconnectedComponents(g)) {
    std::vector<int> verts;
    for (const Edge& e : compEdges) {
      verts.push_back(e.u);
      verts.push_back(e.v);
    }
    Subgraph sub = inducedSubgraph(g, verts);
    std::vector<int> local(g.vertexCount(), -1);
    for (size_t i = 0; i < sub.toParent.size(); i++)
      local[sub.toParent[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edgeList;
    for (const Edge& e : compEdges) edgeList.emplace_back(local[e.u], local[e.v]);
    Graph comp = Graph::fromEdges(sub.graph.vertexCount(), edgeList);
    std::vector<std::vector<int>> compRot;
    if (comp.edgeCount() <= 2 || comp.edgeCount() == comp.vertexCount()) {
      // Single edges and plain cycles: adjacency order is a valid rotation.
      compRot.resize(comp.vertexCount());
      for (int v = 0; v < comp.vertexCount(); v++) compRot[v] = comp.neighbors(v);
    } else {
      auto er = embedBiconnected(comp);
      if (!er) return std::nullopt;
      compRot = *er;
    }
    for (int v = 0; v < comp.vertexCount(); v++)
      for (int u : compRot[v]) rot.order[sub.toParent[v]].push_back(sub.toParent[u]);
  }
  return rot;
}

RotationSystem planarRotation(const Graph& g) {
  if (!isKConnected(g, 3)) throw InputError("planarRotation: graph is not 3-connected");
  auto rot = planarEmbedding(g);
  if (!rot) throw InputError("planarRotation: graph is not planar");
  return *rot;
}

std::vector<std::vector<int>> traceFaces(const Graph& g, const RotationSystem& rot) {
  const int n = g.vertexCount();
  // Position of u within rot.order[v].
  std::vector<std::map<int, int>> pos(n);
  for (int v = 0; v < n; v++)
    for (size_t i = 0; i < rot.order[v].size(); i++) pos[v][rot.order[v][i]] = static_cast<int>(i);

  std::map<std::pair<int, int>, bool> used;
  std::vector<std::vector<int>> faces;
  for (int v = 0; v < n; v++) {
    for (int w : rot.order[v]) {
      if (used[{v, w}]) continue;
      std::vector<int> face;
      int a = v, b = w;
      while (!used[{a, b}]) {
        used[{a, b}] = true;
        face.push_back(a);
        // Next directed edge: at b, leave along the successor of a.
        const auto& order = rot.order[b];
        const int i = pos[b].at(a);
        const int next = order[(i + 1) % order.size()];
        a = b;
        b = next;
      }
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

bool isTriangulatedPlanar(const Graph& g) {
  const int n = g.vertexCount();
  if (n < 3) return true;
  if (g.edgeCount() != 3 * n - 6) return false;
  return isPlanar(g);
}

}  // namespace bpr
