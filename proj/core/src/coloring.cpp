#include "bpr/coloring.hpp"

#include <algorithm>

#include "bpr/log.hpp"

namespace bpr {

Kite Kite::fromCrossingPair(int id, const Edge& anchor, const Edge& crosser) {
  BPR_CHECK(!anchor.sharesEndpoint(crosser), "kite crossing pair must be disjoint");
  Kite k;
  k.id = id;
  k.crossing = {anchor, crosser};
  k.vertices = {anchor.u, anchor.v, crosser.u, crosser.v};
  std::sort(k.vertices.begin(), k.vertices.end());
  k.boundary = {Edge(anchor.u, crosser.u), Edge(anchor.u, crosser.v),
                Edge(anchor.v, crosser.u), Edge(anchor.v, crosser.v)};
  std::sort(k.boundary.begin(), k.boundary.end());
  return k;
}

int Kite::sharedVertexCount(const Kite& other) const {
  int count = 0;
  for (int v : vertices)
    if (other.containsVertex(v)) count++;
  return count;
}

bool Kite::sharesEdgeWith(const Kite& other) const {
  // Two kites share an edge exactly when they share at least two vertices;
  // the pair of shared vertices identifies the edge slot of both quads.
  return sharedVertexCount(other) >= 2;
}

const char* colorName(EdgeColor c) {
  switch (c) {
    case EdgeColor::Uncolored: return "uncolored";
    case EdgeColor::Black: return "black";
    case EdgeColor::Red: return "red";
    case EdgeColor::Blue: return "blue";
    case EdgeColor::Orange: return "orange";
    case EdgeColor::Cyan: return "cyan";
    case EdgeColor::Grey: return "grey";
  }
  return "?";
}

EdgeColor colorFromName(const std::string& name) {
  for (EdgeColor c : {EdgeColor::Uncolored, EdgeColor::Black, EdgeColor::Red, EdgeColor::Blue,
                      EdgeColor::Orange, EdgeColor::Cyan, EdgeColor::Grey}) {
    if (name == colorName(c)) return c;
  }
  throw InputError("unknown edge color: " + name);
}

EdgeColor EdgeColoring::get(const Edge& e) const {
  auto it = map_.find(e);
  return it == map_.end() ? EdgeColor::Uncolored : it->second;
}

bool EdgeColoring::extend(const Edge& e, EdgeColor c) {
  BPR_CHECK(c != EdgeColor::Uncolored, "cannot extend by 'uncolored'");
  const EdgeColor existing = get(e);
  if (existing == EdgeColor::Uncolored) {
    map_[e] = c;
    return true;
  }
  if (existing == c) return true;
  const bool newIsSoft = (c == EdgeColor::Black || c == EdgeColor::Grey);
  const bool oldIsFirm = (existing == EdgeColor::Blue || existing == EdgeColor::Cyan);
  if (newIsSoft && oldIsFirm) return true;  // blue/cyan overrule black/grey
  return false;
}

bool colorKite(EdgeColoring& coloring, const Kite& kite) {
  if (!coloring.extend(kite.crossing[0], EdgeColor::Red)) return false;
  if (!coloring.extend(kite.crossing[1], EdgeColor::Blue)) return false;
  for (const Edge& e : kite.boundary) {
    if (!coloring.extend(e, EdgeColor::Black)) return false;
  }
  return true;
}

std::vector<Edge> crossableEdgesIf(const Graph& g, const Edge& e,
                                   const std::function<bool(const Edge&)>& uncolored) {
  std::vector<Edge> out;
  const std::vector<int> common = g.commonNeighbors(e.u, e.v);
  for (size_t i = 0; i < common.size(); i++) {
    for (size_t j = i + 1; j < common.size(); j++) {
      const Edge candidate(common[i], common[j]);
      if (!g.hasEdge(candidate)) continue;
      if (!uncolored(candidate)) continue;
      out.push_back(candidate);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> crossableEdges(const Graph& g, const EdgeColoring& coloring, const Edge& e) {
  if (!coloring.isUncolored(e))
    throw InputError("crossableEdges: anchor edge is colored");
  return crossableEdgesIf(g, e, [&](const Edge& f) { return coloring.isUncolored(f); });
}

}  // namespace bpr
