#include "bpr/generators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "bpr/log.hpp"
#include "bpr/planarity.hpp"

namespace bpr {

Graph genPseudoDoubleWheel(int k) {
  if (k < 3) throw InputError("pseudo-double-wheel needs k >= 3");
  // 0 = north apex, 1 = south apex, ring vertices 2 .. 2k+1.
  const int n = 2 * k + 2;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 2 * k; i++) {
    edges.emplace_back(2 + i, 2 + (i + 1) % (2 * k));
    edges.emplace_back(i % 2 == 0 ? 0 : 1, 2 + i);
  }
  return Graph::fromEdges(n, edges);
}

Graph genCube() { return genPseudoDoubleWheel(3); }

Graph genOptimal1Planar(const Graph& quadrangulation) {
  const int n = quadrangulation.vertexCount();
  if (n < 8 || quadrangulation.edgeCount() != 2 * n - 4)
    throw InputError("not a quadrangulation: expected 2n-4 edges");
  RotationSystem rot = planarRotation(quadrangulation);
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : quadrangulation.edges()) edges.emplace_back(e.u, e.v);
  std::set<Edge> added;
  for (const auto& face : traceFaces(quadrangulation, rot)) {
    if (face.size() != 4)
      throw InputError("not a quadrangulation: face of length " + std::to_string(face.size()));
    const Edge d1(face[0], face[2]), d2(face[1], face[3]);
    for (const Edge& d : {d1, d2}) {
      if (quadrangulation.hasEdge(d) || !added.insert(d).second)
        throw InputError("quadrangulation has coincident face diagonals");
      edges.emplace_back(d.u, d.v);
    }
  }
  Graph out = Graph::fromEdges(n, edges);
  BPR_CHECK(out.edgeCount() == 4 * n - 8, "optimal graph edge count");
  return out;
}

Graph genK5Star(int k) {
  if (k < 2) throw InputError("k5 star needs k >= 2");
  // 0 = center x, 1 = apex z, block i owns a_i = 2+3i, b_i = 3+3i, c_i = 4+3i.
  const int n = 2 + 3 * k;
  auto a = [&](int i) { return 2 + 3 * (i % k); };
  auto b = [&](int i) { return 3 + 3 * (i % k); };
  auto c = [&](int i) { return 4 + 3 * (i % k); };
  std::set<Edge> edges;
  for (int i = 0; i < k; i++) {
    // K5 on {x, a_i, b_i, c_i, a_{i+1}}; the sector boundary (x, a_i) and
    // (x, a_{i+1}) is shared with the neighbor blocks.
    const std::array<int, 5> block = {0, a(i), b(i), c(i), a(i + 1)};
    for (size_t p = 0; p < block.size(); p++)
      for (size_t q = p + 1; q < block.size(); q++) edges.insert(Edge(block[p], block[q]));
  }
  // The apex closes the outer face: it sees the whole outer ring
  // a_i - b_i - c_i - a_{i+1} - ...
  for (int i = 0; i < k; i++) {
    edges.insert(Edge(1, a(i)));
    edges.insert(Edge(1, b(i)));
    edges.insert(Edge(1, c(i)));
  }
  std::vector<std::pair<int, int>> list;
  for (const Edge& e : edges) list.emplace_back(e.u, e.v);
  return Graph::fromEdges(n, list);
}

Graph genOctahedron() {
  // Antipodal pairs (0,1), (2,3), (4,5); all other pairs adjacent.
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 6; u++)
    for (int v = u + 1; v < 6; v++)
      if (!(u / 2 == v / 2)) edges.emplace_back(u, v);
  return Graph::fromEdges(6, edges);
}

Graph genKiteAugmentedPlanar(const Graph& base, const std::vector<Edge>& slots, int discipline) {
  if (!isTriangulatedPlanar(base)) throw InputError("base graph is not triangulated planar");
  RotationSystem rot = planarRotation(base);
  // Map each edge to the apexes of its two incident triangle faces.
  std::map<Edge, std::vector<int>> faceApex;
  for (const auto& face : traceFaces(base, rot)) {
    BPR_CHECK(face.size() == 3, "triangulated base with a non-triangle face");
    faceApex[Edge(face[0], face[1])].push_back(face[2]);
    faceApex[Edge(face[1], face[2])].push_back(face[0]);
    faceApex[Edge(face[0], face[2])].push_back(face[1]);
  }
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : base.edges()) edges.emplace_back(e.u, e.v);
  std::vector<std::array<int, 4>> kiteVerts;
  for (const Edge& slot : slots) {
    auto it = faceApex.find(slot);
    if (it == faceApex.end() || it->second.size() != 2)
      throw InputError("slot edge " + std::to_string(slot.u) + "-" + std::to_string(slot.v) +
                       " is not an inner edge of the base");
    const int x = it->second[0], y = it->second[1];
    if (base.hasEdge(x, y)) throw InputError("slot diagonal already present");
    edges.emplace_back(x, y);
    kiteVerts.push_back({slot.u, slot.v, x, y});
  }
  for (size_t i = 0; i < kiteVerts.size(); i++) {
    for (size_t j = i + 1; j < kiteVerts.size(); j++) {
      int shared = 0;
      for (int u : kiteVerts[i])
        for (int v : kiteVerts[j])
          if (u == v) shared++;
      if (discipline == 1 && shared > 0)
        throw InputError("slots must be vertex-disjoint for IC targets");
      if (discipline == 2 && shared > 1) throw InputError("slots must be edge-disjoint");
    }
  }
  return Graph::fromEdges(base.vertexCount(), edges);
}

}  // namespace bpr
