#pragma once

#include <array>

#include "bpr/graph.hpp"

namespace bpr {

/// A K4 occurrence designated for a crossing embedding. The crossing pair is
/// ordered: crossing[0] is the anchor edge (colored red and removed by the
/// pipeline), crossing[1] its crosser (blue). The four planar edges form the
/// boundary 4-cycle. Vertex ids refer to the original input graph.
struct Kite {
  int id = -1;
  std::array<int, 4> vertices{};       // sorted
  std::array<Edge, 2> crossing{};      // [anchor, crosser]
  std::array<Edge, 4> boundary{};      // 4-cycle, sorted canonically

  static Kite fromCrossingPair(int id, const Edge& anchor, const Edge& crosser);

  bool containsVertex(int v) const {
    return vertices[0] == v || vertices[1] == v || vertices[2] == v || vertices[3] == v;
  }
  bool hasBoundaryEdge(const Edge& e) const {
    return boundary[0] == e || boundary[1] == e || boundary[2] == e || boundary[3] == e;
  }
  int sharedVertexCount(const Kite& other) const;
  bool sharesEdgeWith(const Kite& other) const;
};

}  // namespace bpr
