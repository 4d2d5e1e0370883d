#pragma once

#include <optional>
#include <vector>

#include "bpr/graph.hpp"

namespace bpr {

/// Cyclic neighbor order per vertex; fixes a combinatorial embedding.
struct RotationSystem {
  std::vector<std::vector<int>> order;
};

/// Planarity test for arbitrary simple graphs.
bool isPlanar(const Graph& g);

/// Planar embedding of a connected graph whose biconnected components are
/// glued arbitrarily at cut vertices; nullopt when nonplanar.
std::optional<RotationSystem> planarEmbedding(const Graph& g);

/// The unique (up to reflection) rotation system of a 3-connected planar
/// graph. Throws InputError on nonplanar or non-3-connected input.
RotationSystem planarRotation(const Graph& g);

/// Faces of the embedding, each a closed walk of vertices. Every directed
/// edge is traversed exactly once over all faces.
std::vector<std::vector<int>> traceFaces(const Graph& g, const RotationSystem& rot);

/// True iff g is planar with m = 3n - 6 (every face a triangle); graphs with
/// fewer than 3 vertices count as (degenerately) triangulated.
bool isTriangulatedPlanar(const Graph& g);

/// Edge sets of the biconnected components.
std::vector<std::vector<Edge>> biconnectedComponents(const Graph& g);

}  // namespace bpr
