#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpr/coloring.hpp"
#include "bpr/formula.hpp"
#include "bpr/graph.hpp"
#include "bpr/kite.hpp"
#include "bpr/planarity.hpp"

namespace bpr {

/// Crossing choice of an embedding: pairwise edge-disjoint pairs of
/// non-adjacent edges, each pair spanning a K4 of the graph.
struct CrossingSet {
  std::vector<std::pair<Edge, Edge>> pairs;

  void normalize();
  bool operator==(const CrossingSet& o) const { return pairs == o.pairs; }
  bool operator<(const CrossingSet& o) const { return pairs < o.pairs; }
};

/// A triangulated 1-planar embedding: the crossing set plus the rotation
/// system of its planarization (vertex n+i is the dummy of pairs[i]).
struct Embedding {
  CrossingSet crossings;
  RotationSystem rotation;
  std::vector<Kite> kites;
};

/// Validation-side view of a partial coloring.
struct EmbedConstraints {
  std::vector<Edge> mustPlanar;
  std::vector<Edge> mustCrossed;
};

/// Standalone semantics: black stays planar, red/blue/orange must be
/// crossed. With `insideSplit`, blue and cyan edges of the enclosing run are
/// treated as planar within the subgraph instead.
EmbedConstraints constraintsFromColoring(const EdgeColoring& coloring,
                                         const std::vector<Edge>& presentEdges,
                                         bool insideSplit);

/// Checks one crossing choice: K4 coverage, edge-disjointness, triangulated
/// planarization (m' = 3n' - 6 and planar), dummy alternation, constraint
/// and mode conformance. On reject, *whyNot names the first violation.
std::optional<Embedding> validateEmbedding(const Graph& g, const CrossingSet& m,
                                           const EmbedConstraints& constraints, Mode mode,
                                           std::string* whyNot = nullptr);

/// All valid crossing sets in deterministic (lexicographic) order. Intended
/// for small graphs; the crossing count is forced to m - (3n - 6).
/// `limit` > 0 stops after that many embeddings (existence checks use 1).
std::vector<Embedding> enumerateEmbeddings(const Graph& g, const EmbedConstraints& constraints,
                                           Mode mode, int limit = -1);

/// Number of isomorphism classes among embeddings of g, brute-force over
/// automorphisms (n <= 8); `fixedVertices` must be fixed pointwise.
int isoClassCount(const Graph& g, const std::vector<Embedding>& embeddings,
                  const std::vector<int>& fixedVertices = {});

/// Small-graph block: the disjunction over embeddings of their outer-entity
/// usage conjunctions, deduplicated. Entities are vertices (IC) or edges
/// (NIC) of the enclosing outer cycle (an added chord is never an entity).
/// Embeddings that commit no outer entity make the block trivially true.
Block smallGraphFormula(Formula& f, const std::vector<Embedding>& embeddings,
                        const std::vector<Entity>& outerEntities, Mode mode, int depth);

/// Spec-shaped convenience: enumerate then build the block.
Block smallGraphFormula(Formula& f, const Graph& g, const EmbedConstraints& constraints,
                        const std::vector<Entity>& outerEntities, Mode mode, int depth);

}  // namespace bpr
