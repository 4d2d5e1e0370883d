#pragma once

#include <vector>

#include "bpr/graph.hpp"

namespace bpr {

/// Pseudo-double-wheel quadrangulation: a 2k-cycle with two apexes joined to
/// alternating cycle vertices (n = 2k + 2, m = 4k, all faces quadrilateral;
/// k = 3 gives the cube). Requires k >= 3.
Graph genPseudoDoubleWheel(int k);

/// Cube graph Q3 (the k = 3 pseudo-double-wheel relabeled to hypercube ids).
Graph genCube();

/// Inserts both diagonals into every face of a 3-connected planar
/// quadrangulation; the result has 4n - 8 edges. Throws InputError when the
/// input is not such a quadrangulation (e.g. a triangulated graph).
Graph genOptimal1Planar(const Graph& quadrangulation);

/// Ring of k complete graphs K5 sharing a center vertex, capped by an apex
/// over the outer cycle so every face is a triangle. Block i lives on
/// {center, a_i, b_i, c_i, a_{i+1}}; consecutive blocks share the center and
/// one ring vertex. Vertex layout: 0 = center, 1 = apex, then per block
/// (a_i, b_i, c_i). Requires k >= 2.
Graph genK5Star(int k);

/// Octahedron (the smallest 4-connected triangulated planar graph).
Graph genOctahedron();

/// Adds the missing diagonal over each slot edge of a triangulated planar
/// graph: a slot names an edge whose two incident triangles form a
/// quadrilateral; the new edge creates one crossing kite per slot.
/// `discipline` 0 = none (1P), 1 = slots must be vertex-disjoint (IC
/// targets), 2 = edge-disjoint slots sharing at most one vertex (NIC).
Graph genKiteAugmentedPlanar(const Graph& base, const std::vector<Edge>& slots, int discipline);

}  // namespace bpr
