#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bpr/coloring.hpp"
#include "bpr/graph.hpp"

namespace bpr {

/// A structural gadget driving the rewrite loop, in the fixed priority
/// order Sep3Cycle < SepEdge < Sep4Cycle < SepTriple < SepQuadruple <
/// SepTriangle. Vertex ids are local to the scanned graph.
struct Gadget {
  enum class Kind {
    Sep3Cycle,
    SepEdge,
    Sep4Cycle,
    SepTriple,
    SepQuadruple,
    SepTriangle,
  };
  Kind kind;
  std::vector<int> cycle;            // 3- or 4-cycle in cycle order (empty for SepEdge)
  Edge anchorEdge{-1, -1};           // SepEdge/SepTriple/SepQuadruple/SepTriangle: {a,b}
  Edge anchorEdge2{-1, -1};          // SepTriangle: {b,c}
  std::vector<Edge> crossableAB;     // C[a,b]
  std::vector<Edge> crossableBC;     // C[b,c] (SepTriangle)
  std::vector<std::vector<int>> components;  // split parts (cycle kinds)
};

const char* gadgetKindName(Gadget::Kind k);

using UncoloredFn = std::function<bool(const Edge&)>;

/// Stateful gadget scanner over one shrinking working graph. `noteRemoval` /
/// `noteColored` keep cheap absence certificates; `fullScan` mode rescans
/// every kind each call (used by tests to cross-validate the fast path).
class GadgetScanner {
 public:
  GadgetScanner(const Graph& g, UncoloredFn uncolored, bool fullScan);

  /// Highest-priority gadget, deterministic tie-breaking, or none.
  std::optional<Gadget> next();

  /// The working graph shrank by these edges (already reflected in `g`).
  void noteRemoval(const Graph& g, const Edge& removed);
  /// An edge changed color (affects crossable sets only).
  void noteColored(const Edge& e);

 private:
  const Graph* g_;
  UncoloredFn uncolored_;
  bool fullScan_;
  bool cutKindsDirty_ = true;        // separating 3-/4-cycles
  bool crossableKindsDirty_ = true;  // edge/triple/quadruple/triangle kinds

  std::optional<Gadget> findSep3Cycle() const;
  std::optional<Gadget> findSepEdge() const;
  std::optional<Gadget> findSep4Cycle() const;
  std::optional<Gadget> findSepTriple() const;
  std::optional<Gadget> findSepQuadruple() const;
  std::optional<Gadget> findSepTriangle() const;
};

/// Spec-shaped convenience (ids shared with the coloring): one full-priority
/// scan. The recognizer uses GadgetScanner instead.
std::optional<Gadget> nextGadget(const Graph& g, const EdgeColoring& coloring);

/// MC4 classification of a K4 occurrence (Fig. 6 patterns).
enum class Mc4Class { KiteCoveredTetrahedron, SCGraph, PlainKite, Mismatch };

struct Mc4Result {
  Mc4Class cls = Mc4Class::Mismatch;
  /// Kites to realize, in processing order: 6 for the covered tetrahedron
  /// (anchor = the K4 edge), 3 for SC (anchor = a triangle edge of the K4),
  /// 1 for a plain kite (anchor/crosser = its diagonals).
  std::vector<std::pair<Edge, Edge>> kitePairs;  // (anchor, crosser), local ids
};

Mc4Result classifyMc4(const Graph& g, const UncoloredFn& uncolored, const K4Occurrence& k4);

/// Number of internally vertex-disjoint u-v paths, capped at `cap`.
int vertexDisjointPaths(const Graph& g, int u, int v, int cap);

}  // namespace bpr
