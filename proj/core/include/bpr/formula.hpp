#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpr/graph.hpp"
#include "bpr/kite.hpp"

namespace bpr {

enum class Mode { OneP, IC, NIC };

const char* modeName(Mode m);

/// Variable entity: a vertex (IC) or an unordered vertex pair (NIC). NIC
/// entities may name a pair that is not an edge of the input (an added
/// chord); exclusion on such pairs is still meaningful.
struct Entity {
  bool isEdge = false;
  int a = -1;
  int b = -1;

  static Entity vertex(int v) { return Entity{false, v, -1}; }
  static Entity edge(const Edge& e) { return Entity{true, e.u, e.v}; }

  bool operator<(const Entity& o) const {
    if (isEdge != o.isEdge) return !isEdge;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
  bool operator==(const Entity& o) const {
    return isEdge == o.isEdge && a == o.a && b == o.b;
  }
  std::string name() const;
};

struct Variable {
  Entity entity;
  int kiteId = -1;

  bool operator<(const Variable& o) const {
    if (!(entity == o.entity)) return entity < o.entity;
    return kiteId < o.kiteId;
  }
};

/// One conjunction of positive variables; choosing it realizes `kiteId`
/// (sigma candidates) or the embedding `embeddingIdx` (small-graph blocks).
struct Conj {
  std::vector<int> vars;
  int kiteId = -1;
  int embeddingIdx = -1;
};

/// A conjunct of eta. Semantics: AND(anchorVars) and, unless disjuncts is
/// empty, OR over the disjuncts of their conjunctions.
struct Block {
  enum class Kind { Alpha, Sigma, Small };
  Kind kind = Kind::Alpha;
  int depth = 0;

  std::vector<int> anchorVars;
  std::vector<Conj> disjuncts;

  // Alpha bookkeeping.
  Kite alphaKite;

  // Sigma bookkeeping (Lemma 6).
  Edge sigmaAnchor{-1, -1};
  std::vector<Kite> sigmaKites;       // candidates in fan order
  std::vector<int> sigmaExposed;      // per candidate: boundary vertex exposed
                                      // outward (-1 for inner candidates)
  int sigmaVirtualKite = -1;          // IC factored form kite id

  // Small-graph bookkeeping: outer entities the block may mention.
  std::vector<Entity> smallOuterEntities;
};

/// The certificate formula eta: a conjunction of traced blocks over interned
/// (entity, kite) variables. Built incrementally during recognition.
class Formula {
 public:
  int internVar(const Entity& e, int kiteId);
  std::optional<int> findVar(const Entity& e, int kiteId) const;
  int freshKiteId() { return nextKite_++; }

  void addBlock(Block b) { blocks_.push_back(std::move(b)); }
  void markFalse() { failed_ = true; }

  bool failed() const { return failed_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<Block>& blocks() { return blocks_; }
  int variableCount() const { return static_cast<int>(varKeys_.size()); }
  const Variable& variable(int id) const { return varKeys_[id]; }

  /// Total literal count over all blocks.
  int length() const;

  /// Variable ids grouped by entity (only entities with >= 1 variable).
  std::map<Entity, std::vector<int>> entityIndex() const;

  std::string toSExpr() const;

 private:
  std::map<Variable, int> varIds_;
  std::vector<Variable> varKeys_;
  std::vector<Block> blocks_;
  int nextKite_ = 0;
  bool failed_ = false;
};

/// alpha(kappa): conjunction of the kite's four vertices (IC) or four planar
/// boundary edges (NIC), as an Alpha block.
Block makeAlpha(Formula& f, const Kite& kite, Mode mode, int depth);

/// sigma(a, b, C[a,b]): the disjunction over candidate kites. IC uses the
/// factored single-kite form of section 4.1; NIC keeps one alpha per
/// candidate. Candidates must be given in fan order with exposure flags.
/// A single-candidate sigma degenerates to alpha of that kite.
Block makeSigma(Formula& f, const Edge& anchor, const std::vector<Kite>& candidates,
                const std::vector<int>& exposedVertex, Mode mode, int depth);

/// The IC/NIC extension clauses (~x_k or ~x_k') for every entity occurring
/// with two distinct kites; all unordered pairs.
std::vector<std::pair<int, int>> extensionClauses(const Formula& f);

struct SatResult {
  bool satisfiable = false;
  std::map<int, bool> assignment;  // var id -> value (present when satisfiable)
};

/// Lemma 6 evaluation for IC formulas: small blocks are rewritten to their
/// 2SAT equivalents (Lemma 5), sigma blocks resolved deepest-first, and the
/// residue decided by 2SAT. `forcedFalse` entities have all their variables
/// pinned false (used by the decomposition exclusivity test).
SatResult icSatisfiable(const Formula& f, const std::vector<Entity>& forcedFalse = {});

/// Lemma 7/8 evaluation for NIC formulas: single-occurrence variables are set
/// true, double occurrences rewritten to a literal and its negation, and the
/// result checked clause-wise in one pass. Throws InternalError if an entity
/// occurs in three or more variables.
SatResult nicSatisfiable(const Formula& f, const std::vector<Entity>& forcedFalse = {});

}  // namespace bpr
