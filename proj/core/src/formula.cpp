#include "bpr/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bpr/log.hpp"
#include "bpr/twosat.hpp"

namespace bpr {

const char* modeName(Mode m) {
  switch (m) {
    case Mode::OneP: return "1p";
    case Mode::IC: return "ic";
    case Mode::NIC: return "nic";
  }
  return "?";
}

std::string Entity::name() const {
  if (isEdge) return "e" + std::to_string(a) + "-" + std::to_string(b);
  return "v" + std::to_string(a);
}

int Formula::internVar(const Entity& e, int kiteId) {
  Variable key{e, kiteId};
  auto it = varIds_.find(key);
  if (it != varIds_.end()) return it->second;
  const int id = static_cast<int>(varKeys_.size());
  varIds_.emplace(key, id);
  varKeys_.push_back(key);
  return id;
}

std::optional<int> Formula::findVar(const Entity& e, int kiteId) const {
  auto it = varIds_.find(Variable{e, kiteId});
  if (it == varIds_.end()) return std::nullopt;
  return it->second;
}

int Formula::length() const {
  int len = 0;
  for (const Block& b : blocks_) {
    len += static_cast<int>(b.anchorVars.size());
    for (const Conj& c : b.disjuncts) len += static_cast<int>(c.vars.size());
  }
  return len;
}

std::map<Entity, std::vector<int>> Formula::entityIndex() const {
  std::map<Entity, std::vector<int>> out;
  for (int id = 0; id < variableCount(); id++) out[varKeys_[id].entity].push_back(id);
  return out;
}

std::string Formula::toSExpr() const {
  if (failed_) return "false";
  if (blocks_.empty()) return "true";
  std::ostringstream out;
  auto lit = [&](int v) {
    out << varKeys_[v].entity.name() << "@k" << varKeys_[v].kiteId;
  };
  auto conj = [&](const std::vector<int>& vars) {
    if (vars.size() == 1) {
      lit(vars[0]);
      return;
    }
    out << "(and";
    for (int v : vars) {
      out << " ";
      lit(v);
    }
    out << ")";
  };
  out << "(and";
  for (const Block& b : blocks_) {
    out << " ";
    const bool hasAnchor = !b.anchorVars.empty();
    const bool hasChoice = !b.disjuncts.empty();
    if (hasAnchor && hasChoice) out << "(and ";
    if (hasAnchor) conj(b.anchorVars);
    if (hasAnchor && hasChoice) out << " ";
    if (hasChoice) {
      if (b.disjuncts.size() == 1) {
        if (b.disjuncts[0].vars.empty())
          out << "true";
        else
          conj(b.disjuncts[0].vars);
      } else {
        out << "(or";
        for (const Conj& c : b.disjuncts) {
          out << " ";
          if (c.vars.empty())
            out << "true";
          else
            conj(c.vars);
        }
        out << ")";
      }
    }
    if (hasAnchor && hasChoice) out << ")";
  }
  out << ")";
  return out.str();
}

Block makeAlpha(Formula& f, const Kite& kite, Mode mode, int depth) {
  Block b;
  b.kind = Block::Kind::Alpha;
  b.depth = depth;
  b.alphaKite = kite;
  if (mode == Mode::IC) {
    for (int v : kite.vertices) b.anchorVars.push_back(f.internVar(Entity::vertex(v), kite.id));
  } else {
    for (const Edge& e : kite.boundary)
      b.anchorVars.push_back(f.internVar(Entity::edge(e), kite.id));
  }
  return b;
}

Block makeSigma(Formula& f, const Edge& anchor, const std::vector<Kite>& candidates,
                const std::vector<int>& exposedVertex, Mode mode, int depth) {
  BPR_CHECK(!candidates.empty(), "sigma with empty candidate list");
  BPR_CHECK(candidates.size() == exposedVertex.size(), "sigma exposure size mismatch");
  if (candidates.size() == 1) return makeAlpha(f, candidates[0], mode, depth);
  Block b;
  b.kind = Block::Kind::Sigma;
  b.depth = depth;
  b.sigmaAnchor = anchor;
  b.sigmaKites = candidates;
  b.sigmaExposed = exposedVertex;
  if (mode == Mode::IC) {
    // Factored form: (a & b) & ((x1 & y1) | ... | (xr & yr)) on one kite.
    const int kappa = f.freshKiteId();
    b.sigmaVirtualKite = kappa;
    b.anchorVars.push_back(f.internVar(Entity::vertex(anchor.u), kappa));
    b.anchorVars.push_back(f.internVar(Entity::vertex(anchor.v), kappa));
    for (const Kite& k : candidates) {
      Conj c;
      c.kiteId = k.id;
      const Edge crosser = k.crossing[1];
      c.vars.push_back(f.internVar(Entity::vertex(crosser.u), kappa));
      c.vars.push_back(f.internVar(Entity::vertex(crosser.v), kappa));
      b.disjuncts.push_back(std::move(c));
    }
  } else {
    for (const Kite& k : candidates) {
      Conj c;
      c.kiteId = k.id;
      for (const Edge& e : k.boundary) c.vars.push_back(f.internVar(Entity::edge(e), k.id));
      b.disjuncts.push_back(std::move(c));
    }
  }
  return b;
}

std::vector<std::pair<int, int>> extensionClauses(const Formula& f) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [entity, vars] : f.entityIndex()) {
    for (size_t i = 0; i < vars.size(); i++) {
      for (size_t j = i + 1; j < vars.size(); j++) {
        if (f.variable(vars[i]).kiteId != f.variable(vars[j]).kiteId)
          out.emplace_back(vars[i], vars[j]);
      }
    }
  }
  return out;
}

namespace {

// CNF with unit forcing and branching on the rare clauses of width >= 3;
// every branch leaf is a plain 2SAT instance.
struct CnfProblem {
  int vars = 0;
  std::vector<int> units;                 // literals: +(v+1) / -(v+1)
  std::vector<std::pair<int, int>> twos;  // binary clauses
  std::vector<std::vector<int>> wide;     // clauses with >= 3 literals

  void addClause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    BPR_CHECK(!lits.empty(), "empty clause");
    if (lits.size() == 1)
      units.push_back(lits[0]);
    else if (lits.size() == 2)
      twos.emplace_back(lits[0], lits[1]);
    else
      wide.push_back(std::move(lits));
  }

  static int toLit(int signedVar) {
    const int v = std::abs(signedVar) - 1;
    return signedVar > 0 ? TwoSat::posLit(v) : TwoSat::negLit(v);
  }

  std::optional<std::vector<bool>> solve() const {
    if (wide.empty()) {
      TwoSat sat(vars);
      for (int u : units) sat.addUnit(toLit(u));
      for (auto [a, b] : twos) sat.addClause(toLit(a), toLit(b));
      return sat.solve();
    }
    const std::vector<int> clause = wide.front();
    for (int lit : clause) {
      CnfProblem next = *this;
      next.wide.erase(next.wide.begin());
      next.units.push_back(lit);
      if (auto r = next.solve()) return r;
    }
    return std::nullopt;
  }
};

// Drops supersets and duplicates; result sorted by size then lexicographic.
std::vector<std::vector<int>> minimalSets(std::vector<std::vector<int>> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<std::vector<int>> out;
  for (const auto& s : sets) {
    bool dominated = false;
    for (const auto& kept : out) {
      if (std::includes(s.begin(), s.end(), kept.begin(), kept.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(s);
  }
  return out;
}

// Minimal transversals of a small set family (brute force over the universe).
std::vector<std::vector<int>> minimalTransversals(const std::vector<std::vector<int>>& sets) {
  std::set<int> universe;
  for (const auto& s : sets)
    for (int x : s) universe.insert(x);
  std::vector<int> elems(universe.begin(), universe.end());
  const int k = static_cast<int>(elems.size());
  BPR_CHECK(k <= 16, "transversal universe too large");
  std::vector<std::vector<int>> hits;
  for (unsigned mask = 0; mask < (1u << k); mask++) {
    std::vector<int> t;
    for (int i = 0; i < k; i++)
      if (mask & (1u << i)) t.push_back(elems[i]);
    bool hitsAll = true;
    for (const auto& s : sets) {
      bool hit = false;
      for (int x : s)
        if (std::binary_search(t.begin(), t.end(), x)) hit = true;
      if (!hit) {
        hitsAll = false;
        break;
      }
    }
    if (hitsAll) hits.push_back(std::move(t));
  }
  return minimalSets(std::move(hits));
}

// Variable space for the IC evaluation: formula variables plus virtual-kite
// variables introduced by Lemma 5 rewrites.
struct IcSpace {
  const Formula& formula;
  std::map<Variable, int> extra;
  std::vector<Variable> extraKeys;

  explicit IcSpace(const Formula& f) : formula(f) {}

  int count() const { return formula.variableCount() + static_cast<int>(extraKeys.size()); }

  int internExtra(const Entity& e, int kiteId) {
    Variable key{e, kiteId};
    auto it = extra.find(key);
    if (it != extra.end()) return it->second;
    const int id = count();
    extra.emplace(key, id);
    extraKeys.push_back(key);
    return id;
  }

  Variable info(int id) const {
    if (id < formula.variableCount()) return formula.variable(id);
    return extraKeys[id - formula.variableCount()];
  }
};

std::vector<std::pair<int, int>> allExtensionClauses(const IcSpace& space) {
  std::map<Entity, std::vector<int>> byEntity;
  for (int id = 0; id < space.count(); id++) byEntity[space.info(id).entity].push_back(id);
  std::vector<std::pair<int, int>> out;
  for (const auto& [entity, vars] : byEntity) {
    for (size_t i = 0; i < vars.size(); i++)
      for (size_t j = i + 1; j < vars.size(); j++)
        if (space.info(vars[i]).kiteId != space.info(vars[j]).kiteId)
          out.emplace_back(vars[i], vars[j]);
  }
  return out;
}

}  // namespace

// Lemma 6 procedure. Small blocks are first rewritten per Lemma 5 into CNF
// over one virtual kite per block (minimal transversals of the entity usage
// sets; the K5 block becomes the (a|b)(a|c)(b|c) pattern). Sigma blocks are
// then resolved deepest-first: inner candidates are tried before the outer
// two, and the block is replaced by its short stub. The residue plus all
// extension clauses is decided by 2SAT.
SatResult icSatisfiable(const Formula& f, const std::vector<Entity>& forcedFalse) {
  SatResult result;
  if (f.failed()) return result;

  IcSpace space(f);

  // Lemma 5 rewrites, one virtual kite per small block.
  struct SmallCnf {
    std::vector<std::vector<int>> clauses;  // positive var ids
  };
  std::vector<SmallCnf> smallCnfs;
  int virtualKite = -2;
  for (size_t bi = 0; bi < f.blocks().size(); bi++) {
    const Block& b = f.blocks()[bi];
    if (b.kind != Block::Kind::Small) continue;
    bool alwaysTrue = false;
    std::vector<std::vector<int>> usedSets;
    std::set<Entity> universe;
    for (const Conj& c : b.disjuncts) {
      std::set<Entity> used;
      for (int v : c.vars) used.insert(f.variable(v).entity);
      if (used.empty()) {
        alwaysTrue = true;
        break;
      }
      universe.insert(used.begin(), used.end());
      std::vector<int> key;
      for (const Entity& e : used) key.push_back(space.internExtra(e, virtualKite));
      usedSets.push_back(std::move(key));
    }
    if (alwaysTrue || b.disjuncts.empty()) {
      virtualKite--;
      continue;
    }
    SmallCnf cnf;
    cnf.clauses = minimalTransversals(minimalSets(std::move(usedSets)));
    smallCnfs.push_back(std::move(cnf));
    virtualKite--;
  }

  // Base CNF pieces shared by all satisfiability checks below.
  auto baseProblem = [&](bool includeExtensions) {
    CnfProblem p;
    p.vars = space.count();
    for (const Block& b : f.blocks()) {
      if (b.kind == Block::Kind::Small) continue;
      for (int v : b.anchorVars) p.units.push_back(v + 1);
    }
    for (const SmallCnf& cnf : smallCnfs) {
      for (const auto& clause : cnf.clauses) {
        std::vector<int> lits;
        for (int v : clause) lits.push_back(v + 1);
        p.addClause(std::move(lits));
      }
    }
    if (includeExtensions) {
      for (auto [x, y] : allExtensionClauses(space)) p.addClause({-(x + 1), -(y + 1)});
    }
    for (const Entity& e : forcedFalse) {
      for (int id = 0; id < space.count(); id++)
        if (space.info(id).entity == e) p.units.push_back(-(id + 1));
    }
    return p;
  };

  // Resolve sigma blocks deepest-first.
  std::vector<size_t> sigmaOrder;
  for (size_t bi = 0; bi < f.blocks().size(); bi++)
    if (f.blocks()[bi].kind == Block::Kind::Sigma) sigmaOrder.push_back(bi);
  std::stable_sort(sigmaOrder.begin(), sigmaOrder.end(), [&](size_t a, size_t b) {
    return f.blocks()[a].depth > f.blocks()[b].depth;
  });

  std::vector<std::vector<std::vector<int>>> stubs;  // resolved sigma clauses

  auto checkWithCandidate = [&](const Block& sigma, const Conj& candidate) {
    CnfProblem p = baseProblem(true);
    for (const auto& stub : stubs)
      for (const auto& clause : stub) p.addClause(clause);
    for (int v : candidate.vars) p.units.push_back(v + 1);
    for (int v : sigma.anchorVars) p.units.push_back(v + 1);
    return p.solve().has_value();
  };

  for (size_t bi : sigmaOrder) {
    const Block& b = f.blocks()[bi];
    bool innerSat = false;
    for (size_t i = 0; i < b.disjuncts.size() && !innerSat; i++) {
      if (b.sigmaExposed[i] >= 0) continue;  // outer candidate
      if (checkWithCandidate(b, b.disjuncts[i])) innerSat = true;
    }
    std::vector<std::vector<int>> stub;
    if (innerSat) {
      // Only the anchors stay committed.
      for (int v : b.anchorVars) stub.push_back({v + 1});
    } else {
      std::vector<int> satOuterVars;
      for (size_t i = 0; i < b.disjuncts.size(); i++) {
        if (b.sigmaExposed[i] < 0) continue;
        if (!checkWithCandidate(b, b.disjuncts[i])) continue;
        const Entity exposed = Entity::vertex(b.sigmaExposed[i]);
        auto var = f.findVar(exposed, b.sigmaVirtualKite);
        BPR_CHECK(var.has_value(), "exposed sigma vertex has no variable");
        satOuterVars.push_back(*var);
      }
      if (satOuterVars.empty()) {
        result.satisfiable = false;
        return result;
      }
      for (int v : b.anchorVars) stub.push_back({v + 1});
      if (satOuterVars.size() == 1) {
        stub.push_back({satOuterVars[0] + 1});
      } else {
        std::vector<int> clause;
        for (int v : satOuterVars) clause.push_back(v + 1);
        stub.push_back(std::move(clause));
      }
    }
    stubs.push_back(std::move(stub));
  }

  CnfProblem finalProblem = baseProblem(true);
  for (const auto& stub : stubs)
    for (const auto& clause : stub) finalProblem.addClause(clause);
  auto model = finalProblem.solve();
  if (!model) return result;
  result.satisfiable = true;
  for (int id = 0; id < f.variableCount(); id++) result.assignment[id] = (*model)[id];
  return result;
}

// Lemma 7/8 procedure. Entities occur in at most two variables; singles are
// set true, the second occurrence of a double is rewritten as the negation
// of the first, extensions drop out, and the residue is checked in one pass:
// forced conjunctions must be complement-free and every disjunction must
// keep one consistent branch.
SatResult nicSatisfiable(const Formula& f, const std::vector<Entity>& forcedFalse) {
  SatResult result;
  if (f.failed()) return result;

  const auto byEntity = f.entityIndex();
  for (const auto& [entity, vars] : byEntity) {
    if (vars.size() > 2)
      throw InternalError("NIC entity " + entity.name() + " occurs in " +
                          std::to_string(vars.size()) + " variables (violates the 2-occurrence bound)");
  }

  // Literal per variable: value[id] fixed, or a signed reference to a
  // two-occurrence boolean (positive for the first occurrence).
  enum class LitKind { True, False, Pos, Neg };
  std::vector<LitKind> kind(f.variableCount(), LitKind::True);
  std::vector<int> entityId(f.variableCount(), -1);
  std::set<Entity> pinnedFalse(forcedFalse.begin(), forcedFalse.end());
  int nBools = 0;
  for (const auto& [entity, vars] : byEntity) {
    if (pinnedFalse.count(entity)) {
      for (int v : vars) kind[v] = LitKind::False;
      continue;
    }
    if (vars.size() == 1) {
      kind[vars[0]] = LitKind::True;  // Lemma 8: set singles true
    } else {
      kind[vars[0]] = LitKind::Pos;
      kind[vars[1]] = LitKind::Neg;
      entityId[vars[0]] = entityId[vars[1]] = nBools;
      nBools++;
    }
  }

  // Forced values from anchors (pure conjunction parts).
  std::vector<int> forced(nBools, -1);  // -1 unknown, 0 false, 1 true
  auto applyForced = [&](int varId) -> bool {
    switch (kind[varId]) {
      case LitKind::True: return true;
      case LitKind::False: return false;
      case LitKind::Pos: {
        int& slot = forced[entityId[varId]];
        if (slot == 0) return false;
        slot = 1;
        return true;
      }
      case LitKind::Neg: {
        int& slot = forced[entityId[varId]];
        if (slot == 1) return false;
        slot = 0;
        return true;
      }
    }
    return false;
  };

  for (const Block& b : f.blocks()) {
    for (int v : b.anchorVars)
      if (!applyForced(v)) return result;
    if (b.disjuncts.size() == 1) {
      for (int v : b.disjuncts[0].vars)
        if (!applyForced(v)) return result;
    }
  }

  // Each remaining disjunction needs one branch without an internal
  // complementary pair and without conflict against the forced values.
  auto disjunctViable = [&](const Conj& c) {
    std::map<int, int> local;  // entity bool -> required value
    for (int v : c.vars) {
      if (kind[v] == LitKind::False) return false;
      if (kind[v] == LitKind::True) continue;
      const int want = kind[v] == LitKind::Pos ? 1 : 0;
      const int id = entityId[v];
      if (forced[id] != -1 && forced[id] != want) return false;
      auto [it, fresh] = local.emplace(id, want);
      if (!fresh && it->second != want) return false;  // complementary pair
    }
    return true;
  };

  std::vector<std::pair<const Block*, int>> choices;
  for (const Block& b : f.blocks()) {
    if (b.disjuncts.size() <= 1) continue;
    int pick = -1;
    for (size_t i = 0; i < b.disjuncts.size(); i++) {
      if (disjunctViable(b.disjuncts[i])) {
        pick = static_cast<int>(i);
        break;
      }
    }
    if (pick < 0) return result;
    choices.emplace_back(&b, pick);
  }

  result.satisfiable = true;
  // Assemble a concrete assignment: forced values, then greedy choices,
  // then defaults (first occurrence true).
  std::vector<int> value(nBools, -1);
  for (int i = 0; i < nBools; i++) value[i] = forced[i];
  for (auto [block, pick] : choices) {
    for (int v : block->disjuncts[pick].vars) {
      if (entityId[v] < 0) continue;
      const int want = kind[v] == LitKind::Pos ? 1 : 0;
      if (value[entityId[v]] == -1) value[entityId[v]] = want;
    }
  }
  for (int i = 0; i < nBools; i++)
    if (value[i] == -1) value[i] = 1;
  for (int id = 0; id < f.variableCount(); id++) {
    switch (kind[id]) {
      case LitKind::True: result.assignment[id] = true; break;
      case LitKind::False: result.assignment[id] = false; break;
      case LitKind::Pos: result.assignment[id] = value[entityId[id]] == 1; break;
      case LitKind::Neg: result.assignment[id] = value[entityId[id]] == 0; break;
    }
  }
  return result;
}

}  // namespace bpr
