#pragma once

#include <optional>
#include <vector>

namespace bpr {

/// 2SAT over variables 0..n-1 via the implication graph and Tarjan SCC.
/// Literals: posLit(v) / negLit(v).
class TwoSat {
 public:
  explicit TwoSat(int vars) : nVars_(vars), adj_(2 * vars) {}

  static int posLit(int v) { return 2 * v; }
  static int negLit(int v) { return 2 * v + 1; }
  static int negate(int lit) { return lit ^ 1; }

  void addClause(int litA, int litB);
  void addUnit(int lit) { addClause(lit, lit); }
  void addImplication(int litFrom, int litTo);

  /// Satisfying assignment, or nullopt when unsatisfiable.
  std::optional<std::vector<bool>> solve() const;

  int variableCount() const { return nVars_; }

 private:
  int nVars_;
  std::vector<std::vector<int>> adj_;

  std::vector<int> stronglyConnectedComponents() const;
};

}  // namespace bpr
