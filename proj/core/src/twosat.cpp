#include "bpr/twosat.hpp"

#include <algorithm>

namespace bpr {

void TwoSat::addClause(int litA, int litB) {
  adj_[negate(litA)].push_back(litB);
  adj_[negate(litB)].push_back(litA);
}

void TwoSat::addImplication(int litFrom, int litTo) {
  adj_[litFrom].push_back(litTo);
  adj_[negate(litTo)].push_back(negate(litFrom));
}

std::vector<int> TwoSat::stronglyConnectedComponents() const {
  const int n = 2 * nVars_;
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), sccStack;
  std::vector<bool> onStack(n, false);
  int timer = 0, nComps = 0;

  // Iterative Tarjan: frames of (node, next child index).
  std::vector<std::pair<int, size_t>> frames;
  for (int s = 0; s < n; s++) {
    if (disc[s] >= 0) continue;
    frames.emplace_back(s, 0);
    disc[s] = low[s] = timer++;
    sccStack.push_back(s);
    onStack[s] = true;
    while (!frames.empty()) {
      auto& [u, idx] = frames.back();
      if (idx < adj_[u].size()) {
        const int v = adj_[u][idx++];
        if (disc[v] < 0) {
          disc[v] = low[v] = timer++;
          sccStack.push_back(v);
          onStack[v] = true;
          frames.emplace_back(v, 0);
        } else if (onStack[v]) {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        if (low[u] == disc[u]) {
          while (true) {
            const int w = sccStack.back();
            sccStack.pop_back();
            onStack[w] = false;
            comp[w] = nComps;
            if (w == u) break;
          }
          nComps++;
        }
        const int uDone = u;
        frames.pop_back();
        if (!frames.empty()) {
          const int p = frames.back().first;
          low[p] = std::min(low[p], low[uDone]);
        }
      }
    }
  }
  return comp;
}

std::optional<std::vector<bool>> TwoSat::solve() const {
  const std::vector<int> comp = stronglyConnectedComponents();
  std::vector<bool> value(nVars_);
  for (int v = 0; v < nVars_; v++) {
    if (comp[posLit(v)] == comp[negLit(v)]) return std::nullopt;
    // Tarjan numbers components in reverse topological order, so a literal
    // is true when its component comes earlier in that numbering.
    value[v] = comp[posLit(v)] < comp[negLit(v)];
  }
  return value;
}

}  // namespace bpr
