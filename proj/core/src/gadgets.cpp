#include "bpr/gadgets.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "bpr/log.hpp"

namespace bpr {

const char* gadgetKindName(Gadget::Kind k) {
  switch (k) {
    case Gadget::Kind::Sep3Cycle: return "separating-3-cycle";
    case Gadget::Kind::SepEdge: return "separating-edge";
    case Gadget::Kind::Sep4Cycle: return "separating-4-cycle";
    case Gadget::Kind::SepTriple: return "separating-triple";
    case Gadget::Kind::SepQuadruple: return "separating-quadruple";
    case Gadget::Kind::SepTriangle: return "separating-triangle";
  }
  return "?";
}

namespace {

// Components after deleting vertices `rmV` and edges `rmE`; empty result
// means everything survived in one piece.
bool splitsGraph(const Graph& g, const std::vector<int>& rmV, const std::vector<Edge>& rmE,
                 std::vector<std::vector<int>>* parts) {
  auto comps = connectedComponents(g, rmV, rmE);
  if (comps.size() < 2) return false;
  if (parts) *parts = std::move(comps);
  return true;
}

std::vector<std::array<int, 3>> allTriangles(const Graph& g) {
  std::vector<std::array<int, 3>> out;
  for (int u = 0; u < g.vertexCount(); u++) {
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      for (int w : g.commonNeighbors(u, v)) {
        if (w > v) out.push_back({u, v, w});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<int, 4>> allFourCycles(const Graph& g) {
  // Canonical 4-cycle (a,b,c,d): a minimal, b < d, c the opposite corner.
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < g.vertexCount(); a++) {
    const auto& nbrs = g.neighbors(a);
    for (size_t i = 0; i < nbrs.size(); i++) {
      const int b = nbrs[i];
      if (b < a) continue;
      for (size_t j = i + 1; j < nbrs.size(); j++) {
        const int d = nbrs[j];
        if (d < a) continue;
        for (int c : g.commonNeighbors(b, d)) {
          if (c <= a) continue;  // a is the minimal corner; c != a
          out.push_back({a, b, c, d});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int vertexDisjointPaths(const Graph& g, int u, int v, int cap) {
  // Unit-capacity max flow on the split-vertex network, BFS augmentation.
  const int n = g.vertexCount();
  // Node 2x = in-copy, 2x+1 = out-copy.
  std::vector<std::map<int, int>> capacity(2 * n);
  auto addArc = [&](int from, int to, int c) { capacity[from][to] += c; };
  for (int x = 0; x < n; x++) addArc(2 * x, 2 * x + 1, x == u || x == v ? cap : 1);
  for (int x = 0; x < n; x++) {
    for (int y : g.neighbors(x)) {
      addArc(2 * x + 1, 2 * y, cap);
    }
  }
  const int source = 2 * u + 1, sink = 2 * v;
  int flow = 0;
  while (flow < cap) {
    std::vector<int> prev(2 * n, -1);
    std::queue<int> q;
    q.push(source);
    prev[source] = source;
    while (!q.empty() && prev[sink] < 0) {
      const int x = q.front();
      q.pop();
      for (const auto& [y, c] : capacity[x]) {
        if (c > 0 && prev[y] < 0) {
          prev[y] = x;
          q.push(y);
        }
      }
    }
    if (prev[sink] < 0) break;
    for (int x = sink; x != source; x = prev[x]) {
      capacity[prev[x]][x]--;
      capacity[x][prev[x]]++;
    }
    flow++;
  }
  return flow;
}

GadgetScanner::GadgetScanner(const Graph& g, UncoloredFn uncolored, bool fullScan)
    : g_(&g), uncolored_(std::move(uncolored)), fullScan_(fullScan) {}

void GadgetScanner::noteRemoval(const Graph& g, const Edge& removed) {
  g_ = &g;
  crossableKindsDirty_ = true;  // crossable sets change near the removal
  if (fullScan_) {
    cutKindsDirty_ = true;
    return;
  }
  // A new separating 3-/4-cycle after deleting (u,v) must separate u from v,
  // so five vertex-disjoint u-v paths certify absence of new vertex cuts of
  // size at most four.
  if (vertexDisjointPaths(g, removed.u, removed.v, 5) < 5) cutKindsDirty_ = true;
}

void GadgetScanner::noteColored(const Edge&) { crossableKindsDirty_ = true; }

std::optional<Gadget> GadgetScanner::findSep3Cycle() const {
  for (const auto& [a, b, c] : allTriangles(*g_)) {
    std::vector<std::vector<int>> parts;
    if (splitsGraph(*g_, {a, b, c}, {}, &parts)) {
      Gadget out;
      out.kind = Gadget::Kind::Sep3Cycle;
      out.cycle = {a, b, c};
      out.components = std::move(parts);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Gadget> GadgetScanner::findSepEdge() const {
  for (const Edge& e : g_->edges()) {
    if (!uncolored_(e)) continue;
    std::vector<Edge> cross = crossableEdgesIf(*g_, e, uncolored_);
    if (cross.empty()) continue;
    std::vector<Edge> removed = cross;
    removed.push_back(e);
    if (splitsGraph(*g_, {}, removed, nullptr)) {
      Gadget out;
      out.kind = Gadget::Kind::SepEdge;
      out.anchorEdge = e;
      out.crossableAB = std::move(cross);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Gadget> GadgetScanner::findSep4Cycle() const {
  for (const auto& [a, b, c, d] : allFourCycles(*g_)) {
    std::vector<std::vector<int>> parts;
    if (splitsGraph(*g_, {a, b, c, d}, {}, &parts)) {
      Gadget out;
      out.kind = Gadget::Kind::Sep4Cycle;
      out.cycle = {a, b, c, d};
      out.components = std::move(parts);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Gadget> GadgetScanner::findSepTriple() const {
  for (const auto& tri : allTriangles(*g_)) {
    // Designated edge {a,b} tried in lexicographic order within the triangle.
    const std::array<std::array<int, 3>, 3> orders = {
        std::array<int, 3>{tri[0], tri[1], tri[2]},
        std::array<int, 3>{tri[0], tri[2], tri[1]},
        std::array<int, 3>{tri[1], tri[2], tri[0]}};
    for (const auto& [a, b, c] : orders) {
      const Edge ab(a, b);
      if (!uncolored_(ab)) continue;
      std::vector<Edge> cross = crossableEdgesIf(*g_, ab, uncolored_);
      if (cross.size() != 1) continue;
      if (splitsGraph(*g_, {a, b, c}, cross, nullptr)) {
        Gadget out;
        out.kind = Gadget::Kind::SepTriple;
        out.cycle = {a, b, c};
        out.anchorEdge = ab;
        out.crossableAB = std::move(cross);
        return out;
      }
    }
  }
  return std::nullopt;
}

std::optional<Gadget> GadgetScanner::findSepQuadruple() const {
  for (const auto& cyc : allFourCycles(*g_)) {
    const std::array<Edge, 4> cycleEdges = {Edge(cyc[0], cyc[1]), Edge(cyc[1], cyc[2]),
                                            Edge(cyc[2], cyc[3]), Edge(cyc[3], cyc[0])};
    std::array<Edge, 4> ordered = cycleEdges;
    std::sort(ordered.begin(), ordered.end());
    for (const Edge& ab : ordered) {
      if (!uncolored_(ab)) continue;
      std::vector<Edge> cross = crossableEdgesIf(*g_, ab, uncolored_);
      if (cross.size() != 1) continue;
      if (splitsGraph(*g_, {cyc[0], cyc[1], cyc[2], cyc[3]}, cross, nullptr)) {
        Gadget out;
        out.kind = Gadget::Kind::SepQuadruple;
        out.cycle = {cyc[0], cyc[1], cyc[2], cyc[3]};
        out.anchorEdge = ab;
        out.crossableAB = std::move(cross);
        return out;
      }
    }
  }
  return std::nullopt;
}

std::optional<Gadget> GadgetScanner::findSepTriangle() const {
  for (const auto& tri : allTriangles(*g_)) {
    // Middle vertex b shares the two designated edges {a,b} and {b,c}.
    for (int mid = 0; mid < 3; mid++) {
      const int b = tri[mid];
      const int a = std::min(tri[(mid + 1) % 3], tri[(mid + 2) % 3]);
      const int c = std::max(tri[(mid + 1) % 3], tri[(mid + 2) % 3]);
      const Edge ab(a, b), bc(b, c);
      if (!uncolored_(ab) || !uncolored_(bc)) continue;
      std::vector<Edge> crossAB = crossableEdgesIf(*g_, ab, uncolored_);
      if (crossAB.size() != 1) continue;
      std::vector<Edge> crossBC = crossableEdgesIf(*g_, bc, uncolored_);
      if (crossBC.size() != 1) continue;
      if (crossAB[0] == crossBC[0]) continue;  // one edge cannot cross both
      std::vector<Edge> removed = crossAB;
      removed.push_back(crossBC[0]);
      if (splitsGraph(*g_, {tri[0], tri[1], tri[2]}, removed, nullptr)) {
        Gadget out;
        out.kind = Gadget::Kind::SepTriangle;
        out.cycle = {a, b, c};
        out.anchorEdge = ab;
        out.anchorEdge2 = bc;
        out.crossableAB = std::move(crossAB);
        out.crossableBC = std::move(crossBC);
        return out;
      }
    }
  }
  return std::nullopt;
}

std::optional<Gadget> GadgetScanner::next() {
  const bool scanCuts = fullScan_ || cutKindsDirty_;
  const bool scanCrossables = fullScan_ || crossableKindsDirty_;
  if (scanCuts) {
    if (auto g = findSep3Cycle()) return g;
  }
  if (scanCrossables) {
    if (auto g = findSepEdge()) return g;
  }
  if (scanCuts) {
    if (auto g = findSep4Cycle()) return g;
  }
  if (scanCrossables) {
    if (auto g = findSepTriple()) return g;
    if (auto g = findSepQuadruple()) return g;
    if (auto g = findSepTriangle()) return g;
  }
  cutKindsDirty_ = false;
  crossableKindsDirty_ = false;
  return std::nullopt;
}

std::optional<Gadget> nextGadget(const Graph& g, const EdgeColoring& coloring) {
  GadgetScanner scanner(
      g, [&coloring](const Edge& e) { return coloring.isUncolored(e); }, true);
  return scanner.next();
}

namespace {

// Crossable partners of e fully outside the K4.
std::vector<Edge> outsidePartners(const Graph& g, const UncoloredFn& uncolored,
                                  const K4Occurrence& k4, const Edge& e) {
  std::vector<Edge> out;
  if (!uncolored(e)) return out;
  for (const Edge& f : crossableEdgesIf(g, e, uncolored)) {
    if (!k4.contains(f.u) && !k4.contains(f.v)) out.push_back(f);
  }
  return out;
}

}  // namespace

Mc4Result classifyMc4(const Graph& g, const UncoloredFn& uncolored, const K4Occurrence& k4) {
  Mc4Result result;
  const auto& vs = k4.vertices;
  const std::vector<Edge> k4Edges = k4.edges();

  // Case 1: completely kite-covered tetrahedron. Every edge of the K4 is
  // crossable by an edge disjoint from the K4; crossers must be distinct
  // (an edge is crossed at most once).
  {
    std::vector<std::pair<Edge, Edge>> pairs;
    std::set<Edge> usedCrossers;
    bool allCovered = true;
    for (const Edge& e : k4Edges) {
      bool found = false;
      for (const Edge& f : outsidePartners(g, uncolored, k4, e)) {
        if (usedCrossers.count(f)) continue;
        usedCrossers.insert(f);
        pairs.emplace_back(e, f);
        found = true;
        break;
      }
      if (!found) {
        allCovered = false;
        break;
      }
    }
    if (allCovered) {
      result.cls = Mc4Class::KiteCoveredTetrahedron;
      result.kitePairs = std::move(pairs);
      return result;
    }
  }

  // Case 2: SC-graph. One triangle of the K4 is covered by three kites
  // whose crossers share an outside apex w.
  for (int di = 0; di < 4; di++) {
    const int d = vs[di];
    std::array<int, 3> tri{};
    int t = 0;
    for (int v : vs)
      if (v != d) tri[t++] = v;
    const std::array<Edge, 3> triEdges = {Edge(tri[0], tri[1]), Edge(tri[0], tri[2]),
                                          Edge(tri[1], tri[2])};
    // Collect per-edge the outside partners, then look for a shared apex.
    std::array<std::vector<Edge>, 3> partners;
    bool feasible = true;
    for (int i = 0; i < 3 && feasible; i++) {
      partners[i] = outsidePartners(g, uncolored, k4, triEdges[i]);
      if (partners[i].empty()) feasible = false;
    }
    if (!feasible) continue;
    std::set<int> apexes;
    for (const Edge& f : partners[0]) {
      apexes.insert(f.u);
      apexes.insert(f.v);
    }
    for (int w : apexes) {
      std::vector<std::pair<Edge, Edge>> pairs;
      std::set<Edge> usedCrossers;
      bool ok = true;
      for (int i = 0; i < 3 && ok; i++) {
        bool found = false;
        for (const Edge& f : partners[i]) {
          if (!f.touches(w) || usedCrossers.count(f)) continue;
          usedCrossers.insert(f);
          pairs.emplace_back(triEdges[i], f);
          found = true;
          break;
        }
        ok = found;
      }
      if (ok) {
        result.cls = Mc4Class::SCGraph;
        result.kitePairs = std::move(pairs);
        return result;
      }
    }
  }

  // Case 3: plain kite. The crossing diagonals are the opposite pair whose
  // edges cannot be covered from outside the K4 (those must cross inside).
  {
    const std::array<std::pair<Edge, Edge>, 3> oppositePairs = {
        std::make_pair(Edge(vs[0], vs[1]), Edge(vs[2], vs[3])),
        std::make_pair(Edge(vs[0], vs[2]), Edge(vs[1], vs[3])),
        std::make_pair(Edge(vs[0], vs[3]), Edge(vs[1], vs[2]))};
    std::vector<std::pair<Edge, Edge>> eligible;
    std::vector<std::pair<Edge, Edge>> preferred;
    for (const auto& [e, f] : oppositePairs) {
      if (!uncolored(e) || !uncolored(f)) continue;
      eligible.emplace_back(e, f);
      if (outsidePartners(g, uncolored, k4, e).empty() &&
          outsidePartners(g, uncolored, k4, f).empty())
        preferred.emplace_back(e, f);
    }
    const auto& pool = preferred.empty() ? eligible : preferred;
    if (!pool.empty()) {
      if (pool.size() > 1)
        BPR_LOG_TRACE("mc4 kite: ambiguous crossing pair on K4 {%d,%d,%d,%d}", vs[0], vs[1],
                      vs[2], vs[3]);
      result.cls = Mc4Class::PlainKite;
      result.kitePairs = {pool.front()};
      return result;
    }
  }

  result.cls = Mc4Class::Mismatch;
  return result;
}

}  // namespace bpr
