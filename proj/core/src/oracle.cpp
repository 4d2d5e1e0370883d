#include "bpr/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "bpr/log.hpp"

namespace bpr {

void CrossingSet::normalize() {
  for (auto& [e, f] : pairs) {
    if (f < e) std::swap(e, f);
  }
  std::sort(pairs.begin(), pairs.end());
}

EmbedConstraints constraintsFromColoring(const EdgeColoring& coloring,
                                         const std::vector<Edge>& presentEdges,
                                         bool insideSplit) {
  EmbedConstraints out;
  for (const Edge& e : presentEdges) {
    switch (coloring.get(e)) {
      case EdgeColor::Black:
        out.mustPlanar.push_back(e);
        break;
      case EdgeColor::Blue:
      case EdgeColor::Cyan:
        // Inside a split these edges were kite-covered by the enclosing run
        // and count as planar here; standalone, blue means crossed and cyan
        // stays free.
        if (insideSplit)
          out.mustPlanar.push_back(e);
        else if (coloring.get(e) == EdgeColor::Blue)
          out.mustCrossed.push_back(e);
        break;
      case EdgeColor::Red:
      case EdgeColor::Orange:
        out.mustCrossed.push_back(e);
        break;
      case EdgeColor::Uncolored:
      case EdgeColor::Grey:
        break;
    }
  }
  return out;
}

namespace {

bool reject(std::string* whyNot, const std::string& reason) {
  if (whyNot) *whyNot = reason;
  return false;
}

bool checkCrossingSet(const Graph& g, const CrossingSet& m, std::string* whyNot) {
  std::set<Edge> used;
  for (const auto& [e, f] : m.pairs) {
    if (!g.hasEdge(e) || !g.hasEdge(f)) return reject(whyNot, "crossing pair uses a missing edge");
    if (e.sharesEndpoint(f)) return reject(whyNot, "crossing pair shares an endpoint");
    if (!used.insert(e).second || !used.insert(f).second)
      return reject(whyNot, "edge crossed twice");
    // The four endpoints must induce a K4 (kite boundary present).
    const std::array<Edge, 4> boundary{Edge(e.u, f.u), Edge(e.u, f.v), Edge(e.v, f.u),
                                       Edge(e.v, f.v)};
    for (const Edge& b : boundary) {
      if (!g.hasEdge(b)) return reject(whyNot, "kite boundary edge missing");
    }
  }
  return true;
}

Graph planarize(const Graph& g, const CrossingSet& m) {
  const int n = g.vertexCount();
  std::set<Edge> crossed;
  for (const auto& [e, f] : m.pairs) {
    crossed.insert(e);
    crossed.insert(f);
  }
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges()) {
    if (!crossed.count(e)) edges.emplace_back(e.u, e.v);
  }
  for (size_t i = 0; i < m.pairs.size(); i++) {
    const int dummy = n + static_cast<int>(i);
    const auto& [e, f] = m.pairs[i];
    edges.emplace_back(e.u, dummy);
    edges.emplace_back(e.v, dummy);
    edges.emplace_back(f.u, dummy);
    edges.emplace_back(f.v, dummy);
  }
  return Graph::fromEdges(n + static_cast<int>(m.pairs.size()), edges);
}

bool modeConforms(const std::vector<Kite>& kites, Mode mode, std::string* whyNot) {
  if (mode == Mode::OneP) return true;
  for (size_t i = 0; i < kites.size(); i++) {
    for (size_t j = i + 1; j < kites.size(); j++) {
      const int shared = kites[i].sharedVertexCount(kites[j]);
      if (mode == Mode::IC && shared > 0)
        return reject(whyNot, "kites share a vertex (IC violated)");
      if (mode == Mode::NIC && shared > 1)
        return reject(whyNot, "kites share an edge (NIC violated)");
    }
  }
  return true;
}

}  // namespace

std::optional<Embedding> validateEmbedding(const Graph& g, const CrossingSet& mIn,
                                           const EmbedConstraints& constraints, Mode mode,
                                           std::string* whyNot) {
  CrossingSet m = mIn;
  m.normalize();
  if (!checkCrossingSet(g, m, whyNot)) return std::nullopt;

  std::set<Edge> crossed;
  for (const auto& [e, f] : m.pairs) {
    crossed.insert(e);
    crossed.insert(f);
  }
  for (const Edge& e : constraints.mustPlanar) {
    if (crossed.count(e)) {
      reject(whyNot, "constraint-planar edge is crossed");
      return std::nullopt;
    }
  }
  for (const Edge& e : constraints.mustCrossed) {
    if (!crossed.count(e)) {
      reject(whyNot, "constraint-crossed edge is planar");
      return std::nullopt;
    }
  }

  Embedding out;
  out.crossings = m;
  for (size_t i = 0; i < m.pairs.size(); i++)
    out.kites.push_back(Kite::fromCrossingPair(static_cast<int>(i), m.pairs[i].first,
                                               m.pairs[i].second));
  if (!modeConforms(out.kites, mode, whyNot)) return std::nullopt;

  const Graph plan = planarize(g, m);
  const int np = plan.vertexCount();
  if (np < 3) {
    if (plan.edgeCount() != np * (np - 1) / 2) {
      reject(whyNot, "degenerate graph not complete");
      return std::nullopt;
    }
    RotationSystem rot;
    rot.order.resize(np);
    for (int v = 0; v < np; v++) rot.order[v] = plan.neighbors(v);
    out.rotation = rot;
    return out;
  }
  if (plan.edgeCount() != 3 * np - 6) {
    reject(whyNot, "planarization not maximal planar (face count)");
    return std::nullopt;
  }
  auto rot = planarEmbedding(plan);
  if (!rot) {
    reject(whyNot, "planarization nonplanar");
    return std::nullopt;
  }
  // Dummy alternation: the two crossing edges interleave around the dummy.
  const int n = g.vertexCount();
  for (size_t i = 0; i < m.pairs.size(); i++) {
    const auto& order = rot->order[n + static_cast<int>(i)];
    BPR_CHECK(order.size() == 4, "dummy vertex degree != 4");
    const auto& [e, f] = m.pairs[i];
    const bool eFirst = e.touches(order[0]);
    const Edge& first = eFirst ? e : f;
    const Edge& second = eFirst ? f : e;
    if (!(first.touches(order[0]) && second.touches(order[1]) && first.touches(order[2]) &&
          second.touches(order[3]))) {
      reject(whyNot, "rotation at a crossing does not alternate");
      return std::nullopt;
    }
  }
  out.rotation = std::move(*rot);
  return out;
}

std::vector<Embedding> enumerateEmbeddings(const Graph& g, const EmbedConstraints& constraints,
                                           Mode mode, int limit) {
  std::vector<Embedding> out;
  const int n = g.vertexCount();
  const int m = g.edgeCount();
  if (n < 3) {
    CrossingSet empty;
    if (auto emb = validateEmbedding(g, empty, constraints, mode)) out.push_back(std::move(*emb));
    return out;
  }
  const int k = m - (3 * n - 6);
  if (k < 0) return out;
  if (k == 0) {
    if (!constraints.mustCrossed.empty()) return out;
    CrossingSet empty;
    if (auto emb = validateEmbedding(g, empty, constraints, mode)) out.push_back(std::move(*emb));
    return out;
  }

  const std::set<Edge> planarOnly(constraints.mustPlanar.begin(), constraints.mustPlanar.end());
  // Candidate crossing pairs in lexicographic order.
  std::vector<std::pair<Edge, Edge>> candidates;
  const std::vector<Edge> edges = g.edges();
  for (size_t i = 0; i < edges.size(); i++) {
    if (planarOnly.count(edges[i])) continue;
    for (size_t j = i + 1; j < edges.size(); j++) {
      if (planarOnly.count(edges[j])) continue;
      const Edge& e = edges[i];
      const Edge& f = edges[j];
      if (e.sharesEndpoint(f)) continue;
      if (!g.hasEdge(e.u, f.u) || !g.hasEdge(e.u, f.v) || !g.hasEdge(e.v, f.u) ||
          !g.hasEdge(e.v, f.v))
        continue;
      candidates.emplace_back(e, f);
    }
  }

  std::set<Edge> needCrossed(constraints.mustCrossed.begin(), constraints.mustCrossed.end());
  std::vector<std::pair<Edge, Edge>> chosen;
  std::set<Edge> used;

  auto compatible = [&](const std::pair<Edge, Edge>& cand) {
    if (used.count(cand.first) || used.count(cand.second)) return false;
    if (mode == Mode::OneP) return true;
    const Kite k1 = Kite::fromCrossingPair(0, cand.first, cand.second);
    for (const auto& [e, f] : chosen) {
      const Kite k2 = Kite::fromCrossingPair(1, e, f);
      const int shared = k1.sharedVertexCount(k2);
      if (mode == Mode::IC && shared > 0) return false;
      if (mode == Mode::NIC && shared > 1) return false;
    }
    return true;
  };

  std::function<void(size_t)> search = [&](size_t start) {
    if (limit > 0 && static_cast<int>(out.size()) >= limit) return;
    const int depth = static_cast<int>(chosen.size());
    if (depth == k) {
      CrossingSet m2;
      m2.pairs = chosen;
      if (auto emb = validateEmbedding(g, m2, constraints, mode)) out.push_back(std::move(*emb));
      return;
    }
    const int slotsLeft = k - depth;
    // Covering pruning: each remaining slot crosses at most 2 required edges.
    int uncoveredRequired = 0;
    for (const Edge& e : needCrossed)
      if (!used.count(e)) uncoveredRequired++;
    if (uncoveredRequired > 2 * slotsLeft) return;
    if (static_cast<int>(candidates.size() - start) < slotsLeft) return;
    for (size_t i = start; i < candidates.size(); i++) {
      if (!compatible(candidates[i])) continue;
      chosen.push_back(candidates[i]);
      used.insert(candidates[i].first);
      used.insert(candidates[i].second);
      search(i + 1);
      used.erase(candidates[i].first);
      used.erase(candidates[i].second);
      chosen.pop_back();
      if (limit > 0 && static_cast<int>(out.size()) >= limit) return;
    }
  };
  search(0);
  return out;
}

int isoClassCount(const Graph& g, const std::vector<Embedding>& embeddings,
                  const std::vector<int>& fixedVertices) {
  const int n = g.vertexCount();
  BPR_CHECK(n <= 8, "isoClassCount is brute force (n <= 8)");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::vector<Edge> edgeList = g.edges();
  const std::set<Edge> edgeSet(edgeList.begin(), edgeList.end());
  std::vector<std::vector<int>> autos;
  do {
    bool ok = true;
    for (int v : fixedVertices) {
      if (perm[v] != v) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const Edge& e : edgeList) {
        if (!edgeSet.count(Edge(perm[e.u], perm[e.v]))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) autos.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<CrossingSet> canonical;
  for (const Embedding& emb : embeddings) {
    CrossingSet best;
    bool haveBest = false;
    for (const auto& a : autos) {
      CrossingSet mapped;
      for (const auto& [e, f] : emb.crossings.pairs)
        mapped.pairs.emplace_back(Edge(a[e.u], a[e.v]), Edge(a[f.u], a[f.v]));
      mapped.normalize();
      if (!haveBest || mapped < best) {
        best = mapped;
        haveBest = true;
      }
    }
    canonical.insert(best);
  }
  return static_cast<int>(canonical.size());
}

Block smallGraphFormula(Formula& f, const std::vector<Embedding>& embeddings,
                        const std::vector<Entity>& outerEntities, Mode mode, int depth) {
  BPR_CHECK(mode != Mode::OneP, "small-graph formula only exists for IC/NIC");
  Block b;
  b.kind = Block::Kind::Small;
  b.depth = depth;
  b.smallOuterEntities = outerEntities;

  // Project each embedding to the outer entities its kites commit, keeping
  // one representative per minimal usage set.
  struct Usage {
    std::vector<std::pair<Entity, Kite>> used;
    int embeddingIdx;
  };
  std::vector<Usage> usages;
  for (size_t ei = 0; ei < embeddings.size(); ei++) {
    Usage u;
    u.embeddingIdx = static_cast<int>(ei);
    for (const Kite& k : embeddings[ei].kites) {
      for (const Entity& ent : outerEntities) {
        const bool usedHere = ent.isEdge ? k.hasBoundaryEdge(Edge(ent.a, ent.b))
                                         : k.containsVertex(ent.a);
        if (usedHere) u.used.emplace_back(ent, k);
      }
    }
    std::sort(u.used.begin(), u.used.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    usages.push_back(std::move(u));
  }

  std::set<std::vector<Entity>> seen;
  std::vector<const Usage*> kept;
  for (const Usage& u : usages) {
    std::vector<Entity> key;
    for (const auto& [ent, k] : u.used) key.push_back(ent);
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (seen.insert(key).second) kept.push_back(&u);
  }
  // Drop usage supersets; a smaller commitment always subsumes a larger one.
  std::vector<const Usage*> minimal;
  for (const Usage* u : kept) {
    std::vector<Entity> setU;
    for (const auto& [ent, k] : u->used) setU.push_back(ent);
    setU.erase(std::unique(setU.begin(), setU.end()), setU.end());
    bool dominated = false;
    for (const Usage* v : kept) {
      if (v == u) continue;
      std::vector<Entity> setV;
      for (const auto& [ent, k] : v->used) setV.push_back(ent);
      setV.erase(std::unique(setV.begin(), setV.end()), setV.end());
      if (setV.size() < setU.size() &&
          std::includes(setU.begin(), setU.end(), setV.begin(), setV.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(u);
  }

  for (const Usage* u : minimal) {
    Conj c;
    c.embeddingIdx = u->embeddingIdx;
    std::map<int, int> kiteIdMap;  // oracle kite id -> formula kite id
    for (const auto& [ent, k] : u->used) {
      auto [it, fresh] = kiteIdMap.emplace(k.id, -1);
      if (fresh) it->second = f.freshKiteId();
      c.vars.push_back(f.internVar(ent, it->second));
    }
    std::sort(c.vars.begin(), c.vars.end());
    c.vars.erase(std::unique(c.vars.begin(), c.vars.end()), c.vars.end());
    b.disjuncts.push_back(std::move(c));
    if (b.disjuncts.back().vars.empty()) {
      // An embedding with no outer commitment makes the block trivial.
      b.disjuncts.clear();
      b.disjuncts.push_back(Conj{{}, -1, u->embeddingIdx});
      break;
    }
  }
  return b;
}

Block smallGraphFormula(Formula& f, const Graph& g, const EmbedConstraints& constraints,
                        const std::vector<Entity>& outerEntities, Mode mode, int depth) {
  const std::vector<Embedding> embeddings = enumerateEmbeddings(g, constraints, mode);
  return smallGraphFormula(f, embeddings, outerEntities, mode, depth);
}

}  // namespace bpr
