#include "bpr/recognizer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bpr/log.hpp"
#include "bpr/planarity.hpp"

namespace bpr {

const char* failureReasonName(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "none";
    case FailureReason::ColoringConflict: return "coloring conflict";
    case FailureReason::K5Branch: return "K5 branch";
    case FailureReason::Mc4Mismatch: return "MC4 mismatch";
    case FailureReason::SmallGraphFail: return "small-graph fail";
    case FailureReason::SatFail: return "SAT fail";
    case FailureReason::EdgeBound: return "edge bound";
    case FailureReason::Connectivity: return "connectivity";
  }
  return "?";
}

const char* triStateName(TriState t) {
  switch (t) {
    case TriState::No: return "no";
    case TriState::Yes: return "yes";
    case TriState::Unknown: return "unknown";
  }
  return "?";
}

int maxEdges(Mode mode, int n) {
  switch (mode) {
    case Mode::OneP: return 4 * n - 8;
    case Mode::IC: return (13 * n) / 4 - 6;
    case Mode::NIC: return (18 * (n - 2)) / 5;
  }
  return 0;
}

namespace {

struct WorkItem {
  Graph g;
  std::vector<int> orig;            // local id -> original id
  std::vector<Edge> chordLocals;    // added split chords alive here, local ids
  std::vector<int> outerCycleLocal; // inherited split cycle, local ids
  std::vector<Entity> extraEntities;  // attachment entities (original ids)
  int depth = 0;
};

struct SigmaEvent {
  Edge anchor;              // original ids (the orange edge)
  std::vector<Kite> kites;  // candidate kites, original ids, fan order
};

struct SmallEvent {
  std::vector<CrossingSet> options;  // original-id crossing sets, enumeration order
};

struct Pipeline {
  const Graph* root = nullptr;
  Mode mode = Mode::OneP;
  const RecognizeOptions* opts = nullptr;

  EdgeColoring coloring;
  Formula eta;
  std::vector<std::pair<Edge, Edge>> forcedPairs;  // red-blue kites, original ids
  std::vector<SigmaEvent> sigmas;
  std::vector<SmallEvent> smalls;
  std::vector<std::string> trace;
  bool k5Hit = false;
  int steps = 0;
  FailureReason failure = FailureReason::None;
  std::string detail;

  bool fail(FailureReason r, std::string d) {
    if (failure == FailureReason::None) {
      failure = r;
      detail = std::move(d);
    }
    return false;
  }

  Edge toOrig(const WorkItem& item, const Edge& e) const {
    return Edge(item.orig[e.u], item.orig[e.v]);
  }

  bool isChord(const WorkItem& item, const Edge& e) const {
    return std::find(item.chordLocals.begin(), item.chordLocals.end(), e) !=
           item.chordLocals.end();
  }

  bool localUncolored(const WorkItem& item, const Edge& e) const {
    if (isChord(item, e)) return false;  // chords are pinned planar
    return coloring.isUncolored(toOrig(item, e));
  }

  // Extends the coloring on a local edge; chords accept black silently and
  // conflict on anything firmer.
  bool extendLocal(const WorkItem& item, const Edge& e, EdgeColor c) {
    if (isChord(item, e)) {
      if (c == EdgeColor::Black || c == EdgeColor::Grey) return true;
      return fail(FailureReason::ColoringConflict, "split chord cannot be crossed");
    }
    const Edge oe = toOrig(item, e);
    if (!coloring.extend(oe, c)) {
      return fail(FailureReason::ColoringConflict,
                  "conflict coloring " + std::to_string(oe.u) + "-" + std::to_string(oe.v) +
                      " " + colorName(c) + " over " + colorName(coloring.get(oe)));
    }
    return true;
  }

  void tracef(const std::string& s) { trace.push_back(s); }

  bool run(WorkItem item);
  bool finalCheck(WorkItem& item);
  bool splitAtCycle(WorkItem& item, const Gadget& gadget);
  bool applySepEdge(WorkItem& item, GadgetScanner& scanner, const Gadget& gadget);
  bool applyTripleOrQuadruple(WorkItem& item, GadgetScanner& scanner, const Gadget& gadget);
  bool applyTriangle(WorkItem& item, GadgetScanner& scanner, const Gadget& gadget);
  bool applyMc4(WorkItem& item, GadgetScanner& scanner, const K4Occurrence& k4);
  bool realizeKite(WorkItem& item, const Edge& anchorLocal, const Edge& crosserLocal, int depth);
};

std::string edgeStr(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

bool Pipeline::run(WorkItem item) {
  GadgetScanner scanner(
      item.g, [this, &item](const Edge& e) { return localUncolored(item, e); },
      !opts->fastScan);
  while (true) {
    BPR_CHECK(++steps <= 8 * root->edgeCount() + root->vertexCount() + 64,
              "pipeline failed to make progress");
    if (item.g.vertexCount() < 9) break;
    const auto k4 = firstK4(item.g);
    if (!k4) break;
    if (auto gadget = scanner.next()) {
      switch (gadget->kind) {
        case Gadget::Kind::Sep3Cycle:
        case Gadget::Kind::Sep4Cycle:
          return splitAtCycle(item, *gadget);
        case Gadget::Kind::SepEdge:
          if (!applySepEdge(item, scanner, *gadget)) return false;
          continue;
        case Gadget::Kind::SepTriple:
        case Gadget::Kind::SepQuadruple:
          if (!applyTripleOrQuadruple(item, scanner, *gadget)) return false;
          continue;
        case Gadget::Kind::SepTriangle:
          if (!applyTriangle(item, scanner, *gadget)) return false;
          continue;
      }
    }
    if (findK5(item.g)) {
      k5Hit = true;
      tracef("K5");
      return fail(FailureReason::K5Branch, "K5 subgraph at the MC5 stage");
    }
    if (!applyMc4(item, scanner, *k4)) return false;
  }
  return finalCheck(item);
}

bool Pipeline::splitAtCycle(WorkItem& item, const Gadget& gadget) {
  const auto& cyc = gadget.cycle;
  const bool fourCycle = gadget.kind == Gadget::Kind::Sep4Cycle;
  tracef(std::string(gadgetKindName(gadget.kind)));

  for (size_t i = 0; i < cyc.size(); i++) {
    if (!extendLocal(item, Edge(cyc[i], cyc[(i + 1) % cyc.size()]), EdgeColor::Black))
      return false;
  }

  // Chord choice for a 4-cycle: the diagonal absent from the graph (each
  // side needs a fresh edge to triangulate its quad face).
  std::optional<Edge> chord;
  if (fourCycle) {
    const Edge diag1(cyc[0], cyc[2]), diag2(cyc[1], cyc[3]);
    if (!item.g.hasEdge(diag1))
      chord = diag1;
    else if (!item.g.hasEdge(diag2))
      chord = diag2;
  }

  // First component inside, everything else outside.
  std::vector<std::vector<int>> sides(2);
  sides[0] = gadget.components[0];
  for (size_t i = 1; i < gadget.components.size(); i++)
    sides[1].insert(sides[1].end(), gadget.components[i].begin(), gadget.components[i].end());

  for (const auto& side : sides) {
    std::vector<int> keep = side;
    keep.insert(keep.end(), cyc.begin(), cyc.end());
    Subgraph sub = inducedSubgraph(item.g, keep);
    std::vector<int> toLocal(item.g.vertexCount(), -1);
    for (size_t i = 0; i < sub.toParent.size(); i++) toLocal[sub.toParent[i]] = static_cast<int>(i);

    WorkItem child;
    child.depth = item.depth + 1;
    child.g = sub.graph;
    child.orig.resize(sub.toParent.size());
    for (size_t i = 0; i < sub.toParent.size(); i++) child.orig[i] = item.orig[sub.toParent[i]];
    for (const Edge& ch : item.chordLocals) {
      if (toLocal[ch.u] >= 0 && toLocal[ch.v] >= 0 && child.g.hasEdge(toLocal[ch.u], toLocal[ch.v]))
        child.chordLocals.emplace_back(toLocal[ch.u], toLocal[ch.v]);
    }
    if (chord) {
      const Edge localChord(toLocal[chord->u], toLocal[chord->v]);
      child.g = child.g.withEdges({localChord});
      child.chordLocals.push_back(localChord);
    }
    for (int v : cyc) child.outerCycleLocal.push_back(toLocal[v]);
    for (const Entity& e : item.extraEntities) child.extraEntities.push_back(e);
    if (!run(std::move(child))) return false;
  }
  // merge: the coloring and formula are global; the chord is left behind.
  return true;
}

bool Pipeline::realizeKite(WorkItem& item, const Edge& anchorLocal, const Edge& crosserLocal,
                           int depth) {
  const Kite kite = Kite::fromCrossingPair(eta.freshKiteId(), toOrig(item, anchorLocal),
                                           toOrig(item, crosserLocal));
  if (!extendLocal(item, anchorLocal, EdgeColor::Red)) return false;
  if (!extendLocal(item, crosserLocal, EdgeColor::Blue)) return false;
  const std::array<Edge, 4> boundary = {
      Edge(anchorLocal.u, crosserLocal.u), Edge(anchorLocal.u, crosserLocal.v),
      Edge(anchorLocal.v, crosserLocal.u), Edge(anchorLocal.v, crosserLocal.v)};
  for (const Edge& b : boundary) {
    if (!extendLocal(item, b, EdgeColor::Black)) return false;
  }
  eta.addBlock(makeAlpha(eta, kite, mode, depth));
  forcedPairs.emplace_back(kite.crossing[0], kite.crossing[1]);
  return true;
}

bool Pipeline::applySepEdge(WorkItem& item, GadgetScanner& scanner, const Gadget& gadget) {
  const Edge ab = gadget.anchorEdge;
  tracef("separating-edge " + edgeStr(toOrig(item, ab)));
  if (!extendLocal(item, ab, EdgeColor::Orange)) return false;

  // Fan order of the candidates: the crossable edges normally chain into a
  // path inside the link of {a,b}; its two path ends are the outward
  // candidates of the Lemma 6 evaluation.
  std::vector<Edge> cands = gadget.crossableAB;
  std::map<int, std::vector<int>> deg;  // endpoint -> candidate indices
  for (size_t i = 0; i < cands.size(); i++) {
    deg[cands[i].u].push_back(static_cast<int>(i));
    deg[cands[i].v].push_back(static_cast<int>(i));
  }
  bool isPath = cands.size() >= 2;
  int pathEnd = -1;
  for (const auto& [v, idxs] : deg) {
    if (idxs.size() > 2) isPath = false;
    if (idxs.size() == 1 && (pathEnd < 0 || v < pathEnd)) pathEnd = v;
  }
  if (deg.size() != cands.size() + 1) isPath = false;  // not a single open chain
  std::vector<int> order;
  std::vector<int> exposed;  // original-id outward vertex, -1 for inner
  if (isPath && pathEnd >= 0) {
    std::vector<bool> used(cands.size(), false);
    int at = pathEnd;
    for (size_t step = 0; step < cands.size(); step++) {
      int next = -1;
      for (int idx : deg[at]) {
        if (!used[idx]) {
          next = idx;
          break;
        }
      }
      if (next < 0) {
        isPath = false;
        break;
      }
      used[next] = true;
      order.push_back(next);
      at = cands[next].other(at);
    }
    if (isPath) {
      exposed.assign(cands.size(), -1);
      exposed[0] = item.orig[pathEnd];
      exposed[cands.size() - 1] = item.orig[at];
    }
  }
  if (!isPath || order.empty()) {
    order.clear();
    exposed.clear();
    for (size_t i = 0; i < cands.size(); i++) {
      order.push_back(static_cast<int>(i));
      // Without a chain structure every candidate counts as outward.
      exposed.push_back(cands.size() == 1 ? -1 : item.orig[std::min(cands[i].u, cands[i].v)]);
    }
    if (cands.size() > 1)
      BPR_LOG_TRACE("sigma candidates of %s do not chain; treating all as outward",
                    edgeStr(toOrig(item, ab)).c_str());
  }

  std::vector<Kite> kites;
  std::vector<int> exposedOrdered;
  for (size_t oi = 0; oi < order.size(); oi++) {
    const Edge cand = cands[order[oi]];
    const std::array<Edge, 4> boundary = {Edge(ab.u, cand.u), Edge(ab.u, cand.v),
                                          Edge(ab.v, cand.u), Edge(ab.v, cand.v)};
    for (const Edge& b : boundary) {
      if (!extendLocal(item, b, EdgeColor::Black)) return false;
    }
    if (!extendLocal(item, cand, EdgeColor::Cyan)) return false;
    kites.push_back(
        Kite::fromCrossingPair(eta.freshKiteId(), toOrig(item, ab), toOrig(item, cand)));
    exposedOrdered.push_back(exposed[oi]);
  }
  eta.addBlock(makeSigma(eta, toOrig(item, ab), kites, exposedOrdered, mode, item.depth));
  sigmas.push_back(SigmaEvent{toOrig(item, ab), kites});

  item.g = item.g.withoutEdges({ab});
  scanner.noteRemoval(item.g, ab);
  scanner.noteColored(ab);
  return true;
}

bool Pipeline::applyTripleOrQuadruple(WorkItem& item, GadgetScanner& scanner,
                                      const Gadget& gadget) {
  const Edge ab = gadget.anchorEdge;
  const Edge uv = gadget.crossableAB[0];
  tracef(std::string(gadgetKindName(gadget.kind)) + " " + edgeStr(toOrig(item, ab)));
  if (!realizeKite(item, ab, uv, item.depth)) return false;
  for (size_t i = 0; i < gadget.cycle.size(); i++) {
    const Edge ce(gadget.cycle[i], gadget.cycle[(i + 1) % gadget.cycle.size()]);
    if (ce == ab) continue;
    if (!extendLocal(item, ce, EdgeColor::Black)) return false;
  }
  item.g = item.g.withoutEdges({ab});
  scanner.noteRemoval(item.g, ab);
  scanner.noteColored(ab);
  return true;
}

bool Pipeline::applyTriangle(WorkItem& item, GadgetScanner& scanner, const Gadget& gadget) {
  tracef("separating-triangle");
  if (mode == Mode::IC) {
    // The middle vertex joins two kites, which no IC embedding allows.
    const int mid = gadget.anchorEdge2.touches(gadget.anchorEdge.u) ? gadget.anchorEdge.u
                                                                     : gadget.anchorEdge.v;
    return fail(FailureReason::SatFail,
                "separating triangle forces two kites at vertex " +
                    std::to_string(item.orig[mid]));
  }
  const Edge ab = gadget.anchorEdge;
  const Edge bc = gadget.anchorEdge2;
  if (!realizeKite(item, ab, gadget.crossableAB[0], item.depth)) return false;
  if (!realizeKite(item, bc, gadget.crossableBC[0], item.depth)) return false;
  // The remaining cycle edge stays planar.
  for (size_t i = 0; i < 3; i++) {
    const Edge ce(gadget.cycle[i], gadget.cycle[(i + 1) % 3]);
    if (ce == ab || ce == bc) continue;
    if (!extendLocal(item, ce, EdgeColor::Black)) return false;
  }
  item.g = item.g.withoutEdges({ab, bc});
  scanner.noteRemoval(item.g, ab);
  scanner.noteRemoval(item.g, bc);
  scanner.noteColored(ab);
  return true;
}

bool Pipeline::applyMc4(WorkItem& item, GadgetScanner& scanner, const K4Occurrence& k4) {
  const Mc4Result mc4 = classifyMc4(
      item.g, [this, &item](const Edge& e) { return localUncolored(item, e); }, k4);
  switch (mc4.cls) {
    case Mc4Class::KiteCoveredTetrahedron:
      tracef("mc4 kite-covered-tetrahedron");
      if (mode == Mode::IC)
        return fail(FailureReason::Mc4Mismatch,
                    "completely kite-covered tetrahedron is not IC-planar");
      break;
    case Mc4Class::SCGraph:
      tracef("mc4 sc-graph");
      if (mode == Mode::IC)
        return fail(FailureReason::Mc4Mismatch, "SC-graph is not IC-planar");
      if (mode == Mode::NIC)
        return fail(FailureReason::Mc4Mismatch, "SC-graph is not NIC-planar");
      break;
    case Mc4Class::PlainKite:
      tracef("mc4 kite");
      break;
    case Mc4Class::Mismatch:
      return fail(FailureReason::Mc4Mismatch, "K4 at the MC4 stage matches no pattern");
  }
  std::vector<Edge> reds;
  for (const auto& [anchor, crosser] : mc4.kitePairs) {
    if (!realizeKite(item, anchor, crosser, item.depth)) return false;
    reds.push_back(anchor);
  }
  item.g = item.g.withoutEdges(reds);
  for (const Edge& r : reds) scanner.noteRemoval(item.g, r);
  scanner.noteColored(reds.front());
  return true;
}

bool Pipeline::finalCheck(WorkItem& item) {
  if (isTriangulatedPlanar(item.g)) {
    tracef("final: triangulated planar");
    for (const Edge& e : item.g.edges()) {
      if (localUncolored(item, e)) {
        if (!extendLocal(item, e, EdgeColor::Black)) return false;
      }
    }
    return true;
  }
  if (item.g.vertexCount() > 8) {
    return fail(FailureReason::SmallGraphFail,
                "remainder with " + std::to_string(item.g.vertexCount()) +
                    " vertices is not triangulated planar");
  }
  tracef("final: small graph n=" + std::to_string(item.g.vertexCount()));

  EmbedConstraints constraints;
  for (const Edge& e : item.g.edges()) {
    if (isChord(item, e)) {
      constraints.mustPlanar.push_back(e);
      continue;
    }
    switch (coloring.get(toOrig(item, e))) {
      case EdgeColor::Black:
      case EdgeColor::Blue:
      case EdgeColor::Cyan:
        // Inherited firm colors act planar inside a split subgraph.
        constraints.mustPlanar.push_back(e);
        break;
      case EdgeColor::Red:
      case EdgeColor::Orange:
        throw InternalError("removed edge color present in a remainder");
      case EdgeColor::Uncolored:
      case EdgeColor::Grey:
        break;
    }
  }

  const std::vector<Embedding> embeddings = enumerateEmbeddings(item.g, constraints, mode);
  if (embeddings.empty()) {
    return fail(FailureReason::SmallGraphFail,
                "no " + std::string(modeName(mode)) + " embedding of the small remainder");
  }

  if (mode != Mode::OneP) {
    std::vector<Entity> entities;
    for (size_t i = 0; i < item.outerCycleLocal.size(); i++) {
      if (mode == Mode::IC) {
        entities.push_back(Entity::vertex(item.orig[item.outerCycleLocal[i]]));
      } else {
        const int a = item.outerCycleLocal[i];
        const int b = item.outerCycleLocal[(i + 1) % item.outerCycleLocal.size()];
        entities.push_back(Entity::edge(Edge(item.orig[a], item.orig[b])));
      }
    }
    // Attachment entities of an enclosing decomposition, when present here.
    std::set<int> present(item.orig.begin(), item.orig.end());
    for (const Entity& e : item.extraEntities) {
      if (e.isEdge ? (present.count(e.a) && present.count(e.b)) : present.count(e.a) > 0) {
        if (std::find(entities.begin(), entities.end(), e) == entities.end())
          entities.push_back(e);
      }
    }
    // Translate embeddings to original ids for the formula and witness.
    std::vector<Embedding> origEmbeddings = embeddings;
    for (Embedding& emb : origEmbeddings) {
      CrossingSet mapped;
      for (const auto& [e, f] : emb.crossings.pairs)
        mapped.pairs.emplace_back(toOrig(item, e), toOrig(item, f));
      mapped.normalize();
      emb.crossings = mapped;
      std::vector<Kite> kites;
      for (size_t i = 0; i < emb.crossings.pairs.size(); i++)
        kites.push_back(Kite::fromCrossingPair(static_cast<int>(i), emb.crossings.pairs[i].first,
                                               emb.crossings.pairs[i].second));
      emb.kites = std::move(kites);
    }
    eta.addBlock(smallGraphFormula(eta, origEmbeddings, entities, mode, item.depth));
  }

  SmallEvent event;
  for (const Embedding& emb : embeddings) {
    CrossingSet mapped;
    for (const auto& [e, f] : emb.crossings.pairs) {
      // Drop pairs touching a chord: the chord is constrained planar, so
      // none should appear; keep the guard for safety.
      mapped.pairs.emplace_back(toOrig(item, e), toOrig(item, f));
    }
    mapped.normalize();
    event.options.push_back(std::move(mapped));
  }
  smalls.push_back(std::move(event));

  for (const Edge& e : item.g.edges()) {
    if (localUncolored(item, e)) {
      if (!extendLocal(item, e, EdgeColor::Grey)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Witness assembly: the forced red/blue pairs plus one choice per sigma and
// per small-graph event, validated as a whole embedding.

struct WitnessSearch {
  const Graph& g;
  Mode mode;
  const std::vector<std::pair<Edge, Edge>>& forced;
  const std::vector<SigmaEvent>& sigmas;
  const std::vector<SmallEvent>& smalls;
  bool validateFully = true;
  int leavesTried = 0;
  static constexpr int kMaxLeaves = 512;

  std::optional<Embedding> found;
  CrossingSet foundCrossings;
  bool foundStructural = false;

  bool kiteCompatible(const std::vector<Kite>& chosen, const Kite& next) const {
    for (const Kite& k : chosen) {
      const int shared = k.sharedVertexCount(next);
      if (mode == Mode::IC && shared > 0) return false;
      if (mode == Mode::NIC && shared > 1) return false;
    }
    return true;
  }

  bool search(size_t sigmaIdx, size_t smallIdx, std::vector<std::pair<Edge, Edge>>& pairs,
              std::vector<Kite>& kites, std::set<Edge>& used) {
    if (leavesTried >= kMaxLeaves) return false;
    if (sigmaIdx < sigmas.size()) {
      for (const Kite& k : sigmas[sigmaIdx].kites) {
        if (used.count(k.crossing[0]) || used.count(k.crossing[1])) continue;
        if (mode != Mode::OneP && !kiteCompatible(kites, k)) continue;
        pairs.emplace_back(k.crossing[0], k.crossing[1]);
        kites.push_back(k);
        used.insert(k.crossing[0]);
        used.insert(k.crossing[1]);
        if (search(sigmaIdx + 1, smallIdx, pairs, kites, used)) return true;
        used.erase(k.crossing[0]);
        used.erase(k.crossing[1]);
        kites.pop_back();
        pairs.pop_back();
      }
      return false;
    }
    if (smallIdx < smalls.size()) {
      for (const CrossingSet& option : smalls[smallIdx].options) {
        bool ok = true;
        std::vector<Kite> added;
        for (const auto& [e, f] : option.pairs) {
          if (used.count(e) || used.count(f)) {
            ok = false;
            break;
          }
          Kite k = Kite::fromCrossingPair(-1, e, f);
          if (mode != Mode::OneP && (!kiteCompatible(kites, k) || !kiteCompatible(added, k))) {
            ok = false;
            break;
          }
          added.push_back(k);
        }
        if (!ok) continue;
        for (const auto& [e, f] : option.pairs) {
          pairs.emplace_back(e, f);
          used.insert(e);
          used.insert(f);
        }
        for (const Kite& k : added) kites.push_back(k);
        if (search(sigmaIdx, smallIdx + 1, pairs, kites, used)) return true;
        for (const auto& [e, f] : option.pairs) {
          used.erase(e);
          used.erase(f);
          pairs.pop_back();
        }
        for (size_t i = 0; i < added.size(); i++) kites.pop_back();
      }
      return false;
    }
    leavesTried++;
    CrossingSet m;
    m.pairs = pairs;
    m.normalize();
    const int n = g.vertexCount();
    if (n >= 3) {
      const int expected = g.edgeCount() - (3 * n - 6);
      if (static_cast<int>(m.pairs.size()) != expected) return false;
    }
    if (!validateFully) {
      foundCrossings = m;
      foundStructural = true;
      return true;
    }
    std::string whyNot;
    auto emb = validateEmbedding(g, m, {}, mode, &whyNot);
    if (!emb) return false;
    foundCrossings = m;
    found = std::move(*emb);
    foundStructural = true;
    return true;
  }

  bool runSearch() {
    std::vector<std::pair<Edge, Edge>> pairs = forced;
    std::vector<Kite> kites;
    std::set<Edge> used;
    for (const auto& [e, f] : forced) {
      kites.push_back(Kite::fromCrossingPair(-1, e, f));
      used.insert(e);
      used.insert(f);
    }
    if (mode != Mode::OneP) {
      for (size_t i = 0; i < kites.size(); i++) {
        for (size_t j = i + 1; j < kites.size(); j++) {
          const int shared = kites[i].sharedVertexCount(kites[j]);
          if ((mode == Mode::IC && shared > 0) || (mode == Mode::NIC && shared > 1))
            return false;  // forced kites already violate the mode
        }
      }
    }
    return search(0, 0, pairs, kites, used);
  }
};

RecognitionResult corePipeline(const Graph& g, Mode mode, const RecognizeOptions& opts) {
  RecognitionResult result;
  result.mode = mode;
  result.coloring = opts.initialColoring;

  const int n = g.vertexCount();
  if (n >= 3 && g.edgeCount() > maxEdges(mode, n)) {
    result.failure = FailureReason::EdgeBound;
    result.failureDetail = std::to_string(g.edgeCount()) + " edges exceed the bound " +
                           std::to_string(maxEdges(mode, n));
    return result;
  }

  Pipeline state;
  state.root = &g;
  state.mode = mode;
  state.opts = &opts;
  state.coloring = opts.initialColoring;

  WorkItem rootItem;
  rootItem.g = g;
  rootItem.orig.resize(n);
  for (int v = 0; v < n; v++) rootItem.orig[v] = v;
  rootItem.extraEntities = opts.rootOuterEntities;

  const bool ok = state.run(std::move(rootItem));
  result.coloring = state.coloring;
  result.eta = state.eta;
  result.gadgetTrace = state.trace;
  result.k5BranchHit = state.k5Hit;
  result.stepCount = state.steps;

  if (!ok) {
    result.failure = state.failure;
    result.failureDetail = state.detail;
    return result;
  }

  if (mode == Mode::OneP) {
    result.etaPlusSatisfiable = true;
    result.sat.satisfiable = true;
  } else {
    result.sat = mode == Mode::IC ? icSatisfiable(state.eta) : nicSatisfiable(state.eta);
    result.etaPlusSatisfiable = result.sat.satisfiable;
    if (!result.sat.satisfiable) {
      result.failure = FailureReason::SatFail;
      result.failureDetail = std::string(modeName(mode)) + "-extension unsatisfiable";
      return result;
    }
  }

  result.accepted = true;
  BPR_CHECK(n < 3 || g.edgeCount() <= maxEdges(mode, n), "accepted beyond the edge bound");

  WitnessSearch search{g, mode, state.forcedPairs, state.sigmas, state.smalls,
                       opts.realizeWitness};
  if (search.runSearch()) {
    result.witnessCrossings = search.foundCrossings;
    if (search.found) {
      result.witness = std::move(search.found);
      result.witnessValidated = true;
    }
  } else {
    BPR_LOG_INFO("witness assembly failed after %d leaves (decision unaffected)",
                 search.leavesTried);
  }
  return result;
}

}  // namespace

RecognitionResult recognize(const Graph& g, Mode mode, const RecognizeOptions& opts) {
  const int n = g.vertexCount();
  if (n >= 3 && g.edgeCount() > maxEdges(mode, n)) {
    RecognitionResult result;
    result.mode = mode;
    result.failure = FailureReason::EdgeBound;
    result.failureDetail = std::to_string(g.edgeCount()) + " edges exceed the bound " +
                           std::to_string(maxEdges(mode, n));
    return result;
  }
  if (n <= 2 || isKConnected(g, 3)) return corePipeline(g, mode, opts);
  return decomposeAndRecognize(g, mode, opts);
}

namespace {

// Remaps a component result into the parent id space and merges it.
void absorbComponent(RecognitionResult& into, const RecognitionResult& sub,
                     const std::vector<int>& toParent, const std::optional<Edge>& virtualEdge) {
  for (const auto& [e, c] : sub.coloring.entries()) {
    const Edge pe(toParent[e.u], toParent[e.v]);
    if (virtualEdge && pe == *virtualEdge) continue;
    if (into.coloring.get(pe) == EdgeColor::Uncolored) (void)into.coloring.extend(pe, c);
  }
  // Re-intern the component formula with parent entities and fresh kites.
  std::map<int, int> kiteMap;
  auto mapKite = [&](int k) {
    auto it = kiteMap.find(k);
    if (it != kiteMap.end()) return it->second;
    const int nk = into.eta.freshKiteId();
    kiteMap.emplace(k, nk);
    return nk;
  };
  auto mapEntity = [&](const Entity& e) {
    if (e.isEdge) return Entity::edge(Edge(toParent[e.a], toParent[e.b]));
    return Entity::vertex(toParent[e.a]);
  };
  auto mapVar = [&](int v) {
    const Variable& var = sub.eta.variable(v);
    return into.eta.internVar(mapEntity(var.entity), mapKite(var.kiteId));
  };
  auto mapKiteObj = [&](const Kite& k) {
    return Kite::fromCrossingPair(mapKite(k.id),
                                  Edge(toParent[k.crossing[0].u], toParent[k.crossing[0].v]),
                                  Edge(toParent[k.crossing[1].u], toParent[k.crossing[1].v]));
  };
  for (const Block& b : sub.eta.blocks()) {
    Block nb;
    nb.kind = b.kind;
    nb.depth = b.depth;
    for (int v : b.anchorVars) nb.anchorVars.push_back(mapVar(v));
    for (const Conj& c : b.disjuncts) {
      Conj nc;
      nc.kiteId = c.kiteId >= 0 ? mapKite(c.kiteId) : -1;
      nc.embeddingIdx = c.embeddingIdx;
      for (int v : c.vars) nc.vars.push_back(mapVar(v));
      nb.disjuncts.push_back(std::move(nc));
    }
    if (b.kind == Block::Kind::Alpha) nb.alphaKite = mapKiteObj(b.alphaKite);
    if (b.kind == Block::Kind::Sigma) {
      nb.sigmaAnchor = Edge(toParent[b.sigmaAnchor.u], toParent[b.sigmaAnchor.v]);
      for (const Kite& k : b.sigmaKites) nb.sigmaKites.push_back(mapKiteObj(k));
      nb.sigmaExposed = b.sigmaExposed;
      for (int& x : nb.sigmaExposed)
        if (x >= 0) x = toParent[x];
      nb.sigmaVirtualKite = b.sigmaVirtualKite >= 0 ? mapKite(b.sigmaVirtualKite) : -1;
    }
    for (const Entity& e : b.smallOuterEntities) nb.smallOuterEntities.push_back(mapEntity(e));
    into.eta.addBlock(std::move(nb));
  }
  if (sub.witnessCrossings) {
    if (!into.witnessCrossings) into.witnessCrossings = CrossingSet{};
    for (const auto& [e, f] : sub.witnessCrossings->pairs) {
      const Edge pe(toParent[e.u], toParent[e.v]);
      const Edge pf(toParent[f.u], toParent[f.v]);
      if (virtualEdge && (pe == *virtualEdge || pf == *virtualEdge)) continue;
      into.witnessCrossings->pairs.emplace_back(pe, pf);
    }
    into.witnessCrossings->normalize();
  }
  for (const std::string& t : sub.gadgetTrace) into.gadgetTrace.push_back(t);
  into.k5BranchHit = into.k5BranchHit || sub.k5BranchHit;
  into.stepCount += sub.stepCount;
}

bool componentNeedsEntity(const RecognitionResult& sub, Mode mode, const Entity& localEntity) {
  if (mode == Mode::IC) return !icSatisfiable(sub.eta, {localEntity}).satisfiable;
  return !nicSatisfiable(sub.eta, {localEntity}).satisfiable;
}

// Parent-space attachment entities translated into a component's id space;
// entities not fully present in the component are dropped.
std::vector<Entity> remapEntities(const std::vector<Entity>& parentEntities,
                                  const std::vector<int>& toParent) {
  std::map<int, int> toLocal;
  for (size_t i = 0; i < toParent.size(); i++) toLocal[toParent[i]] = static_cast<int>(i);
  std::vector<Entity> out;
  for (const Entity& e : parentEntities) {
    auto ia = toLocal.find(e.a);
    if (ia == toLocal.end()) continue;
    if (e.isEdge) {
      auto ib = toLocal.find(e.b);
      if (ib == toLocal.end()) continue;
      out.push_back(Entity::edge(Edge(ia->second, ib->second)));
    } else {
      out.push_back(Entity::vertex(ia->second));
    }
  }
  return out;
}

}  // namespace

RecognitionResult decomposeAndRecognize(const Graph& g, Mode mode, const RecognizeOptions& opts) {
  RecognitionResult result;
  result.mode = mode;
  const int n = g.vertexCount();

  if (n >= 3 && g.edgeCount() > maxEdges(mode, n)) {
    result.failure = FailureReason::EdgeBound;
    result.failureDetail = "edge bound";
    return result;
  }

  auto rejectLike = [&](const RecognitionResult& sub) {
    result.failure = sub.failure;
    result.failureDetail = sub.failureDetail;
    result.accepted = false;
  };

  // Disconnected: recognize each connected component independently.
  const auto comps = connectedComponents(g);
  if (comps.size() > 1) {
    for (const auto& comp : comps) {
      Subgraph sub = inducedSubgraph(g, comp);
      RecognizeOptions subOpts = opts;
      subOpts.rootOuterEntities = remapEntities(opts.rootOuterEntities, sub.toParent);
      RecognitionResult r = recognize(sub.graph, mode, subOpts);
      if (!r.accepted) {
        rejectLike(r);
        return result;
      }
      absorbComponent(result, r, sub.toParent, std::nullopt);
    }
    result.accepted = true;
    result.etaPlusSatisfiable = true;
    return result;
  }

  const auto arts = articulationVertices(g);
  if (!arts.empty()) {
    const int v = arts[0];
    const auto parts = connectedComponents(g, {v});
    int neededCount = 0;
    for (const auto& part : parts) {
      std::vector<int> keep = part;
      keep.push_back(v);
      Subgraph sub = inducedSubgraph(g, keep);
      RecognizeOptions subOpts = opts;
      subOpts.rootOuterEntities = remapEntities(opts.rootOuterEntities, sub.toParent);
      RecognitionResult r = recognize(sub.graph, mode, subOpts);
      if (!r.accepted) {
        rejectLike(r);
        return result;
      }
      if (mode == Mode::IC) {
        const int localV =
            static_cast<int>(std::find(sub.toParent.begin(), sub.toParent.end(), v) -
                             sub.toParent.begin());
        if (componentNeedsEntity(r, mode, Entity::vertex(localV))) neededCount++;
      }
      absorbComponent(result, r, sub.toParent, std::nullopt);
    }
    if (mode == Mode::IC && neededCount >= 2) {
      result.accepted = false;
      result.failure = FailureReason::SatFail;
      result.failureDetail =
          "cut vertex " + std::to_string(v) + " needs a kite in " + std::to_string(neededCount) +
          " components";
      return result;
    }
    result.accepted = true;
    result.etaPlusSatisfiable = true;
    return result;
  }

  const auto pairs = separationPairs(g);
  if (!pairs.empty()) {
    const Edge cut = pairs[0];
    const bool pairEdgeReal = g.hasEdge(cut);
    const auto parts = connectedComponents(g, {cut.u, cut.v});
    int neededU = 0, neededV = 0, neededEdge = 0;
    for (const auto& part : parts) {
      std::vector<int> keep = part;
      keep.push_back(cut.u);
      keep.push_back(cut.v);
      Subgraph sub = inducedSubgraph(g, keep);
      const int lu = static_cast<int>(std::find(sub.toParent.begin(), sub.toParent.end(), cut.u) -
                                      sub.toParent.begin());
      const int lv = static_cast<int>(std::find(sub.toParent.begin(), sub.toParent.end(), cut.v) -
                                      sub.toParent.begin());
      Graph componentGraph = sub.graph;
      if (!componentGraph.hasEdge(lu, lv)) componentGraph = componentGraph.withEdges({Edge(lu, lv)});
      RecognizeOptions subOpts = opts;
      subOpts.rootOuterEntities = remapEntities(opts.rootOuterEntities, sub.toParent);
      if (mode != Mode::OneP) {
        if (mode == Mode::IC) {
          subOpts.rootOuterEntities.push_back(Entity::vertex(lu));
          subOpts.rootOuterEntities.push_back(Entity::vertex(lv));
        } else {
          subOpts.rootOuterEntities.push_back(Entity::edge(Edge(lu, lv)));
        }
      }
      RecognitionResult r = recognize(componentGraph, mode, subOpts);
      if (!r.accepted) {
        rejectLike(r);
        return result;
      }
      if (mode == Mode::IC) {
        if (componentNeedsEntity(r, mode, Entity::vertex(lu))) neededU++;
        if (componentNeedsEntity(r, mode, Entity::vertex(lv))) neededV++;
      } else if (mode == Mode::NIC) {
        if (componentNeedsEntity(r, mode, Entity::edge(Edge(lu, lv)))) neededEdge++;
      }
      absorbComponent(result, r, sub.toParent,
                      pairEdgeReal ? std::nullopt : std::optional<Edge>(cut));
    }
    if ((mode == Mode::IC && (neededU >= 2 || neededV >= 2)) ||
        (mode == Mode::NIC && neededEdge >= 2)) {
      result.accepted = false;
      result.failure = FailureReason::SatFail;
      result.failureDetail = "separation pair " + edgeStr(cut) +
                             " is kite-committed in two components";
      return result;
    }
    result.accepted = true;
    result.etaPlusSatisfiable = true;
    return result;
  }

  // No cut structure: the graph is an atom for the core pipeline.
  return corePipeline(g, mode, opts);
}

bool checkMaximal(const Graph& g, Mode mode, bool planarMaximal, const RecognizeOptions& opts) {
  RecognitionResult base = recognize(g, mode, opts);
  if (!base.accepted)
    throw InputError("checkMaximal: the graph itself is not accepted in mode " +
                     std::string(modeName(mode)));
  const int n = g.vertexCount();
  for (int u = 0; u < n; u++) {
    for (int v = u + 1; v < n; v++) {
      if (g.hasEdge(u, v)) continue;
      const Edge e(u, v);
      Graph extended = g.withEdges({e});
      RecognizeOptions probeOpts = opts;
      probeOpts.realizeWitness = false;
      if (planarMaximal) {
        EdgeColoring init = opts.initialColoring;
        (void)init.extend(e, EdgeColor::Black);
        probeOpts.initialColoring = init;
      }
      if (recognize(extended, mode, probeOpts).accepted) return false;
    }
  }
  return true;
}

DensityReport checkMaximumOptimal(const Graph& g, Mode mode, const RecognizeOptions& opts) {
  DensityReport report;
  const int n = g.vertexCount();
  const int m = g.edgeCount();
  RecognizeOptions quiet = opts;
  quiet.realizeWitness = false;
  report.accepted = recognize(g, mode, quiet).accepted;

  switch (mode) {
    case Mode::OneP: {
      report.optimal = report.accepted && n >= 3 && m == 4 * n - 8;
      if (report.optimal)
        report.maximum = TriState::Yes;
      else if (report.accepted)
        report.maximum = TriState::Unknown;  // no density formula below 4n-8
      else
        report.maximum = TriState::No;
      break;
    }
    case Mode::IC: {
      const int bound = maxEdges(Mode::IC, n);
      report.optimal = report.accepted && n >= 8 && n % 4 == 0 && m == bound;
      if (n < 5) {
        report.maximum = TriState::Unknown;
      } else {
        report.maximum = (report.accepted && m == bound) ? TriState::Yes : TriState::No;
      }
      break;
    }
    case Mode::NIC: {
      const int bound = maxEdges(Mode::NIC, n);
      report.optimal = report.accepted && n >= 12 && n % 5 == 2 && m == bound;
      if (!report.accepted) {
        report.maximum = TriState::No;
      } else if (m == bound) {
        report.maximum = TriState::Yes;
      } else if ((n % 5 == 2 || n % 5 == 3) && n >= 12) {
        report.maximum = TriState::No;  // epsilon = 0 at these sizes
      } else if (m == bound - 1) {
        report.maximum = TriState::Unknown;  // epsilon undetermined
      } else {
        report.maximum = TriState::No;
      }
      break;
    }
  }
  return report;
}

}  // namespace bpr
