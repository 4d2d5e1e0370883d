#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpr/coloring.hpp"
#include "bpr/formula.hpp"
#include "bpr/gadgets.hpp"
#include "bpr/graph.hpp"
#include "bpr/oracle.hpp"

namespace bpr {

enum class FailureReason {
  None,
  ColoringConflict,
  K5Branch,
  Mc4Mismatch,
  SmallGraphFail,
  SatFail,
  EdgeBound,
  Connectivity,
};

const char* failureReasonName(FailureReason r);

enum class TriState { No, Yes, Unknown };

const char* triStateName(TriState t);

struct RecognizeOptions {
  /// Pre-colored edges (planar-maximal probes force the new edge black).
  EdgeColoring initialColoring;
  /// Realize the witness rotation system (planar embedding of the
  /// planarization); the crossing set is always assembled.
  bool realizeWitness = true;
  /// Incremental gadget-absence certificates instead of full rescans.
  bool fastScan = false;
  /// Entities whose kite usage must stay visible in small-graph blocks
  /// (the attachment vertices/pair edge of an enclosing decomposition).
  std::vector<Entity> rootOuterEntities;
};

struct RecognitionResult {
  bool accepted = false;
  Mode mode = Mode::OneP;
  EdgeColoring coloring;
  Formula eta;
  bool etaPlusSatisfiable = false;
  SatResult sat;
  std::optional<CrossingSet> witnessCrossings;
  std::optional<Embedding> witness;
  FailureReason failure = FailureReason::None;
  std::string failureDetail;

  // Run trace.
  std::vector<std::string> gadgetTrace;
  bool k5BranchHit = false;
  int stepCount = 0;
  bool witnessValidated = false;
};

/// Density caps: 4n-8, floor(13n/4 - 6), floor(18(n-2)/5).
int maxEdges(Mode mode, int n);

/// The main pipeline (Algorithm B and its IC/NIC specializations).
/// Non-3-connected inputs are dispatched to decomposeAndRecognize.
RecognitionResult recognize(const Graph& g, Mode mode, const RecognizeOptions& opts = {});

/// Split at articulation vertices and separation pairs, recognize each
/// 3-connected component, and enforce the cross-component exclusivity of
/// cut vertices (IC) and pair edges (NIC).
RecognitionResult decomposeAndRecognize(const Graph& g, Mode mode,
                                        const RecognizeOptions& opts = {});

/// Maximality probes. `planarMaximal` forces each probe edge black, asking
/// whether it can be added as a planar edge. Throws InputError when g itself
/// is rejected.
bool checkMaximal(const Graph& g, Mode mode, bool planarMaximal,
                  const RecognizeOptions& opts = {});

struct DensityReport {
  bool accepted = false;
  TriState maximum = TriState::No;
  bool optimal = false;
};

DensityReport checkMaximumOptimal(const Graph& g, Mode mode, const RecognizeOptions& opts = {});

}  // namespace bpr
