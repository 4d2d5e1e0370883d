#pragma once

#include <string>

#include "bpr/recognizer.hpp"

namespace bpr {

/// DOT export; accepted runs color edges by their final coloring and mark
/// crossing pairs, otherwise the plain graph is emitted.
std::string toDot(const Graph& g, const RecognitionResult* result);

/// SVG export of an accepted run: a straight-line (Tutte) layout of the
/// witness planarization with crossing markers and colored edges. Falls back
/// to a circular layout when no witness embedding is available.
std::string toSvg(const Graph& g, const RecognitionResult* result);

}  // namespace bpr
