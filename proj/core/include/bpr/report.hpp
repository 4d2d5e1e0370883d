#pragma once

#include <string>

#include "bpr/recognizer.hpp"

namespace bpr {

/// Timings in milliseconds per phase, filled by the CLI.
struct PhaseTimings {
  double parseMs = 0;
  double recognizeMs = 0;
  double totalMs = 0;
};

/// Stable JSON run report (schema version 1). `emit` selects the sections:
/// "verdict", "coloring", "formula", "witness" or "all".
std::string reportToJson(const Graph& g, const RecognitionResult& result,
                         const PhaseTimings& timings, const std::string& emit);

/// Human-readable one-screen summary of a recognition run.
std::string reportToText(const Graph& g, const RecognitionResult& result,
                         const std::string& emit);

/// Coloring serialization: JSON object mapping "u-v" to a color name.
std::string coloringToJson(const EdgeColoring& coloring);
EdgeColoring coloringFromJson(const std::string& json);

/// Formula serialization as a JSON AST (and-of-blocks over literals).
std::string formulaToAstJson(const Formula& f);

/// Embedding serialization: {"crossings": [[..],..], "rotations": {...}}.
std::string embeddingToJson(const Embedding& emb);

}  // namespace bpr
