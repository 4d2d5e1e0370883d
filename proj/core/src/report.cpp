#include "bpr/report.hpp"

#include <sstream>

#include <json.hpp>

#include "bpr/log.hpp"

namespace bpr {

using nlohmann::json;

namespace {

std::string edgeKey(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

json coloringJson(const EdgeColoring& coloring) {
  json out = json::object();
  for (const auto& [e, c] : coloring.entries()) out[edgeKey(e)] = colorName(c);
  return out;
}

json formulaAst(const Formula& f) {
  if (f.failed()) return json{{"op", "false"}};
  json blocks = json::array();
  auto lit = [&](int v) {
    const Variable& var = f.variable(v);
    return json{{"op", "lit"}, {"entity", var.entity.name()}, {"kite", var.kiteId}};
  };
  auto conj = [&](const std::vector<int>& vars) {
    json kids = json::array();
    for (int v : vars) kids.push_back(lit(v));
    return json{{"op", "and"}, {"args", kids}};
  };
  for (const Block& b : f.blocks()) {
    json node;
    const char* kind = b.kind == Block::Kind::Alpha   ? "alpha"
                       : b.kind == Block::Kind::Sigma ? "sigma"
                                                      : "small";
    json parts = json::array();
    if (!b.anchorVars.empty()) parts.push_back(conj(b.anchorVars));
    if (!b.disjuncts.empty()) {
      json ors = json::array();
      for (const Conj& c : b.disjuncts) {
        if (c.vars.empty())
          ors.push_back(json{{"op", "true"}});
        else
          ors.push_back(conj(c.vars));
      }
      parts.push_back(json{{"op", "or"}, {"args", ors}});
    }
    node = json{{"op", "and"}, {"block", kind}, {"args", parts}};
    blocks.push_back(node);
  }
  return json{{"op", "and"}, {"args", blocks}};
}

json embeddingJson(const Embedding& emb) {
  json crossings = json::array();
  for (const auto& [e, f] : emb.crossings.pairs)
    crossings.push_back(json::array({json::array({e.u, e.v}), json::array({f.u, f.v})}));
  json rotations = json::object();
  for (size_t v = 0; v < emb.rotation.order.size(); v++) {
    if (emb.rotation.order[v].empty()) continue;
    rotations[std::to_string(v)] = emb.rotation.order[v];
  }
  return json{{"crossings", crossings}, {"rotations", rotations}};
}

}  // namespace

std::string coloringToJson(const EdgeColoring& coloring) { return coloringJson(coloring).dump(); }

EdgeColoring coloringFromJson(const std::string& text) {
  EdgeColoring out;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("bad coloring JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("coloring JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw InputError("coloring key must be 'u-v': " + key);
    const int u = std::stoi(key.substr(0, dash));
    const int v = std::stoi(key.substr(dash + 1));
    const EdgeColor c = colorFromName(value.get<std::string>());
    if (c == EdgeColor::Uncolored) continue;
    if (!out.extend(Edge(u, v), c)) throw InputError("conflicting constraint on " + key);
  }
  return out;
}

std::string formulaToAstJson(const Formula& f) { return formulaAst(f).dump(); }

std::string embeddingToJson(const Embedding& emb) { return embeddingJson(emb).dump(); }

std::string reportToJson(const Graph& g, const RecognitionResult& result,
                         const PhaseTimings& timings, const std::string& emit) {
  const bool all = emit == "all";
  json out{
      {"schema", 1},
      {"mode", modeName(result.mode)},
      {"n", g.vertexCount()},
      {"m", g.edgeCount()},
      {"verdict", result.accepted ? "accepted" : "rejected"},
  };
  if (!result.accepted) {
    out["failure"] = failureReasonName(result.failure);
    out["failureDetail"] = result.failureDetail;
  }
  out["etaPlusSatisfiable"] = result.etaPlusSatisfiable;
  out["timings"] = {{"parseMs", timings.parseMs},
                    {"recognizeMs", timings.recognizeMs},
                    {"totalMs", timings.totalMs}};
  if (all || emit == "coloring") out["coloring"] = coloringJson(result.coloring);
  if (all || emit == "formula") {
    out["formula"] = {{"sexpr", result.eta.toSExpr()},
                      {"ast", formulaAst(result.eta)},
                      {"length", result.eta.length()},
                      {"extensionClauses", extensionClauses(result.eta).size()}};
  }
  if (all || emit == "witness") {
    if (result.witness) {
      out["witness"] = embeddingJson(*result.witness);
      out["witnessValidated"] = result.witnessValidated;
    } else if (result.witnessCrossings) {
      json crossings = json::array();
      for (const auto& [e, f] : result.witnessCrossings->pairs)
        crossings.push_back(json::array({json::array({e.u, e.v}), json::array({f.u, f.v})}));
      out["witness"] = {{"crossings", crossings}};
      out["witnessValidated"] = false;
    } else {
      out["witness"] = nullptr;
    }
  }
  return out.dump(2);
}

std::string reportToText(const Graph& g, const RecognitionResult& result,
                         const std::string& emit) {
  std::ostringstream out;
  out << (result.accepted ? "accepted" : "rejected") << " (mode " << modeName(result.mode)
      << ", n=" << g.vertexCount() << ", m=" << g.edgeCount() << ")\n";
  if (!result.accepted)
    out << "reason: " << failureReasonName(result.failure) << " - " << result.failureDetail
        << "\n";
  const bool all = emit == "all";
  if (all || emit == "coloring") {
    out << "coloring: " << coloringToJson(result.coloring) << "\n";
  }
  if (all || emit == "formula") {
    out << "eta: " << result.eta.toSExpr() << "\n";
  }
  if ((all || emit == "witness") && result.witnessCrossings) {
    out << "crossings:";
    for (const auto& [e, f] : result.witnessCrossings->pairs)
      out << " (" << edgeKey(e) << ")x(" << edgeKey(f) << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace bpr
