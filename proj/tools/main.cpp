#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpr/generators.hpp"
#include "bpr/io.hpp"
#include "bpr/log.hpp"
#include "bpr/recognizer.hpp"
#include "bpr/render.hpp"
#include "bpr/report.hpp"

using namespace bpr;
using nlohmann::json;

namespace {

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInputError = 2;

GraphFormat parseFormat(const std::string& s) {
  if (s == "graph6") return GraphFormat::Graph6;
  if (s == "edgelist") return GraphFormat::EdgeList;
  return GraphFormat::Auto;
}

Mode parseMode(const std::string& s) {
  if (s == "1p") return Mode::OneP;
  if (s == "ic") return Mode::IC;
  if (s == "nic") return Mode::NIC;
  throw InputError("unknown mode: " + s);
}

double msSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void writeOut(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  out << content;
}

int cmdRecognize(const std::string& input, const std::string& modeStr,
                 const std::string& formatStr, const std::string& emit, bool jsonOut,
                 bool fastScan) {
  const auto t0 = std::chrono::steady_clock::now();
  const Graph g = readGraphFile(input, parseFormat(formatStr));
  PhaseTimings timings;
  timings.parseMs = msSince(t0);

  RecognizeOptions opts;
  opts.fastScan = fastScan;
  const auto t1 = std::chrono::steady_clock::now();
  const RecognitionResult result = recognize(g, parseMode(modeStr), opts);
  timings.recognizeMs = msSince(t1);
  timings.totalMs = msSince(t0);

  if (jsonOut)
    std::cout << reportToJson(g, result, timings, emit) << "\n";
  else
    std::cout << reportToText(g, result, emit);
  return result.accepted ? kExitAccepted : kExitRejected;
}

int cmdClassify(const std::string& input, const std::string& modeStr,
                const std::string& formatStr, bool jsonOut) {
  const Graph g = readGraphFile(input, parseFormat(formatStr));
  const Mode mode = parseMode(modeStr);
  RecognizeOptions quiet;
  quiet.realizeWitness = false;

  const bool member = recognize(g, mode, quiet).accepted;
  const DensityReport density = checkMaximumOptimal(g, mode, quiet);
  bool maximal = false, planarMaximal = false;
  if (member) {
    maximal = checkMaximal(g, mode, false, quiet);
    planarMaximal = checkMaximal(g, mode, true, quiet);
  }

  if (jsonOut) {
    json out{{"mode", modeName(mode)},
             {"n", g.vertexCount()},
             {"m", g.edgeCount()},
             {"triangulatedMember", member},
             {"maximal", member ? json(maximal) : json(nullptr)},
             {"planarMaximal", member ? json(planarMaximal) : json(nullptr)},
             {"maximum", triStateName(density.maximum)},
             {"optimal", density.optimal}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "mode " << modeName(mode) << ": triangulated-member="
              << (member ? "yes" : "no");
    if (member)
      std::cout << " maximal=" << (maximal ? "yes" : "no")
                << " planar-maximal=" << (planarMaximal ? "yes" : "no");
    std::cout << " maximum=" << triStateName(density.maximum)
              << " optimal=" << (density.optimal ? "yes" : "no") << "\n";
  }
  return member ? kExitAccepted : kExitRejected;
}

int cmdCensus(const std::string& input, const std::string& modeStr,
              const std::string& formatStr, const std::string& constraintsPath,
              const std::string& fixFace, bool jsonOut) {
  const Graph g = readGraphFile(input, parseFormat(formatStr));
  if (g.vertexCount() > 8)
    throw InputError("census enumerates embeddings exhaustively; n <= 8 required");
  const Mode mode = parseMode(modeStr);

  EdgeColoring constraintColoring;
  if (!constraintsPath.empty()) {
    std::ifstream in(constraintsPath);
    if (!in) throw InputError("cannot open constraints file: " + constraintsPath);
    std::stringstream buffer;
    buffer << in.rdbuf();
    constraintColoring = coloringFromJson(buffer.str());
  }
  EmbedConstraints constraints =
      constraintsFromColoring(constraintColoring, g.edges(), /*insideSplit=*/false);

  std::vector<int> fixed;
  if (!fixFace.empty()) {
    std::stringstream ss(fixFace);
    std::string tok;
    while (std::getline(ss, tok, ',')) fixed.push_back(std::stoi(tok));
    for (size_t i = 0; i < fixed.size(); i++) {
      const Edge e(fixed[i], fixed[(i + 1) % fixed.size()]);
      if (!g.hasEdge(e)) throw InputError("--fix-face cycle edge missing: " + std::to_string(e.u) +
                                          "-" + std::to_string(e.v));
      constraints.mustPlanar.push_back(e);
    }
  }

  const std::vector<Embedding> embeddings = enumerateEmbeddings(g, constraints, mode);
  const int classes = isoClassCount(g, embeddings, fixed);

  if (jsonOut) {
    json list = json::array();
    for (const Embedding& emb : embeddings) list.push_back(json::parse(embeddingToJson(emb)));
    json out{{"mode", modeName(mode)},
             {"count", embeddings.size()},
             {"isoClasses", classes},
             {"embeddings", list}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << embeddings.size() << " embeddings, " << classes << " isomorphism classes\n";
    for (const Embedding& emb : embeddings) {
      for (const auto& [e, f] : emb.crossings.pairs)
        std::cout << " (" << e.u << "-" << e.v << ")x(" << f.u << "-" << f.v << ")";
      std::cout << "\n";
    }
  }
  return embeddings.empty() ? kExitRejected : kExitAccepted;
}

int cmdGen(const std::string& family, int nParam, int kParam, int slots,
           const std::string& outPath, const std::string& formatStr) {
  Graph g;
  if (family == "optimal-q3") {
    g = genOptimal1Planar(genCube());
  } else if (family == "optimal") {
    if (nParam < 8 || nParam % 2 != 0)
      throw InputError("optimal family needs an even --n >= 8");
    g = genOptimal1Planar(genPseudoDoubleWheel((nParam - 2) / 2));
  } else if (family == "pdw") {
    if (nParam < 8 || nParam % 2 != 0) throw InputError("pdw family needs an even --n >= 8");
    g = genPseudoDoubleWheel((nParam - 2) / 2);
  } else if (family == "k5-star") {
    g = genK5Star(kParam);
  } else if (family == "octahedron") {
    g = genOctahedron();
  } else if (family == "kite-octahedron") {
    const Graph base = genOctahedron();
    std::vector<Edge> slotEdges;
    if (slots >= 1) slotEdges.emplace_back(0, 2);
    if (slots >= 2) slotEdges.emplace_back(1, 4);
    if (slots > 2) throw InputError("kite-octahedron supports at most 2 slots");
    g = genKiteAugmentedPlanar(base, slotEdges, 0);
  } else {
    throw InputError("unknown family: " + family +
                     " (families: optimal-q3, optimal, pdw, k5-star, octahedron, kite-octahedron)");
  }
  const GraphFormat fmt =
      parseFormat(formatStr) == GraphFormat::Auto ? GraphFormat::EdgeList : parseFormat(formatStr);
  writeGraphFile(outPath.empty() ? "-" : outPath, g, fmt);
  return kExitAccepted;
}

int cmdRender(const std::string& input, const std::string& modeStr,
              const std::string& formatStr, const std::string& svgPath,
              const std::string& dotPath) {
  const Graph g = readGraphFile(input, parseFormat(formatStr));
  const RecognitionResult result = recognize(g, parseMode(modeStr));
  if (!svgPath.empty()) writeOut(svgPath, toSvg(g, &result));
  if (!dotPath.empty()) writeOut(dotPath, toDot(g, &result));
  if (svgPath.empty() && dotPath.empty()) writeOut("-", toDot(g, &result));
  return result.accepted ? kExitAccepted : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recognition of triangulated 1-planar, IC-planar and NIC-planar graphs"};
  app.require_subcommand(1);

  std::string input = "-", mode = "1p", format = "auto", emit = "verdict";
  std::string constraintsPath, fixFace, outPath, svgPath, dotPath, family;
  bool jsonOut = false, fastScan = false;
  int nParam = 0, kParam = 2, slots = 1;

  auto addCommon = [&](CLI::App* cmd, bool withMode = true) {
    cmd->add_option("input", input, "Input file ('-' for stdin)");
    if (withMode) cmd->add_option("--mode", mode, "1p, ic or nic")->check(CLI::IsMember({"1p", "ic", "nic"}));
    cmd->add_option("--format", format, "graph6, edgelist or auto")
        ->check(CLI::IsMember({"graph6", "edgelist", "auto"}));
    cmd->add_flag("--json", jsonOut, "JSON output");
  };

  auto* rec = app.add_subcommand("recognize", "Decide triangulated 1p/ic/nic membership");
  addCommon(rec);
  rec->add_option("--emit", emit, "verdict, coloring, formula, witness or all")
      ->check(CLI::IsMember({"verdict", "coloring", "formula", "witness", "all"}));
  rec->add_flag("--fast-scan", fastScan, "Incremental gadget-absence certificates");

  auto* cls = app.add_subcommand("classify", "Maximality / maximum / optimal classification");
  addCommon(cls);

  auto* cen = app.add_subcommand("census", "Enumerate embeddings of a small graph (n <= 8)");
  addCommon(cen);
  cen->add_option("--constraints", constraintsPath, "JSON coloring constraints file");
  cen->add_option("--fix-face", fixFace, "Comma-separated outer face cycle, e.g. 0,1,2");

  auto* gen = app.add_subcommand("gen", "Generate a test-family graph");
  gen->add_option("family", family, "optimal-q3, optimal, pdw, k5-star, octahedron, kite-octahedron")
      ->required();
  gen->add_option("--n", nParam, "Vertex count (optimal/pdw families)");
  gen->add_option("--k", kParam, "Block count (k5-star)");
  gen->add_option("--slots", slots, "Slot count (kite-octahedron)");
  gen->add_option("--out", outPath, "Output file (default stdout)");
  gen->add_option("--format", format, "graph6 or edgelist");

  auto* ren = app.add_subcommand("render", "Render a recognition run as SVG or DOT");
  addCommon(ren);
  ren->add_option("--svg", svgPath, "SVG output file");
  ren->add_option("--dot", dotPath, "DOT output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rec->parsed()) return cmdRecognize(input, mode, format, emit, jsonOut, fastScan);
    if (cls->parsed()) return cmdClassify(input, mode, format, jsonOut);
    if (cen->parsed()) return cmdCensus(input, mode, format, constraintsPath, fixFace, jsonOut);
    if (gen->parsed()) return cmdGen(family, nParam, kParam, slots, outPath, format);
    if (ren->parsed()) return cmdRender(input, mode, format, svgPath, dotPath);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
