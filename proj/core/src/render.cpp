#include "bpr/render.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "bpr/planarity.hpp"

namespace bpr {

namespace {

const char* svgColor(EdgeColor c) {
  switch (c) {
    case EdgeColor::Black: return "#222222";
    case EdgeColor::Red: return "#cc2222";
    case EdgeColor::Blue: return "#2244cc";
    case EdgeColor::Orange: return "#dd8800";
    case EdgeColor::Cyan: return "#22aaaa";
    case EdgeColor::Grey: return "#999999";
    case EdgeColor::Uncolored: return "#bbbbbb";
  }
  return "#bbbbbb";
}

struct Point {
  double x = 0, y = 0;
};

// Tutte barycentric layout of a planarization: pin one face on a convex
// polygon, relax everything else to the neighbor average.
std::vector<Point> tutteLayout(const Graph& plan, const RotationSystem& rot) {
  const int n = plan.vertexCount();
  std::vector<Point> pos(n);
  std::vector<bool> pinned(n, false);
  const auto faces = traceFaces(plan, rot);
  size_t outer = 0;
  for (size_t i = 1; i < faces.size(); i++)
    if (faces[i].size() > faces[outer].size()) outer = i;
  const auto& boundary = faces[outer];
  const double radius = 480;
  for (size_t i = 0; i < boundary.size(); i++) {
    const double angle = 2 * M_PI * static_cast<double>(i) / boundary.size();
    pos[boundary[i]] = {500 + radius * std::cos(angle), 500 + radius * std::sin(angle)};
    pinned[boundary[i]] = true;
  }
  for (int v = 0; v < n; v++) {
    if (!pinned[v]) pos[v] = {500, 500};
  }
  for (int iter = 0; iter < 600; iter++) {
    for (int v = 0; v < n; v++) {
      if (pinned[v] || plan.degree(v) == 0) continue;
      double sx = 0, sy = 0;
      for (int u : plan.neighbors(v)) {
        sx += pos[u].x;
        sy += pos[u].y;
      }
      pos[v] = {sx / plan.degree(v), sy / plan.degree(v)};
    }
  }
  return pos;
}

std::vector<Point> circleLayout(int n) {
  std::vector<Point> pos(n);
  for (int v = 0; v < n; v++) {
    const double angle = 2 * M_PI * v / std::max(1, n);
    pos[v] = {500 + 450 * std::cos(angle), 500 + 450 * std::sin(angle)};
  }
  return pos;
}

}  // namespace

std::string toDot(const Graph& g, const RecognitionResult* result) {
  std::ostringstream out;
  out << "graph bpr {\n  node [shape=circle];\n";
  std::map<Edge, std::string> attr;
  if (result != nullptr && result->accepted) {
    for (const Edge& e : g.edges()) {
      const EdgeColor c = result->coloring.get(e);
      attr[e] = std::string(" [color=\"") + svgColor(c) + "\", tooltip=\"" + colorName(c) + "\"]";
    }
    if (result->witnessCrossings) {
      int idx = 0;
      for (const auto& [e, f] : result->witnessCrossings->pairs) {
        attr[e] += "  // crosses pair " + std::to_string(idx);
        attr[f] += "  // crosses pair " + std::to_string(idx);
        idx++;
      }
    }
  }
  for (const Edge& e : g.edges())
    out << "  " << e.u << " -- " << e.v << (attr.count(e) ? attr[e] : "") << ";\n";
  out << "}\n";
  return out.str();
}

std::string toSvg(const Graph& g, const RecognitionResult* result) {
  const int n = g.vertexCount();
  std::vector<Point> pos;
  std::vector<std::pair<Edge, Edge>> pairs;
  std::set<Edge> crossed;
  if (result != nullptr && result->accepted && result->witness) {
    pairs = result->witness->crossings.pairs;
    for (const auto& [e, f] : pairs) {
      crossed.insert(e);
      crossed.insert(f);
    }
    // Planarization layout gives the crossing points as dummy positions.
    std::set<Edge> crossedSet = crossed;
    std::vector<std::pair<int, int>> planEdges;
    for (const Edge& e : g.edges())
      if (!crossedSet.count(e)) planEdges.emplace_back(e.u, e.v);
    for (size_t i = 0; i < pairs.size(); i++) {
      const int dummy = n + static_cast<int>(i);
      planEdges.emplace_back(pairs[i].first.u, dummy);
      planEdges.emplace_back(pairs[i].first.v, dummy);
      planEdges.emplace_back(pairs[i].second.u, dummy);
      planEdges.emplace_back(pairs[i].second.v, dummy);
    }
    const Graph plan = Graph::fromEdges(n + static_cast<int>(pairs.size()), planEdges);
    pos = tutteLayout(plan, result->witness->rotation);
  } else {
    pos = circleLayout(n);
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
  auto line = [&](const Point& a, const Point& b, const char* color) {
    out << "  <line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
  };
  const EdgeColoring* coloring =
      (result != nullptr && result->accepted) ? &result->coloring : nullptr;
  for (const Edge& e : g.edges()) {
    const char* color = coloring ? svgColor(coloring->get(e)) : "#555555";
    if (crossed.count(e)) continue;  // drawn via their crossing point below
    line(pos[e.u], pos[e.v], color);
  }
  for (size_t i = 0; i < pairs.size(); i++) {
    const Point& d = pos[n + i];
    const char* c1 = coloring ? svgColor(coloring->get(pairs[i].first)) : "#555555";
    const char* c2 = coloring ? svgColor(coloring->get(pairs[i].second)) : "#555555";
    line(pos[pairs[i].first.u], d, c1);
    line(d, pos[pairs[i].first.v], c1);
    line(pos[pairs[i].second.u], d, c2);
    line(d, pos[pairs[i].second.v], c2);
    out << "  <circle cx=\"" << d.x << "\" cy=\"" << d.y
        << "\" r=\"5\" fill=\"none\" stroke=\"#cc2222\" stroke-width=\"1.5\"/>\n";
  }
  for (int v = 0; v < n; v++) {
    out << "  <circle cx=\"" << pos[v].x << "\" cy=\"" << pos[v].y
        << "\" r=\"9\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
    out << "  <text x=\"" << pos[v].x << "\" y=\"" << pos[v].y + 4
        << "\" text-anchor=\"middle\" font-size=\"10\">" << v << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bpr
