#include "bpr/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "bpr/log.hpp"

namespace bpr {

namespace {

// graph6: n encoded as one byte (n+63) for n <= 62, else 4 bytes starting
// with 126; then the upper triangle, column by column, 6 bits per byte.
void appendSizeG6(std::string& s, int n) {
  if (n <= 62) {
    s.push_back(static_cast<char>(n + 63));
  } else {
    s.push_back(126);
    s.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    s.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    s.push_back(static_cast<char>((n & 63) + 63));
  }
}

int parseSizeG6(const std::string& line, size_t& pos) {
  if (pos >= line.size()) throw InputError("graph6: empty input");
  unsigned char c = static_cast<unsigned char>(line[pos]);
  if (c == 126) {
    if (pos + 3 >= line.size()) throw InputError("graph6: truncated size");
    if (static_cast<unsigned char>(line[pos + 1]) == 126)
      throw InputError("graph6: graphs over 2^18 vertices not supported");
    int n = 0;
    for (int i = 1; i <= 3; i++) {
      unsigned char d = static_cast<unsigned char>(line[pos + i]);
      if (d < 63 || d > 126) throw InputError("graph6: bad size byte");
      n = (n << 6) | (d - 63);
    }
    pos += 4;
    return n;
  }
  if (c < 63 || c > 125) throw InputError("graph6: bad size byte");
  pos += 1;
  return c - 63;
}

}  // namespace

Graph parseGraph6(const std::string& rawLine) {
  std::string line = rawLine;
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' '))
    line.pop_back();
  size_t pos = 0;
  if (line.rfind(">>graph6<<", 0) == 0) pos = 10;
  const int n = parseSizeG6(line, pos);
  const long bits = static_cast<long>(n) * (n - 1) / 2;
  const long bytes = (bits + 5) / 6;
  if (static_cast<long>(line.size()) - static_cast<long>(pos) < bytes)
    throw InputError("graph6: truncated adjacency data");
  std::vector<std::pair<int, int>> edges;
  long bit = 0;
  for (int v = 1; v < n; v++) {
    for (int u = 0; u < v; u++, bit++) {
      unsigned char c = static_cast<unsigned char>(line[pos + bit / 6]);
      if (c < 63 || c > 126) throw InputError("graph6: bad data byte");
      if ((c - 63) & (1 << (5 - bit % 6))) edges.emplace_back(u, v);
    }
  }
  return Graph::fromEdges(n, edges);
}

std::string toGraph6(const Graph& g) {
  const int n = g.vertexCount();
  std::string s;
  appendSizeG6(s, n);
  const long bits = static_cast<long>(n) * (n - 1) / 2;
  std::string data((bits + 5) / 6, 0);
  long bit = 0;
  for (int v = 1; v < n; v++) {
    for (int u = 0; u < v; u++, bit++) {
      if (g.hasEdge(u, v)) data[bit / 6] |= static_cast<char>(1 << (5 - bit % 6));
    }
  }
  for (char& c : data) c = static_cast<char>(c + 63);
  return s + data;
}

Graph parseEdgeList(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw InputError("edge list: missing 'n m' header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int i = 0; i < m; i++) {
    int u, v;
    if (!(in >> u >> v)) throw InputError("edge list: truncated after " + std::to_string(i) + " edges");
    edges.emplace_back(u, v);
  }
  return Graph::fromEdges(n, edges);
}

std::string toEdgeList(const Graph& g) {
  std::ostringstream out;
  out << g.vertexCount() << " " << g.edgeCount() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

Graph readGraph(std::istream& in, GraphFormat format) {
  if (format == GraphFormat::EdgeList) return parseEdgeList(in);
  std::string line;
  do {
    if (!std::getline(in, line)) throw InputError("empty input");
  } while (line.empty());
  if (format == GraphFormat::Auto && !line.empty() &&
      (std::isdigit(static_cast<unsigned char>(line[0])) != 0)) {
    std::istringstream rest(line + "\n");
    std::ostringstream all;
    all << rest.str() << in.rdbuf();
    std::istringstream whole(all.str());
    return parseEdgeList(whole);
  }
  return parseGraph6(line);
}

Graph readGraphFile(const std::string& path, GraphFormat format) {
  if (path == "-") return readGraph(std::cin, format);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  return readGraph(in, format);
}

void writeGraphFile(const std::string& path, const Graph& g, GraphFormat format) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw InputError("cannot open output file: " + path);
    out = &file;
  }
  if (format == GraphFormat::Graph6)
    *out << toGraph6(g) << "\n";
  else
    *out << toEdgeList(g);
}

}  // namespace bpr
