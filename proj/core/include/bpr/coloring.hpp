#pragma once

#include <functional>
#include <map>
#include <string>

#include "bpr/graph.hpp"
#include "bpr/kite.hpp"

namespace bpr {

enum class EdgeColor { Uncolored, Black, Red, Blue, Orange, Cyan, Grey };

const char* colorName(EdgeColor c);
EdgeColor colorFromName(const std::string& name);

/// Partial edge coloring. Extension follows the overrule rule: blue and cyan
/// survive black/grey recolorings; any other disagreement is a conflict.
class EdgeColoring {
 public:
  EdgeColor get(const Edge& e) const;
  bool isUncolored(const Edge& e) const { return get(e) == EdgeColor::Uncolored; }

  /// Extends e by c; returns false on conflict (c must not be Uncolored).
  [[nodiscard]] bool extend(const Edge& e, EdgeColor c);

  /// Drops an entry entirely (used when merge discards an added chord).
  void erase(const Edge& e) { map_.erase(e); }

  const std::map<Edge, EdgeColor>& entries() const { return map_; }
  bool operator==(const EdgeColoring& o) const { return map_ == o.map_; }

 private:
  std::map<Edge, EdgeColor> map_;
};

/// Colors a kite: anchor red, crosser blue, boundary black; false on conflict.
[[nodiscard]] bool colorKite(EdgeColoring& coloring, const Kite& kite);

/// The crossable set C[a,b]: uncolored edges {x,y} with G[a,b,x,y] complete.
/// Throws InputError when e itself is colored.
std::vector<Edge> crossableEdges(const Graph& g, const EdgeColoring& coloring, const Edge& e);

/// Same with an arbitrary uncolored-ness predicate (used on working graphs
/// whose edge ids differ from the coloring's id space).
std::vector<Edge> crossableEdgesIf(const Graph& g, const Edge& e,
                                   const std::function<bool(const Edge&)>& uncolored);

}  // namespace bpr
