#include "parbfs/graph_stats.hpp"

#include <algorithm>

#include "parbfs/types.hpp"

namespace parbfs {

GraphStats compute_stats(const CsrGraph& graph, double threshold) {
  if (graph.vertex_count == 0) {
    throw InputError("cannot compute stats for an empty graph");
  }
  GraphStats s;
  s.vertex_count = graph.vertex_count;
  s.edge_count = graph.edge_count;
  s.average_degree =
      static_cast<double>(graph.edge_count) /
      static_cast<double>(graph.vertex_count);
  for (VertexId v = 0; v < graph.vertex_count; ++v) {
    s.max_degree = std::max<std::uint64_t>(s.max_degree, graph.degree(v));
  }
  s.category = (s.average_degree < threshold) ? GraphCategory::LargeDiameter
                                              : GraphCategory::SmallDiameter;
  return s;
}

std::string to_string(GraphCategory category) {
  switch (category) {
    case GraphCategory::SmallDiameter:
      return "small-diameter";
    case GraphCategory::LargeDiameter:
      return "large-diameter";
  }
  return "unknown";
}

}  // namespace parbfs
