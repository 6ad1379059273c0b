#pragma once

#include <string>

#include "parbfs/csr_graph.hpp"

namespace parbfs {

// Average degree stands in for diameter when choosing a code path: sparse
// graphs tend to be deep, so they are traversed top-down only, while dense
// graphs get the hybrid treatment. The boundary misclassifies some graphs
// (a dense mesh can still be deep); the hybrid kernel's per-level switching
// absorbs that.
enum class GraphCategory { SmallDiameter, LargeDiameter };

struct GraphStats {
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;
  double average_degree = 0.0;
  std::uint64_t max_degree = 0;
  GraphCategory category = GraphCategory::SmallDiameter;
};

inline constexpr double kDefaultDegreeThreshold = 7.0;

// category = LargeDiameter iff average_degree < threshold. Empty graphs
// raise InputError.
GraphStats compute_stats(const CsrGraph& graph,
                         double threshold = kDefaultDegreeThreshold);

std::string to_string(GraphCategory category);

}  // namespace parbfs
