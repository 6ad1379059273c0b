#include "parbfs/frontier.hpp"

#include <algorithm>
#include <vector>

namespace parbfs {

void array_to_bitmap(const DenseFrontier& dense, BitmapFrontier& out) {
  out.clear();
  std::uint64_t distinct = 0;
  for (VertexId v : dense.view()) {
    if (!out.test(v)) {
      out.mark(v);
      ++distinct;
    }
  }
  out.set_population(distinct);
}

void bitmap_to_array(const BitmapFrontier& bm, DenseFrontier& out) {
  out.clear();
  const std::uint64_t n = bm.vertex_count();
  for (std::uint64_t v = 0; v < n; ++v) {
    if (bm.test(static_cast<VertexId>(v))) {
      out.push_back(static_cast<VertexId>(v));
    }
  }
}

std::uint64_t count_duplicates(std::span<const VertexId> entries) {
  std::vector<VertexId> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end());
  const auto last = std::unique(sorted.begin(), sorted.end());
  const auto distinct =
      static_cast<std::uint64_t>(std::distance(sorted.begin(), last));
  return entries.size() - distinct;
}

std::uint64_t count_duplicates(const DenseFrontier& dense) {
  return count_duplicates(dense.view());
}

}  // namespace parbfs
