#include "parbfs/csr_graph.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "parbfs/types.hpp"

namespace parbfs {

CsrGraph build_csr(std::span<const EdgePair> edges, std::uint64_t vertex_count,
                   bool symmetrize) {
  if (vertex_count > kMaxVertexCount) {
    throw InputError("vertex count " + std::to_string(vertex_count) +
                     " exceeds the supported maximum " +
                     std::to_string(kMaxVertexCount));
  }
  for (const auto& [src, dst] : edges) {
    if (src >= vertex_count || dst >= vertex_count) {
      throw InputError("edge (" + std::to_string(src) + ", " +
                       std::to_string(dst) + ") references a vertex >= " +
                       std::to_string(vertex_count));
    }
  }

  std::vector<EdgePair> work(edges.begin(), edges.end());
  if (symmetrize) {
    work.reserve(work.size() * 2);
    const std::size_t original = work.size();
    for (std::size_t i = 0; i < original; ++i) {
      auto [src, dst] = work[i];
      if (src != dst) work.emplace_back(dst, src);
    }
  }
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());

  CsrGraph g;
  g.vertex_count = vertex_count;
  g.edge_count = work.size();
  g.row_offsets.assign(vertex_count + 1, 0);
  for (const auto& [src, dst] : work) {
    (void)dst;
    ++g.row_offsets[src + 1];
  }
  for (std::uint64_t v = 0; v < vertex_count; ++v) {
    g.row_offsets[v + 1] += g.row_offsets[v];
  }
  g.column_indices.resize(work.size());
  for (std::size_t i = 0; i < work.size(); ++i) {
    g.column_indices[i] = work[i].second;
  }
  g.symmetric = symmetrize ? true : adjacency_is_symmetric(g);
  return g;
}

bool adjacency_is_symmetric(const CsrGraph& g) {
  // Adjacency lists are sorted, so each reverse-edge probe is a binary search.
  for (VertexId u = 0; u < g.vertex_count; ++u) {
    for (VertexId v : g.neighbors(u)) {
      auto nbrs = g.neighbors(v);
      if (!std::binary_search(nbrs.begin(), nbrs.end(), u)) return false;
    }
  }
  return true;
}

void validate_csr(const CsrGraph& g) {
  if (g.vertex_count > kMaxVertexCount) {
    throw FormatError("vertex count " + std::to_string(g.vertex_count) +
                      " exceeds the supported maximum");
  }
  if (g.row_offsets.size() != g.vertex_count + 1) {
    throw FormatError("offset array has " +
                      std::to_string(g.row_offsets.size()) +
                      " entries, expected vertex count + 1 = " +
                      std::to_string(g.vertex_count + 1));
  }
  if (g.row_offsets.front() != 0) {
    throw FormatError("offset array must start at 0");
  }
  if (g.row_offsets.back() != g.edge_count) {
    throw FormatError("offset array ends at " +
                      std::to_string(g.row_offsets.back()) +
                      " but edge count is " + std::to_string(g.edge_count));
  }
  if (g.column_indices.size() != g.edge_count) {
    throw FormatError("index array has " +
                      std::to_string(g.column_indices.size()) +
                      " entries but edge count is " +
                      std::to_string(g.edge_count));
  }
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    if (g.row_offsets[v] > g.row_offsets[v + 1]) {
      throw FormatError("offset array decreases at vertex " +
                        std::to_string(v));
    }
  }
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    auto nbrs = g.neighbors(static_cast<VertexId>(v));
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] >= g.vertex_count) {
        throw FormatError("vertex " + std::to_string(v) +
                          " has a neighbor " + std::to_string(nbrs[i]) +
                          " outside the graph");
      }
      if (i > 0 && nbrs[i - 1] >= nbrs[i]) {
        throw FormatError("adjacency list of vertex " + std::to_string(v) +
                          " is not strictly increasing");
      }
    }
  }
}

}  // namespace parbfs
