#pragma once

#include <span>
#include <utility>
#include <vector>

#include "parbfs/types.hpp"

namespace parbfs {

// Compressed sparse row adjacency. Canonical form (as produced by build_csr
// and the loaders): within each vertex's slice the neighbor ids are sorted
// ascending and parallel edges are deduplicated; self-loops are kept.
//
// Invariants: row_offsets[0] == 0, row_offsets[vertex_count] == edge_count,
// row_offsets non-decreasing, every column index < vertex_count.
//
// Immutable once built; safe to share across kernel workers without
// synchronization.
struct CsrGraph {
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;  // directed edge slots
  std::vector<EdgeOffset> row_offsets;   // length vertex_count + 1
  std::vector<VertexId> column_indices;  // length edge_count

  // True when the adjacency relation is symmetric (v in adj(u) iff u in
  // adj(v)). Set by build_csr/loaders; bottom-up kernels require it because
  // they scan a vertex's slice as in-edges.
  bool symmetric = false;

  std::span<const VertexId> neighbors(VertexId u) const {
    return {column_indices.data() + row_offsets[u],
            column_indices.data() + row_offsets[u + 1]};
  }

  EdgeOffset degree(VertexId u) const {
    return row_offsets[u + 1] - row_offsets[u];
  }

  bool structurally_equal(const CsrGraph& other) const {
    return vertex_count == other.vertex_count &&
           edge_count == other.edge_count &&
           row_offsets == other.row_offsets &&
           column_indices == other.column_indices;
  }
};

using EdgePair = std::pair<VertexId, VertexId>;

// Builds a canonical CsrGraph from an edge pair list. Every endpoint must be
// < vertex_count (InputError naming the offending pair otherwise). With
// symmetrize set, the reverse of every edge is added before
// canonicalization, so the result is symmetric by construction.
CsrGraph build_csr(std::span<const EdgePair> edge_pairs,
                   std::uint64_t vertex_count, bool symmetrize);

// Exact adjacency symmetry check on a canonical graph (binary search per
// edge). Used by the loaders to stamp CsrGraph::symmetric.
bool adjacency_is_symmetric(const CsrGraph& graph);

// Structural validation of the CSR invariants; throws FormatError naming the
// first field that fails. Loaders run this on untrusted input.
void validate_csr(const CsrGraph& graph);

}  // namespace parbfs
