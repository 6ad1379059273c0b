#pragma once

#include <cstdint>
#include <vector>

#include "parbfs/csr_graph.hpp"
#include "parbfs/graph_stats.hpp"
#include "parbfs/kernel_config.hpp"
#include "parbfs/trace.hpp"
#include "parbfs/types.hpp"

namespace parbfs {

// Per-vertex hop counts; kUnreached marks vertices the traversal never saw.
using DistanceArray = std::vector<Distance>;

struct BfsResult {
  DistanceArray distances;
  TraversalTrace trace;
};

// Direction-switch bookkeeping for the edge-count policy.
struct HybridState {
  bool is_top_down = true;
  std::uint32_t depth = 0;
  std::uint64_t frontier_edges = 0;    // m_f: degree sum of the next frontier
  std::uint64_t unvisited_edges = 0;   // m_u: degree sum of unreached vertices
  std::uint64_t frontier_size_prev = 0;
  std::uint64_t frontier_size_next = 0;
};

// Single-threaded queue BFS. Exact hop counts; the correctness oracle every
// parallel kernel is validated against.
DistanceArray bfs_serial(const CsrGraph& graph, VertexId source);

// Level-synchronous top-down traversal where a worker claims each newly
// discovered vertex with an atomic compare-exchange from kUnreached, so no
// vertex enters the next frontier twice.
BfsResult bfs_conventional(const CsrGraph& graph, VertexId source,
                           const KernelConfig& config);

// Same traversal with the claim dropped: the distance store is a plain
// word-sized write. Level synchronization makes every racing store carry the
// same value, so distances still match the oracle; the same vertex can enter
// the next frontier more than once, and the trace records those duplicates
// per level.
BfsResult bfs_nonatomic(const CsrGraph& graph, VertexId source,
                        const KernelConfig& config);

// Switches each level between top-down (non-atomic discipline) and bottom-up
// (every unreached vertex scans its neighbors for a current-frontier hit,
// with early exit). Next level runs top-down iff the produced frontier stays
// under hybrid_threshold_fraction of the vertex count. Requires a symmetric
// graph unless force_top_down_only is set.
BfsResult bfs_hybrid(const CsrGraph& graph, VertexId source,
                     const KernelConfig& config);

// Same machinery driven by the edge-count policy (alpha/beta rules over m_f,
// m_u and the frontier sizes) instead of the size fraction.
BfsResult bfs_hybrid_beamer(const CsrGraph& graph, VertexId source,
                            const KernelConfig& config);

// Hybrid traversal that consults a byte-per-vertex visited flag instead of
// the distance array. Inline mode writes the distance at discovery; deferred
// mode keeps the top-down inner loop on the flags and local frontier only,
// then sorts each worker's local frontier and writes distances in ascending
// order.
BfsResult bfs_visited_bitmap(const CsrGraph& graph, VertexId source,
                             const KernelConfig& config, bool deferred);

// Top-down non-atomic traversal that flushes each local frontier to the
// global one whenever it reaches config.flush_capacity entries, bounding
// local memory; a final flush closes each level.
BfsResult bfs_topdown_periodic_flush(const CsrGraph& graph, VertexId source,
                                     const KernelConfig& config);

// Category dispatcher: large-diameter graphs run the selected variant's
// top-down-only path (force_top_down_only), small-diameter graphs take the
// hybrid path. Returns the kernel result unchanged.
BfsResult run_bfs(const CsrGraph& graph, VertexId source,
                  const KernelConfig& config, const GraphStats& stats);

}  // namespace parbfs
