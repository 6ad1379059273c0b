#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "parbfs/kernel_config.hpp"
#include "parbfs/types.hpp"

namespace parbfs {

// One row per traversal iteration. Iteration d consumes the depth-d frontier
// and produces the depth-(d+1) frontier, so:
//   - frontier_size / distinct_size / duplicate_count describe the depth-d
//     frontier as it was produced (before this iteration consumes it); the
//     depth-0 row covers the source-only frontier,
//   - phase is the direction this iteration ran in,
//   - edges_examined / flush_events count work done during this iteration,
//   - elapsed spans the iteration, including any representation conversion
//     performed on entry.
// The deepest frontier still gets an iteration (it discovers nothing), so
// distinct sizes over all rows sum to the size of the reachable set.
struct LevelRecord {
  std::uint32_t depth = 0;
  TraversalPhase phase = TraversalPhase::TopDown;
  std::uint64_t frontier_size = 0;
  std::uint64_t distinct_size = 0;
  std::uint64_t duplicate_count = 0;  // frontier_size - distinct_size
  std::uint64_t edges_examined = 0;
  std::uint64_t flush_events = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct TraversalTrace {
  std::vector<LevelRecord> records;
  std::chrono::nanoseconds total_elapsed{0};
  KernelVariant variant = KernelVariant::Serial;
  std::uint32_t worker_count = 1;
  VertexId source = 0;
  // Populated only under KernelConfig::validate_same_value_stores.
  std::uint64_t same_value_violations = 0;

  std::uint64_t total_edges_examined() const;
  std::uint64_t level_count(TraversalPhase phase) const;
};

// Mean over levels of 100 * duplicate_count / frontier_size, skipping
// empty-frontier levels; the depth-0 row participates. Raises MetricError
// when no level has a non-empty frontier.
double average_duplicate_percentage(const TraversalTrace& trace);

std::vector<std::pair<std::uint32_t, std::uint64_t>> frontier_size_series(
    const TraversalTrace& trace);

// Trace CSV schema, one row per level:
//   run_id,variant,source,depth,phase,frontier_size,distinct_size,
//   duplicate_count,edges_examined,flush_events,elapsed_ns
void write_trace_csv_header(std::ostream& out);
void write_trace_csv(std::ostream& out, const TraversalTrace& trace,
                     const std::string& run_id);

}  // namespace parbfs
