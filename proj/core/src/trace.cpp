#include "parbfs/trace.hpp"

#include <ostream>

namespace parbfs {

std::uint64_t TraversalTrace::total_edges_examined() const {
  std::uint64_t total = 0;
  for (const auto& r : records) total += r.edges_examined;
  return total;
}

std::uint64_t TraversalTrace::level_count(TraversalPhase phase) const {
  std::uint64_t count = 0;
  for (const auto& r : records) {
    if (r.phase == phase) ++count;
  }
  return count;
}

double average_duplicate_percentage(const TraversalTrace& trace) {
  double sum = 0.0;
  std::uint64_t levels = 0;
  for (const auto& r : trace.records) {
    if (r.frontier_size == 0) continue;
    sum += 100.0 * static_cast<double>(r.duplicate_count) /
           static_cast<double>(r.frontier_size);
    ++levels;
  }
  if (levels == 0) {
    throw MetricError(
        "average duplicate percentage is undefined: no non-empty frontier");
  }
  return sum / static_cast<double>(levels);
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> frontier_size_series(
    const TraversalTrace& trace) {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> series;
  series.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    series.emplace_back(r.depth, r.frontier_size);
  }
  return series;
}

void write_trace_csv_header(std::ostream& out) {
  out << "run_id,variant,source,depth,phase,frontier_size,distinct_size,"
         "duplicate_count,edges_examined,flush_events,elapsed_ns\n";
}

void write_trace_csv(std::ostream& out, const TraversalTrace& trace,
                     const std::string& run_id) {
  for (const auto& r : trace.records) {
    out << run_id << ',' << to_string(trace.variant) << ',' << trace.source
        << ',' << r.depth << ',' << to_string(r.phase) << ','
        << r.frontier_size << ',' << r.distinct_size << ','
        << r.duplicate_count << ',' << r.edges_examined << ','
        << r.flush_events << ',' << r.elapsed.count() << '\n';
  }
}

}  // namespace parbfs
