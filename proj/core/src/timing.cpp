#include "parbfs/timing.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "parbfs/types.hpp"

namespace parbfs {

namespace {

void check_against(const DistanceArray& oracle, const DistanceArray& got) {
  if (got.size() != oracle.size()) {
    throw CorrectnessError("kernel returned " + std::to_string(got.size()) +
                           " distances, expected " +
                           std::to_string(oracle.size()));
  }
  for (std::size_t v = 0; v < oracle.size(); ++v) {
    if (got[v] != oracle[v]) {
      throw CorrectnessError(
          "distance mismatch at vertex " + std::to_string(v) + ": expected " +
          std::to_string(oracle[v]) + ", got " + std::to_string(got[v]));
    }
  }
}

}  // namespace

TimingReport time_run(const CsrGraph& graph, VertexId source,
                      const KernelConfig& config, std::uint32_t trials,
                      std::uint32_t warmups, const KernelFn& kernel) {
  if (trials < 1) {
    throw ConfigError("timing needs at least one trial");
  }
  const DistanceArray oracle = bfs_serial(graph, source);

  for (std::uint32_t i = 0; i < warmups; ++i) {
    check_against(oracle, kernel(graph, source, config).distances);
  }

  TimingReport report;
  report.samples.reserve(trials);
  std::vector<TraversalTrace> traces;
  traces.reserve(trials);
  for (std::uint32_t i = 0; i < trials; ++i) {
    const auto start = std::chrono::steady_clock::now();
    BfsResult result = kernel(graph, source, config);
    const auto stop = std::chrono::steady_clock::now();
    check_against(oracle, result.distances);
    report.samples.push_back(stop - start);
    traces.push_back(std::move(result.trace));
  }

  // Lower median, so the reported duration is an actual sample and its trace
  // can be reported with it.
  std::vector<std::size_t> order(trials);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.samples[a] < report.samples[b];
  });
  const std::size_t mid = order[(trials - 1) / 2];
  report.median = report.samples[mid];
  report.median_trace = std::move(traces[mid]);
  return report;
}

TimingReport time_run(const CsrGraph& graph, VertexId source,
                      const KernelConfig& config, std::uint32_t trials,
                      std::uint32_t warmups, const GraphStats& stats) {
  return time_run(graph, source, config, trials, warmups,
                  [&stats](const CsrGraph& g, VertexId s,
                           const KernelConfig& c) { return run_bfs(g, s, c, stats); });
}

}  // namespace parbfs
