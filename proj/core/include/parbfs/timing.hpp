#pragma once

#include <chrono>
#include <functional>
#include <vector>

#include "parbfs/kernels.hpp"

namespace parbfs {

struct TimingReport {
  std::chrono::nanoseconds median{0};
  std::vector<std::chrono::nanoseconds> samples;  // in run order
  TraversalTrace median_trace;  // trace of the run whose time is the median
};

using KernelFn = std::function<BfsResult(const CsrGraph&, VertexId,
                                         const KernelConfig&)>;

// Runs `warmups` untimed executions, then `trials` timed ones on a monotonic
// clock. Every run (warmups included) is checked against a serial-oracle
// result computed once up front; any mismatch aborts the measurement with a
// CorrectnessError naming the first differing vertex. The median is the
// lower-middle order statistic, so it is always one of the samples and its
// trace is reported alongside.
TimingReport time_run(const CsrGraph& graph, VertexId source,
                      const KernelConfig& config, std::uint32_t trials,
                      std::uint32_t warmups, const GraphStats& stats);

// Same, but measuring an arbitrary kernel callable (used by tests to inject
// faults into the verification path).
TimingReport time_run(const CsrGraph& graph, VertexId source,
                      const KernelConfig& config, std::uint32_t trials,
                      std::uint32_t warmups, const KernelFn& kernel);

}  // namespace parbfs
