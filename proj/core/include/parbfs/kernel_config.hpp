#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "parbfs/types.hpp"

namespace parbfs {

enum class KernelVariant {
  Serial,
  Conventional,           // top-down, atomic claim per vertex
  NonAtomic,              // top-down, plain same-value distance stores
  Hybrid,                 // top-down/bottom-up by frontier-size fraction
  HybridBeamer,           // top-down/bottom-up by edge-count heuristics
  VisitedBitmapInline,    // hybrid with byte visited flags, inline writes
  VisitedBitmapDeferred,  // hybrid with byte visited flags, sorted deferral
  TopDownPeriodicFlush,   // top-down, bounded local frontiers
};

enum class TraversalPhase { TopDown, BottomUp };

// Called from the single-worker section with each frontier as it is formed:
// once for the seeded source frontier, then once per produced level. Entries
// are as produced (top-down levels may carry duplicates; bottom-up levels
// arrive as ascending distinct ids). Test instrumentation only; kernels skip
// all materialization work when unset.
struct LevelSnapshot {
  std::uint32_t depth = 0;
  TraversalPhase produced_by = TraversalPhase::TopDown;
  std::span<const VertexId> entries;
};
using LevelObserver = std::function<void(const LevelSnapshot&)>;

struct KernelConfig {
  KernelVariant variant = KernelVariant::Conventional;
  std::uint32_t worker_count = 1;

  // Hybrid switch rule: the next level runs top-down iff the produced
  // frontier's distinct size is below this fraction of the vertex count.
  double hybrid_threshold_fraction = 0.05;

  // Edge-count policy parameters: switch top-down -> bottom-up when
  // m_f > m_u / alpha, back when f_next < N / beta and f_next < f_prev.
  double alpha = 15.0;
  double beta = 18.0;

  // Periodic-flush variant: locals flush to the global frontier whenever
  // they reach this many entries (plus the usual end-of-level flush).
  std::uint64_t flush_capacity = 4096;

  // Dispatcher sets this for large-diameter graphs: hybrid-capable variants
  // then never leave top-down, and the symmetry requirement is waived.
  bool force_top_down_only = false;

  // Debug check for the same-value-store argument: every non-atomic distance
  // store must either replace the unreached sentinel or rewrite the value
  // already present. Violations are counted into the trace.
  bool validate_same_value_stores = false;

  // Measurement toggle: use the racy test-then-set on visited flags instead
  // of the byte-wide atomic exchange, admitting the duplicates the weaker
  // claim allows. Distances stay correct either way.
  bool racy_visited_claim = false;

  LevelObserver level_observer;
};

void validate(const KernelConfig& config);  // throws ConfigError

std::string to_string(KernelVariant variant);
std::string to_string(TraversalPhase phase);
// Parses the CLI token for a variant ("conventional", "hybrid-beamer", ...).
std::optional<KernelVariant> parse_kernel_variant(const std::string& token);

}  // namespace parbfs
