#include "parbfs/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "parbfs/frontier.hpp"

namespace parbfs {

DistanceArray bfs_serial(const CsrGraph& graph, VertexId source) {
  if (source >= graph.vertex_count) {
    throw InputError("source vertex " + std::to_string(source) +
                     " is out of range for a graph with " +
                     std::to_string(graph.vertex_count) + " vertices");
  }
  DistanceArray dist(graph.vertex_count, kUnreached);
  std::vector<VertexId> queue;
  queue.reserve(graph.vertex_count);
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    const Distance nd = dist[u] + 1;
    for (VertexId v : graph.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = nd;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

namespace {

// How a top-down step claims a newly seen vertex.
enum class Claim {
  AtomicCas,        // compare-exchange on the distance slot
  PlainStore,       // relaxed store, no claim; duplicates possible
  VisitedInline,    // visited-flag claim, distance written at discovery
  VisitedDeferred,  // visited-flag claim, distances written sorted per worker
};

enum class DirectionPolicy { AlwaysTopDown, FrontierFraction, Beamer };

struct alignas(64) WorkerTally {
  std::uint64_t edges = 0;
  std::uint64_t flushes = 0;
  std::uint64_t discovered = 0;
  std::uint64_t discovered_degree = 0;
  std::uint64_t violations = 0;
};

using Clock = std::chrono::steady_clock;

// Bulk-synchronous level engine shared by every parallel kernel. Worker 0
// runs on the calling thread; the others are spawned for the duration of the
// run. Two barriers bracket each iteration's work phase, and worker 0 runs
// the swap/policy/bookkeeping section alone between them.
template <Claim C>
class Engine {
 public:
  Engine(const CsrGraph& graph, VertexId source, const KernelConfig& config,
         DirectionPolicy policy, KernelVariant label)
      : graph_(graph),
        config_(config),
        policy_(policy),
        label_(label),
        source_(source),
        n_(graph.vertex_count),
        worker_count_(config.worker_count),
        dups_possible_(C == Claim::PlainStore ||
                       ((C == Claim::VisitedInline ||
                         C == Claim::VisitedDeferred) &&
                        config.racy_visited_claim)),
        capacity_(n_ + max_degree(graph)),
        dist_(n_, kUnreached),
        current_(capacity_),
        next_(capacity_),
        locals_(worker_count_),
        tallies_(worker_count_),
        conv_counts_(worker_count_, 0),
        conv_offsets_(worker_count_ + 1, 0),
        sync_(static_cast<std::ptrdiff_t>(worker_count_)) {
    if constexpr (C == Claim::VisitedInline || C == Claim::VisitedDeferred) {
      visited_.assign(n_, 0);
    }
    if (dups_possible_) seen_.assign(n_, 0);
    if (policy_ != DirectionPolicy::AlwaysTopDown) {
      curr_bm_.emplace(n_);
      next_bm_.emplace(n_);
    }
  }

  BfsResult run() {
    const auto run_start = Clock::now();
    seed();

    std::vector<std::thread> extra;
    extra.reserve(worker_count_ - 1);
    for (std::uint32_t w = 1; w < worker_count_; ++w) {
      extra.emplace_back([this, w] { worker_loop(w); });
    }
    worker_loop(0);
    for (auto& t : extra) t.join();

    if (first_error_) std::rethrow_exception(first_error_);

    TraversalTrace trace;
    trace.records = std::move(records_);
    trace.total_elapsed = Clock::now() - run_start;
    trace.variant = label_;
    trace.worker_count = worker_count_;
    trace.source = source_;
    trace.same_value_violations = total_violations_;
    return BfsResult{std::move(dist_), std::move(trace)};
  }

 private:
  static std::uint64_t max_degree(const CsrGraph& g) {
    std::uint64_t m = 0;
    for (VertexId v = 0; v < g.vertex_count; ++v) {
      m = std::max<std::uint64_t>(m, g.degree(v));
    }
    return m;
  }

  static Distance load_dist(Distance& slot) {
    return std::atomic_ref(slot).load(std::memory_order_relaxed);
  }
  static void store_dist(Distance& slot, Distance value) {
    std::atomic_ref(slot).store(value, std::memory_order_relaxed);
  }

  void seed() {
    dist_[source_] = 0;
    if constexpr (C == Claim::VisitedInline || C == Claim::VisitedDeferred) {
      visited_[source_] = 1;
    }
    current_.push_back(source_);
    current_is_dense_ = true;
    pending_size_ = 1;
    pending_distinct_ = 1;
    const std::uint64_t src_degree = graph_.degree(source_);
    unvisited_edges_ = graph_.edge_count - src_degree;
    depth_ = 0;
    decide_direction(1, src_degree, 0);
    convert_needed_ = (!top_down_ && current_is_dense_);
    if (config_.level_observer) {
      config_.level_observer(
          LevelSnapshot{0, TraversalPhase::TopDown, current_.view()});
    }
    iter_start_ = Clock::now();
  }

  void worker_loop(std::uint32_t w) {
    while (true) {
      sync_.arrive_and_wait();
      if (done_) return;
      iteration_work(w);
      sync_.arrive_and_wait();
      if (w == 0) single_section();
    }
  }

  // Runs f unless a worker already failed; converts the first exception into
  // the shared failure state. Work may be skipped on failure, barriers never
  // are, so no worker can strand the others mid-iteration.
  template <typename F>
  void guarded(F&& f) {
    if (failed_.load(std::memory_order_relaxed)) return;
    try {
      f();
    } catch (...) {
      const std::scoped_lock lock(error_mutex_);
      if (!first_error_) first_error_ = std::current_exception();
      failed_.store(true, std::memory_order_relaxed);
    }
  }

  void iteration_work(std::uint32_t w) {
    if (convert_needed_) {
      if (top_down_) {
        guarded([&] { conv_counts_[w] = count_bitmap_slice(w); });
        sync_.arrive_and_wait();
        if (w == 0) {
          guarded([&] {
            conv_offsets_[0] = 0;
            for (std::uint32_t i = 0; i < worker_count_; ++i) {
              conv_offsets_[i + 1] = conv_offsets_[i] + conv_counts_[i];
            }
            current_.resize(conv_offsets_[worker_count_]);
          });
        }
        sync_.arrive_and_wait();
        guarded([&] { write_dense_slice(w); });
        sync_.arrive_and_wait();
      } else {
        guarded([&] { clear_bitmap_slice(w); });
        sync_.arrive_and_wait();
        guarded([&] { mark_bitmap_from_dense(w); });
        sync_.arrive_and_wait();
      }
    }
    if (top_down_) {
      guarded([&] { top_down_step(w); });
    } else {
      guarded([&] { bottom_up_step(w); });
    }
  }

  std::pair<std::uint64_t, std::uint64_t> vertex_slice(std::uint32_t w) const {
    return {n_ * w / worker_count_, n_ * (w + 1) / worker_count_};
  }

  std::uint64_t count_bitmap_slice(std::uint32_t w) const {
    const auto [begin, end] = vertex_slice(w);
    const std::uint8_t* flags = curr_bm_->flags();
    std::uint64_t count = 0;
    for (std::uint64_t v = begin; v < end; ++v) count += flags[v];
    return count;
  }

  void write_dense_slice(std::uint32_t w) {
    const auto [begin, end] = vertex_slice(w);
    const std::uint8_t* flags = curr_bm_->flags();
    auto out = current_.mutable_view();
    std::uint64_t at = conv_offsets_[w];
    for (std::uint64_t v = begin; v < end; ++v) {
      if (flags[v]) out[at++] = static_cast<VertexId>(v);
    }
  }

  void clear_bitmap_slice(std::uint32_t w) {
    const auto [begin, end] = vertex_slice(w);
    std::uint8_t* flags = curr_bm_->flags();
    std::fill(flags + begin, flags + end, std::uint8_t{0});
  }

  void mark_bitmap_from_dense(std::uint32_t w) {
    const auto frontier = current_.view();
    const std::uint64_t fsz = frontier.size();
    std::uint8_t* flags = curr_bm_->flags();
    const std::uint64_t begin = fsz * w / worker_count_;
    const std::uint64_t end = fsz * (w + 1) / worker_count_;
    for (std::uint64_t i = begin; i < end; ++i) {
      // Duplicate entries race on the same byte with the same value.
      std::atomic_ref(flags[frontier[i]])
          .store(1, std::memory_order_relaxed);
    }
  }

  void top_down_step(std::uint32_t w) {
    const auto frontier = current_.view();
    const std::uint64_t fsz = frontier.size();
    const std::uint64_t begin = fsz * w / worker_count_;
    const std::uint64_t end = fsz * (w + 1) / worker_count_;
    auto& local = locals_[w];
    const Distance nd = static_cast<Distance>(depth_) + 1;
    const bool periodic = periodic_flush_;
    const bool validate_stores = config_.validate_same_value_stores;
    const bool racy = config_.racy_visited_claim;
    std::uint64_t edges = 0;
    std::uint64_t flushes = 0;
    std::uint64_t claimed_degree = 0;
    std::uint64_t violations = 0;

    for (std::uint64_t i = begin; i < end; ++i) {
      const VertexId u = frontier[i];
      const auto nbrs = graph_.neighbors(u);
      edges += nbrs.size();
      for (const VertexId v : nbrs) {
        if constexpr (C == Claim::AtomicCas) {
          if (nd < load_dist(dist_[v])) {
            Distance expected = kUnreached;
            if (std::atomic_ref(dist_[v]).compare_exchange_strong(
                    expected, nd, std::memory_order_relaxed)) {
              local.push(v);
              claimed_degree += graph_.degree(v);
            }
          }
        } else if constexpr (C == Claim::PlainStore) {
          const Distance cur = load_dist(dist_[v]);
          if (nd < cur) {
            if (validate_stores && cur != kUnreached) ++violations;
            store_dist(dist_[v], nd);
            local.push(v);
            if (periodic && local.size() >= config_.flush_capacity) {
              reserve_and_flush(local, next_);
              ++flushes;
            }
          }
        } else {
          std::atomic_ref flag(visited_[v]);
          if (flag.load(std::memory_order_relaxed) == 0) {
            bool claimed;
            if (racy) {
              flag.store(1, std::memory_order_relaxed);
              claimed = true;
            } else {
              claimed = flag.exchange(1, std::memory_order_relaxed) == 0;
            }
            if (claimed) {
              if constexpr (C == Claim::VisitedInline) {
                store_dist(dist_[v], nd);
              }
              local.push(v);
              claimed_degree += graph_.degree(v);
            }
          }
        }
      }
    }

    if constexpr (C == Claim::VisitedDeferred) {
      std::sort(local.begin(), local.end());
      for (const VertexId v : local.view()) store_dist(dist_[v], nd);
    }
    if (!local.empty()) {
      reserve_and_flush(local, next_);
      ++flushes;
    }

    auto& tally = tallies_[w];
    tally.edges = edges;
    tally.flushes = flushes;
    tally.discovered_degree = claimed_degree;
    tally.violations = violations;
  }

  void bottom_up_step(std::uint32_t w) {
    const auto [begin, end] = vertex_slice(w);
    const Distance nd = static_cast<Distance>(depth_) + 1;
    const std::uint8_t* cf = curr_bm_->flags();
    std::uint8_t* nf = next_bm_->flags();
    std::uint64_t edges = 0;
    std::uint64_t discovered = 0;
    std::uint64_t discovered_degree = 0;

    // Discoveries land only in this worker's slice of the next bitmap, so
    // the slice-local clear needs no barrier before the scan.
    std::fill(nf + begin, nf + end, std::uint8_t{0});
    for (std::uint64_t v = begin; v < end; ++v) {
      bool unreached;
      if constexpr (C == Claim::VisitedInline || C == Claim::VisitedDeferred) {
        unreached = visited_[v] == 0;
      } else {
        unreached = dist_[v] == kUnreached;
      }
      if (!unreached) continue;
      const auto nbrs = graph_.neighbors(static_cast<VertexId>(v));
      for (const VertexId u : nbrs) {
        ++edges;
        if (cf[u]) {
          // This worker owns vertex v outright; plain stores suffice.
          dist_[v] = nd;
          nf[v] = 1;
          if constexpr (C == Claim::VisitedInline ||
                        C == Claim::VisitedDeferred) {
            visited_[v] = 1;
          }
          ++discovered;
          discovered_degree += nbrs.size();
          break;
        }
      }
    }

    auto& tally = tallies_[w];
    tally.edges = edges;
    tally.discovered = discovered;
    tally.discovered_degree = discovered_degree;
  }

  void single_section() {
    const auto iter_end = Clock::now();
    if (failed_.load(std::memory_order_relaxed)) {
      done_ = true;
      return;
    }

    std::uint64_t edges = 0;
    std::uint64_t flushes = 0;
    std::uint64_t discovered = 0;
    std::uint64_t exclusive_degree = 0;
    for (auto& t : tallies_) {
      edges += t.edges;
      flushes += t.flushes;
      discovered += t.discovered;
      exclusive_degree += t.discovered_degree;
      total_violations_ += t.violations;
      t = WorkerTally{};
    }

    std::uint64_t produced_raw;
    std::uint64_t produced_distinct;
    std::uint64_t produced_degree;
    if (top_down_) {
      produced_raw = next_.size();
      if (dups_possible_) {
        produced_distinct = 0;
        produced_degree = 0;
        for (const VertexId v : next_.view()) {
          if (!seen_[v]) {
            seen_[v] = 1;
            ++produced_distinct;
            produced_degree += graph_.degree(v);
          }
        }
        for (const VertexId v : next_.view()) seen_[v] = 0;
      } else {
        produced_distinct = produced_raw;
        produced_degree = exclusive_degree;
      }
    } else {
      produced_raw = discovered;
      produced_distinct = discovered;
      produced_degree = exclusive_degree;
      next_bm_->set_population(discovered);
    }

    records_.push_back(LevelRecord{
        depth_,
        top_down_ ? TraversalPhase::TopDown : TraversalPhase::BottomUp,
        pending_size_, pending_distinct_, pending_size_ - pending_distinct_,
        edges, flushes, iter_end - iter_start_});

    if (config_.level_observer && produced_raw > 0) emit_snapshot(produced_raw);

    unvisited_edges_ -= produced_degree;
    if (produced_raw == 0) {
      done_ = true;
      return;
    }

    const std::uint64_t consumed_distinct = pending_distinct_;
    if (top_down_) {
      std::swap(current_, next_);
      next_.clear();
      current_is_dense_ = true;
    } else {
      std::swap(curr_bm_, next_bm_);
      current_is_dense_ = false;
    }
    pending_size_ = produced_raw;
    pending_distinct_ = produced_distinct;
    ++depth_;

    decide_direction(produced_distinct, produced_degree, consumed_distinct);
    convert_needed_ = (top_down_ == !current_is_dense_);
    if (convert_needed_ && !top_down_) {
      curr_bm_->set_population(pending_distinct_);
    }
    iter_start_ = Clock::now();
  }

  void emit_snapshot(std::uint64_t produced_raw) {
    const std::uint32_t produced_depth = depth_ + 1;
    if (top_down_) {
      config_.level_observer(LevelSnapshot{
          produced_depth, TraversalPhase::TopDown,
          std::span<const VertexId>(next_.view().data(), produced_raw)});
    } else {
      observer_scratch_.clear();
      const std::uint8_t* nf = next_bm_->flags();
      for (std::uint64_t v = 0; v < n_; ++v) {
        if (nf[v]) observer_scratch_.push_back(static_cast<VertexId>(v));
      }
      config_.level_observer(LevelSnapshot{
          produced_depth, TraversalPhase::BottomUp, observer_scratch_});
    }
  }

  // Chooses the next iteration's direction from the frontier just produced.
  // The seed frontier goes through the same decision, so on graphs where one
  // vertex already crosses the size threshold the very first iteration runs
  // bottom-up.
  void decide_direction(std::uint64_t produced_distinct,
                        std::uint64_t produced_degree,
                        std::uint64_t consumed_distinct) {
    switch (policy_) {
      case DirectionPolicy::AlwaysTopDown:
        top_down_ = true;
        break;
      case DirectionPolicy::FrontierFraction:
        top_down_ = static_cast<double>(produced_distinct) <
                    config_.hybrid_threshold_fraction * static_cast<double>(n_);
        break;
      case DirectionPolicy::Beamer:
        if (top_down_) {
          if (static_cast<double>(produced_degree) >
              static_cast<double>(unvisited_edges_) / config_.alpha) {
            top_down_ = false;
          }
        } else {
          if (static_cast<double>(produced_distinct) <
                  static_cast<double>(n_) / config_.beta &&
              produced_distinct < consumed_distinct) {
            top_down_ = true;
          }
        }
        break;
    }
  }

  const CsrGraph& graph_;
  const KernelConfig& config_;
  const DirectionPolicy policy_;
  const KernelVariant label_;
  const VertexId source_;
  const std::uint64_t n_;
  const std::uint32_t worker_count_;
  const bool dups_possible_;
  const std::uint64_t capacity_;

 public:
  // Periodic local-frontier flushing; meaningful for PlainStore only.
  bool periodic_flush_ = false;

 private:
  DistanceArray dist_;
  DenseFrontier current_;
  DenseFrontier next_;
  std::optional<BitmapFrontier> curr_bm_;
  std::optional<BitmapFrontier> next_bm_;
  std::vector<LocalFrontier> locals_;
  std::vector<WorkerTally> tallies_;
  std::vector<std::uint8_t> visited_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint64_t> conv_counts_;
  std::vector<std::uint64_t> conv_offsets_;
  std::vector<VertexId> observer_scratch_;
  std::barrier<> sync_;

  // Iteration control, written in the seed/single sections only.
  bool done_ = false;
  bool top_down_ = true;
  bool convert_needed_ = false;
  bool current_is_dense_ = true;
  std::uint32_t depth_ = 0;
  std::uint64_t pending_size_ = 0;
  std::uint64_t pending_distinct_ = 0;
  std::uint64_t unvisited_edges_ = 0;
  std::uint64_t total_violations_ = 0;
  Clock::time_point iter_start_{};
  std::vector<LevelRecord> records_;

  std::atomic<bool> failed_{false};
  std::mutex error_mutex_;
  std::exception_ptr first_error_;
};

void check_source(const CsrGraph& graph, VertexId source) {
  if (source >= graph.vertex_count) {
    throw InputError("source vertex " + std::to_string(source) +
                     " is out of range for a graph with " +
                     std::to_string(graph.vertex_count) + " vertices");
  }
}

void check_symmetric(const CsrGraph& graph, const KernelConfig& config) {
  if (!config.force_top_down_only && !graph.symmetric) {
    throw InputError(
        "direction-switching traversal reads each adjacency list as "
        "in-edges, which requires a symmetric graph; symmetrize the input "
        "or force the top-down-only path");
  }
}

DirectionPolicy hybrid_policy(const KernelConfig& config,
                              DirectionPolicy wanted) {
  return config.force_top_down_only ? DirectionPolicy::AlwaysTopDown : wanted;
}

}  // namespace

BfsResult bfs_conventional(const CsrGraph& graph, VertexId source,
                           const KernelConfig& config) {
  validate(config);
  check_source(graph, source);
  Engine<Claim::AtomicCas> engine(graph, source, config,
                                  DirectionPolicy::AlwaysTopDown,
                                  KernelVariant::Conventional);
  return engine.run();
}

BfsResult bfs_nonatomic(const CsrGraph& graph, VertexId source,
                        const KernelConfig& config) {
  validate(config);
  check_source(graph, source);
  Engine<Claim::PlainStore> engine(graph, source, config,
                                   DirectionPolicy::AlwaysTopDown,
                                   KernelVariant::NonAtomic);
  return engine.run();
}

BfsResult bfs_hybrid(const CsrGraph& graph, VertexId source,
                     const KernelConfig& config) {
  validate(config);
  check_source(graph, source);
  check_symmetric(graph, config);
  Engine<Claim::PlainStore> engine(
      graph, source, config,
      hybrid_policy(config, DirectionPolicy::FrontierFraction),
      KernelVariant::Hybrid);
  return engine.run();
}

BfsResult bfs_hybrid_beamer(const CsrGraph& graph, VertexId source,
                            const KernelConfig& config) {
  validate(config);
  check_source(graph, source);
  check_symmetric(graph, config);
  Engine<Claim::PlainStore> engine(
      graph, source, config, hybrid_policy(config, DirectionPolicy::Beamer),
      KernelVariant::HybridBeamer);
  return engine.run();
}

BfsResult bfs_visited_bitmap(const CsrGraph& graph, VertexId source,
                             const KernelConfig& config, bool deferred) {
  validate(config);
  check_source(graph, source);
  check_symmetric(graph, config);
  const auto policy =
      hybrid_policy(config, DirectionPolicy::FrontierFraction);
  if (deferred) {
    Engine<Claim::VisitedDeferred> engine(
        graph, source, config, policy, KernelVariant::VisitedBitmapDeferred);
    return engine.run();
  }
  Engine<Claim::VisitedInline> engine(graph, source, config, policy,
                                      KernelVariant::VisitedBitmapInline);
  return engine.run();
}

BfsResult bfs_topdown_periodic_flush(const CsrGraph& graph, VertexId source,
                                     const KernelConfig& config) {
  validate(config);
  check_source(graph, source);
  Engine<Claim::PlainStore> engine(graph, source, config,
                                   DirectionPolicy::AlwaysTopDown,
                                   KernelVariant::TopDownPeriodicFlush);
  engine.periodic_flush_ = true;
  return engine.run();
}

BfsResult run_bfs(const CsrGraph& graph, VertexId source,
                  const KernelConfig& config, const GraphStats& stats) {
  KernelConfig effective = config;
  if (stats.category == GraphCategory::LargeDiameter) {
    effective.force_top_down_only = true;
  }
  switch (effective.variant) {
    case KernelVariant::Serial: {
      check_source(graph, source);
      const auto start = Clock::now();
      BfsResult result;
      result.distances = bfs_serial(graph, source);
      result.trace.total_elapsed = Clock::now() - start;
      result.trace.variant = KernelVariant::Serial;
      result.trace.worker_count = 1;
      result.trace.source = source;
      return result;
    }
    case KernelVariant::Conventional:
      return bfs_conventional(graph, source, effective);
    case KernelVariant::NonAtomic:
      return bfs_nonatomic(graph, source, effective);
    case KernelVariant::Hybrid:
      return bfs_hybrid(graph, source, effective);
    case KernelVariant::HybridBeamer:
      return bfs_hybrid_beamer(graph, source, effective);
    case KernelVariant::VisitedBitmapInline:
      return bfs_visited_bitmap(graph, source, effective, false);
    case KernelVariant::VisitedBitmapDeferred:
      return bfs_visited_bitmap(graph, source, effective, true);
    case KernelVariant::TopDownPeriodicFlush:
      return bfs_topdown_periodic_flush(graph, source, effective);
  }
  throw ConfigError("unknown kernel variant");
}

}  // namespace parbfs
