#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "parbfs/generator.hpp"
#include "parbfs/graph_stats.hpp"
#include "parbfs/kernels.hpp"
#include "support/graphs.hpp"

using namespace parbfs;

namespace {

BfsResult run_variant(KernelVariant variant, const CsrGraph& g,
                      VertexId source, KernelConfig cfg) {
  cfg.variant = variant;
  switch (variant) {
    case KernelVariant::Conventional:
      return bfs_conventional(g, source, cfg);
    case KernelVariant::NonAtomic:
      return bfs_nonatomic(g, source, cfg);
    case KernelVariant::Hybrid:
      return bfs_hybrid(g, source, cfg);
    case KernelVariant::HybridBeamer:
      return bfs_hybrid_beamer(g, source, cfg);
    case KernelVariant::VisitedBitmapInline:
      return bfs_visited_bitmap(g, source, cfg, false);
    case KernelVariant::VisitedBitmapDeferred:
      return bfs_visited_bitmap(g, source, cfg, true);
    case KernelVariant::TopDownPeriodicFlush:
      return bfs_topdown_periodic_flush(g, source, cfg);
    case KernelVariant::Serial:
      break;
  }
  REQUIRE(false);
  return {};
}

const std::vector<KernelVariant> kParallelVariants{
    KernelVariant::Conventional,
    KernelVariant::NonAtomic,
    KernelVariant::Hybrid,
    KernelVariant::HybridBeamer,
    KernelVariant::VisitedBitmapInline,
    KernelVariant::VisitedBitmapDeferred,
    KernelVariant::TopDownPeriodicFlush,
};

void check_trace_shape(const BfsResult& r, const CsrGraph& g,
                       VertexId source) {
  const auto& t = r.trace;
  CHECK(t.source == source);
  std::uint64_t distinct_sum = 0;
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& rec = t.records[i];
    CHECK(rec.depth == i);
    CHECK(rec.frontier_size == rec.distinct_size + rec.duplicate_count);
    distinct_sum += rec.distinct_size;
  }
  CHECK(distinct_sum == support::reachable_count(r.distances));
  (void)g;
}

std::vector<TraversalPhase> phases_of(const TraversalTrace& t) {
  std::vector<TraversalPhase> out;
  for (const auto& rec : t.records) out.push_back(rec.phase);
  return out;
}

// depth -> sorted distinct ids, collected through the level observer
using LevelSets = std::map<std::uint32_t, std::vector<VertexId>>;

LevelObserver collect_into(LevelSets& sets) {
  return [&sets](const LevelSnapshot& snap) {
    std::vector<VertexId> ids(snap.entries.begin(), snap.entries.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    sets[snap.depth] = std::move(ids);
  };
}

VertexId max_degree_vertex(const CsrGraph& g) {
  VertexId best = 0;
  for (VertexId v = 1; v < g.vertex_count; ++v) {
    if (g.degree(v) > g.degree(best)) best = v;
  }
  return best;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("serial distances on a path") {
  const auto g = support::make_path(3);
  const auto dist = bfs_serial(g, 0);
  CHECK(dist == DistanceArray{0, 1, 2});
  CHECK(bfs_serial(g, 1) == DistanceArray{1, 0, 1});
}

TEST_CASE("serial marks unreachable vertices") {
  const auto g = support::from_edges({{0, 1}}, 4);
  const auto dist = bfs_serial(g, 0);
  CHECK(dist == DistanceArray{0, 1, kUnreached, kUnreached});
}

TEST_CASE("serial matches the relaxation oracle on random graphs") {
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const auto g = support::random_graph(256, 1000, seed);
    CHECK(bfs_serial(g, 0) == support::relaxation_distances(g, 0));
  }
  const auto lolli = support::make_lollipop(6, 10);
  CHECK(bfs_serial(lolli, 12) == support::relaxation_distances(lolli, 12));
}

TEST_CASE("out-of-range source is rejected") {
  const auto g = support::make_path(3);
  CHECK_THROWS_AS(bfs_serial(g, 3), InputError);
  KernelConfig cfg;
  CHECK_THROWS_AS(bfs_conventional(g, 99, cfg), InputError);
  cfg.variant = KernelVariant::Serial;
  CHECK_THROWS_AS(run_bfs(g, 99, cfg, compute_stats(g)), InputError);
}

TEST_CASE("every variant matches the oracle across graphs and workers") {
  struct Named {
    const char* name;
    CsrGraph graph;
    VertexId source;
  };
  const std::vector<Named> suite{
      {"path17", support::make_path(17), 0},
      {"path17-mid", support::make_path(17), 8},
      {"star16", support::make_star(16), 0},
      {"star16-leaf", support::make_star(16), 5},
      {"bipartite", support::make_complete_bipartite(5, 9), 0},
      {"clique8", support::make_clique(8), 3},
      {"lollipop", support::make_lollipop(8, 8), 15},
      {"wide-tail", support::make_wide_tail_lollipop(6, 5), 0},
      {"circulant", support::make_circulant(48, {2, 5}), 7},
      {"random96", support::random_graph(96, 400, 11), 1},
      {"two-components", support::from_edges({{0, 1}, {2, 3}, {3, 4}}, 6),
       0},
  };
  for (const auto& item : suite) {
    CAPTURE(item.name);
    const auto oracle = support::relaxation_distances(item.graph, item.source);
    for (const KernelVariant variant : kParallelVariants) {
      CAPTURE(to_string(variant));
      for (const std::uint32_t workers : {1u, 2u, 3u, 8u}) {
        CAPTURE(workers);
        KernelConfig cfg;
        cfg.worker_count = workers;
        const auto r = run_variant(variant, item.graph, item.source, cfg);
        CHECK(r.distances == oracle);
        CHECK(r.trace.variant == variant);
        CHECK(r.trace.worker_count == workers);
        check_trace_shape(r, item.graph, item.source);
      }
    }
  }
}

TEST_CASE("star frontier series from the hub") {
  const auto g = support::make_star(64);
  for (const std::uint32_t workers : {1u, 4u}) {
    KernelConfig cfg;
    cfg.worker_count = workers;
    const auto r = bfs_conventional(g, 0, cfg);
    const auto series = frontier_size_series(r.trace);
    REQUIRE(series.size() == 2);
    CHECK(series[0] == std::pair<std::uint32_t, std::uint64_t>{0, 1});
    CHECK(series[1] == std::pair<std::uint32_t, std::uint64_t>{1, 64});
    CHECK(r.trace.records[0].duplicate_count == 0);
    CHECK(r.trace.records[1].duplicate_count == 0);
    // the hub's full adjacency is scanned once
    CHECK(r.trace.records[0].edges_examined == 64);
    CHECK(r.trace.records[1].edges_examined == 64);
  }
}

TEST_CASE("a zero-degree source yields a single level") {
  const auto g = support::make_edgeless(5);
  KernelConfig cfg;
  cfg.worker_count = 2;
  const auto r = bfs_conventional(g, 3, cfg);
  DistanceArray want(5, kUnreached);
  want[3] = 0;
  CHECK(r.distances == want);
  REQUIRE(r.trace.records.size() == 1);
  CHECK(r.trace.records[0].frontier_size == 1);
  CHECK(r.trace.records[0].edges_examined == 0);
}

TEST_CASE("small dense graph goes bottom-up from the start") {
  // 17 vertices at the default 5% rule: even a single-vertex frontier is not
  // below 0.85, so the very first iteration runs bottom-up.
  const auto g = support::make_star(16);
  KernelConfig cfg;
  cfg.worker_count = 2;
  const auto r = bfs_hybrid(g, 0, cfg);
  REQUIRE_FALSE(r.trace.records.empty());
  CHECK(r.trace.records[0].phase == TraversalPhase::BottomUp);
  CHECK(r.distances == support::relaxation_distances(g, 0));
  CHECK(r.trace.level_count(TraversalPhase::BottomUp) ==
        r.trace.records.size());
}

TEST_CASE("threshold one keeps the hybrid top-down and equal to non-atomic") {
  const auto g = support::make_path(10);
  KernelConfig plain_cfg;
  plain_cfg.worker_count = 2;
  LevelSets plain_sets;
  plain_cfg.level_observer = collect_into(plain_sets);
  const auto plain = bfs_nonatomic(g, 0, plain_cfg);

  KernelConfig hybrid_cfg;
  hybrid_cfg.worker_count = 2;
  hybrid_cfg.hybrid_threshold_fraction = 1.0;
  LevelSets hybrid_sets;
  hybrid_cfg.level_observer = collect_into(hybrid_sets);
  const auto hybrid = bfs_hybrid(g, 0, hybrid_cfg);

  CHECK(hybrid.trace.level_count(TraversalPhase::BottomUp) == 0);
  CHECK(hybrid.distances == plain.distances);
  CHECK(hybrid_sets == plain_sets);
  CHECK(phases_of(hybrid.trace) == phases_of(plain.trace));
}

TEST_CASE("long path stays top-down under the size fraction") {
  const auto g = support::make_path(1000);
  KernelConfig cfg;
  cfg.worker_count = 4;
  const auto r = bfs_hybrid(g, 0, cfg);
  CHECK(r.trace.records.size() == 1000);
  CHECK(r.trace.level_count(TraversalPhase::BottomUp) == 0);
  CHECK(r.distances == support::relaxation_distances(g, 0));
}

TEST_CASE("size-fraction phases follow the replayed rule") {
  const auto graphs = std::vector<CsrGraph>{
      support::make_circulant(100, {2, 3, 50}),
      support::make_complete_bipartite(8, 64),
      support::random_graph(200, 1400, 21),
  };
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    CAPTURE(i);
    const auto& g = graphs[i];
    KernelConfig cfg;
    cfg.worker_count = 3;
    const auto r = bfs_hybrid(g, 0, cfg);
    CHECK(phases_of(r.trace) == support::simulate_phases(g, 0, cfg, false));
    CHECK(r.distances == support::relaxation_distances(g, 0));
  }
}

TEST_CASE("edge-count phases follow the replayed rule") {
  struct Item {
    CsrGraph graph;
    VertexId source;
  };
  const std::vector<Item> items{
      {support::make_path(10), 0},
      {support::make_circulant(100, {2, 3, 50}), 7},
      {support::make_complete_bipartite(8, 64), 0},
      {generate({GeneratorKind::Kronecker, 10, 8, 77}), 0},
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    CAPTURE(i);
    const auto& g = items[i].graph;
    const VertexId src =
        g.degree(items[i].source) > 0 ? items[i].source : max_degree_vertex(g);
    KernelConfig cfg;
    cfg.worker_count = 2;
    const auto r = bfs_hybrid_beamer(g, src, cfg);
    CHECK(phases_of(r.trace) == support::simulate_phases(g, src, cfg, true));
    CHECK(r.distances == support::relaxation_distances(g, src));
  }
}

TEST_CASE("edge-count policy limits") {
  const auto g = support::make_circulant(100, {2, 3, 50});
  KernelConfig cfg;
  cfg.worker_count = 2;

  SUBCASE("tiny alpha stays top-down until the graph is exhausted") {
    cfg.alpha = 1e-9;
    const auto r = bfs_hybrid_beamer(g, 0, cfg);
    CHECK(phases_of(r.trace) == support::simulate_phases(g, 0, cfg, true));
    REQUIRE_FALSE(r.trace.records.empty());
    for (std::size_t i = 0; i + 1 < r.trace.records.size(); ++i) {
      CHECK(r.trace.records[i].phase == TraversalPhase::TopDown);
    }
    // once the last vertex is discovered the unvisited edge budget is zero,
    // so the final drain-only frontier trips the switch
    CHECK(r.trace.records.back().phase == TraversalPhase::BottomUp);
  }
  SUBCASE("huge alpha switches at the seed and a tight beta returns") {
    cfg.alpha = 1e9;
    const auto r = bfs_hybrid_beamer(g, 0, cfg);
    REQUIRE_FALSE(r.trace.records.empty());
    CHECK(r.trace.records[0].phase == TraversalPhase::BottomUp);
    CHECK(phases_of(r.trace) == support::simulate_phases(g, 0, cfg, true));
  }
}

TEST_CASE("hybrid beats conventional on a generated power-law graph") {
  const auto g = generate({GeneratorKind::Kronecker, 12, 16, 3});
  const VertexId src = max_degree_vertex(g);
  const auto oracle = support::relaxation_distances(g, src);
  KernelConfig cfg;
  cfg.worker_count = 4;

  const auto conventional = bfs_conventional(g, src, cfg);
  const auto hybrid = bfs_hybrid(g, src, cfg);
  CHECK(conventional.distances == oracle);
  CHECK(hybrid.distances == oracle);
  CHECK(hybrid.trace.level_count(TraversalPhase::BottomUp) >= 1);
  CHECK(phases_of(hybrid.trace) == support::simulate_phases(g, src, cfg, false));
  CHECK(hybrid.trace.total_edges_examined() <
        conventional.trace.total_edges_examined());
}

TEST_CASE("deferred distance writes go out in ascending order") {
  SUBCASE("single worker covers a whole level") {
    const auto g = support::make_star(32);
    KernelConfig cfg;
    cfg.worker_count = 1;
    cfg.hybrid_threshold_fraction = 1.0;  // keep every level top-down
    std::vector<std::vector<VertexId>> produced;
    cfg.level_observer = [&](const LevelSnapshot& snap) {
      produced.emplace_back(snap.entries.begin(), snap.entries.end());
    };
    const auto r = bfs_visited_bitmap(g, 0, cfg, true);
    CHECK(r.distances == support::relaxation_distances(g, 0));
    REQUIRE(produced.size() == 2);  // seed, then the leaf level
    CHECK(std::is_sorted(produced[1].begin(), produced[1].end()));
  }
  SUBCASE("each worker contributes one ascending block") {
    const auto g = support::make_complete_bipartite(8, 64);
    const std::uint32_t workers = 4;
    KernelConfig cfg;
    cfg.worker_count = workers;
    cfg.hybrid_threshold_fraction = 1.0;
    LevelSets sets;
    std::map<std::uint32_t, std::uint64_t> descents;
    cfg.level_observer = [&](const LevelSnapshot& snap) {
      std::uint64_t d = 0;
      for (std::size_t i = 1; i < snap.entries.size(); ++i) {
        if (snap.entries[i] < snap.entries[i - 1]) ++d;
      }
      descents[snap.depth] = d;
    };
    const auto r = bfs_visited_bitmap(g, 0, cfg, true);
    CHECK(r.distances == support::relaxation_distances(g, 0));
    for (const auto& [depth, d] : descents) {
      CAPTURE(depth);
      CHECK(d < workers);
    }
  }
}

TEST_CASE("racy visited claims still produce exact distances") {
  const auto g = support::make_complete_bipartite(8, 8);
  const auto oracle = support::relaxation_distances(g, 0);
  for (const bool deferred : {false, true}) {
    CAPTURE(deferred);
    KernelConfig cfg;
    cfg.worker_count = 8;
    cfg.racy_visited_claim = true;
    const auto r = bfs_visited_bitmap(g, 0, cfg, deferred);
    CHECK(r.distances == oracle);
    check_trace_shape(r, g, 0);
  }
}

TEST_CASE("periodic flush bounds the local frontier") {
  const auto g = support::make_star(64);

  SUBCASE("capacity eight splits the hub level into eight flushes") {
    KernelConfig cfg;
    cfg.worker_count = 1;
    cfg.flush_capacity = 8;
    const auto r = bfs_topdown_periodic_flush(g, 0, cfg);
    CHECK(r.distances == support::relaxation_distances(g, 0));
    REQUIRE(r.trace.records.size() == 2);
    CHECK(r.trace.records[0].flush_events == 8);
    CHECK(r.trace.records[1].flush_events == 0);
  }
  SUBCASE("a capacity past the level size degenerates to one flush") {
    KernelConfig cfg;
    cfg.worker_count = 2;
    cfg.flush_capacity = 1 << 20;
    LevelSets periodic_sets;
    cfg.level_observer = collect_into(periodic_sets);
    const auto periodic = bfs_topdown_periodic_flush(g, 0, cfg);

    KernelConfig plain_cfg;
    plain_cfg.worker_count = 2;
    LevelSets plain_sets;
    plain_cfg.level_observer = collect_into(plain_sets);
    const auto plain = bfs_nonatomic(g, 0, plain_cfg);

    CHECK(periodic.distances == plain.distances);
    CHECK(periodic_sets == plain_sets);
    REQUIRE(periodic.trace.records.size() == plain.trace.records.size());
    for (std::size_t i = 0; i < plain.trace.records.size(); ++i) {
      CHECK(periodic.trace.records[i].flush_events ==
            plain.trace.records[i].flush_events);
    }
  }
  SUBCASE("capacity one flushes every discovery") {
    KernelConfig cfg;
    cfg.worker_count = 2;
    cfg.flush_capacity = 1;
    const auto r = bfs_topdown_periodic_flush(g, 0, cfg);
    CHECK(r.distances == support::relaxation_distances(g, 0));
    std::uint64_t flushes = 0;
    for (const auto& rec : r.trace.records) flushes += rec.flush_events;
    CHECK(flushes == 64);
  }
  SUBCASE("capacity zero is rejected") {
    KernelConfig cfg;
    cfg.flush_capacity = 0;
    CHECK_THROWS_AS(bfs_topdown_periodic_flush(g, 0, cfg), ConfigError);
  }
}

TEST_CASE("direction switching demands a symmetric graph") {
  const auto chain = support::from_edges({{0, 1}, {1, 2}}, 3, false);
  REQUIRE_FALSE(chain.symmetric);
  KernelConfig cfg;
  CHECK_THROWS_AS(bfs_hybrid(chain, 0, cfg), InputError);
  CHECK_THROWS_AS(bfs_hybrid_beamer(chain, 0, cfg), InputError);
  CHECK_THROWS_AS(bfs_visited_bitmap(chain, 0, cfg, true), InputError);

  cfg.force_top_down_only = true;
  const auto r = bfs_hybrid(chain, 0, cfg);
  CHECK(r.distances == DistanceArray{0, 1, 2});
  CHECK(r.trace.level_count(TraversalPhase::BottomUp) == 0);

  // top-down-only kernels take directed input as-is
  const auto conv = bfs_conventional(chain, 0, KernelConfig{});
  CHECK(conv.distances == DistanceArray{0, 1, 2});
}

TEST_CASE("the dispatcher forces sparse graphs top-down") {
  // ring plus 33 long chords: average degree 2.66, classified deep
  std::vector<EdgePair> edges;
  for (VertexId i = 0; i < 100; ++i) edges.push_back({i, (i + 1) % 100});
  for (VertexId i = 0; i < 33; ++i) edges.push_back({i, i + 50});
  const auto g = support::from_edges(std::move(edges), 100);
  const auto stats = compute_stats(g);
  CHECK(stats.average_degree == doctest::Approx(2.66));
  CHECK(stats.category == GraphCategory::LargeDiameter);

  KernelConfig cfg;
  cfg.variant = KernelVariant::Hybrid;
  cfg.worker_count = 2;
  const auto dispatched = run_bfs(g, 0, cfg, stats);
  CHECK(dispatched.trace.level_count(TraversalPhase::BottomUp) == 0);
  CHECK(dispatched.distances == support::relaxation_distances(g, 0));

  // invoked directly, the kernel is free to follow the size rule
  const auto direct = bfs_hybrid(g, 0, cfg);
  CHECK(phases_of(direct.trace) == support::simulate_phases(g, 0, cfg, false));
  CHECK(direct.distances == dispatched.distances);

  // a star is sparse too, and its leaf level must trip the rule when free
  const auto star = support::make_star(40);
  const auto star_stats = compute_stats(star);
  CHECK(star_stats.category == GraphCategory::LargeDiameter);
  const auto star_forced = run_bfs(star, 0, cfg, star_stats);
  CHECK(star_forced.trace.level_count(TraversalPhase::BottomUp) == 0);
  const auto star_free = bfs_hybrid(star, 0, cfg);
  CHECK(star_free.trace.level_count(TraversalPhase::BottomUp) == 1);
  CHECK(star_free.distances == star_forced.distances);
}

TEST_CASE("the dispatcher lets dense graphs switch direction") {
  // degree 15 everywhere: offsets 1..7 plus the diameter chord
  const auto g = support::make_circulant(100, {2, 3, 4, 5, 6, 7, 50});
  const auto stats = compute_stats(g);
  CHECK(stats.average_degree == doctest::Approx(15.0));
  CHECK(stats.category == GraphCategory::SmallDiameter);

  KernelConfig cfg;
  cfg.variant = KernelVariant::Hybrid;
  cfg.worker_count = 2;
  const auto r = run_bfs(g, 0, cfg, stats);
  CHECK(r.trace.level_count(TraversalPhase::BottomUp) >= 1);
  CHECK(r.distances == support::relaxation_distances(g, 0));
}

TEST_CASE("the dispatcher runs the serial variant with a bare trace") {
  const auto g = support::make_path(6);
  KernelConfig cfg;
  cfg.variant = KernelVariant::Serial;
  const auto r = run_bfs(g, 0, cfg, compute_stats(g));
  CHECK(r.distances == support::relaxation_distances(g, 0));
  CHECK(r.trace.records.empty());
  CHECK(r.trace.worker_count == 1);
  CHECK(r.trace.variant == KernelVariant::Serial);
  CHECK(r.trace.total_elapsed.count() >= 0);
}

TEST_CASE("config validation") {
  KernelConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.worker_count = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.hybrid_threshold_fraction = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.hybrid_threshold_fraction = 1.0;
  CHECK_NOTHROW(validate(cfg));
  cfg.hybrid_threshold_fraction = 1.5;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.beta = -1.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.flush_capacity = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("variant labels round-trip") {
  for (const KernelVariant v :
       {KernelVariant::Serial, KernelVariant::Conventional,
        KernelVariant::NonAtomic, KernelVariant::Hybrid,
        KernelVariant::HybridBeamer, KernelVariant::VisitedBitmapInline,
        KernelVariant::VisitedBitmapDeferred,
        KernelVariant::TopDownPeriodicFlush}) {
    const auto token = to_string(v);
    const auto parsed = parse_kernel_variant(token);
    REQUIRE(parsed.has_value());
    CHECK(*parsed == v);
  }
  CHECK(to_string(KernelVariant::HybridBeamer) == "hybrid-beamer");
  CHECK(to_string(KernelVariant::TopDownPeriodicFlush) == "periodic-flush");
  CHECK_FALSE(parse_kernel_variant("dfs").has_value());
  CHECK(to_string(TraversalPhase::TopDown) == "top-down");
  CHECK(to_string(TraversalPhase::BottomUp) == "bottom-up");
}

TEST_CASE("level synchronization admits no changed-value stores") {
  KernelConfig cfg;
  cfg.worker_count = 8;
  cfg.validate_same_value_stores = true;
  for (const auto& g :
       {support::random_graph(128, 700, 31), support::make_clique(24),
        support::make_complete_bipartite(16, 16)}) {
    const auto r = bfs_nonatomic(g, 0, cfg);
    CHECK(r.trace.same_value_violations == 0);
    CHECK(r.distances == support::relaxation_distances(g, 0));
  }
}

TEST_CASE("top-down edge counts equal the reached degree sum") {
  const auto g = support::random_graph(160, 900, 13);
  KernelConfig cfg;
  cfg.worker_count = 3;
  const auto r = bfs_conventional(g, 2, cfg);
  std::uint64_t want = 0;
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    if (r.distances[v] != kUnreached) want += g.degree(v);
  }
  CHECK(r.trace.total_edges_examined() == want);
}

}  // TEST_SUITE
