// bfsbench: load or generate a graph, run BFS kernel matrices over source
// sets, verify against the serial oracle, and emit CSV reports.
//
// Exit codes: 0 success, 1 correctness failure, 2 usage or configuration
// error, 3 input or format error.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#ifdef __linux__
#include <sched.h>
#endif

#include "CLI11.hpp"

#include "parbfs/generator.hpp"
#include "parbfs/graph_io.hpp"
#include "parbfs/graph_stats.hpp"
#include "parbfs/kernels.hpp"
#include "parbfs/timing.hpp"
#include "parbfs/trace.hpp"
#include "parbfs/types.hpp"

using namespace parbfs;

namespace {

struct GraphOpts {
  std::string path;
  std::string gen;
  bool one_based = false;
  bool no_symmetrize = false;
  double classifier_threshold = kDefaultDegreeThreshold;
};

struct SourceOpts {
  std::uint32_t count = 64;
  std::uint64_t seed = 1;
  std::string list;
};

struct MatrixOpts {
  std::string variants = "all";
  std::string baseline = "conventional";
  std::string threads;
  std::uint32_t trials = 3;
  std::uint32_t warmups = 1;
  double hybrid_threshold = 0.05;
  double alpha = 15.0;
  double beta = 18.0;
  std::uint64_t flush_capacity = 4096;
  bool pin = false;
};

void add_graph_options(CLI::App* cmd, GraphOpts& o) {
  auto* path = cmd->add_option("--graph", o.path,
                               "binary CSR file or whitespace edge list");
  auto* gen = cmd->add_option("--gen", o.gen,
                              "generator spec KIND:SCALE:EF:SEED "
                              "(KIND = uniform | kron)");
  path->excludes(gen);
  gen->excludes(path);
  cmd->add_flag("--one-based", o.one_based, "edge-list vertex ids start at 1");
  cmd->add_flag("--no-symmetrize", o.no_symmetrize,
                "load the edge list as directed");
  cmd->add_option("--classifier-threshold", o.classifier_threshold,
                  "average-degree boundary between the deep and shallow "
                  "graph categories")
      ->capture_default_str();
}

void add_source_options(CLI::App* cmd, SourceOpts& o) {
  auto* count = cmd->add_option("--sources", o.count,
                                "number of random non-zero-degree sources")
                    ->capture_default_str();
  auto* seed =
      cmd->add_option("--seed", o.seed, "source selection seed")
          ->capture_default_str();
  auto* list = cmd->add_option("--source-list", o.list,
                               "comma-separated explicit source vertices");
  list->excludes(count);
  list->excludes(seed);
}

void add_matrix_options(CLI::App* cmd, MatrixOpts& o, bool timing) {
  cmd->add_option("--variants", o.variants,
                  "comma-separated kernel variants, or \"all\"")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads,
                  "comma-separated worker counts (default: BFSBENCH_THREADS "
                  "env var, else hardware concurrency)");
  cmd->add_option("--hybrid-threshold", o.hybrid_threshold,
                  "frontier fraction that ends the top-down phase")
      ->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "edge-count rule: enter bottom-up")
      ->capture_default_str();
  cmd->add_option("--beta", o.beta, "edge-count rule: return top-down")
      ->capture_default_str();
  cmd->add_option("--flush-capacity", o.flush_capacity,
                  "local frontier bound for the periodic-flush variant")
      ->capture_default_str();
  if (timing) {
    cmd->add_option("--baseline", o.baseline,
                    "speedup denominator, must be listed in --variants")
        ->capture_default_str();
    cmd->add_option("--trials", o.trials, "timed runs per cell")
        ->capture_default_str();
    cmd->add_option("--warmups", o.warmups, "untimed runs per cell")
        ->capture_default_str();
    cmd->add_flag("--pin", o.pin,
                  "restrict the process to the first worker-count CPUs "
                  "(Linux only)");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    const auto end = text.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad " + what + ": \"" + token + "\"");
  }
}

GeneratorSpec parse_gen_spec(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) {
    throw ConfigError("generator spec must be KIND:SCALE:EF:SEED, got \"" +
                      text + "\"");
  }
  GeneratorSpec spec;
  if (parts[0] == "uniform") {
    spec.kind = GeneratorKind::UniformRandom;
  } else if (parts[0] == "kron") {
    spec.kind = GeneratorKind::Kronecker;
  } else {
    throw ConfigError("unknown generator kind \"" + parts[0] +
                      "\" (use uniform or kron)");
  }
  spec.scale = static_cast<std::uint32_t>(parse_u64(parts[1], "scale"));
  spec.edge_factor =
      static_cast<std::uint32_t>(parse_u64(parts[2], "edge factor"));
  spec.seed = parse_u64(parts[3], "seed");
  return spec;
}

struct LoadedGraph {
  CsrGraph graph;
  std::string label;
};

LoadedGraph load_graph(const GraphOpts& o) {
  if (!o.gen.empty()) {
    const GeneratorSpec spec = parse_gen_spec(o.gen);
    return {generate(spec), to_string(spec)};
  }
  if (o.path.empty()) {
    throw ConfigError("provide a graph with --graph FILE or --gen SPEC");
  }
  std::ifstream in(o.path, std::ios::binary);
  if (!in) throw InputError("cannot open " + o.path);
  char magic[4] = {};
  in.read(magic, 4);
  const bool binary =
      in.gcount() == 4 && std::string_view(magic, 4) == "CSR1";
  in.close();
  CsrGraph g =
      binary ? load_binary_csr(o.path)
             : load_edge_list(o.path,
                              o.one_based ? IndexBase::One : IndexBase::Zero,
                              !o.no_symmetrize);
  return {std::move(g), o.path};
}

std::vector<VertexId> pick_sources(const CsrGraph& g, const SourceOpts& o) {
  std::vector<VertexId> out;
  if (!o.list.empty()) {
    for (const auto& token : split(o.list, ',')) {
      const std::uint64_t v = parse_u64(token, "source vertex");
      if (v >= g.vertex_count) {
        throw ConfigError("source vertex " + token +
                          " is out of range for " +
                          std::to_string(g.vertex_count) + " vertices");
      }
      out.push_back(static_cast<VertexId>(v));
    }
    return out;
  }
  if (o.count == 0) throw ConfigError("source count must be positive");
  bool any = false;
  for (VertexId v = 0; v < g.vertex_count && !any; ++v) {
    any = g.degree(v) > 0;
  }
  if (!any) {
    throw ConfigError(
        "graph has no vertex with positive degree; pass --source-list");
  }
  std::mt19937_64 rng(o.seed);
  while (out.size() < o.count) {
    const auto v = static_cast<VertexId>(rng() % g.vertex_count);
    if (g.degree(v) > 0) out.push_back(v);
  }
  return out;
}

const std::vector<KernelVariant> kAllParallel{
    KernelVariant::Conventional,
    KernelVariant::NonAtomic,
    KernelVariant::Hybrid,
    KernelVariant::HybridBeamer,
    KernelVariant::VisitedBitmapInline,
    KernelVariant::VisitedBitmapDeferred,
    KernelVariant::TopDownPeriodicFlush,
};

std::vector<KernelVariant> parse_variants(const std::string& text) {
  if (text == "all") return kAllParallel;
  std::vector<KernelVariant> out;
  for (const auto& token : split(text, ',')) {
    const auto v = parse_kernel_variant(token);
    if (!v) throw ConfigError("unknown variant \"" + token + "\"");
    if (std::find(out.begin(), out.end(), *v) == out.end()) {
      out.push_back(*v);
    }
  }
  if (out.empty()) throw ConfigError("no variants selected");
  return out;
}

std::vector<std::uint32_t> resolve_worker_counts(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    if (const char* env = std::getenv("BFSBENCH_THREADS")) text = env;
  }
  if (text.empty()) {
    return {std::max(1u, std::thread::hardware_concurrency())};
  }
  std::vector<std::uint32_t> out;
  for (const auto& token : split(text, ',')) {
    const std::uint64_t w = parse_u64(token, "worker count");
    if (w == 0 || w > 4096) {
      throw ConfigError("worker count must be in [1, 4096], got " + token);
    }
    out.push_back(static_cast<std::uint32_t>(w));
  }
  return out;
}

KernelConfig make_config(const MatrixOpts& m, KernelVariant variant,
                         std::uint32_t workers) {
  KernelConfig cfg;
  cfg.variant = variant;
  cfg.worker_count = workers;
  cfg.hybrid_threshold_fraction = m.hybrid_threshold;
  cfg.alpha = m.alpha;
  cfg.beta = m.beta;
  cfg.flush_capacity = m.flush_capacity;
  return cfg;
}

void pin_to_first_cpus(std::uint32_t count) {
#ifdef __linux__
  cpu_set_t set;
  CPU_ZERO(&set);
  const unsigned limit = std::max(1u, count);
  for (unsigned c = 0; c < limit && c < CPU_SETSIZE; ++c) CPU_SET(c, &set);
  if (sched_setaffinity(0, sizeof(set), &set) != 0) {
    std::cerr << "warning: CPU pinning failed: " << std::strerror(errno)
              << "\n";
  }
#else
  (void)count;
  std::cerr << "warning: CPU pinning is not available on this platform\n";
#endif
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

int cmd_stats(const GraphOpts& graph_opts) {
  const auto loaded = load_graph(graph_opts);
  const GraphStats stats =
      compute_stats(loaded.graph, graph_opts.classifier_threshold);
  std::cout << "graph: " << loaded.label << "\n"
            << "vertices: " << stats.vertex_count << "\n"
            << "edges: " << stats.edge_count << "\n"
            << "average degree: " << fixed2(stats.average_degree) << "\n"
            << "max degree: " << stats.max_degree << "\n"
            << "category: " << to_string(stats.category) << "\n";
  return 0;
}

int cmd_verify(const GraphOpts& graph_opts, const SourceOpts& source_opts,
               const MatrixOpts& matrix_opts, bool inject_fault) {
  const auto loaded = load_graph(graph_opts);
  const CsrGraph& g = loaded.graph;
  const GraphStats stats =
      compute_stats(g, graph_opts.classifier_threshold);
  const auto sources = pick_sources(g, source_opts);
  const auto variants = parse_variants(matrix_opts.variants);
  const auto workers = resolve_worker_counts(matrix_opts.threads);

  std::vector<DistanceArray> oracle;
  oracle.reserve(sources.size());
  for (const VertexId s : sources) oracle.push_back(bfs_serial(g, s));

  std::cout << "graph: " << loaded.label << " (" << g.vertex_count
            << " vertices, " << g.edge_count << " directed edges, "
            << to_string(stats.category) << ")\n"
            << "checking " << variants.size() << " variants x "
            << workers.size() << " worker counts x " << sources.size()
            << " sources against the serial oracle\n";

  bool all_ok = true;
  int printed_mismatches = 0;
  std::vector<std::vector<bool>> cell_ok(
      variants.size(), std::vector<bool>(workers.size(), true));
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    for (std::size_t wi = 0; wi < workers.size(); ++wi) {
      KernelConfig cfg =
          make_config(matrix_opts, variants[vi], workers[wi]);
      for (std::size_t si = 0; si < sources.size(); ++si) {
        auto result = run_bfs(g, sources[si], cfg, stats);
        if (inject_fault) result.distances[sources[si]] += 1;
        const auto& want = oracle[si];
        for (VertexId v = 0; v < g.vertex_count; ++v) {
          if (result.distances[v] == want[v]) continue;
          cell_ok[vi][wi] = false;
          all_ok = false;
          if (printed_mismatches < 10) {
            std::cout << "mismatch: variant=" << to_string(variants[vi])
                      << " worker_count=" << workers[wi]
                      << " source=" << sources[si] << " vertex=" << v
                      << " got=" << result.distances[v]
                      << " want=" << want[v] << "\n";
            ++printed_mismatches;
          }
          break;
        }
      }
    }
  }
  if (printed_mismatches == 10) {
    std::cout << "further mismatches suppressed\n";
  }

  std::cout << std::left << std::setw(18) << "variant";
  for (const auto w : workers) std::cout << std::setw(8) << ("w=" + std::to_string(w));
  std::cout << "\n";
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    std::cout << std::setw(18) << to_string(variants[vi]);
    for (std::size_t wi = 0; wi < workers.size(); ++wi) {
      std::cout << std::setw(8) << (cell_ok[vi][wi] ? "pass" : "FAIL");
    }
    std::cout << "\n";
  }
  std::cout << (all_ok ? "verification passed\n" : "verification FAILED\n");
  return all_ok ? 0 : 1;
}

int cmd_run(const GraphOpts& graph_opts, const SourceOpts& source_opts,
            const MatrixOpts& matrix_opts, const std::string& out_dir) {
  const auto loaded = load_graph(graph_opts);
  const CsrGraph& g = loaded.graph;
  const GraphStats stats =
      compute_stats(g, graph_opts.classifier_threshold);
  const auto sources = pick_sources(g, source_opts);
  const auto variants = parse_variants(matrix_opts.variants);
  const auto workers = resolve_worker_counts(matrix_opts.threads);
  if (matrix_opts.trials == 0) throw ConfigError("trials must be positive");

  const auto baseline = parse_kernel_variant(matrix_opts.baseline);
  if (!baseline) {
    throw ConfigError("unknown baseline \"" + matrix_opts.baseline + "\"");
  }
  const auto baseline_it =
      std::find(variants.begin(), variants.end(), *baseline);
  if (baseline_it == variants.end()) {
    throw ConfigError("baseline " + matrix_opts.baseline +
                      " is not among the selected variants");
  }
  const std::size_t baseline_index =
      static_cast<std::size_t>(baseline_it - variants.begin());

  if (matrix_opts.pin) {
    pin_to_first_cpus(*std::max_element(workers.begin(), workers.end()));
  }

  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto results_path = dir / "results.csv";
  const auto traces_path = dir / "traces.csv";
  std::ofstream results(results_path, std::ios::trunc);
  std::ofstream traces(traces_path, std::ios::trunc);
  if (!results || !traces) {
    throw InputError("cannot write into output directory " + dir.string());
  }
  results << "graph,variant,worker_count,source,trials,median_ns,min_ns,"
             "max_ns,total_edges_examined,avg_duplicate_pct,bu_levels,"
             "td_levels\n";
  write_trace_csv_header(traces);

  // medians[vi][wi][si]
  std::vector<std::vector<std::vector<std::int64_t>>> medians(
      variants.size(),
      std::vector<std::vector<std::int64_t>>(
          workers.size(), std::vector<std::int64_t>(sources.size(), 0)));

  std::cout << "graph: " << loaded.label << " (" << g.vertex_count
            << " vertices, " << g.edge_count << " directed edges, "
            << to_string(stats.category) << ")\n";
  for (std::size_t wi = 0; wi < workers.size(); ++wi) {
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      const KernelConfig cfg =
          make_config(matrix_opts, variants[vi], workers[wi]);
      for (std::size_t si = 0; si < sources.size(); ++si) {
        const TimingReport report =
            time_run(g, sources[si], cfg, matrix_opts.trials,
                     matrix_opts.warmups, stats);
        medians[vi][wi][si] = report.median.count();
        const auto [min_it, max_it] = std::minmax_element(
            report.samples.begin(), report.samples.end());
        double dup_pct = 0.0;
        if (!report.median_trace.records.empty()) {
          dup_pct = average_duplicate_percentage(report.median_trace);
        }
        results << loaded.label << ',' << to_string(variants[vi]) << ','
                << workers[wi] << ',' << sources[si] << ','
                << matrix_opts.trials << ',' << report.median.count() << ','
                << min_it->count() << ',' << max_it->count() << ','
                << report.median_trace.total_edges_examined() << ','
                << fixed4(dup_pct) << ','
                << report.median_trace.level_count(TraversalPhase::BottomUp)
                << ','
                << report.median_trace.level_count(TraversalPhase::TopDown)
                << '\n';
        const std::string run_id =
            loaded.label + "/" + to_string(variants[vi]) + "/w" +
            std::to_string(workers[wi]) + "/s" +
            std::to_string(sources[si]);
        write_trace_csv(traces, report.median_trace, run_id);
      }
      std::cout << "timed " << to_string(variants[vi]) << " at w="
                << workers[wi] << " over " << sources.size() << " sources\n";
    }
  }

  std::cout << "\nspeedup vs " << to_string(variants[baseline_index])
            << " (geometric mean over sources)\n"
            << std::left << std::setw(18) << "variant";
  for (const auto w : workers) {
    std::cout << std::setw(10) << ("w=" + std::to_string(w));
  }
  std::cout << "\n";
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    std::cout << std::setw(18) << to_string(variants[vi]);
    for (std::size_t wi = 0; wi < workers.size(); ++wi) {
      double log_sum = 0.0;
      for (std::size_t si = 0; si < sources.size(); ++si) {
        const double base = static_cast<double>(
            std::max<std::int64_t>(1, medians[baseline_index][wi][si]));
        const double mine = static_cast<double>(
            std::max<std::int64_t>(1, medians[vi][wi][si]));
        log_sum += std::log(base / mine);
      }
      const double geomean =
          std::exp(log_sum / static_cast<double>(sources.size()));
      std::cout << std::setw(10) << fixed2(geomean);
    }
    std::cout << "\n";
  }
  std::cout << "\nwrote " << results_path.string() << " and "
            << traces_path.string() << "\n";
  return 0;
}

int cmd_generate(const std::string& gen, const std::string& out_path) {
  if (gen.empty()) throw ConfigError("generate needs --gen KIND:SCALE:EF:SEED");
  if (out_path.empty()) throw ConfigError("generate needs --out FILE");
  const GeneratorSpec spec = parse_gen_spec(gen);
  const CsrGraph g = generate(spec);
  save_binary_csr(g, out_path);
  std::cout << "wrote " << out_path << ": " << to_string(spec) << ", "
            << g.vertex_count << " vertices, " << g.edge_count
            << " directed edges\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shared-memory parallel BFS benchmark harness"};
  app.require_subcommand(1);

  GraphOpts graph_opts;
  SourceOpts source_opts;
  MatrixOpts matrix_opts;
  std::string out_path;
  bool inject_fault = false;

  auto* stats_cmd =
      app.add_subcommand("stats", "print graph shape and category");
  add_graph_options(stats_cmd, graph_opts);

  auto* verify_cmd = app.add_subcommand(
      "verify", "check every kernel's distances against the serial oracle");
  add_graph_options(verify_cmd, graph_opts);
  add_source_options(verify_cmd, source_opts);
  add_matrix_options(verify_cmd, matrix_opts, false);
  verify_cmd->add_flag("--inject-fault", inject_fault)->group("");

  auto* run_cmd = app.add_subcommand(
      "run", "time the variant x source x worker matrix and write CSVs");
  add_graph_options(run_cmd, graph_opts);
  add_source_options(run_cmd, source_opts);
  add_matrix_options(run_cmd, matrix_opts, true);
  run_cmd->add_option("--out", out_path, "output directory for the CSVs");

  auto* generate_cmd =
      app.add_subcommand("generate", "write a generated graph as binary CSR");
  generate_cmd->add_option("--gen", graph_opts.gen,
                           "generator spec KIND:SCALE:EF:SEED");
  generate_cmd->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*stats_cmd) return cmd_stats(graph_opts);
    if (*verify_cmd) {
      return cmd_verify(graph_opts, source_opts, matrix_opts, inject_fault);
    }
    if (*run_cmd) {
      return cmd_run(graph_opts, source_opts, matrix_opts, out_path);
    }
    if (*generate_cmd) return cmd_generate(graph_opts.gen, out_path);
  } catch (const CorrectnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
