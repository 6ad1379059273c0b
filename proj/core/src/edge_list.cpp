#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "parbfs/csr_graph.hpp"
#include "parbfs/graph_io.hpp"
#include "parbfs/types.hpp"

namespace parbfs {

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#' || c == '%';
  }
  return true;  // nothing but whitespace
}

}  // namespace

CsrGraph load_edge_list(const std::filesystem::path& path, IndexBase base,
                        bool symmetrize,
                        std::optional<std::uint64_t> vertex_count_hint) {
  std::ifstream in(path);
  const std::string name = path.string();
  if (!in) {
    throw InputError("cannot open edge list file: " + name);
  }

  std::vector<EdgePair> edges;
  std::uint64_t max_seen = 0;
  bool any_vertex = false;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    std::istringstream fields(line);
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!(fields >> a >> b)) {
      throw InputError(name + ":" + std::to_string(line_no) +
                       ": expected two integer vertex ids");
    }
    // Trailing fields (weights, timestamps) are ignored.
    const std::int64_t shift = (base == IndexBase::One) ? 1 : 0;
    a -= shift;
    b -= shift;
    if (a < 0 || b < 0) {
      throw InputError(name + ":" + std::to_string(line_no) +
                       ": vertex id below the index base");
    }
    if (a > kMaxVertexCount || b > kMaxVertexCount) {
      throw InputError(name + ":" + std::to_string(line_no) +
                       ": vertex id exceeds the supported maximum");
    }
    edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
    max_seen = std::max({max_seen, static_cast<std::uint64_t>(a),
                         static_cast<std::uint64_t>(b)});
    any_vertex = true;
  }
  if (in.bad()) {
    throw InputError("read failure on edge list file: " + name);
  }

  std::uint64_t vertex_count = any_vertex ? max_seen + 1 : 0;
  if (vertex_count_hint) {
    if (*vertex_count_hint < vertex_count) {
      throw InputError(name + ": declared vertex count " +
                       std::to_string(*vertex_count_hint) +
                       " is smaller than the largest referenced vertex + 1 (" +
                       std::to_string(vertex_count) + ")");
    }
    vertex_count = *vertex_count_hint;
  }
  return build_csr(edges, vertex_count, symmetrize);
}

}  // namespace parbfs
