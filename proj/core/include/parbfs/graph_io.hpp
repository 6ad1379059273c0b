#pragma once

#include <filesystem>
#include <optional>

#include "parbfs/csr_graph.hpp"

namespace parbfs {

enum class IndexBase { Zero, One };

// Loads a whitespace-separated "u v" edge list. Lines starting with '%' or
// '#' are comments (MatrixMarket headers load as plain comment lines; full
// MatrixMarket validation is out of scope). Tokens past the first two on a
// line are ignored, so weighted lists load too. One-based input is shifted
// to zero-based.
//
// vertex_count_hint fixes the vertex count; without it the count is inferred
// as max endpoint + 1 (an empty file yields an empty graph of the declared
// or inferred size). Unparseable tokens raise InputError with the line
// number.
CsrGraph load_edge_list(const std::filesystem::path& path, IndexBase base,
                        bool symmetrize,
                        std::optional<std::uint64_t> vertex_count_hint = {});

// Binary CSR format, little-endian:
//   magic "CSR1" (4 bytes)
//   u64 vertex_count
//   u64 edge_count
//   (vertex_count + 1) x u64 row_offsets
//   edge_count x u32 column_indices
//
// save/load round-trip losslessly; saving the same graph twice produces
// byte-identical files. Bad magic or truncation raises FormatError naming
// the field that failed.
void save_binary_csr(const CsrGraph& graph, const std::filesystem::path& path);
CsrGraph load_binary_csr(const std::filesystem::path& path);

}  // namespace parbfs
