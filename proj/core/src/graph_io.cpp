#include "parbfs/graph_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "parbfs/csr_graph.hpp"
#include "parbfs/types.hpp"

namespace parbfs {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'R', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return v;
}

template <typename T>
void put_array(std::ostream& out, const std::vector<T>& data) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(T)));
  } else {
    for (T v : data) {
      unsigned char buf[sizeof(T)];
      for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<unsigned char>(std::uint64_t{v} >> (8 * i));
      }
      out.write(reinterpret_cast<const char*>(buf), sizeof(T));
    }
  }
}

template <typename T>
void get_array(std::istream& in, std::vector<T>& data, std::size_t count) {
  data.resize(count);
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(count * sizeof(T)));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      unsigned char buf[sizeof(T)];
      in.read(reinterpret_cast<char*>(buf), sizeof(T));
      std::uint64_t v = 0;
      for (std::size_t b = 0; b < sizeof(T); ++b) {
        v |= std::uint64_t{buf[b]} << (8 * b);
      }
      data[i] = static_cast<T>(v);
    }
  }
}

}  // namespace

void save_binary_csr(const CsrGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  const std::string name = path.string();
  if (!out) {
    throw InputError("cannot open file for writing: " + name);
  }
  out.write(kMagic, 4);
  put_u64(out, g.vertex_count);
  put_u64(out, g.edge_count);
  put_array(out, g.row_offsets);
  put_array(out, g.column_indices);
  out.flush();
  if (!out) {
    throw InputError("write failure on file: " + name);
  }
}

CsrGraph load_binary_csr(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  const std::string name = path.string();
  if (!in) {
    throw InputError("cannot open file for reading: " + name);
  }
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError(name + ": missing CSR1 header");
  }
  CsrGraph g;
  g.vertex_count = get_u64(in);
  g.edge_count = get_u64(in);
  if (!in) {
    throw FormatError(name + ": truncated header");
  }
  if (g.vertex_count > kMaxVertexCount) {
    throw FormatError(name + ": vertex count exceeds the supported maximum");
  }
  get_array(in, g.row_offsets, g.vertex_count + 1);
  get_array(in, g.column_indices, g.edge_count);
  if (!in) {
    throw FormatError(name + ": truncated graph data");
  }
  // Anything after the index array means the header undercounts the payload.
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw FormatError(name + ": trailing bytes after graph data");
  }
  validate_csr(g);
  g.symmetric = adjacency_is_symmetric(g);
  return g;
}

}  // namespace parbfs
