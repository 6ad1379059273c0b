#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace parbfs {

// Vertex ids fit in 32 bits (up to 2^31-1 vertices); edge offsets are 64-bit
// so billion-edge graphs address correctly.
using VertexId = std::uint32_t;
using EdgeOffset = std::uint64_t;

// Hop counts. The unreached sentinel is the maximum representable value, so
// the relaxation test `dist[src] + 1 < dist[dst]` doubles as the visited
// check without overflow (vertex counts stay well below the sentinel).
using Distance = std::uint32_t;
inline constexpr Distance kUnreached = std::numeric_limits<Distance>::max();

inline constexpr VertexId kMaxVertexCount = 0x7fffffffu;  // 2^31 - 1

// Error categories. The CLI maps these onto its exit-code contract; library
// users can catch the base class.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed caller input: out-of-range vertex, unparseable edge list line,
// invalid source vertex, non-symmetric graph handed to a bottom-up kernel.
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values (worker_count = 0, flush_capacity = 0, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Corrupt or truncated on-disk graph file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A size that cannot be represented or a pre-sized buffer that would
// overflow. The frontier capacity fault is a programming error surfaced
// loudly instead of corrupting memory.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A parallel kernel disagreed with the serial oracle during measurement.
class CorrectnessError : public Error {
 public:
  using Error::Error;
};

// A metric that is undefined for the given input (e.g. averaging over an
// empty trace).
class MetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace parbfs
