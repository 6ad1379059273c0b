#pragma once

#include <cstdint>
#include <string>

#include "parbfs/csr_graph.hpp"

namespace parbfs {

enum class GeneratorKind { UniformRandom, Kronecker };

// Synthetic graph request. vertex_count = 2^scale; edge_factor is the
// average out-degree target before symmetrization and dedup. Identical specs
// produce identical graphs: the sampler draws from a fixed 64-bit engine
// without going through distribution classes, so results do not depend on
// the standard library implementation.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::UniformRandom;
  std::uint32_t scale = 1;        // >= 1
  std::uint32_t edge_factor = 1;  // >= 1
  std::uint64_t seed = 0;
};

// Draws edge_factor * 2^scale endpoint pairs (uniformly for UniformRandom,
// by recursive-matrix quadrant descent for Kronecker), then symmetrizes and
// canonicalizes. Kronecker partition probabilities are (0.57, 0.19, 0.19,
// 0.05). Scales past the 32-bit vertex id space raise CapacityError.
CsrGraph generate(const GeneratorSpec& spec);

std::string to_string(GeneratorKind kind);
std::string to_string(const GeneratorSpec& spec);

}  // namespace parbfs
