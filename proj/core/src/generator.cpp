#include "parbfs/generator.hpp"

#include <random>
#include <string>
#include <vector>

#include "parbfs/types.hpp"

namespace parbfs {

namespace {

// Raw draws from mt19937_64 mapped to ranges by hand. The standard
// distribution classes are allowed to differ between library vendors, which
// would break "identical spec => identical graph" across toolchains.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Multiply-shift reduction of a 64-bit draw onto [0, n). The modulo bias
  // is below 2^-32 for the graph sizes involved; not worth a rejection loop.
  std::uint64_t bounded(std::uint64_t n) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(rng_()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  // Uniform in [0, 1) with the full 53-bit mantissa.
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

constexpr double kQuadrantA = 0.57;
constexpr double kQuadrantB = 0.19;
constexpr double kQuadrantC = 0.19;

}  // namespace

CsrGraph generate(const GeneratorSpec& spec) {
  if (spec.scale < 1) {
    throw ConfigError("generator scale must be at least 1");
  }
  if (spec.edge_factor < 1) {
    throw ConfigError("generator edge factor must be at least 1");
  }
  if (spec.scale > 30) {
    throw CapacityError("generator scale " + std::to_string(spec.scale) +
                        " exceeds the 32-bit vertex id space");
  }
  const std::uint64_t n = std::uint64_t{1} << spec.scale;
  const std::uint64_t samples = n * spec.edge_factor;

  Sampler sampler(spec.seed);
  std::vector<EdgePair> edges;
  edges.reserve(samples);

  switch (spec.kind) {
    case GeneratorKind::UniformRandom:
      for (std::uint64_t i = 0; i < samples; ++i) {
        auto src = static_cast<VertexId>(sampler.bounded(n));
        auto dst = static_cast<VertexId>(sampler.bounded(n));
        edges.emplace_back(src, dst);
      }
      break;
    case GeneratorKind::Kronecker:
      for (std::uint64_t i = 0; i < samples; ++i) {
        std::uint64_t row = 0;
        std::uint64_t col = 0;
        for (std::uint32_t level = 0; level < spec.scale; ++level) {
          const double r = sampler.unit();
          row <<= 1;
          col <<= 1;
          if (r < kQuadrantA) {
            // top-left: neither bit set
          } else if (r < kQuadrantA + kQuadrantB) {
            col |= 1;
          } else if (r < kQuadrantA + kQuadrantB + kQuadrantC) {
            row |= 1;
          } else {
            row |= 1;
            col |= 1;
          }
        }
        edges.emplace_back(static_cast<VertexId>(row),
                           static_cast<VertexId>(col));
      }
      break;
  }
  return build_csr(edges, n, /*symmetrize=*/true);
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::UniformRandom:
      return "uniform";
    case GeneratorKind::Kronecker:
      return "kron";
  }
  return "unknown";
}

std::string to_string(const GeneratorSpec& spec) {
  return to_string(spec.kind) + ":" + std::to_string(spec.scale) + ":" +
         std::to_string(spec.edge_factor) + ":" + std::to_string(spec.seed);
}

}  // namespace parbfs
