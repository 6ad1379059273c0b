#include "parbfs/kernel_config.hpp"

#include <string>

#include "parbfs/types.hpp"

namespace parbfs {

void validate(const KernelConfig& config) {
  if (config.worker_count < 1) {
    throw ConfigError("worker count must be at least 1");
  }
  if (!(config.hybrid_threshold_fraction > 0.0) ||
      config.hybrid_threshold_fraction > 1.0) {
    throw ConfigError("hybrid threshold fraction must be in (0, 1]");
  }
  if (!(config.alpha > 0.0)) {
    throw ConfigError("alpha must be positive");
  }
  if (!(config.beta > 0.0)) {
    throw ConfigError("beta must be positive");
  }
  if (config.flush_capacity < 1) {
    throw ConfigError("flush capacity must be at least 1");
  }
}

std::string to_string(KernelVariant variant) {
  switch (variant) {
    case KernelVariant::Serial:
      return "serial";
    case KernelVariant::Conventional:
      return "conventional";
    case KernelVariant::NonAtomic:
      return "nonatomic";
    case KernelVariant::Hybrid:
      return "hybrid";
    case KernelVariant::HybridBeamer:
      return "hybrid-beamer";
    case KernelVariant::VisitedBitmapInline:
      return "visited-inline";
    case KernelVariant::VisitedBitmapDeferred:
      return "visited-deferred";
    case KernelVariant::TopDownPeriodicFlush:
      return "periodic-flush";
  }
  return "unknown";
}

std::string to_string(TraversalPhase phase) {
  return phase == TraversalPhase::TopDown ? "top-down" : "bottom-up";
}

std::optional<KernelVariant> parse_kernel_variant(const std::string& token) {
  if (token == "serial") return KernelVariant::Serial;
  if (token == "conventional") return KernelVariant::Conventional;
  if (token == "nonatomic") return KernelVariant::NonAtomic;
  if (token == "hybrid") return KernelVariant::Hybrid;
  if (token == "hybrid-beamer") return KernelVariant::HybridBeamer;
  if (token == "visited-inline") return KernelVariant::VisitedBitmapInline;
  if (token == "visited-deferred") return KernelVariant::VisitedBitmapDeferred;
  if (token == "periodic-flush") return KernelVariant::TopDownPeriodicFlush;
  return std::nullopt;
}

}  // namespace parbfs
