#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parbfs/types.hpp"

namespace parbfs {

// Shared next-frontier array. Workers append only through reserve_and_flush,
// which grabs a disjoint slot range with a fetch-add on the size counter and
// copies with plain stores; reads happen only after the level barrier.
// Capacity is fixed at construction (kernels size it to vertex_count plus
// duplicate headroom) and overflow throws CapacityError instead of writing
// out of bounds.
class DenseFrontier {
 public:
  explicit DenseFrontier(std::size_t capacity) : slots_(capacity) {}

  // Plain read: the concurrency model only permits size queries outside the
  // window where workers are flushing (after the level barrier).
  std::uint64_t size() const { return size_; }
  std::size_t capacity() const { return slots_.size(); }

  std::span<const VertexId> view() const { return {slots_.data(), size()}; }
  std::span<VertexId> mutable_view() { return {slots_.data(), size()}; }

  void clear() { size_ = 0; }

  // Single-threaded seeding only.
  void push_back(VertexId v) {
    if (size_ >= slots_.size()) throw CapacityError("dense frontier overflow");
    slots_[size_++] = v;
  }

  // Declares n live slots for a bulk fill through mutable_view(). Call from
  // a single-worker section; the fill itself may then be split across
  // workers writing disjoint ranges.
  void resize(std::uint64_t n) {
    if (n > slots_.size()) throw CapacityError("dense frontier overflow");
    size_ = n;
  }

  friend std::uint64_t reserve_and_flush(class LocalFrontier& local,
                                         DenseFrontier& global);

 private:
  std::vector<VertexId> slots_;
  std::uint64_t size_ = 0;
};

// One worker's private discovery buffer. Grown geometrically; reset each
// level after the flush.
class LocalFrontier {
 public:
  LocalFrontier() = default;
  explicit LocalFrontier(std::size_t initial_capacity) {
    items_.reserve(initial_capacity);
  }

  void push(VertexId v) { items_.push_back(v); }
  void clear() { items_.clear(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::span<const VertexId> view() const { return items_; }
  VertexId* data() { return items_.data(); }
  VertexId* begin() { return items_.data(); }
  VertexId* end() { return items_.data() + items_.size(); }

 private:
  std::vector<VertexId> items_;
};

// Atomically reserves local.size() slots in the global frontier, copies the
// local entries into the reserved range, and resets the local buffer.
// Returns the start offset of the range. Concurrent flushes from distinct
// workers land in disjoint ranges, so the global entries afterwards are
// exactly the multiset union of everything flushed.
inline std::uint64_t reserve_and_flush(LocalFrontier& local,
                                       DenseFrontier& global) {
  const std::uint64_t count = local.size();
  const std::uint64_t start =
      std::atomic_ref(global.size_).fetch_add(count, std::memory_order_relaxed);
  if (start + count > global.slots_.size()) {
    throw CapacityError("dense frontier overflow: reserved range [" +
                        std::to_string(start) + ", " +
                        std::to_string(start + count) + ") exceeds capacity " +
                        std::to_string(global.slots_.size()));
  }
  const auto items = local.view();
  for (std::uint64_t i = 0; i < count; ++i) global.slots_[start + i] = items[i];
  local.clear();
  return start;
}

// Per-vertex flag frontier, one byte per vertex rather than one bit: the
// kernels store `true` from concurrent workers without atomics, and byte
// granularity keeps those same-value stores tear-free where bit packing
// would need read-modify-write.
class BitmapFrontier {
 public:
  explicit BitmapFrontier(std::uint64_t vertex_count)
      : flags_(vertex_count, 0) {}

  std::uint64_t vertex_count() const { return flags_.size(); }

  bool test(VertexId v) const { return flags_[v] != 0; }
  void mark(VertexId v) { flags_[v] = 1; }  // same-value stores race benignly
  std::uint8_t* flags() { return flags_.data(); }
  const std::uint8_t* flags() const { return flags_.data(); }

  // Count of set flags. mark() cannot maintain this under concurrency, so
  // bulk operations and the kernels' merged per-worker counts keep it
  // current at level boundaries.
  std::uint64_t population() const { return population_; }
  void set_population(std::uint64_t n) { population_ = n; }

  void clear() {
    std::fill(flags_.begin(), flags_.end(), 0);
    population_ = 0;
  }

 private:
  std::vector<std::uint8_t> flags_;
  std::uint64_t population_ = 0;
};

// Clears `out`, then sets the flag for every vertex present in `dense`.
// Duplicates collapse; population ends up as the distinct count.
void array_to_bitmap(const DenseFrontier& dense, BitmapFrontier& out);

// Writes the set-flag vertex ids into `out` in ascending order (deterministic
// output; the conversion order is otherwise free). out.size() == population.
void bitmap_to_array(const BitmapFrontier& bm, DenseFrontier& out);

// size() minus the number of distinct entries; leaves the frontier untouched.
std::uint64_t count_duplicates(const DenseFrontier& dense);
std::uint64_t count_duplicates(std::span<const VertexId> entries);

}  // namespace parbfs
