#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace cyclesvd {

inline constexpr std::uint64_t kDefaultSeed = 42;

// SplitMix64 finalizer; also used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Sub-seed for stream `index` of `seed` (e.g. one per Monte-Carlo trial), so
// results do not depend on evaluation order or thread count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// xoshiro256** seeded by SplitMix64. Integer output is bit-identical across
// platforms; doubles are formed from the top 53 bits. Gaussian draws use the
// Box-Muller transform, exponential draws use -log(1 - u).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  // Uniform integer on [0, n), unbiased (Lemire's multiply-shift with rejection).
  std::size_t index(std::size_t n);
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  // Rate-1 exponential.
  double exponential();

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cyclesvd
