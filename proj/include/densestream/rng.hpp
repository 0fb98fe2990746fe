#pragma once

#include <cstdint>
#include <vector>

namespace densestream {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based generator keyed by (seed, stream, position). The value at a
// position depends only on that key, so replays are bit-identical no matter
// how the consumer buffers its input. Distinct `stream` ids give independent
// sequences; windows, generators and shuffles each get their own stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(splitmix64(splitmix64(seed) ^ (0xda3e39cb94b95bdbULL * (stream + 1)))) {}

  std::uint64_t next() { return splitmix64(base_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // unbiased uniform integer in [0, bound); bound must be positive
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t reject = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= reject) return r % bound;
    }
  }

  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Named sub-streams so independent random choices never share a counter.
namespace rng_stream {
inline constexpr std::uint64_t kGraphGen = 1;
inline constexpr std::uint64_t kShuffle = 2;
inline constexpr std::uint64_t kReservoir = 3;
inline constexpr std::uint64_t kDynamics = 4;
inline constexpr std::uint64_t kWindowBase = 1000;  // window i uses kWindowBase + i
}  // namespace rng_stream

template <typename T>
void fisher_yates(std::vector<T>& items, CounterRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace densestream
