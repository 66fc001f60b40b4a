#pragma once

#include <cstdint>
#include <limits>

namespace levystein {

/// SplitMix64 finalizer, used both for seed derivation and as the output hash.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output k of stream s is a hash of (key(s), k).
/// Streams are independent of each other and of the order they are consumed in.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : key_(mix64(master_seed ^ mix64(stream_id * 0xd1342543de82ef95ULL + 1))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }

  /// Uniform on the open interval (0,1), 53 bits.
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  /// Child stream; deterministic in (parent key, child id).
  RandomStream split(std::uint64_t child) const { return RandomStream(key_, child); }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Thread count from LEVYSTEIN_THREADS, else hardware concurrency.
unsigned thread_count();

}  // namespace levystein
