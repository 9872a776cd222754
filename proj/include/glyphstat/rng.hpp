#pragma once
// Deterministic PRNG used everywhere randomness is needed.
//
// The generator is SplitMix64 (Vigna 2015): a 64-bit counter advanced by the
// golden-gamma constant and passed through an avalanching finalizer. Output
// depends only on the seed, so identical seeds give identical streams on any
// platform. Because the finalizer decorrelates adjacent counter values,
// substreams are formed by plain XOR: substream(seed, i) = seed ^ i. Every
// ensemble (scorecard corpora, permutation trials) indexes its substreams
// this way, which keeps results independent of execution order.

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace glyphstat {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // In-place Fisher-Yates; uniform over all permutations.
  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) noexcept {
  return seed ^ index;
}

// Samples an index 0..n-1 from a fixed non-negative weight vector by inverse
// CDF lookup. Construction normalizes the cumulative table so the last entry
// is exactly 1.0.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::vector<double>& weights);

  std::size_t size() const noexcept { return cdf_.size(); }
  std::size_t sample(SplitMix64& rng) const noexcept;

 private:
  std::vector<double> cdf_;
};

// Zipfian weights over ranks 1..n: weight(r) = r^(-exponent).
std::vector<double> zipf_weights(double exponent, std::size_t n);

}  // namespace glyphstat
