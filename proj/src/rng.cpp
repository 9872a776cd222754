#include "glyphstat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace glyphstat {

DiscreteSampler::DiscreteSampler(const std::vector<double>& weights) {
  if (weights.empty()) throw std::invalid_argument("DiscreteSampler: empty weights");
  cdf_.resize(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("DiscreteSampler: negative weight");
    acc += weights[i];
    cdf_[i] = acc;
  }
  if (acc <= 0.0) throw std::invalid_argument("DiscreteSampler: zero total weight");
  for (double& c : cdf_) c /= acc;
  cdf_.back() = 1.0;  // guard against round-off at the top end
}

std::size_t DiscreteSampler::sample(SplitMix64& rng) const noexcept {
  const double u = rng.next_unit();
  // first index whose cumulative weight exceeds u
  std::size_t lo = 0, hi = cdf_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cdf_[mid] > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::vector<double> zipf_weights(double exponent, std::size_t n) {
  if (n == 0) throw std::invalid_argument("zipf_weights: n must be positive");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::pow(static_cast<double>(i + 1), -exponent);
  }
  return w;
}

}  // namespace glyphstat
