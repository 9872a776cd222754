#include "glyphstat/null_models.hpp"

#include <stdexcept>

#include "glyphstat/metrics.hpp"
#include "glyphstat/rng.hpp"
#include "glyphstat/stats.hpp"

namespace glyphstat {

Corpus shuffled_copy(const Corpus& corpus, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Inscription> out = corpus.inscriptions();
  for (auto& ins : out) rng.shuffle(ins.signs);
  return Corpus(std::move(out));
}

PermutationResult permutation_test(const Corpus& corpus, std::size_t n_perms,
                                   std::uint64_t seed) {
  if (n_perms == 0) throw std::invalid_argument("permutation_test: n_perms must be >= 1");
  if (corpus.token_count() < corpus.size() + 1) {
    throw std::invalid_argument("permutation_test: corpus has no adjacent sign pairs");
  }

  PermutationResult res;
  res.n_perms = n_perms;
  res.seed = seed;
  res.observed = conditional_entropy_bits(corpus);
  res.null_draws.resize(n_perms);
  // substream per trial: results identical no matter how trials are scheduled
  for (std::size_t t = 0; t < n_perms; ++t) {
    res.null_draws[t] = conditional_entropy_bits(shuffled_copy(corpus, substream(seed, t)));
  }

  res.null_mean = mean_of(res.null_draws);
  res.null_sd = population_sd(res.null_draws);
  std::size_t at_or_below = 0;
  for (double d : res.null_draws) {
    if (d <= res.observed) ++at_or_below;
  }
  res.percentile = static_cast<double>(at_or_below) / static_cast<double>(n_perms);
  return res;
}

}  // namespace glyphstat
