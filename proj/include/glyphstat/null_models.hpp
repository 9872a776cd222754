#pragma once
// Within-inscription permutation null for conditional entropy: how low is
// the observed H(next|current) relative to corpora with the same
// per-inscription sign multisets but shuffled orders?

#include <cstdint>
#include <vector>

#include "glyphstat/corpus.hpp"

namespace glyphstat {

struct PermutationResult {
  double observed = 0.0;   // bits, on the untouched corpus
  double null_mean = 0.0;  // bits
  double null_sd = 0.0;    // population sd of the null draws
  double percentile = 0.0; // fraction of null draws <= observed (ties count)
  std::size_t n_perms = 0;
  std::uint64_t seed = 0;
  std::vector<double> null_draws;  // one entropy per trial, trial order
};

// Returns a copy of the corpus with every inscription's signs shuffled
// (independent uniform permutations). Vocabulary and per-inscription
// multisets are preserved exactly.
Corpus shuffled_copy(const Corpus& corpus, std::uint64_t seed);

// n_perms independent trials; trial i shuffles with substream seed ^ i, so
// the aggregate is the same no matter how trials are scheduled.
PermutationResult permutation_test(const Corpus& corpus, std::size_t n_perms,
                                   std::uint64_t seed);

}  // namespace glyphstat
