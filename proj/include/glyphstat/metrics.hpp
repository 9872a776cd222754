#pragma once
// Corpus-level descriptive metrics. Everything here is a pure function of
// the corpus; ties are always broken by sign code (lexicographic label
// order) so results are reproducible.

#include <array>
#include <cstddef>
#include <vector>

#include "glyphstat/corpus.hpp"
#include "glyphstat/stats.hpp"

namespace glyphstat {

// Token frequency per sign code.
std::vector<std::size_t> sign_frequencies(const Corpus& corpus);

// Mean tokens per inscription. Empty corpus -> 0.
double brevity(const Corpus& corpus);

// Number of distinct sign n-grams of exactly `length` that occur in at least
// two distinct inscriptions. With cumulative = true, counts distinct n-grams
// of length >= `length` instead.
std::size_t repeated_phrase_count(const Corpus& corpus, std::size_t length,
                                  bool cumulative = false);

// Fraction of sign types whose total frequency is 1. Empty vocab -> 0.
double hapax_rate(const Corpus& corpus);

// Start / middle / end occurrence counts per sign code. Position 0 is start,
// the last position is end, everything else middle; a length-1 inscription
// contributes only a start, a length-2 one a start and an end.
std::vector<std::array<double, 3>> positional_counts(const Corpus& corpus);

// Cramer's V of one sign's positional distribution against the rest of the
// corpus (2x3 table, zero-total columns dropped).
double positional_v(const std::vector<std::array<double, 3>>& counts, std::size_t code);

// Mean positional V over the ten most frequent signs (fewer if the
// vocabulary is smaller); frequency ties broken by sign code.
double positional_rigidity(const Corpus& corpus);

// Log-log OLS of the rank-frequency profile, all ranks, frequency ties
// ordered by sign code.
LogLogFit zipf_fit(const Corpus& corpus);

// H(next | current) in bits, maximum-likelihood estimate over all adjacent
// sign pairs pooled within inscriptions. No smoothing, no boundary symbols.
// A corpus with no adjacent pairs -> 0.
double conditional_entropy_bits(const Corpus& corpus);

// Fraction of adjacent-pair tokens whose successor is among its
// predecessor's three most frequent successors (ties by sign code).
double bigram_top3_coverage(const Corpus& corpus);

// The full per-corpus metric row as reported by the pipeline.
struct MetricVector {
  double brevity = 0.0;
  std::array<std::size_t, 4> repeats{};  // phrase lengths 3, 4, 5, 6
  double hapax_rate = 0.0;
  double positional_rigidity = 0.0;
  double zipf_slope = 0.0;
  double zipf_r2 = 0.0;
  bool zipf_degenerate = false;
  double cond_entropy_bits = 0.0;
  double bigram_top3_coverage = 0.0;
};

MetricVector compute_metrics(const Corpus& corpus, bool cumulative_repeats = false);

}  // namespace glyphstat
