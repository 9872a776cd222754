#pragma once
// Discrimination engine: does an observed corpus fall outside the central
// 95% of a synthetic baseline ensemble, metric by metric? Plus parameter
// sensitivity sweeps and the allograph merge sweep.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "glyphstat/corpus.hpp"
#include "glyphstat/generators.hpp"
#include "glyphstat/metrics.hpp"

namespace glyphstat {

enum class Verdict { DISC, NOT };

const char* to_string(Verdict v);

struct MetricInterval {
  std::string metric;    // brevity, repeats_3..repeats_6, hapax_rate, positional_rigidity
  std::string baseline;  // generator family name
  double mean = 0.0;
  double sd = 0.0;       // population sd of the ensemble
  double lo = 0.0;       // 2.5th percentile, nearest rank
  double hi = 0.0;       // 97.5th percentile, nearest rank
  double observed = 0.0;
  Verdict verdict = Verdict::NOT;
};

// Pure interval logic, exposed for direct testing: DISC iff observed lies
// strictly outside [lo, hi], with lo/hi the nearest-rank 2.5th and 97.5th
// percentiles of the sample.
MetricInterval make_interval(const std::string& metric, const std::string& baseline,
                             std::vector<double> sample, double observed);

// A baseline is a closure from ensemble index to a synthetic corpus; callers
// embed params and derive the per-corpus seed as substream(seed, index).
using BaselineGenerator = std::function<Corpus(std::size_t)>;

// The seven scorecard rows (brevity, repeats L=3..6, hapax rate, positional
// rigidity) of `observed` against an ensemble of n_corpora baseline draws.
// cumulative_repeats must match the mode `observed` was computed with.
std::vector<MetricInterval> run_scorecard(const MetricVector& observed,
                                          const std::string& baseline_name,
                                          const BaselineGenerator& baseline,
                                          std::size_t n_corpora,
                                          bool cumulative_repeats = false);

struct SweepCell {
  std::string label;  // human-readable parameter combination
  std::vector<MetricInterval> rows;
};

// run_scorecard at every grid point; callers build the grid as labeled
// closures so heraldic and admin sweeps share one code path.
std::vector<SweepCell> sensitivity_sweep(const MetricVector& observed,
                                         const std::string& baseline_name,
                                         const std::vector<std::pair<std::string, BaselineGenerator>>& grid,
                                         std::size_t n_corpora,
                                         bool cumulative_repeats = false);

// Sweep grid builders. Heraldic: full cross product of the three value
// lists (defaults Zipf {0.9, 1.23, 1.57, 1.9} x positional {0.05, 0.25} x
// bigram {0.3, 0.9} = 16 cells). Admin: Zipf x noise cross product plus one
// cell per template count at the median Zipf/noise of the lists (defaults
// 3x3 + 2 = 11 cells). Labels encode the varied parameters.
std::vector<std::pair<std::string, HeraldicParams>> heraldic_grid(
    const HeraldicParams& base, const std::vector<double>& zipfs,
    const std::vector<double>& positionals, const std::vector<double>& bigrams);
std::vector<std::pair<std::string, AdminParams>> admin_grid(
    const AdminParams& base, const std::vector<double>& zipfs,
    const std::vector<double>& noises, const std::vector<std::size_t>& template_counts);

struct MergePlanEntry {
  int a = 0;  // sign codes, a < b
  int b = 0;
  double cosine = 0.0;
};

// All unordered sign pairs ranked by cosine similarity of their positional
// vectors (start, middle, end fractions), descending; ties broken
// lexicographically on the label pair.
std::vector<MergePlanEntry> allograph_plan(const Corpus& corpus);

struct MergeSweepRow {
  std::size_t pairs_merged = 0;
  std::size_t unique_signs = 0;
  std::size_t hapax_count = 0;
  double hapax_fraction = 0.0;
};

// Union-find merge of the top-N ranked pairs (transitive; the merged sign
// keeps the lexicographically least member label), then vocabulary and hapax
// re-measurement. One row per requested N.
std::vector<MergeSweepRow> merge_and_remeasure(const Corpus& corpus,
                                               const std::vector<MergePlanEntry>& plan,
                                               const std::vector<std::size_t>& n_pairs);

// The corpus rewritten under the top-N merge (exposed because the merge
// sweep's hapax numbers should be checkable against a full re-measure).
Corpus merged_corpus(const Corpus& corpus, const std::vector<MergePlanEntry>& plan,
                     std::size_t n_pairs);

}  // namespace glyphstat
