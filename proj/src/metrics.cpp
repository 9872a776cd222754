#include "glyphstat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace glyphstat {

std::vector<std::size_t> sign_frequencies(const Corpus& corpus) {
  std::vector<std::size_t> freq(corpus.vocab_size(), 0);
  for (const auto& row : corpus.encoded()) {
    for (int code : row) ++freq[static_cast<std::size_t>(code)];
  }
  return freq;
}

double brevity(const Corpus& corpus) {
  if (corpus.size() == 0) return 0.0;
  return static_cast<double>(corpus.token_count()) / static_cast<double>(corpus.size());
}

namespace {

// Distinct n-grams of exactly `length` occurring in >= 2 distinct
// inscriptions. The map tracks, per n-gram, the first inscription seen and
// whether a second one has confirmed it.
std::size_t repeated_exact(const Corpus& corpus, std::size_t length) {
  struct Seen {
    std::size_t first_inscription;
    bool confirmed;
  };
  std::map<std::vector<int>, Seen> grams;
  const auto& rows = corpus.encoded();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() < length) continue;
    for (std::size_t start = 0; start + length <= row.size(); ++start) {
      std::vector<int> gram(row.begin() + static_cast<std::ptrdiff_t>(start),
                            row.begin() + static_cast<std::ptrdiff_t>(start + length));
      auto [it, inserted] = grams.try_emplace(std::move(gram), Seen{i, false});
      if (!inserted && it->second.first_inscription != i) it->second.confirmed = true;
    }
  }
  std::size_t count = 0;
  for (const auto& [gram, seen] : grams) {
    if (seen.confirmed) ++count;
  }
  return count;
}

}  // namespace

std::size_t repeated_phrase_count(const Corpus& corpus, std::size_t length, bool cumulative) {
  if (length == 0) throw std::invalid_argument("repeated_phrase_count: length must be >= 1");
  if (!cumulative) return repeated_exact(corpus, length);
  std::size_t max_len = 0;
  for (const auto& row : corpus.encoded()) max_len = std::max(max_len, row.size());
  std::size_t total = 0;
  for (std::size_t l = length; l <= max_len; ++l) total += repeated_exact(corpus, l);
  return total;
}

double hapax_rate(const Corpus& corpus) {
  if (corpus.vocab_size() == 0) return 0.0;
  const auto freq = sign_frequencies(corpus);
  const auto hapax = std::count(freq.begin(), freq.end(), std::size_t{1});
  return static_cast<double>(hapax) / static_cast<double>(freq.size());
}

std::vector<std::array<double, 3>> positional_counts(const Corpus& corpus) {
  std::vector<std::array<double, 3>> counts(corpus.vocab_size(), {0.0, 0.0, 0.0});
  for (const auto& row : corpus.encoded()) {
    for (std::size_t pos = 0; pos < row.size(); ++pos) {
      // start = index 0; end = last index (when distinct from 0); else middle
      int slot = 1;
      if (pos == 0) {
        slot = 0;
      } else if (pos + 1 == row.size()) {
        slot = 2;
      }
      counts[static_cast<std::size_t>(row[pos])][static_cast<std::size_t>(slot)] += 1.0;
    }
  }
  return counts;
}

double positional_v(const std::vector<std::array<double, 3>>& counts, std::size_t code) {
  std::array<double, 3> rest{0.0, 0.0, 0.0};
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (s == code) continue;
    for (int j = 0; j < 3; ++j) rest[static_cast<std::size_t>(j)] += counts[s][static_cast<std::size_t>(j)];
  }
  const auto& own = counts[code];
  const auto res = chi2_2xk({own[0], own[1], own[2]}, {rest[0], rest[1], rest[2]});
  return res.v;
}

double positional_rigidity(const Corpus& corpus) {
  if (corpus.vocab_size() == 0) return 0.0;
  const auto freq = sign_frequencies(corpus);
  std::vector<std::size_t> order(freq.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (freq[a] != freq[b]) return freq[a] > freq[b];
    return a < b;  // codes are lexicographic label order
  });
  const std::size_t top = std::min<std::size_t>(10, order.size());
  const auto counts = positional_counts(corpus);
  double sum = 0.0;
  for (std::size_t i = 0; i < top; ++i) sum += positional_v(counts, order[i]);
  return sum / static_cast<double>(top);
}

LogLogFit zipf_fit(const Corpus& corpus) {
  const auto freq = sign_frequencies(corpus);
  std::vector<double> sorted(freq.begin(), freq.end());
  // descending frequency; equal frequencies keep ascending code order
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
  return fit_loglog(sorted);
}

namespace {

// Pooled within-inscription adjacent pair counts: map current -> (next -> count).
std::unordered_map<int, std::unordered_map<int, std::size_t>> bigram_counts(
    const Corpus& corpus, std::size_t& total_pairs) {
  std::unordered_map<int, std::unordered_map<int, std::size_t>> counts;
  total_pairs = 0;
  for (const auto& row : corpus.encoded()) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      ++counts[row[i]][row[i + 1]];
      ++total_pairs;
    }
  }
  return counts;
}

}  // namespace

double conditional_entropy_bits(const Corpus& corpus) {
  std::size_t total = 0;
  const auto counts = bigram_counts(corpus, total);
  if (total == 0) return 0.0;
  double h = 0.0;
  for (const auto& [cur, nexts] : counts) {
    double row_total = 0.0;
    for (const auto& [next, c] : nexts) row_total += static_cast<double>(c);
    for (const auto& [next, c] : nexts) {
      const double p_joint = static_cast<double>(c) / static_cast<double>(total);
      const double p_cond = static_cast<double>(c) / row_total;
      h -= p_joint * std::log2(p_cond);
    }
  }
  return h;
}

double bigram_top3_coverage(const Corpus& corpus) {
  std::size_t total = 0;
  const auto counts = bigram_counts(corpus, total);
  if (total == 0) return 0.0;
  std::size_t covered = 0;
  for (const auto& [cur, nexts] : counts) {
    std::vector<std::pair<int, std::size_t>> successors(nexts.begin(), nexts.end());
    std::sort(successors.begin(), successors.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    const std::size_t take = std::min<std::size_t>(3, successors.size());
    for (std::size_t i = 0; i < take; ++i) covered += successors[i].second;
  }
  return static_cast<double>(covered) / static_cast<double>(total);
}

MetricVector compute_metrics(const Corpus& corpus, bool cumulative_repeats) {
  MetricVector m;
  m.brevity = brevity(corpus);
  for (std::size_t i = 0; i < 4; ++i) {
    m.repeats[i] = repeated_phrase_count(corpus, i + 3, cumulative_repeats);
  }
  m.hapax_rate = hapax_rate(corpus);
  m.positional_rigidity = positional_rigidity(corpus);
  const auto fit = zipf_fit(corpus);
  m.zipf_slope = fit.slope;
  m.zipf_r2 = fit.r2;
  m.zipf_degenerate = fit.degenerate;
  m.cond_entropy_bits = conditional_entropy_bits(corpus);
  m.bigram_top3_coverage = bigram_top3_coverage(corpus);
  return m;
}

}  // namespace glyphstat
