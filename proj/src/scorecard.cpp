#include "glyphstat/scorecard.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "glyphstat/stats.hpp"

namespace glyphstat {

const char* to_string(Verdict v) { return v == Verdict::DISC ? "DISC" : "NOT"; }

MetricInterval make_interval(const std::string& metric, const std::string& baseline,
                             std::vector<double> sample, double observed) {
  if (sample.size() < 2) throw std::invalid_argument("make_interval: need >= 2 baseline values");
  MetricInterval iv;
  iv.metric = metric;
  iv.baseline = baseline;
  iv.observed = observed;
  iv.mean = mean_of(sample);
  iv.sd = population_sd(sample);
  std::sort(sample.begin(), sample.end());
  iv.lo = percentile_nearest_rank(sample, 2.5);
  iv.hi = percentile_nearest_rank(sample, 97.5);
  iv.verdict = (observed < iv.lo || observed > iv.hi) ? Verdict::DISC : Verdict::NOT;
  return iv;
}

namespace {

struct RowSpec {
  const char* name;
  double (*get)(const MetricVector&);
};

constexpr RowSpec kScorecardRows[] = {
    {"brevity", [](const MetricVector& m) { return m.brevity; }},
    {"repeats_3", [](const MetricVector& m) { return static_cast<double>(m.repeats[0]); }},
    {"repeats_4", [](const MetricVector& m) { return static_cast<double>(m.repeats[1]); }},
    {"repeats_5", [](const MetricVector& m) { return static_cast<double>(m.repeats[2]); }},
    {"repeats_6", [](const MetricVector& m) { return static_cast<double>(m.repeats[3]); }},
    {"hapax_rate", [](const MetricVector& m) { return m.hapax_rate; }},
    {"positional_rigidity", [](const MetricVector& m) { return m.positional_rigidity; }},
};

}  // namespace

std::vector<MetricInterval> run_scorecard(const MetricVector& observed,
                                          const std::string& baseline_name,
                                          const BaselineGenerator& baseline,
                                          std::size_t n_corpora, bool cumulative_repeats) {
  if (n_corpora < 2) throw std::invalid_argument("run_scorecard: n_corpora must be >= 2");
  std::vector<MetricVector> ensemble;
  ensemble.reserve(n_corpora);
  for (std::size_t i = 0; i < n_corpora; ++i) {
    ensemble.push_back(compute_metrics(baseline(i), cumulative_repeats));
  }

  std::vector<MetricInterval> rows;
  rows.reserve(std::size(kScorecardRows));
  for (const auto& spec : kScorecardRows) {
    std::vector<double> sample;
    sample.reserve(n_corpora);
    for (const auto& m : ensemble) sample.push_back(spec.get(m));
    rows.push_back(make_interval(spec.name, baseline_name, std::move(sample), spec.get(observed)));
  }
  return rows;
}

std::vector<SweepCell> sensitivity_sweep(
    const MetricVector& observed, const std::string& baseline_name,
    const std::vector<std::pair<std::string, BaselineGenerator>>& grid,
    std::size_t n_corpora, bool cumulative_repeats) {
  if (grid.empty()) throw std::invalid_argument("sensitivity_sweep: empty grid");
  std::vector<SweepCell> cells;
  cells.reserve(grid.size());
  for (const auto& [label, gen] : grid) {
    cells.push_back(
        {label, run_scorecard(observed, baseline_name, gen, n_corpora, cumulative_repeats)});
  }
  return cells;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::vector<std::pair<std::string, HeraldicParams>> heraldic_grid(
    const HeraldicParams& base, const std::vector<double>& zipfs,
    const std::vector<double>& positionals, const std::vector<double>& bigrams) {
  std::vector<std::pair<std::string, HeraldicParams>> grid;
  for (double z : zipfs) {
    for (double p : positionals) {
      for (double b : bigrams) {
        HeraldicParams params = base;
        params.zipf_exponent = z;
        params.positional_strength = p;
        params.bigram_strength = b;
        grid.emplace_back("zipf=" + num(z) + " pos=" + num(p) + " bigram=" + num(b), params);
      }
    }
  }
  return grid;
}

std::vector<std::pair<std::string, AdminParams>> admin_grid(
    const AdminParams& base, const std::vector<double>& zipfs,
    const std::vector<double>& noises, const std::vector<std::size_t>& template_counts) {
  std::vector<std::pair<std::string, AdminParams>> grid;
  for (double z : zipfs) {
    for (double n : noises) {
      AdminParams params = base;
      params.zipf_exponent = z;
      params.noise_rate = n;
      grid.emplace_back("zipf=" + num(z) + " noise=" + num(n), params);
    }
  }
  // template-count cells at the median of each swept list
  if (!template_counts.empty() && !zipfs.empty() && !noises.empty()) {
    auto median_of = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      return v[v.size() / 2];
    };
    const double z = median_of(zipfs);
    const double n = median_of(noises);
    for (std::size_t t : template_counts) {
      AdminParams params = base;
      params.zipf_exponent = z;
      params.noise_rate = n;
      params.n_templates = t;
      grid.emplace_back(
          "zipf=" + num(z) + " noise=" + num(n) + " templates=" + std::to_string(t), params);
    }
  }
  return grid;
}

std::vector<MergePlanEntry> allograph_plan(const Corpus& corpus) {
  if (corpus.vocab_size() < 2) throw std::invalid_argument("allograph_plan: need >= 2 signs");
  const auto counts = positional_counts(corpus);
  std::vector<std::array<double, 3>> frac(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s) {
    const double total = counts[s][0] + counts[s][1] + counts[s][2];
    for (int j = 0; j < 3; ++j) frac[s][static_cast<std::size_t>(j)] = counts[s][static_cast<std::size_t>(j)] / total;
  }
  std::vector<MergePlanEntry> plan;
  plan.reserve(counts.size() * (counts.size() - 1) / 2);
  for (std::size_t a = 0; a + 1 < counts.size(); ++a) {
    for (std::size_t b = a + 1; b < counts.size(); ++b) {
      plan.push_back({static_cast<int>(a), static_cast<int>(b), cosine_similarity(frac[a], frac[b])});
    }
  }
  // ranked by similarity; ties resolved on the (label, label) pair, which is
  // (code, code) order because codes follow the sorted vocabulary
  std::sort(plan.begin(), plan.end(), [](const MergePlanEntry& x, const MergePlanEntry& y) {
    if (x.cosine != y.cosine) return x.cosine > y.cosine;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return plan;
}

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  // the smaller root wins, so each class is canonicalized by its least code
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

UnionFind merged_classes(const Corpus& corpus, const std::vector<MergePlanEntry>& plan,
                         std::size_t n_pairs) {
  if (n_pairs > plan.size()) throw std::invalid_argument("merge: n_pairs exceeds plan size");
  UnionFind uf(corpus.vocab_size());
  for (std::size_t i = 0; i < n_pairs; ++i) uf.unite(plan[i].a, plan[i].b);
  return uf;
}

}  // namespace

Corpus merged_corpus(const Corpus& corpus, const std::vector<MergePlanEntry>& plan,
                     std::size_t n_pairs) {
  UnionFind uf = merged_classes(corpus, plan, n_pairs);
  std::vector<Inscription> out = corpus.inscriptions();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& codes = corpus.encoded()[i];
    for (std::size_t j = 0; j < codes.size(); ++j) {
      out[i].signs[j] = corpus.vocab()[static_cast<std::size_t>(uf.find(codes[j]))];
    }
  }
  return Corpus(std::move(out));
}

std::vector<MergeSweepRow> merge_and_remeasure(const Corpus& corpus,
                                               const std::vector<MergePlanEntry>& plan,
                                               const std::vector<std::size_t>& n_pairs) {
  const auto freq = [&corpus] {
    std::vector<std::size_t> f(corpus.vocab_size(), 0);
    for (const auto& row : corpus.encoded()) {
      for (int code : row) ++f[static_cast<std::size_t>(code)];
    }
    return f;
  }();

  std::vector<MergeSweepRow> rows;
  rows.reserve(n_pairs.size());
  for (std::size_t n : n_pairs) {
    UnionFind uf = merged_classes(corpus, plan, n);
    std::vector<std::size_t> class_freq(corpus.vocab_size(), 0);
    for (std::size_t s = 0; s < freq.size(); ++s) {
      class_freq[static_cast<std::size_t>(uf.find(static_cast<int>(s)))] += freq[s];
    }
    MergeSweepRow row;
    row.pairs_merged = n;
    for (std::size_t s = 0; s < class_freq.size(); ++s) {
      if (class_freq[s] > 0) {
        ++row.unique_signs;
        if (class_freq[s] == 1) ++row.hapax_count;
      }
    }
    row.hapax_fraction = row.unique_signs == 0
                             ? 0.0
                             : static_cast<double>(row.hapax_count) / static_cast<double>(row.unique_signs);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace glyphstat
