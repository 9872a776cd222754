#pragma once
// Small numeric helpers shared across modules: chi-square machinery,
// log-log OLS, percentile selection, G-squared association.

#include <array>
#include <cstddef>
#include <vector>

namespace glyphstat {

double mean_of(const std::vector<double>& xs);
// Population standard deviation (divide by n).
double population_sd(const std::vector<double>& xs);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi2_sf(double x, int df);

struct Chi2Result {
  double chi2 = 0.0;
  double p = 1.0;
  double v = 0.0;  // Cramer's V, sqrt(chi2 / n) for a 2-row table
  int df = 0;
};

// Pearson chi-square for a 2xK contingency table. Columns whose combined
// count is zero are dropped; if fewer than two columns remain, or either row
// is empty, the result is chi2 = 0, V = 0, p = 1.
Chi2Result chi2_2xk(const std::vector<double>& row1, const std::vector<double>& row2);

// G-squared (log-likelihood ratio) statistic of a 2x2 table with cells
// n11, n12, n21, n22. Zero cells contribute nothing.
double g2_2x2(double n11, double n12, double n21, double n22);

double cosine_similarity(const std::array<double, 3>& a, const std::array<double, 3>& b);

struct LogLogFit {
  double slope = 0.0;
  double r2 = 1.0;
  std::size_t n_points = 0;
  bool degenerate = false;  // all y equal: slope 0, r2 1 by convention
};

// OLS of log(y) on log(rank), ranks 1..n in the given order. Requires all
// values positive.
LogLogFit fit_loglog(const std::vector<double>& values_by_rank);

// Nearest-rank percentile of an ascending-sorted sample: the value at rank
// ceil(p/100 * n), 1-indexed.
double percentile_nearest_rank(const std::vector<double>& sorted_ascending, double p);

}  // namespace glyphstat
