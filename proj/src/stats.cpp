#include "glyphstat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace glyphstat {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_of: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double population_sd(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

namespace {

// Lower regularized incomplete gamma P(a,x) by series expansion; converges
// quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma Q(a,x) by Lentz continued fraction;
// converges quickly for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, int df) {
  if (df < 1) throw std::invalid_argument("chi2_sf: df must be >= 1");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

Chi2Result chi2_2xk(const std::vector<double>& row1, const std::vector<double>& row2) {
  if (row1.size() != row2.size()) throw std::invalid_argument("chi2_2xk: row length mismatch");
  std::vector<double> c1, c2;
  for (std::size_t j = 0; j < row1.size(); ++j) {
    if (row1[j] + row2[j] > 0.0) {
      c1.push_back(row1[j]);
      c2.push_back(row2[j]);
    }
  }
  Chi2Result out;
  double r1 = 0.0, r2 = 0.0;
  for (double v : c1) r1 += v;
  for (double v : c2) r2 += v;
  const double n = r1 + r2;
  if (c1.size() < 2 || r1 == 0.0 || r2 == 0.0 || n == 0.0) return out;

  double chi2 = 0.0;
  for (std::size_t j = 0; j < c1.size(); ++j) {
    const double col = c1[j] + c2[j];
    const double e1 = r1 * col / n;
    const double e2 = r2 * col / n;
    chi2 += (c1[j] - e1) * (c1[j] - e1) / e1;
    chi2 += (c2[j] - e2) * (c2[j] - e2) / e2;
  }
  out.chi2 = chi2;
  out.df = static_cast<int>(c1.size()) - 1;
  out.v = std::sqrt(chi2 / n);
  out.p = chi2_sf(chi2, out.df);
  return out;
}

double g2_2x2(double n11, double n12, double n21, double n22) {
  const double r1 = n11 + n12, r2 = n21 + n22;
  const double c1 = n11 + n21, c2 = n12 + n22;
  const double n = r1 + r2;
  if (n == 0.0 || r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0) return 0.0;
  double g2 = 0.0;
  const double obs[4] = {n11, n12, n21, n22};
  const double exp_[4] = {r1 * c1 / n, r1 * c2 / n, r2 * c1 / n, r2 * c2 / n};
  for (int i = 0; i < 4; ++i) {
    if (obs[i] > 0.0) g2 += obs[i] * std::log(obs[i] / exp_[i]);
  }
  return 2.0 * g2;
}

double cosine_similarity(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int i = 0; i < 3; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

LogLogFit fit_loglog(const std::vector<double>& values_by_rank) {
  LogLogFit out;
  out.n_points = values_by_rank.size();
  if (values_by_rank.size() < 2) {
    out.degenerate = true;
    return out;
  }
  const std::size_t n = values_by_rank.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (values_by_rank[i] <= 0.0) throw std::invalid_argument("fit_loglog: non-positive value");
    xs[i] = std::log(static_cast<double>(i + 1));
    ys[i] = std::log(values_by_rank[i]);
  }
  const double mx = mean_of(xs), my = mean_of(ys);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (syy == 0.0) {
    out.slope = 0.0;
    out.r2 = 1.0;
    out.degenerate = true;
    return out;
  }
  out.slope = sxy / sxx;
  out.r2 = (sxy * sxy) / (sxx * syy);
  return out;
}

double percentile_nearest_rank(const std::vector<double>& sorted_ascending, double p) {
  if (sorted_ascending.empty()) {
    throw std::invalid_argument("percentile_nearest_rank: empty sample");
  }
  const double n = static_cast<double>(sorted_ascending.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted_ascending.size());
  return sorted_ascending[rank - 1];
}

}  // namespace glyphstat
