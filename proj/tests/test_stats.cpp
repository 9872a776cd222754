#include <doctest.h>

#include <cmath>
#include <vector>

#include "glyphstat/stats.hpp"

using namespace glyphstat;

TEST_CASE("chi2_sf matches reference values") {
  // frozen from an independent implementation of the regularized gamma
  CHECK(chi2_sf(13.333333333333334, 2) == doctest::Approx(0.00127263380133981).epsilon(1e-9));
  CHECK(chi2_sf(3.84, 1) == doctest::Approx(0.0500435212487052).epsilon(1e-9));
  CHECK(chi2_sf(15.0, 2) == doctest::Approx(0.000553084370147834).epsilon(1e-9));
  CHECK(chi2_sf(0.5, 3) == doctest::Approx(0.918891411654676).epsilon(1e-9));
  CHECK(chi2_sf(25.0, 7) == doctest::Approx(0.00075880025565825).epsilon(1e-9));
  CHECK(chi2_sf(0.001, 1) == doctest::Approx(0.97477287936996).epsilon(1e-9));
  CHECK(chi2_sf(200.0, 5) == doctest::Approx(2.84062289864155e-41).epsilon(1e-6));
  CHECK(chi2_sf(0.0, 4) == 1.0);
  CHECK(chi2_sf(-1.0, 4) == 1.0);
}

TEST_CASE("gamma_q(1, x) equals exp(-x)") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0, 40.0}) {
    CHECK(gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
  }
}

TEST_CASE("chi2_2xk contingency") {
  SUBCASE("2x3 oracle table") {
    const auto r = chi2_2xk({10, 0, 0}, {10, 10, 10});
    CHECK(r.chi2 == doctest::Approx(13.3333333333333).epsilon(1e-9));
    CHECK(r.p == doctest::Approx(0.00127263380133981).epsilon(1e-9));
    CHECK(r.v == doctest::Approx(0.577350269189626).epsilon(1e-9));
    CHECK(r.df == 2);
  }
  SUBCASE("proportional rows are independent") {
    const auto r = chi2_2xk({2, 4, 6}, {4, 8, 12});
    CHECK(r.chi2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.v == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("zero-total columns are dropped") {
    const auto with_zero = chi2_2xk({5, 0, 3}, {7, 0, 9});
    const auto without = chi2_2xk({5, 3}, {7, 9});
    CHECK(with_zero.chi2 == doctest::Approx(without.chi2));
    CHECK(with_zero.df == without.df);
  }
  SUBCASE("fewer than two live columns degenerates to zero") {
    const auto r = chi2_2xk({4, 0, 0}, {6, 0, 0});
    CHECK(r.chi2 == 0.0);
    CHECK(r.v == 0.0);
    CHECK(r.p == 1.0);
  }
  SUBCASE("empty row degenerates to zero") {
    const auto r = chi2_2xk({0, 0, 0}, {3, 2, 1});
    CHECK(r.chi2 == 0.0);
    CHECK(r.v == 0.0);
  }
}

TEST_CASE("g2_2x2 log-likelihood ratio") {
  CHECK(g2_2x2(30, 10, 10, 50) == doctest::Approx(35.5481767683901).epsilon(1e-9));
  // independence: expected == observed
  CHECK(g2_2x2(20, 20, 10, 10) == doctest::Approx(0.0).epsilon(1e-12));
  // empty margin
  CHECK(g2_2x2(0, 0, 5, 5) == 0.0);
}

TEST_CASE("cosine similarity") {
  CHECK(cosine_similarity({0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cosine_similarity({1, 0, 0}, {0, 1, 0}) == doctest::Approx(0.0));
  CHECK(cosine_similarity({2, 1, 3}, {4, 2, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine_similarity({0, 0, 0}, {1, 1, 1}) == 0.0);
}

TEST_CASE("fit_loglog") {
  SUBCASE("three-point oracle") {
    const auto fit = fit_loglog({4, 2, 1});
    CHECK(fit.slope == doctest::Approx(-1.23366194225217).epsilon(1e-9));
    CHECK(fit.r2 == doctest::Approx(0.977653958518262).epsilon(1e-9));
    CHECK_FALSE(fit.degenerate);
  }
  SUBCASE("exact power laws recover the exponent to 1e-9") {
    for (double s : {0.8, 1.5, 2.0}) {
      std::vector<double> freqs;
      for (int r = 1; r <= 50; ++r) freqs.push_back(1000.0 * std::pow(r, -s));
      const auto fit = fit_loglog(freqs);
      CHECK(std::fabs(fit.slope - (-s)) < 1e-9);
      CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("flat frequencies are degenerate") {
    const auto fit = fit_loglog({7, 7, 7, 7});
    CHECK(fit.slope == 0.0);
    CHECK(fit.r2 == 1.0);
    CHECK(fit.degenerate);
  }
  SUBCASE("single point is degenerate") {
    CHECK(fit_loglog({5}).degenerate);
  }
}

TEST_CASE("percentile_nearest_rank") {
  std::vector<double> sample;
  for (int i = 1; i <= 100; ++i) sample.push_back(i);
  CHECK(percentile_nearest_rank(sample, 2.5) == 3.0);
  CHECK(percentile_nearest_rank(sample, 97.5) == 98.0);
  CHECK(percentile_nearest_rank(sample, 100.0) == 100.0);
  CHECK(percentile_nearest_rank(sample, 0.5) == 1.0);
  CHECK(percentile_nearest_rank({42.0}, 2.5) == 42.0);
  CHECK(percentile_nearest_rank({42.0}, 97.5) == 42.0);
}

TEST_CASE("mean and population sd") {
  CHECK(mean_of({2, 4, 6}) == doctest::Approx(4.0));
  CHECK(population_sd({2, 4, 6}) == doctest::Approx(1.63299316185545).epsilon(1e-12));
  CHECK(population_sd({5}) == 0.0);
}
