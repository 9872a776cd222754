#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "glyphstat/corpus.hpp"
#include "glyphstat/generators.hpp"
#include "glyphstat/metrics.hpp"

using namespace glyphstat;

namespace {

SizeProfile small_profile() {
  SizeProfile p;
  p.n_inscriptions = 120;
  p.length_histogram = {{2, 30}, {3, 30}, {4, 30}, {5, 20}, {6, 10}};
  p.vocab_size = 40;
  return p;
}

// Roughly the shape of a mid-sized single-site corpus; big enough for stable
// rank-frequency statistics.
SizeProfile large_profile() {
  SizeProfile p;
  p.n_inscriptions = 1916;
  p.length_histogram = {{2, 400}, {3, 380}, {4, 350}, {5, 300},
                        {6, 200}, {7, 150}, {8, 86},  {9, 50}};
  p.vocab_size = 584;
  return p;
}

bool labels_well_formed(const Corpus& c, std::size_t vocab_size) {
  std::set<std::string> allowed;
  const std::size_t width = std::max<std::size_t>(4, std::to_string(vocab_size).size());
  for (std::size_t i = 1; i <= vocab_size; ++i) {
    std::string digits = std::to_string(i);
    allowed.insert("S" + std::string(width - digits.size(), '0') + digits);
  }
  for (const auto& ins : c.inscriptions()) {
    if (ins.site != "synthetic") return false;
    for (const auto& s : ins.signs) {
      if (!allowed.count(s)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("size_profile_of reads the corpus back") {
  const auto c = parse_corpus("a,s1,A B\nb,s2,C D E\nc,s1,A B\n");
  const auto p = size_profile_of(c);
  CHECK(p.n_inscriptions == 3);
  CHECK(p.vocab_size == 5);
  CHECK(p.length_histogram.at(2) == 2);
  CHECK(p.length_histogram.at(3) == 1);
}

TEST_CASE("heraldic generator") {
  const auto profile = small_profile();

  SUBCASE("deterministic, seed-sensitive, right-sized") {
    HeraldicParams p;
    p.seed = 7;
    const auto a = generate_heraldic(p, profile);
    const auto b = generate_heraldic(p, profile);
    CHECK(serialize_corpus(a) == serialize_corpus(b));
    CHECK(a.size() == profile.n_inscriptions);
    CHECK(labels_well_formed(a, profile.vocab_size));

    p.seed = 8;
    const auto c = generate_heraldic(p, profile);
    CHECK(serialize_corpus(a) != serialize_corpus(c));
  }

  SUBCASE("lengths come from the histogram support") {
    HeraldicParams p;
    p.seed = 3;
    const auto c = generate_heraldic(p, profile);
    for (const auto& ins : c.inscriptions()) {
      CHECK(ins.signs.size() >= 2);
      CHECK(ins.signs.size() <= 6);
    }
  }

  SUBCASE("a single always-forced opener pins position zero") {
    HeraldicParams p;
    p.positional_strength = 1.0;
    p.n_openers = 1;
    p.seed = 11;
    const auto c = generate_heraldic(p, profile);
    for (const auto& ins : c.inscriptions()) {
      CHECK(ins.signs.front() == "S0001");
    }
  }

  SUBCASE("zero strengths reduce to i.i.d. Zipfian draws") {
    HeraldicParams p;
    p.positional_strength = 0.0;
    p.bigram_strength = 0.0;
    p.zipf_exponent = 1.46;
    double slope_sum = 0.0;
    for (std::uint64_t s = 0; s < 3; ++s) {
      p.seed = 100 + s;
      slope_sum += zipf_fit(generate_heraldic(p, large_profile())).slope;
    }
    CHECK(slope_sum / 3.0 == doctest::Approx(-1.46).epsilon(0.07));
  }

  SUBCASE("bigram strength raises successor coverage") {
    HeraldicParams weak;
    weak.bigram_strength = 0.05;
    HeraldicParams strong;
    strong.bigram_strength = 0.95;
    double weak_sum = 0.0, strong_sum = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      weak.seed = strong.seed = 500 + s;
      weak_sum += bigram_top3_coverage(generate_heraldic(weak, profile));
      strong_sum += bigram_top3_coverage(generate_heraldic(strong, profile));
    }
    CHECK(strong_sum > weak_sum);
  }

  SUBCASE("rejects malformed inputs") {
    HeraldicParams p;
    CHECK_THROWS_AS(generate_heraldic(p, SizeProfile{}), std::invalid_argument);
    SizeProfile tiny = small_profile();
    tiny.vocab_size = p.n_openers + p.n_closers;  // classes need spare signs
    CHECK_THROWS_AS(generate_heraldic(p, tiny), std::invalid_argument);
    HeraldicParams bad;
    bad.positional_strength = 1.5;
    CHECK_THROWS_AS(generate_heraldic(bad, small_profile()), std::invalid_argument);
  }
}

TEST_CASE("admin generator") {
  const auto profile = small_profile();

  SUBCASE("deterministic, seed-sensitive, right-sized") {
    AdminParams p;
    p.seed = 7;
    const auto a = generate_admin(p, profile);
    const auto b = generate_admin(p, profile);
    CHECK(serialize_corpus(a) == serialize_corpus(b));
    CHECK(a.size() == profile.n_inscriptions);
    CHECK(labels_well_formed(a, profile.vocab_size));

    p.seed = 8;
    CHECK(serialize_corpus(a) != serialize_corpus(generate_admin(p, profile)));
  }

  SUBCASE("one all-fixed noiseless template collapses lengths to one sequence per length") {
    AdminParams p;
    p.n_templates = 1;
    p.noise_rate = 0.0;
    p.fixed_slot_fraction = 1.0;
    p.seed = 21;
    const auto c = generate_admin(p, profile);
    std::set<std::vector<std::string>> distinct;
    for (const auto& ins : c.inscriptions()) distinct.insert(ins.signs);
    CHECK(distinct.size() == 1);  // single template, fully fixed
  }

  SUBCASE("few noiseless templates bound the distinct-sequence count") {
    AdminParams p;
    p.n_templates = 4;
    p.noise_rate = 0.0;
    p.fixed_slot_fraction = 1.0;
    p.seed = 22;
    const auto c = generate_admin(p, profile);
    std::set<std::vector<std::string>> distinct;
    for (const auto& ins : c.inscriptions()) distinct.insert(ins.signs);
    CHECK(distinct.size() <= 4);
  }

  SUBCASE("full noise reduces to i.i.d. Zipfian draws") {
    AdminParams p;
    p.noise_rate = 1.0;
    p.zipf_exponent = 1.46;
    double slope_sum = 0.0;
    for (std::uint64_t s = 0; s < 3; ++s) {
      p.seed = 300 + s;
      slope_sum += zipf_fit(generate_admin(p, large_profile())).slope;
    }
    CHECK(slope_sum / 3.0 == doctest::Approx(-1.46).epsilon(0.07));
  }

  SUBCASE("rejects malformed inputs") {
    AdminParams p;
    CHECK_THROWS_AS(generate_admin(p, SizeProfile{}), std::invalid_argument);
    AdminParams bad;
    bad.n_templates = 0;
    CHECK_THROWS_AS(generate_admin(bad, small_profile()), std::invalid_argument);
    AdminParams bad2;
    bad2.noise_rate = -0.1;
    CHECK_THROWS_AS(generate_admin(bad2, small_profile()), std::invalid_argument);
  }
}

TEST_CASE("generated sample sizes track the target mean length") {
  // Lengths are i.i.d. draws from the histogram, so the sample mean should sit
  // within a few standard errors of the histogram mean.
  const auto profile = large_profile();
  double hist_mean = 0.0, hist_sq = 0.0, total = 0.0;
  for (const auto& [len, cnt] : profile.length_histogram) {
    hist_mean += static_cast<double>(len) * static_cast<double>(cnt);
    hist_sq += static_cast<double>(len) * static_cast<double>(len) * static_cast<double>(cnt);
    total += static_cast<double>(cnt);
  }
  hist_mean /= total;
  const double hist_sd = std::sqrt(hist_sq / total - hist_mean * hist_mean);
  const double tol = 3.0 * hist_sd / std::sqrt(static_cast<double>(profile.n_inscriptions));

  HeraldicParams hp;
  hp.seed = 9;
  const auto h = generate_heraldic(hp, profile);
  CHECK(std::abs(brevity(h) - hist_mean) <= tol);

  // Admin lengths pass through a handful of templates, so only a loose bound
  // holds: every length still lies inside the histogram support.
  AdminParams ap;
  ap.seed = 9;
  const auto a = generate_admin(ap, profile);
  for (const auto& ins : a.inscriptions()) {
    CHECK(ins.signs.size() >= 2);
    CHECK(ins.signs.size() <= 9);
  }
}

TEST_CASE("validate_generator measures calibration statistics") {
  CalibrationTarget target;

  SUBCASE("an i.i.d. Zipfian generator lands in the slope range") {
    HeraldicParams p;
    p.positional_strength = 0.0;
    p.bigram_strength = 0.0;
    const auto profile = large_profile();
    const auto report = validate_generator(
        [&](std::size_t i) {
          HeraldicParams q = p;
          q.seed = 7000 + i;
          return generate_heraldic(q, profile);
        },
        target, 5);
    CHECK(report.n_reps == 5);
    CHECK(report.mean_zipf_slope > target.zipf_slope.min);
    CHECK(report.mean_zipf_slope < target.zipf_slope.max);
    CHECK(report.zipf_in_range);
  }

  SUBCASE("an impossible target fails cleanly") {
    CalibrationTarget impossible;
    impossible.zipf_slope = {10.0, 11.0, 12.0};
    HeraldicParams p;
    const auto profile = small_profile();
    const auto report = validate_generator(
        [&](std::size_t i) {
          HeraldicParams q = p;
          q.seed = i;
          return generate_heraldic(q, profile);
        },
        impossible, 3);
    CHECK_FALSE(report.zipf_in_range);
  }
}
