#include "glyphstat/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "glyphstat/metrics.hpp"
#include "glyphstat/rng.hpp"

namespace glyphstat {

SizeProfile size_profile_of(const Corpus& corpus) {
  if (corpus.size() == 0) throw std::invalid_argument("size_profile_of: empty corpus");
  SizeProfile prof;
  prof.n_inscriptions = corpus.size();
  prof.vocab_size = corpus.vocab_size();
  for (const auto& ins : corpus.inscriptions()) ++prof.length_histogram[ins.signs.size()];
  return prof;
}

namespace {

void check_profile(const SizeProfile& prof) {
  if (prof.n_inscriptions == 0 || prof.vocab_size == 0 || prof.length_histogram.empty()) {
    throw std::invalid_argument("generator: empty size profile");
  }
  for (const auto& [len, count] : prof.length_histogram) {
    if (len == 0 || count == 0) throw std::invalid_argument("generator: bad length histogram");
  }
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string("generator: ") + what + " outside [0,1]");
  }
}

std::vector<std::string> make_labels(std::size_t vocab_size) {
  // zero-padded so lexicographic label order matches rank order
  std::size_t width = std::to_string(vocab_size).size();
  width = std::max<std::size_t>(width, 4);
  std::vector<std::string> labels(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    std::string digits = std::to_string(i + 1);
    labels[i] = "S" + std::string(width - digits.size(), '0') + digits;
  }
  return labels;
}

// Sampler over inscription lengths, weights = histogram counts.
struct LengthSampler {
  std::vector<std::size_t> lengths;
  DiscreteSampler sampler;

  explicit LengthSampler(const SizeProfile& prof)
      : sampler(weights_of(prof)) {
    for (const auto& [len, count] : prof.length_histogram) lengths.push_back(len);
  }

  static std::vector<double> weights_of(const SizeProfile& prof) {
    std::vector<double> w;
    for (const auto& [len, count] : prof.length_histogram) {
      w.push_back(static_cast<double>(count));
    }
    return w;
  }

  std::size_t draw(SplitMix64& rng) const { return lengths[sampler.sample(rng)]; }
};

}  // namespace

Corpus generate_heraldic(const HeraldicParams& params, const SizeProfile& profile) {
  check_profile(profile);
  check_unit(params.positional_strength, "positional_strength");
  check_unit(params.bigram_strength, "bigram_strength");
  if (params.zipf_exponent <= 0.0) throw std::invalid_argument("generator: zipf_exponent <= 0");
  if (params.n_openers < 1 || params.n_closers < 1 || params.preferred_successors_per_sign < 1) {
    throw std::invalid_argument("generator: class sizes must be >= 1");
  }
  if (profile.vocab_size < params.n_openers + params.n_closers + 1) {
    throw std::invalid_argument("generator: vocab too small for opener/closer classes");
  }

  const std::size_t v = profile.vocab_size;
  SplitMix64 rng(params.seed);
  const auto zipf = zipf_weights(params.zipf_exponent, v);
  const DiscreteSampler global(zipf);
  // openers are the most frequent ranks, closers the next block; within a
  // class, draws stay Zipfian (renormalized head of the same weight vector)
  const DiscreteSampler opener(std::vector<double>(zipf.begin(),
                                                   zipf.begin() + static_cast<std::ptrdiff_t>(params.n_openers)));
  const DiscreteSampler closer(std::vector<double>(zipf.begin() + static_cast<std::ptrdiff_t>(params.n_openers),
                                                   zipf.begin() + static_cast<std::ptrdiff_t>(params.n_openers + params.n_closers)));
  const LengthSampler length(profile);

  // fixed preferred-successor lists, assigned up front by Zipfian draws
  std::vector<std::vector<std::size_t>> successors(v);
  for (std::size_t s = 0; s < v; ++s) {
    successors[s].reserve(params.preferred_successors_per_sign);
    for (std::size_t j = 0; j < params.preferred_successors_per_sign; ++j) {
      successors[s].push_back(global.sample(rng));
    }
  }

  const auto labels = make_labels(v);
  std::vector<Inscription> out;
  out.reserve(profile.n_inscriptions);
  for (std::size_t i = 0; i < profile.n_inscriptions; ++i) {
    const std::size_t len = length.draw(rng);
    std::vector<std::size_t> seq(len);
    for (std::size_t pos = 0; pos < len; ++pos) {
      if (pos == 0) {
        seq[pos] = (rng.next_unit() < params.positional_strength)
                       ? opener.sample(rng)
                       : global.sample(rng);
      } else if (pos + 1 == len) {
        seq[pos] = (rng.next_unit() < params.positional_strength)
                       ? params.n_openers + closer.sample(rng)
                       : global.sample(rng);
      } else {
        if (rng.next_unit() < params.bigram_strength) {
          const auto& list = successors[seq[pos - 1]];
          seq[pos] = list[rng.next_below(list.size())];
        } else {
          seq[pos] = global.sample(rng);
        }
      }
    }
    Inscription ins;
    ins.id = "H" + std::to_string(i + 1);
    ins.site = "synthetic";
    for (std::size_t code : seq) ins.signs.push_back(labels[code]);
    out.push_back(std::move(ins));
  }
  return Corpus(std::move(out));
}

Corpus generate_admin(const AdminParams& params, const SizeProfile& profile) {
  check_profile(profile);
  check_unit(params.noise_rate, "noise_rate");
  check_unit(params.fixed_slot_fraction, "fixed_slot_fraction");
  if (params.zipf_exponent <= 0.0) throw std::invalid_argument("generator: zipf_exponent <= 0");
  if (params.n_templates < 1) throw std::invalid_argument("generator: n_templates must be >= 1");

  const std::size_t v = profile.vocab_size;
  SplitMix64 rng(params.seed);
  const DiscreteSampler global(zipf_weights(params.zipf_exponent, v));
  const LengthSampler length(profile);

  // a template slot is either a fixed sign or a per-inscription draw
  constexpr std::size_t kVariable = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> templates(params.n_templates);
  for (auto& tmpl : templates) {
    tmpl.resize(length.draw(rng));
    for (auto& slot : tmpl) {
      slot = (rng.next_unit() < params.fixed_slot_fraction) ? global.sample(rng) : kVariable;
    }
  }

  const auto labels = make_labels(v);
  std::vector<Inscription> out;
  out.reserve(profile.n_inscriptions);
  for (std::size_t i = 0; i < profile.n_inscriptions; ++i) {
    const auto& tmpl = templates[rng.next_below(params.n_templates)];
    std::vector<std::size_t> seq(tmpl.size());
    for (std::size_t pos = 0; pos < tmpl.size(); ++pos) {
      seq[pos] = (tmpl[pos] == kVariable) ? global.sample(rng) : tmpl[pos];
    }
    // substitution noise stays Zipfian so it widens variation without
    // flooding the vocabulary tail with uniform singletons
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
      if (rng.next_unit() < params.noise_rate) seq[pos] = global.sample(rng);
    }
    Inscription ins;
    ins.id = "A" + std::to_string(i + 1);
    ins.site = "synthetic";
    for (std::size_t code : seq) ins.signs.push_back(labels[code]);
    out.push_back(std::move(ins));
  }
  return Corpus(std::move(out));
}

namespace {

bool in_range(double x, const CalibrationRange& r) { return x >= r.min && x <= r.max; }

}  // namespace

CalibrationReport validate_generator(const std::function<Corpus(std::size_t)>& make,
                                     const CalibrationTarget& target, std::size_t n_reps) {
  if (n_reps == 0) throw std::invalid_argument("validate_generator: n_reps must be >= 1");
  CalibrationReport rep;
  rep.n_reps = n_reps;
  for (std::size_t i = 0; i < n_reps; ++i) {
    const Corpus c = make(i);
    rep.mean_zipf_slope += zipf_fit(c).slope;
    rep.mean_positional_v += positional_rigidity(c);
    rep.mean_bigram_coverage += bigram_top3_coverage(c);
  }
  rep.mean_zipf_slope /= static_cast<double>(n_reps);
  rep.mean_positional_v /= static_cast<double>(n_reps);
  rep.mean_bigram_coverage /= static_cast<double>(n_reps);
  rep.zipf_in_range = in_range(rep.mean_zipf_slope, target.zipf_slope);
  rep.positional_in_range = in_range(rep.mean_positional_v, target.positional_v);
  rep.coverage_in_range = in_range(rep.mean_bigram_coverage, target.bigram_coverage);
  return rep;
}

}  // namespace glyphstat
