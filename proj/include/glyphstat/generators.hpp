#pragma once
// Synthetic baseline corpora. Two generator families:
//
//  * heraldic  — emblem-like sequences: Zipfian vocabulary, dedicated opener
//    and closer sign classes, preferred-successor bigram dependencies.
//  * admin     — template-based notation: a small set of slot templates with
//    fixed and per-inscription variable slots, plus substitution noise.
//
// Both are matched to a target corpus only through a SizeProfile (inscription
// count, length histogram, vocabulary size) and are fully deterministic given
// (params, profile): the seed lives inside the params record.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "glyphstat/corpus.hpp"

namespace glyphstat {

struct SizeProfile {
  std::size_t n_inscriptions = 0;
  std::map<std::size_t, std::size_t> length_histogram;  // length -> count
  std::size_t vocab_size = 0;
};

SizeProfile size_profile_of(const Corpus& corpus);

struct HeraldicParams {
  double zipf_exponent = 1.46;
  double positional_strength = 0.15;  // chance position 0 / final is class-forced
  double bigram_strength = 0.60;      // chance an interior sign follows its predecessor's list
  std::size_t n_openers = 3;
  std::size_t n_closers = 7;
  std::size_t preferred_successors_per_sign = 3;
  std::uint64_t seed = 0;
};

struct AdminParams {
  std::size_t n_templates = 7;
  double zipf_exponent = 1.46;
  double noise_rate = 0.10;          // per-position substitution chance
  double fixed_slot_fraction = 0.5;  // chance a template slot is fixed
  std::uint64_t seed = 0;
};

// Emits profile.n_inscriptions sequences over an abstract vocabulary
// S0001..S<vocab_size>, site "synthetic". Lengths are drawn i.i.d. from the
// normalized length histogram. Base sign probabilities are Zipfian in rank.
// Position 0 is forced to an opener (Zipfian within the opener class) with
// probability positional_strength, the final position symmetrically to a
// closer; an interior sign follows the previous sign's preferred-successor
// list (uniform over the list) with probability bigram_strength, otherwise
// all draws fall back to the global Zipfian distribution. Preferred-successor
// lists are fixed per sign at construction by seeded Zipfian draws.
Corpus generate_heraldic(const HeraldicParams& params, const SizeProfile& profile);

// Builds n_templates slot sequences (lengths from the histogram). Each slot
// is fixed to a Zipfian-chosen sign with probability fixed_slot_fraction,
// else variable. Each inscription picks a template uniformly, fills variable
// slots with fresh Zipfian draws, then substitutes each position with
// probability noise_rate; the substitute is itself a Zipfian draw so that
// noise does not flood the tail of the vocabulary with uniform mass.
Corpus generate_admin(const AdminParams& params, const SizeProfile& profile);

struct CalibrationRange {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

// Empirical ranges for the three calibration statistics measured across the
// comparative corpora: Zipf slope, positional rigidity, bigram top-3
// successor coverage.
struct CalibrationTarget {
  CalibrationRange zipf_slope{-1.89, -1.46, -0.89};
  CalibrationRange positional_v{0.022, 0.099, 0.471};
  CalibrationRange bigram_coverage{0.319, 0.594, 0.884};
};

struct CalibrationReport {
  std::size_t n_reps = 0;
  double mean_zipf_slope = 0.0;
  double mean_positional_v = 0.0;
  double mean_bigram_coverage = 0.0;
  bool zipf_in_range = false;
  bool positional_in_range = false;
  bool coverage_in_range = false;
};

// Generates n_reps corpora from `make` (called with rep index 0..n_reps-1,
// expected to vary its seed), measures the three calibration statistics on
// each, and reports whether each mean lies inside the target's (min, max).
CalibrationReport validate_generator(const std::function<Corpus(std::size_t)>& make,
                                     const CalibrationTarget& target, std::size_t n_reps);

}  // namespace glyphstat
