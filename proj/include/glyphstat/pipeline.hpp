#pragma once
// Batch orchestration: configuration, the three analysis phases, and report
// emission. Reports are CSV/JSON files; every file's header declares the
// config hash and seed that produced it, and repeated runs with the same
// config are byte-identical.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glyphstat/generators.hpp"

namespace glyphstat {

// Input or configuration problem; the CLI maps this to exit status 2.
struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::string corpus_path;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  std::size_t n_baseline_corpora = 100;
  std::size_t n_permutations = 1000;
  std::vector<std::size_t> phrase_lengths = {3, 4, 5, 6};
  bool cumulative_repeats = false;  // repeats counted at length >= L instead of == L

  // Generator overrides (the seed fields are ignored; per-corpus seeds come
  // from the pipeline seed's substreams).
  HeraldicParams heraldic;
  AdminParams admin;

  // Sensitivity sweep grids.
  std::vector<double> heraldic_sweep_zipf = {0.9, 1.23, 1.57, 1.9};
  std::vector<double> heraldic_sweep_positional = {0.05, 0.25};
  std::vector<double> heraldic_sweep_bigram = {0.3, 0.9};
  std::vector<double> admin_sweep_zipf = {0.9, 1.4, 1.9};
  std::vector<double> admin_sweep_noise = {0.0, 0.1, 0.3};
  std::vector<std::size_t> admin_sweep_templates = {5, 10};

  // Allograph merge sweep steps.
  std::vector<std::size_t> merge_steps = {0, 10, 25, 50, 100, 150, 200};

  // Structure thresholds.
  std::size_t min_occ = 5;
  double v_threshold = 0.1;
  double alpha = 0.05;
  double link_threshold = 3.0;
  double assoc_threshold = 3.84;  // chi-square(1) 95% point
};

// Flat JSON config document; unknown keys are rejected. Missing keys keep
// defaults. Throws PipelineError on unreadable file or malformed JSON.
PipelineConfig load_config_file(const std::string& path);
PipelineConfig parse_config(const std::string& json_text);

// Canonical JSON dump of every config field, fixed key order; the basis of
// the config hash.
std::string canonical_config_json(const PipelineConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);
std::string config_hash_hex(const PipelineConfig& config);

// Shortest round-trippable decimal rendering used in all reports ("%.10g"
// semantics, locale-independent).
std::string format_double(double value);

// Runs one phase (1 descriptive, 2 discrimination, 3 structure). Returns 0
// on success, 1 if the run completed with analysis-level warnings. Throws
// PipelineError for input/config problems.
int run_phase(int phase, const PipelineConfig& config);

}  // namespace glyphstat
