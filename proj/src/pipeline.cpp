#include "glyphstat/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "glyphstat/corpus.hpp"
#include "glyphstat/metrics.hpp"
#include "glyphstat/null_models.hpp"
#include "glyphstat/rng.hpp"
#include "glyphstat/scorecard.hpp"
#include "glyphstat/structure.hpp"

namespace glyphstat {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

template <typename T>
ordered_json arr(const std::vector<T>& v) {
  return ordered_json(v);
}

}  // namespace

std::string canonical_config_json(const PipelineConfig& c) {
  // output_dir is deliberately excluded: it changes where reports land but
  // not a single computed value, and identical analyses must hash equal.
  ordered_json j;
  j["corpus_path"] = c.corpus_path;
  j["seed"] = c.seed;
  j["n_baseline_corpora"] = c.n_baseline_corpora;
  j["n_permutations"] = c.n_permutations;
  j["phrase_lengths"] = arr(c.phrase_lengths);
  j["cumulative_repeats"] = c.cumulative_repeats;
  j["heraldic_zipf_exponent"] = c.heraldic.zipf_exponent;
  j["heraldic_positional_strength"] = c.heraldic.positional_strength;
  j["heraldic_bigram_strength"] = c.heraldic.bigram_strength;
  j["heraldic_n_openers"] = c.heraldic.n_openers;
  j["heraldic_n_closers"] = c.heraldic.n_closers;
  j["heraldic_preferred_successors"] = c.heraldic.preferred_successors_per_sign;
  j["admin_n_templates"] = c.admin.n_templates;
  j["admin_zipf_exponent"] = c.admin.zipf_exponent;
  j["admin_noise_rate"] = c.admin.noise_rate;
  j["admin_fixed_slot_fraction"] = c.admin.fixed_slot_fraction;
  j["heraldic_sweep_zipf"] = arr(c.heraldic_sweep_zipf);
  j["heraldic_sweep_positional"] = arr(c.heraldic_sweep_positional);
  j["heraldic_sweep_bigram"] = arr(c.heraldic_sweep_bigram);
  j["admin_sweep_zipf"] = arr(c.admin_sweep_zipf);
  j["admin_sweep_noise"] = arr(c.admin_sweep_noise);
  j["admin_sweep_templates"] = arr(c.admin_sweep_templates);
  j["merge_steps"] = arr(c.merge_steps);
  j["min_occ"] = c.min_occ;
  j["v_threshold"] = c.v_threshold;
  j["alpha"] = c.alpha;
  j["link_threshold"] = c.link_threshold;
  j["assoc_threshold"] = c.assoc_threshold;
  return j.dump();
}

std::string config_hash_hex(const PipelineConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config_json(config))));
  return buf;
}

namespace {

[[noreturn]] void config_fail(const std::string& why) {
  throw PipelineError("config error: " + why);
}

template <typename T>
void read_count(const ordered_json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_number_unsigned()) config_fail(std::string(key) + " must be a non-negative integer");
  out = j[key].get<T>();
}

void read_real(const ordered_json& j, const char* key, double& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_number()) config_fail(std::string(key) + " must be a number");
  out = j[key].get<double>();
}

void read_string(const ordered_json& j, const char* key, std::string& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_string()) config_fail(std::string(key) + " must be a string");
  out = j[key].get<std::string>();
}

void read_bool(const ordered_json& j, const char* key, bool& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_boolean()) config_fail(std::string(key) + " must be a boolean");
  out = j[key].get<bool>();
}

template <typename T>
void read_array(const ordered_json& j, const char* key, std::vector<T>& out) {
  if (!j.contains(key)) return;
  if (!j[key].is_array()) config_fail(std::string(key) + " must be an array");
  out = j[key].get<std::vector<T>>();
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "corpus_path", "output_dir", "seed", "n_baseline_corpora", "n_permutations",
      "phrase_lengths", "cumulative_repeats",
      "heraldic_zipf_exponent", "heraldic_positional_strength", "heraldic_bigram_strength",
      "heraldic_n_openers", "heraldic_n_closers", "heraldic_preferred_successors",
      "admin_n_templates", "admin_zipf_exponent", "admin_noise_rate", "admin_fixed_slot_fraction",
      "heraldic_sweep_zipf", "heraldic_sweep_positional", "heraldic_sweep_bigram",
      "admin_sweep_zipf", "admin_sweep_noise", "admin_sweep_templates",
      "merge_steps", "min_occ", "v_threshold", "alpha", "link_threshold", "assoc_threshold"};
  return keys;
}

}  // namespace

PipelineConfig parse_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    config_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) config_fail("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) config_fail("unknown key \"" + key + "\"");
  }

  PipelineConfig c;
  read_string(j, "corpus_path", c.corpus_path);
  read_string(j, "output_dir", c.output_dir);
  read_count(j, "seed", c.seed);
  read_count(j, "n_baseline_corpora", c.n_baseline_corpora);
  read_count(j, "n_permutations", c.n_permutations);
  read_array(j, "phrase_lengths", c.phrase_lengths);
  read_bool(j, "cumulative_repeats", c.cumulative_repeats);
  read_real(j, "heraldic_zipf_exponent", c.heraldic.zipf_exponent);
  read_real(j, "heraldic_positional_strength", c.heraldic.positional_strength);
  read_real(j, "heraldic_bigram_strength", c.heraldic.bigram_strength);
  read_count(j, "heraldic_n_openers", c.heraldic.n_openers);
  read_count(j, "heraldic_n_closers", c.heraldic.n_closers);
  read_count(j, "heraldic_preferred_successors", c.heraldic.preferred_successors_per_sign);
  read_count(j, "admin_n_templates", c.admin.n_templates);
  read_real(j, "admin_zipf_exponent", c.admin.zipf_exponent);
  read_real(j, "admin_noise_rate", c.admin.noise_rate);
  read_real(j, "admin_fixed_slot_fraction", c.admin.fixed_slot_fraction);
  read_array(j, "heraldic_sweep_zipf", c.heraldic_sweep_zipf);
  read_array(j, "heraldic_sweep_positional", c.heraldic_sweep_positional);
  read_array(j, "heraldic_sweep_bigram", c.heraldic_sweep_bigram);
  read_array(j, "admin_sweep_zipf", c.admin_sweep_zipf);
  read_array(j, "admin_sweep_noise", c.admin_sweep_noise);
  read_array(j, "admin_sweep_templates", c.admin_sweep_templates);
  read_array(j, "merge_steps", c.merge_steps);
  read_count(j, "min_occ", c.min_occ);
  read_real(j, "v_threshold", c.v_threshold);
  read_real(j, "alpha", c.alpha);
  read_real(j, "link_threshold", c.link_threshold);
  read_real(j, "assoc_threshold", c.assoc_threshold);

  if (c.n_baseline_corpora < 2) config_fail("n_baseline_corpora must be >= 2");
  if (c.n_permutations < 1) config_fail("n_permutations must be >= 1");
  if (c.min_occ < 1) config_fail("min_occ must be >= 1");
  for (std::size_t l : c.phrase_lengths) {
    if (l < 1) config_fail("phrase_lengths entries must be >= 1");
  }
  return c;
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

struct Reporter {
  fs::path dir;
  std::string header;  // "# config_hash=... seed=..."
  ordered_json meta;

  Reporter(const PipelineConfig& cfg) : dir(cfg.output_dir) {
    const std::string hash = config_hash_hex(cfg);
    header = "# config_hash=" + hash + " seed=" + std::to_string(cfg.seed) + "\n";
    meta["config_hash"] = hash;
    meta["seed"] = cfg.seed;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw PipelineError("cannot create output directory: " + dir.string());
  }

  void csv(const std::string& name, const std::string& columns, const std::string& body) const {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw PipelineError("cannot write report: " + (dir / name).string());
    out << header << columns << "\n" << body;
  }

  void json(const std::string& name, ordered_json j) const {
    ordered_json wrapped;
    wrapped["meta"] = meta;
    for (auto& [key, value] : j.items()) wrapped[key] = value;
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw PipelineError("cannot write report: " + (dir / name).string());
    out << wrapped.dump(2) << "\n";
  }
};

struct LoadedCorpus {
  Corpus raw;
  Corpus dedup;
  std::size_t removed = 0;
};

LoadedCorpus load_input(const PipelineConfig& cfg) {
  if (cfg.corpus_path.empty()) throw PipelineError("no corpus path given");
  LoadedCorpus lc;
  try {
    lc.raw = load_corpus(cfg.corpus_path);
  } catch (const std::exception& e) {
    throw PipelineError(e.what());
  }
  if (lc.raw.size() == 0) throw PipelineError("corpus is empty: " + cfg.corpus_path);
  auto [dedup, removed] = deduplicate(lc.raw);
  lc.dedup = std::move(dedup);
  lc.removed = removed;
  return lc;
}

ordered_json metric_vector_json(const MetricVector& m) {
  ordered_json j;
  j["brevity"] = m.brevity;
  j["repeats_3"] = m.repeats[0];
  j["repeats_4"] = m.repeats[1];
  j["repeats_5"] = m.repeats[2];
  j["repeats_6"] = m.repeats[3];
  j["hapax_rate"] = m.hapax_rate;
  j["positional_rigidity"] = m.positional_rigidity;
  j["zipf_slope"] = m.zipf_slope;
  j["zipf_r2"] = m.zipf_r2;
  j["cond_entropy_bits"] = m.cond_entropy_bits;
  j["bigram_top3_coverage"] = m.bigram_top3_coverage;
  return j;
}

int phase1(const PipelineConfig& cfg) {
  const LoadedCorpus lc = load_input(cfg);
  const Reporter rep(cfg);
  const CorpusSummary sum = summarize(lc.dedup, lc.removed);
  const CorpusSummary raw_sum = summarize(lc.raw);
  const auto fit = zipf_fit(lc.dedup);
  const auto freq = sign_frequencies(lc.dedup);

  ordered_json j;
  j["raw_inscriptions"] = raw_sum.inscriptions;
  j["raw_tokens"] = raw_sum.tokens;
  j["inscriptions"] = sum.inscriptions;
  j["duplicates_removed"] = sum.duplicates_removed;
  j["tokens"] = sum.tokens;
  j["sign_types"] = sum.sign_types;
  j["mean_length"] = sum.mean_length;
  j["median_length"] = sum.median_length;
  j["sd_length"] = sum.sd_length;
  j["min_length"] = sum.min_length;
  j["max_length"] = sum.max_length;
  j["sites"] = sum.sites;
  j["zipf_slope"] = fit.slope;
  j["zipf_r2"] = fit.r2;
  j["zipf_degenerate"] = fit.degenerate;
  j["cond_entropy_bits"] = conditional_entropy_bits(lc.dedup);
  const std::size_t hapax_count =
      static_cast<std::size_t>(std::count(freq.begin(), freq.end(), std::size_t{1}));
  j["hapax_count"] = hapax_count;
  j["hapax_rate"] = hapax_rate(lc.dedup);
  j["positional_rigidity"] = positional_rigidity(lc.dedup);
  j["bigram_top3_coverage"] = bigram_top3_coverage(lc.dedup);
  ordered_json repeats;
  for (std::size_t l : cfg.phrase_lengths) {
    repeats["repeats_" + std::to_string(l)] =
        repeated_phrase_count(lc.dedup, l, cfg.cumulative_repeats);
  }
  j["repeated_phrases"] = repeats;
  rep.json("summary.json", std::move(j));

  {
    std::map<std::size_t, std::size_t> hist;
    for (const auto& ins : lc.dedup.inscriptions()) ++hist[ins.signs.size()];
    std::string body;
    for (const auto& [len, count] : hist) {
      body += std::to_string(len) + "," + std::to_string(count) + "\n";
    }
    rep.csv("length_histogram.csv", "length,count", body);
  }
  {
    std::vector<std::size_t> order(freq.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (freq[a] != freq[b]) return freq[a] > freq[b];
      return a < b;
    });
    std::string body;
    for (std::size_t r = 0; r < order.size(); ++r) {
      body += std::to_string(r + 1) + "," + lc.dedup.vocab()[order[r]] + "," +
              std::to_string(freq[order[r]]) + "\n";
    }
    rep.csv("rank_frequency.csv", "rank,sign,frequency", body);
  }
  return 0;
}

std::string interval_csv_rows(const std::vector<MetricInterval>& rows) {
  std::string body;
  for (const auto& r : rows) {
    body += r.metric + "," + format_double(r.observed) + "," + format_double(r.mean) + "," +
            format_double(r.sd) + "," + format_double(r.lo) + "," + format_double(r.hi) + "," +
            to_string(r.verdict) + "\n";
  }
  return body;
}

ordered_json interval_json_rows(const std::vector<MetricInterval>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["metric"] = r.metric;
    j["baseline"] = r.baseline;
    j["observed"] = r.observed;
    j["mean"] = r.mean;
    j["sd"] = r.sd;
    j["lo"] = r.lo;
    j["hi"] = r.hi;
    j["verdict"] = to_string(r.verdict);
    out.push_back(std::move(j));
  }
  return out;
}

int phase2(const PipelineConfig& cfg) {
  const LoadedCorpus lc = load_input(cfg);
  const Reporter rep(cfg);
  int status = 0;
  auto warn = [&status](const std::string& message) {
    std::cerr << "warning: " << message << "\n";
    status = 1;
  };

  if (cfg.n_baseline_corpora < 10) {
    warn("n_baseline_corpora=" + std::to_string(cfg.n_baseline_corpora) +
         " gives very wide percentile intervals");
  }

  // permutation null for conditional entropy
  {
    const auto res = permutation_test(lc.dedup, cfg.n_permutations, cfg.seed);
    ordered_json j;
    j["observed_bits"] = res.observed;
    j["null_mean_bits"] = res.null_mean;
    j["null_sd_bits"] = res.null_sd;
    j["percentile"] = res.percentile;
    j["n_perms"] = res.n_perms;
    rep.json("permutation.json", std::move(j));
    std::string body;
    for (std::size_t t = 0; t < res.null_draws.size(); ++t) {
      body += std::to_string(t) + "," + format_double(res.null_draws[t]) + "\n";
    }
    rep.csv("null_draws.csv", "trial,entropy_bits", body);
  }

  const SizeProfile profile = size_profile_of(lc.dedup);
  const MetricVector observed = compute_metrics(lc.dedup, cfg.cumulative_repeats);

  auto heraldic_gen = [&](HeraldicParams params) {
    return [params, profile, seed = cfg.seed](std::size_t i) {
      HeraldicParams p = params;
      p.seed = substream(seed, i);
      return generate_heraldic(p, profile);
    };
  };
  auto admin_gen = [&](AdminParams params) {
    return [params, profile, seed = cfg.seed](std::size_t i) {
      AdminParams p = params;
      p.seed = substream(seed, i);
      return generate_admin(p, profile);
    };
  };

  // scorecards against the two default baselines
  const auto heraldic_rows =
      run_scorecard(observed, "heraldic", heraldic_gen(cfg.heraldic), cfg.n_baseline_corpora,
                    cfg.cumulative_repeats);
  const auto admin_rows = run_scorecard(observed, "admin", admin_gen(cfg.admin),
                                        cfg.n_baseline_corpora, cfg.cumulative_repeats);
  const std::string columns = "metric,observed,baseline_mean,baseline_sd,lo,hi,verdict";
  rep.csv("scorecard_heraldic.csv", columns, interval_csv_rows(heraldic_rows));
  rep.csv("scorecard_admin.csv", columns, interval_csv_rows(admin_rows));
  {
    ordered_json j;
    j["observed"] = metric_vector_json(observed);
    j["heraldic"] = interval_json_rows(heraldic_rows);
    j["admin"] = interval_json_rows(admin_rows);
    rep.json("scorecard.json", std::move(j));
  }

  // sensitivity sweeps
  auto emit_sweep = [&](const std::string& name, const std::vector<SweepCell>& cells) {
    std::string body;
    std::map<std::string, std::size_t> disc_count;
    for (const auto& cell : cells) {
      body += cell.label;
      std::size_t n_disc = 0;
      for (const auto& row : cell.rows) {
        body += std::string(",") + to_string(row.verdict);
        if (row.verdict == Verdict::DISC) {
          ++n_disc;
          ++disc_count[row.metric];
        }
      }
      body += "," + std::to_string(n_disc) + "\n";
    }
    rep.csv(name + ".csv",
            "cell,brevity,repeats_3,repeats_4,repeats_5,repeats_6,hapax_rate,positional_rigidity,"
            "n_disc",
            body);
    ordered_json j;
    for (const auto& row : cells.front().rows) {
      j[row.metric + "_disc_cells"] = disc_count[row.metric];
    }
    j["total_cells"] = cells.size();
    return j;
  };

  std::vector<std::pair<std::string, BaselineGenerator>> hgrid;
  for (const auto& [label, params] :
       heraldic_grid(cfg.heraldic, cfg.heraldic_sweep_zipf, cfg.heraldic_sweep_positional,
                     cfg.heraldic_sweep_bigram)) {
    hgrid.emplace_back(label, heraldic_gen(params));
  }
  std::vector<std::pair<std::string, BaselineGenerator>> agrid;
  for (const auto& [label, params] : admin_grid(cfg.admin, cfg.admin_sweep_zipf,
                                                cfg.admin_sweep_noise, cfg.admin_sweep_templates)) {
    agrid.emplace_back(label, admin_gen(params));
  }
  const auto hsweep =
      sensitivity_sweep(observed, "heraldic", hgrid, cfg.n_baseline_corpora, cfg.cumulative_repeats);
  const auto asweep =
      sensitivity_sweep(observed, "admin", agrid, cfg.n_baseline_corpora, cfg.cumulative_repeats);
  {
    ordered_json j;
    j["heraldic"] = emit_sweep("sweep_heraldic", hsweep);
    j["admin"] = emit_sweep("sweep_admin", asweep);
    rep.json("sweep_summary.json", std::move(j));
  }

  // allograph merge sweep
  if (lc.dedup.vocab_size() < 2) {
    warn("vocabulary too small for allograph merging; sweep skipped");
    rep.csv("allograph_sweep.csv", "pairs_merged,unique_signs,hapax_count,hapax_fraction", "");
  } else {
    const auto plan = allograph_plan(lc.dedup);
    std::vector<std::size_t> steps;
    for (std::size_t n : cfg.merge_steps) {
      if (n > plan.size()) {
        warn("merge step " + std::to_string(n) + " exceeds the " + std::to_string(plan.size()) +
             " rankable pairs; clamped");
        n = plan.size();
      }
      steps.push_back(n);
    }
    std::string body;
    for (const auto& row : merge_and_remeasure(lc.dedup, plan, steps)) {
      body += std::to_string(row.pairs_merged) + "," + std::to_string(row.unique_signs) + "," +
              std::to_string(row.hapax_count) + "," + format_double(row.hapax_fraction) + "\n";
    }
    rep.csv("allograph_sweep.csv", "pairs_merged,unique_signs,hapax_count,hapax_fraction", body);
  }

  // generator calibration report
  {
    const CalibrationTarget target;
    const std::size_t n_reps = 20;
    const auto hrep = validate_generator(heraldic_gen(cfg.heraldic), target, n_reps);
    const auto arep = validate_generator(admin_gen(cfg.admin), target, n_reps);
    auto range_json = [](const CalibrationRange& r) {
      ordered_json j;
      j["min"] = r.min;
      j["median"] = r.median;
      j["max"] = r.max;
      return j;
    };
    auto report_json = [](const CalibrationReport& r) {
      ordered_json j;
      j["n_reps"] = r.n_reps;
      j["mean_zipf_slope"] = r.mean_zipf_slope;
      j["mean_positional_rigidity"] = r.mean_positional_v;
      j["mean_bigram_top3_coverage"] = r.mean_bigram_coverage;
      j["zipf_in_range"] = r.zipf_in_range;
      j["positional_in_range"] = r.positional_in_range;
      j["coverage_in_range"] = r.coverage_in_range;
      return j;
    };
    ordered_json j;
    ordered_json targets;
    targets["zipf_slope"] = range_json(target.zipf_slope);
    targets["positional_rigidity"] = range_json(target.positional_v);
    targets["bigram_top3_coverage"] = range_json(target.bigram_coverage);
    j["targets"] = targets;
    j["heraldic"] = report_json(hrep);
    j["admin"] = report_json(arep);
    rep.json("generator_validation.json", std::move(j));
  }

  return status;
}

int phase3(const PipelineConfig& cfg) {
  const LoadedCorpus lc = load_input(cfg);
  const Reporter rep(cfg);

  // cross-site table, both before and after deduplication
  {
    struct SiteRow {
      std::size_t n_raw = 0;
      std::size_t n_dedup = 0;
      std::size_t signs_raw = 0;
      std::size_t signs_dedup = 0;
      double mean_raw = 0.0;
      double mean_dedup = 0.0;
    };
    std::map<std::string, SiteRow> table;
    for (const auto& [site, sub] : split_by_site(lc.raw)) {
      auto& row = table[site];
      row.n_raw = sub.size();
      row.signs_raw = sub.vocab_size();
      row.mean_raw = brevity(sub);
    }
    for (const auto& [site, sub] : split_by_site(lc.dedup)) {
      auto& row = table[site];
      row.n_dedup = sub.size();
      row.signs_dedup = sub.vocab_size();
      row.mean_dedup = brevity(sub);
    }
    std::vector<std::pair<std::string, SiteRow>> rows(table.begin(), table.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (a.second.n_raw != b.second.n_raw) return a.second.n_raw > b.second.n_raw;
      return a.first < b.first;
    });
    std::string body;
    for (const auto& [site, r] : rows) {
      body += site + "," + std::to_string(r.n_raw) + "," + std::to_string(r.n_dedup) + "," +
              std::to_string(r.signs_raw) + "," + std::to_string(r.signs_dedup) + "," +
              format_double(r.mean_raw) + "," + format_double(r.mean_dedup) + "\n";
    }
    rep.csv("cross_site.csv",
            "site,inscriptions_raw,inscriptions_dedup,unique_signs_raw,unique_signs_dedup,"
            "mean_length_raw,mean_length_dedup",
            body);
  }

  ordered_json summary;

  // positional classes
  {
    const auto classes = positional_classes(lc.dedup, cfg.min_occ, cfg.v_threshold, cfg.alpha);
    std::string body;
    std::size_t n_initial = 0, n_terminal = 0, n_content = 0;
    for (const auto& pc : classes) {
      body += lc.dedup.vocab()[static_cast<std::size_t>(pc.sign)] + std::string(",") +
              to_string(pc.cls) + "," + format_double(pc.v) + "," + format_double(pc.p_adjusted) +
              "\n";
      switch (pc.cls) {
        case SignClass::INITIAL: ++n_initial; break;
        case SignClass::TERMINAL: ++n_terminal; break;
        case SignClass::CONTENT: ++n_content; break;
      }
    }
    rep.csv("positional_classes.csv", "sign,class,v,p_adjusted", body);
    ordered_json j;
    j["tested"] = classes.size();
    j["initial"] = n_initial;
    j["terminal"] = n_terminal;
    j["content"] = n_content;
    summary["positional_classes"] = j;
  }

  // template families
  {
    const auto famrep = template_families(lc.dedup, cfg.link_threshold);
    std::string body;
    for (std::size_t f = 0; f < famrep.families.size(); ++f) {
      const auto& fam = famrep.families[f];
      std::string members;
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        if (i) members += ' ';
        members += lc.dedup.inscriptions()[fam.members[i]].id;
      }
      body += std::to_string(f) + "," + std::to_string(fam.members.size()) + "," +
              std::to_string(fam.diameter) + "," + members + "\n";
    }
    rep.csv("families.csv", "family_id,size,diameter,member_ids", body);
    ordered_json j;
    j["families"] = famrep.families.size();
    j["singletons"] = famrep.singletons;
    j["mean_diameter"] = famrep.mean_diameter;
    j["link_threshold"] = cfg.link_threshold;
    summary["template_families"] = j;
  }

  // bigram graph communities
  {
    const auto graph = bigram_graph(lc.dedup);
    const auto comm = communities(graph, cfg.seed);
    std::string body;
    for (std::size_t s = 0; s < comm.size(); ++s) {
      body += lc.dedup.vocab()[s] + "," + std::to_string(comm[s]) + "\n";
    }
    rep.csv("communities.csv", "sign,community", body);
    std::size_t total_weight = 0;
    for (const auto& [edge, w] : graph.edges) total_weight += w;
    const int n_comm = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
    ordered_json j;
    j["nodes"] = graph.n_nodes;
    j["edges"] = graph.edges.size();
    j["total_edge_weight"] = total_weight;
    j["communities"] = n_comm;
    j["modularity"] = modularity(graph, comm);
    summary["bigram_graph"] = j;
  }

  // candidate segmentation
  {
    const auto seg = segment_candidates(lc.dedup, cfg.assoc_threshold);
    std::string body;
    for (std::size_t i = 0; i < seg.per_inscription.size(); ++i) {
      body += lc.dedup.inscriptions()[i].id + ",";
      const auto& units = seg.per_inscription[i].units;
      for (std::size_t u = 0; u < units.size(); ++u) {
        if (u) body += '|';
        for (std::size_t s = 0; s < units[u].size(); ++s) {
          if (s) body += ' ';
          body += units[u][s];
        }
      }
      body += "\n";
    }
    rep.csv("segmentation.csv", "inscription_id,segments", body);
    std::string units_body;
    for (const auto& unit : seg.unit_inventory) {
      std::string text;
      for (std::size_t s = 0; s < unit.size(); ++s) {
        if (s) text += ' ';
        text += unit[s];
      }
      units_body += text + "\n";
    }
    rep.csv("segmentation_units.csv", "unit", units_body);
    ordered_json j;
    j["unique_units"] = seg.unit_inventory.size();
    j["mean_segments_per_inscription"] = seg.mean_segments_per_inscription;
    j["assoc_threshold"] = cfg.assoc_threshold;
    summary["segmentation"] = j;
  }

  rep.json("structure_summary.json", std::move(summary));
  return 0;
}

}  // namespace

int run_phase(int phase, const PipelineConfig& config) {
  switch (phase) {
    case 1: return phase1(config);
    case 2: return phase2(config);
    case 3: return phase3(config);
    default: throw PipelineError("phase must be 1, 2, or 3");
  }
}

}  // namespace glyphstat
