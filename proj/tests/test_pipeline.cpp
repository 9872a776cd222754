#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "glyphstat/corpus.hpp"
#include "glyphstat/generators.hpp"
#include "glyphstat/pipeline.hpp"

using namespace glyphstat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A self-contained workspace: a generated corpus file plus output dirs,
// recreated fresh for every test case that needs one.
struct Workspace {
  fs::path root;
  std::string corpus_path;

  explicit Workspace(const std::string& name) : root(fs::path("tmp_pipeline") / name) {
    fs::remove_all(root);
    fs::create_directories(root);
    SizeProfile profile;
    profile.n_inscriptions = 60;
    profile.length_histogram = {{2, 15}, {3, 15}, {4, 15}, {5, 15}};
    profile.vocab_size = 15;
    HeraldicParams params;
    params.seed = 424242;
    corpus_path = (root / "corpus.txt").string();
    save_corpus(generate_heraldic(params, profile), corpus_path);
  }

  PipelineConfig config(const std::string& out_name) const {
    PipelineConfig cfg;
    cfg.corpus_path = corpus_path;
    cfg.output_dir = (root / out_name).string();
    cfg.seed = 7;
    cfg.n_baseline_corpora = 12;
    cfg.n_permutations = 20;
    // keep the sweeps small so the full phase stays fast
    cfg.heraldic_sweep_zipf = {1.2};
    cfg.heraldic_sweep_positional = {0.15};
    cfg.heraldic_sweep_bigram = {0.6};
    cfg.admin_sweep_zipf = {1.4};
    cfg.admin_sweep_noise = {0.1};
    cfg.admin_sweep_templates = {5};
    cfg.merge_steps = {0, 2, 5};
    return cfg;
  }
};

}  // namespace

TEST_CASE("parse_config") {
  SUBCASE("empty object keeps every default") {
    const auto c = parse_config("{}");
    CHECK(c.output_dir == "out");
    CHECK(c.seed == 0);
    CHECK(c.n_baseline_corpora == 100);
    CHECK(c.n_permutations == 1000);
    CHECK(c.phrase_lengths == std::vector<std::size_t>{3, 4, 5, 6});
    CHECK_FALSE(c.cumulative_repeats);
    CHECK(c.heraldic.zipf_exponent == doctest::Approx(1.46));
    CHECK(c.heraldic.positional_strength == doctest::Approx(0.15));
    CHECK(c.heraldic.bigram_strength == doctest::Approx(0.60));
    CHECK(c.admin.n_templates == 7);
    CHECK(c.admin.noise_rate == doctest::Approx(0.10));
    CHECK(c.merge_steps == std::vector<std::size_t>{0, 10, 25, 50, 100, 150, 200});
    CHECK(c.min_occ == 5);
    CHECK(c.v_threshold == doctest::Approx(0.1));
    CHECK(c.alpha == doctest::Approx(0.05));
    CHECK(c.link_threshold == doctest::Approx(3.0));
    CHECK(c.assoc_threshold == doctest::Approx(3.84));
  }

  SUBCASE("explicit values override defaults") {
    const auto c = parse_config(R"({
      "corpus_path": "x.txt", "seed": 99, "n_baseline_corpora": 50,
      "heraldic_zipf_exponent": 1.2, "admin_noise_rate": 0.25,
      "phrase_lengths": [2, 3], "cumulative_repeats": true,
      "merge_steps": [0, 5]
    })");
    CHECK(c.corpus_path == "x.txt");
    CHECK(c.seed == 99);
    CHECK(c.n_baseline_corpora == 50);
    CHECK(c.heraldic.zipf_exponent == doctest::Approx(1.2));
    CHECK(c.admin.noise_rate == doctest::Approx(0.25));
    CHECK(c.phrase_lengths == std::vector<std::size_t>{2, 3});
    CHECK(c.cumulative_repeats);
    CHECK(c.merge_steps == std::vector<std::size_t>{0, 5});
  }

  SUBCASE("malformed input is rejected") {
    CHECK_THROWS_AS(parse_config("not json"), PipelineError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"no_such_key": 1})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"seed": "zero"})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"seed": -1})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"alpha": "small"})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"phrase_lengths": 3})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"cumulative_repeats": 1})"), PipelineError);
  }

  SUBCASE("semantic validation") {
    CHECK_THROWS_AS(parse_config(R"({"n_baseline_corpora": 1})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"n_permutations": 0})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"min_occ": 0})"), PipelineError);
    CHECK_THROWS_AS(parse_config(R"({"phrase_lengths": [3, 0]})"), PipelineError);
  }
}

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config hash") {
  PipelineConfig a;
  a.corpus_path = "c.txt";
  PipelineConfig b = a;

  SUBCASE("hex shape") {
    const auto h = config_hash_hex(a);
    CHECK(h.size() == 16);
    CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
  }

  SUBCASE("output_dir does not participate") {
    b.output_dir = "elsewhere";
    CHECK(config_hash_hex(a) == config_hash_hex(b));
    CHECK(canonical_config_json(a).find("output_dir") == std::string::npos);
  }

  SUBCASE("analysis parameters do participate") {
    b.seed = 1;
    CHECK(config_hash_hex(a) != config_hash_hex(b));
    b = a;
    b.heraldic.zipf_exponent = 1.0;
    CHECK(config_hash_hex(a) != config_hash_hex(b));
    b = a;
    b.merge_steps = {1};
    CHECK(config_hash_hex(a) != config_hash_hex(b));
  }
}

TEST_CASE("format_double") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(2.5) == "2.5");
  CHECK(format_double(-1.46) == "-1.46");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333");
  CHECK(format_double(1e20) == "1e+20");
}

TEST_CASE("run_phase rejects bad input") {
  PipelineConfig cfg;
  CHECK_THROWS_AS(run_phase(1, cfg), PipelineError);  // no corpus path
  cfg.corpus_path = "definitely/not/here.txt";
  cfg.output_dir = "tmp_pipeline/na";
  CHECK_THROWS_AS(run_phase(1, cfg), PipelineError);
  CHECK_THROWS_AS(run_phase(0, cfg), PipelineError);
  CHECK_THROWS_AS(run_phase(4, cfg), PipelineError);
}

TEST_CASE("phase 1 reports") {
  const Workspace ws("phase1");
  const auto cfg = ws.config("out1");
  CHECK(run_phase(1, cfg) == 0);

  const fs::path out(cfg.output_dir);
  REQUIRE(fs::exists(out / "summary.json"));
  REQUIRE(fs::exists(out / "length_histogram.csv"));
  REQUIRE(fs::exists(out / "rank_frequency.csv"));

  const auto j = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(j["meta"]["config_hash"] == config_hash_hex(cfg));
  CHECK(j["meta"]["seed"] == 7);
  CHECK(j["inscriptions"].get<std::size_t>() <= 60);
  CHECK(j["raw_inscriptions"] == 60);
  CHECK(j["sign_types"].get<std::size_t>() <= 15);
  CHECK(j["tokens"].get<std::size_t>() > 0);
  CHECK(j["repeated_phrases"].contains("repeats_3"));
  CHECK(j["repeated_phrases"].contains("repeats_6"));
  CHECK(j.contains("zipf_slope"));
  CHECK(j.contains("cond_entropy_bits"));
  CHECK(j.contains("hapax_rate"));

  const std::string histogram = slurp(out / "length_histogram.csv");
  const std::string expected_header =
      "# config_hash=" + config_hash_hex(cfg) + " seed=7\nlength,count\n";
  CHECK(histogram.substr(0, expected_header.size()) == expected_header);

  SUBCASE("reruns into another directory are byte-identical") {
    auto cfg2 = ws.config("out2");
    CHECK(run_phase(1, cfg2) == 0);
    const fs::path out2(cfg2.output_dir);
    for (const char* name : {"summary.json", "length_histogram.csv", "rank_frequency.csv"}) {
      CHECK(slurp(out / name) == slurp(out2 / name));
    }
  }
}

TEST_CASE("phase 2 reports") {
  const Workspace ws("phase2");
  const auto cfg = ws.config("out");
  CHECK(run_phase(2, cfg) == 0);

  const fs::path out(cfg.output_dir);
  for (const char* name :
       {"permutation.json", "null_draws.csv", "scorecard_heraldic.csv", "scorecard_admin.csv",
        "scorecard.json", "sweep_heraldic.csv", "sweep_admin.csv", "sweep_summary.json",
        "allograph_sweep.csv", "generator_validation.json"}) {
    INFO(name);
    CHECK(fs::exists(out / name));
  }

  const auto perm = nlohmann::json::parse(slurp(out / "permutation.json"));
  CHECK(perm["n_perms"] == 20);
  CHECK(perm["percentile"].get<double>() >= 0.0);
  CHECK(perm["percentile"].get<double>() <= 1.0);

  const auto score = nlohmann::json::parse(slurp(out / "scorecard.json"));
  REQUIRE(score["heraldic"].size() == 7);
  REQUIRE(score["admin"].size() == 7);
  CHECK(score["heraldic"][0]["metric"] == "brevity");
  CHECK(score["heraldic"][6]["metric"] == "positional_rigidity");
  for (const auto& row : score["admin"]) {
    const std::string verdict = row["verdict"];
    CHECK((verdict == "DISC" || verdict == "NOT"));
    CHECK(row["lo"].get<double>() <= row["hi"].get<double>());
  }

  // scorecard CSV: comment header + column header + 7 rows
  const std::string csv = slurp(out / "scorecard_heraldic.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);

  const auto sweeps = nlohmann::json::parse(slurp(out / "sweep_summary.json"));
  CHECK(sweeps["heraldic"]["total_cells"] == 1);
  CHECK(sweeps["admin"]["total_cells"] == 2);  // 1x1 grid + one template cell

  // merge sweep rows: one per requested step
  const std::string merges = slurp(out / "allograph_sweep.csv");
  CHECK(std::count(merges.begin(), merges.end(), '\n') == 2 + 3);

  SUBCASE("tiny ensembles complete with a warning status") {
    auto cfg2 = ws.config("warn");
    cfg2.n_baseline_corpora = 5;
    CHECK(run_phase(2, cfg2) == 1);
  }
}

TEST_CASE("phase 3 reports") {
  const Workspace ws("phase3");
  const auto cfg = ws.config("out");
  CHECK(run_phase(3, cfg) == 0);

  const fs::path out(cfg.output_dir);
  for (const char* name : {"cross_site.csv", "positional_classes.csv", "families.csv",
                           "communities.csv", "segmentation.csv", "segmentation_units.csv",
                           "structure_summary.json"}) {
    INFO(name);
    CHECK(fs::exists(out / name));
  }

  const auto j = nlohmann::json::parse(slurp(out / "structure_summary.json"));
  CHECK(j.contains("positional_classes"));
  CHECK(j.contains("template_families"));
  CHECK(j.contains("bigram_graph"));
  CHECK(j.contains("segmentation"));
  CHECK(j["bigram_graph"]["nodes"].get<std::size_t>() <= 15);
  CHECK(j["segmentation"]["assoc_threshold"].get<double>() == doctest::Approx(3.84));

  // every generated inscription is synthetic, so the site table has one row
  const std::string sites = slurp(out / "cross_site.csv");
  CHECK(std::count(sites.begin(), sites.end(), '\n') == 3);
  CHECK(sites.find("synthetic,") != std::string::npos);

  SUBCASE("whole-pipeline determinism across directories") {
    auto cfg2 = ws.config("out_b");
    CHECK(run_phase(3, cfg2) == 0);
    for (const char* name : {"cross_site.csv", "positional_classes.csv", "families.csv",
                             "communities.csv", "segmentation.csv", "structure_summary.json"}) {
      CHECK(slurp(out / name) == slurp(fs::path(cfg2.output_dir) / name));
    }
  }
}
