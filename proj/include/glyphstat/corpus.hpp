#pragma once
// Corpus model and the line-oriented interchange format.
//
// One inscription per line: "<id>,<site>,<sign sign sign ...>". Exactly two
// commas; signs are whitespace-separated opaque labels. Lines that are blank
// or start with '#' are skipped. Saving a loaded corpus reproduces the
// canonical byte stream (single spaces, '\n' line ends).

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace glyphstat {

struct Inscription {
  std::string id;
  std::string site;
  std::vector<std::string> signs;
};

// Immutable corpus with an interned vocabulary. Sign codes are dense indices
// into vocab(), which is sorted lexicographically so codes are stable across
// loads of the same corpus.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Inscription> inscriptions);

  const std::vector<Inscription>& inscriptions() const noexcept { return inscriptions_; }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  // Sign sequences re-expressed as vocabulary codes, parallel to inscriptions().
  const std::vector<std::vector<int>>& encoded() const noexcept { return encoded_; }

  std::size_t size() const noexcept { return inscriptions_.size(); }
  std::size_t token_count() const noexcept { return token_count_; }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }

  // Code for a sign label, or -1 if absent.
  int code_of(const std::string& sign) const;

 private:
  std::vector<Inscription> inscriptions_;
  std::vector<std::string> vocab_;
  std::vector<std::vector<int>> encoded_;
  std::size_t token_count_ = 0;
};

// Parses the interchange format. Throws std::runtime_error naming the line
// number on malformed input (wrong comma count, empty id/site/signs).
Corpus load_corpus(const std::string& path);
Corpus parse_corpus(const std::string& text);

std::string serialize_corpus(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::string& path);

// Removes later inscriptions whose sign sequence duplicates an earlier one
// (id and site ignored). Returns the kept corpus and the number removed.
std::pair<Corpus, std::size_t> deduplicate(const Corpus& corpus);

// Sub-corpora keyed by site, each re-interned independently.
std::map<std::string, Corpus> split_by_site(const Corpus& corpus);

struct CorpusSummary {
  std::size_t inscriptions = 0;
  std::size_t tokens = 0;
  std::size_t sign_types = 0;
  double mean_length = 0.0;
  double median_length = 0.0;  // midpoint of the two middle values when even
  double sd_length = 0.0;      // population standard deviation
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  std::size_t sites = 0;
  std::size_t duplicates_removed = 0;  // caller-supplied provenance, not recomputed
};

CorpusSummary summarize(const Corpus& corpus, std::size_t duplicates_removed = 0);

}  // namespace glyphstat
