#include "glyphstat/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace glyphstat {

Corpus::Corpus(std::vector<Inscription> inscriptions)
    : inscriptions_(std::move(inscriptions)) {
  std::set<std::string> labels;
  for (const auto& ins : inscriptions_) {
    token_count_ += ins.signs.size();
    labels.insert(ins.signs.begin(), ins.signs.end());
  }
  vocab_.assign(labels.begin(), labels.end());  // std::set iterates sorted

  std::unordered_map<std::string, int> code;
  code.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) code[vocab_[i]] = static_cast<int>(i);

  encoded_.reserve(inscriptions_.size());
  for (const auto& ins : inscriptions_) {
    std::vector<int> row;
    row.reserve(ins.signs.size());
    for (const auto& s : ins.signs) row.push_back(code[s]);
    encoded_.push_back(std::move(row));
  }
}

int Corpus::code_of(const std::string& sign) const {
  const auto it = std::lower_bound(vocab_.begin(), vocab_.end(), sign);
  if (it == vocab_.end() || *it != sign) return -1;
  return static_cast<int>(it - vocab_.begin());
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("corpus parse error at line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

Corpus parse_corpus(const std::string& text) {
  std::vector<Inscription> out;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const auto c1 = line.find(',');
    if (c1 == std::string::npos) parse_fail(line_no, "expected two commas");
    const auto c2 = line.find(',', c1 + 1);
    if (c2 == std::string::npos) parse_fail(line_no, "expected two commas");
    if (line.find(',', c2 + 1) != std::string::npos) parse_fail(line_no, "too many commas");

    Inscription ins;
    ins.id = line.substr(0, c1);
    ins.site = line.substr(c1 + 1, c2 - c1 - 1);
    if (ins.id.empty()) parse_fail(line_no, "empty id");
    if (ins.site.empty()) parse_fail(line_no, "empty site");

    std::istringstream signs(line.substr(c2 + 1));
    std::string sign;
    while (signs >> sign) ins.signs.push_back(sign);
    if (ins.signs.empty()) parse_fail(line_no, "no signs");

    out.push_back(std::move(ins));
  }
  return Corpus(std::move(out));
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& ins : corpus.inscriptions()) {
    out += ins.id;
    out += ',';
    out += ins.site;
    out += ',';
    for (std::size_t i = 0; i < ins.signs.size(); ++i) {
      if (i) out += ' ';
      out += ins.signs[i];
    }
    out += '\n';
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  out << serialize_corpus(corpus);
}

std::pair<Corpus, std::size_t> deduplicate(const Corpus& corpus) {
  std::set<std::vector<std::string>> seen;
  std::vector<Inscription> kept;
  std::size_t removed = 0;
  for (const auto& ins : corpus.inscriptions()) {
    if (seen.insert(ins.signs).second) {
      kept.push_back(ins);
    } else {
      ++removed;
    }
  }
  return {Corpus(std::move(kept)), removed};
}

std::map<std::string, Corpus> split_by_site(const Corpus& corpus) {
  std::map<std::string, std::vector<Inscription>> by_site;
  for (const auto& ins : corpus.inscriptions()) by_site[ins.site].push_back(ins);
  std::map<std::string, Corpus> out;
  for (auto& [site, list] : by_site) out.emplace(site, Corpus(std::move(list)));
  return out;
}

CorpusSummary summarize(const Corpus& corpus, std::size_t duplicates_removed) {
  CorpusSummary s;
  s.inscriptions = corpus.size();
  s.tokens = corpus.token_count();
  s.sign_types = corpus.vocab_size();
  s.duplicates_removed = duplicates_removed;
  if (corpus.size() == 0) return s;

  std::vector<double> lengths;
  lengths.reserve(corpus.size());
  std::set<std::string> sites;
  for (const auto& ins : corpus.inscriptions()) {
    lengths.push_back(static_cast<double>(ins.signs.size()));
    sites.insert(ins.site);
  }
  std::sort(lengths.begin(), lengths.end());
  s.min_length = static_cast<std::size_t>(lengths.front());
  s.max_length = static_cast<std::size_t>(lengths.back());
  s.sites = sites.size();
  s.mean_length = static_cast<double>(s.tokens) / static_cast<double>(s.inscriptions);
  const std::size_t n = lengths.size();
  s.median_length = (n % 2 == 1) ? lengths[n / 2]
                                 : 0.5 * (lengths[n / 2 - 1] + lengths[n / 2]);
  double ss = 0.0;
  for (double l : lengths) ss += (l - s.mean_length) * (l - s.mean_length);
  s.sd_length = std::sqrt(ss / static_cast<double>(n));
  return s;
}

}  // namespace glyphstat
