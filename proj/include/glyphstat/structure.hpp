#pragma once
// Structural characterization: positional sign classes, template families
// (edit-distance clusters), bigram communities, candidate segmentation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glyphstat/corpus.hpp"

namespace glyphstat {

enum class SignClass { INITIAL, TERMINAL, CONTENT };

const char* to_string(SignClass c);

struct PositionalClass {
  int sign = 0;  // sign code
  SignClass cls = SignClass::CONTENT;
  double v = 0.0;
  double p_adjusted = 1.0;
};

// Classifies every sign with >= min_occ occurrences. A sign is TERMINAL when
// its positional chi-square test survives Bonferroni correction (p * n_tested
// < alpha), V > v_threshold, and its end fraction exceeds the corpus end
// marginal; INITIAL symmetrically for starts (end bias checked first);
// everything else is CONTENT.
std::vector<PositionalClass> positional_classes(const Corpus& corpus, std::size_t min_occ,
                                                double v_threshold, double alpha);

// Token-level Levenshtein distance (unit-cost insert/delete/substitute over
// sign codes).
std::size_t levenshtein(const std::vector<int>& a, const std::vector<int>& b);

struct TemplateFamily {
  std::vector<std::size_t> members;  // inscription indices, ascending
  std::size_t diameter = 0;          // max pairwise edit distance
};

struct FamilyReport {
  std::vector<TemplateFamily> families;  // size >= 2, by ascending first member
  std::size_t singletons = 0;
  double mean_diameter = 0.0;  // over families
};

// Average-linkage agglomerative clustering on pairwise Levenshtein
// distances, cut where the merge linkage exceeds link_threshold.
FamilyReport template_families(const Corpus& corpus, double link_threshold);

struct BigramGraph {
  std::size_t n_nodes = 0;                          // == vocab size
  std::map<std::pair<int, int>, std::size_t> edges; // (a, b) -> count of a->b
};

BigramGraph bigram_graph(const Corpus& corpus);

// Louvain community detection on the symmetrized graph
// (w(a,b) = w(a->b) + w(b->a)). Node-visit order is shuffled once from the
// seed, after which the greedy passes are deterministic. Returns a community
// id per sign code, ids renumbered 0..k-1 by first appearance.
std::vector<int> communities(const BigramGraph& graph, std::uint64_t seed);

// Newman modularity of a partition of the symmetrized graph; exposed so the
// partition quality is checkable.
double modularity(const BigramGraph& graph, const std::vector<int>& partition);

struct Segmentation {
  std::vector<std::vector<std::string>> units;  // per-inscription, in order
};

struct SegmentationReport {
  std::vector<Segmentation> per_inscription;          // parallel to corpus order
  std::vector<std::vector<std::string>> unit_inventory;  // distinct units, sorted
  double mean_segments_per_inscription = 0.0;
};

// Splits every inscription at adjacent pairs whose G-squared association
// score falls below assoc_threshold; maximal unbroken runs are the candidate
// units. Concatenating an inscription's units reproduces it exactly.
SegmentationReport segment_candidates(const Corpus& corpus, double assoc_threshold);

}  // namespace glyphstat
