#include "glyphstat/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "glyphstat/metrics.hpp"
#include "glyphstat/rng.hpp"
#include "glyphstat/stats.hpp"

namespace glyphstat {

const char* to_string(SignClass c) {
  switch (c) {
    case SignClass::INITIAL: return "INITIAL";
    case SignClass::TERMINAL: return "TERMINAL";
    case SignClass::CONTENT: return "CONTENT";
  }
  return "CONTENT";
}

std::vector<PositionalClass> positional_classes(const Corpus& corpus, std::size_t min_occ,
                                                double v_threshold, double alpha) {
  if (min_occ < 1) throw std::invalid_argument("positional_classes: min_occ must be >= 1");
  const auto counts = positional_counts(corpus);
  const auto freq = sign_frequencies(corpus);

  std::vector<std::size_t> tested;
  for (std::size_t s = 0; s < freq.size(); ++s) {
    if (freq[s] >= min_occ) tested.push_back(s);
  }
  const double n_tested = static_cast<double>(tested.size());

  std::array<double, 3> marginal{0.0, 0.0, 0.0};
  for (const auto& c : counts) {
    for (std::size_t j = 0; j < 3; ++j) marginal[j] += c[j];
  }
  const double marginal_total = marginal[0] + marginal[1] + marginal[2];

  std::vector<PositionalClass> out;
  out.reserve(tested.size());
  for (std::size_t s : tested) {
    std::array<double, 3> rest{marginal[0] - counts[s][0], marginal[1] - counts[s][1],
                               marginal[2] - counts[s][2]};
    const auto res = chi2_2xk({counts[s][0], counts[s][1], counts[s][2]},
                              {rest[0], rest[1], rest[2]});
    PositionalClass pc;
    pc.sign = static_cast<int>(s);
    pc.v = res.v;
    pc.p_adjusted = std::min(1.0, res.p * n_tested);

    const double own_total = counts[s][0] + counts[s][1] + counts[s][2];
    const double start_frac = counts[s][0] / own_total;
    const double end_frac = counts[s][2] / own_total;
    const double start_marginal = marginal[0] / marginal_total;
    const double end_marginal = marginal[2] / marginal_total;

    if (pc.p_adjusted < alpha && pc.v > v_threshold && end_frac > end_marginal) {
      pc.cls = SignClass::TERMINAL;
    } else if (pc.p_adjusted < alpha && pc.v > v_threshold && start_frac > start_marginal) {
      pc.cls = SignClass::INITIAL;
    } else {
      pc.cls = SignClass::CONTENT;
    }
    out.push_back(pc);
  }
  return out;
}

std::size_t levenshtein(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t m = a.size(), n = b.size();
  if (m == 0) return n;
  if (n == 0) return m;
  std::vector<std::size_t> prev(n + 1), cur(n + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

namespace {

struct Merge {
  std::size_t a;   // representative leaves of the two merged clusters
  std::size_t b;
  double height;
};

// Nearest-neighbor-chain agglomerative clustering with the average-linkage
// Lance-Williams update. Average linkage is reducible, so reciprocal
// nearest-neighbor merges reproduce the exact hierarchy in O(n^2).
std::vector<Merge> average_linkage_merges(std::vector<std::vector<double>> dist,
                                          std::vector<std::size_t> size) {
  const std::size_t n = size.size();
  std::vector<Merge> merges;
  if (n < 2) return merges;
  merges.reserve(n - 1);

  std::vector<bool> active(n, true);
  std::vector<std::size_t> chain;
  std::size_t n_active = n;

  auto nearest = [&](std::size_t a, bool& tie_with_prev, std::size_t prev) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t who = a;
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == a) continue;
      if (dist[a][x] < best) {
        best = dist[a][x];
        who = x;
      }
    }
    tie_with_prev = (prev != a && active[prev] && dist[a][prev] == best);
    return who;
  };

  while (n_active > 1) {
    if (chain.empty()) {
      for (std::size_t x = 0; x < n; ++x) {
        if (active[x]) {
          chain.push_back(x);
          break;
        }
      }
    }
    const std::size_t a = chain.back();
    const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : a;
    bool tie_with_prev = false;
    const std::size_t b = nearest(a, tie_with_prev, prev);

    if (tie_with_prev || b == prev) {
      // reciprocal nearest neighbors: merge a and prev into slot min(a, prev)
      const std::size_t lo = std::min(a, prev), hi = std::max(a, prev);
      merges.push_back({lo, hi, dist[a][prev]});
      chain.pop_back();
      chain.pop_back();
      const double sa = static_cast<double>(size[lo]), sb = static_cast<double>(size[hi]);
      for (std::size_t x = 0; x < n; ++x) {
        if (!active[x] || x == lo || x == hi) continue;
        dist[lo][x] = dist[x][lo] = (sa * dist[lo][x] + sb * dist[hi][x]) / (sa + sb);
      }
      size[lo] += size[hi];
      active[hi] = false;
      --n_active;
    } else {
      chain.push_back(b);
    }
  }
  return merges;
}

struct LeafUnionFind {
  std::vector<std::size_t> parent;

  explicit LeafUnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

FamilyReport template_families(const Corpus& corpus, double link_threshold) {
  FamilyReport report;
  const std::size_t n = corpus.size();
  if (n == 0) return report;
  if (n == 1) {
    report.singletons = 1;
    return report;
  }

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d =
          static_cast<double>(levenshtein(corpus.encoded()[i], corpus.encoded()[j]));
      dist[i][j] = dist[j][i] = d;
    }
  }

  const auto merges = average_linkage_merges(dist, std::vector<std::size_t>(n, 1));

  // Cut: keep merges whose linkage does not exceed the threshold. Average
  // linkage is monotone, so this reproduces the partition at that level.
  LeafUnionFind uf(n);
  for (const auto& m : merges) {
    if (m.height <= link_threshold) uf.unite(m.a, m.b);
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);

  double diameter_sum = 0.0;
  for (const auto& [root, members] : groups) {
    if (members.size() < 2) {
      ++report.singletons;
      continue;
    }
    TemplateFamily fam;
    fam.members = members;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        fam.diameter =
            std::max(fam.diameter, static_cast<std::size_t>(dist[members[i]][members[j]]));
      }
    }
    diameter_sum += static_cast<double>(fam.diameter);
    report.families.push_back(std::move(fam));
  }
  if (!report.families.empty()) {
    report.mean_diameter = diameter_sum / static_cast<double>(report.families.size());
  }
  return report;
}

BigramGraph bigram_graph(const Corpus& corpus) {
  BigramGraph g;
  g.n_nodes = corpus.vocab_size();
  for (const auto& row : corpus.encoded()) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      ++g.edges[{row[i], row[i + 1]}];
    }
  }
  return g;
}

namespace {

// Symmetrized adjacency lists: weight(a,b) = w(a->b) + w(b->a).
struct SymGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // neighbor, weight (self-loops included)
  std::vector<double> degree;  // weighted degree incl. self-loop weight
  double two_m = 0.0;          // sum of all degrees

  explicit SymGraph(std::size_t n_nodes) : n(n_nodes), adj(n_nodes), degree(n_nodes, 0.0) {}

  void finalize() {
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, w] : adj[i]) degree[i] += w;
      two_m += degree[i];
    }
  }
};

SymGraph symmetrize(const BigramGraph& g) {
  std::map<std::pair<std::size_t, std::size_t>, double> und;
  for (const auto& [edge, w] : g.edges) {
    const auto a = static_cast<std::size_t>(edge.first);
    const auto b = static_cast<std::size_t>(edge.second);
    und[{std::min(a, b), std::max(a, b)}] += static_cast<double>(w);
  }
  SymGraph sym(g.n_nodes);
  for (const auto& [edge, w] : und) {
    const auto [a, b] = edge;
    if (a == b) {
      // an undirected self-loop contributes its full weight twice to the degree
      sym.adj[a].push_back({a, 2.0 * w});
    } else {
      sym.adj[a].push_back({b, w});
      sym.adj[b].push_back({a, w});
    }
  }
  sym.finalize();
  return sym;
}

// One Louvain level: greedy modularity moves until a full pass makes none.
// Returns the node->community map (community ids are node slots).
std::vector<std::size_t> louvain_level(const SymGraph& g, const std::vector<std::size_t>& order,
                                       bool& any_move) {
  std::vector<std::size_t> comm(g.n);
  std::iota(comm.begin(), comm.end(), 0);
  std::vector<double> comm_total = g.degree;  // sum of degrees per community
  any_move = false;
  if (g.two_m == 0.0) return comm;

  std::vector<double> link_to(g.n, 0.0);
  bool moved = true;
  while (moved) {
    moved = false;
    for (const std::size_t node : order) {
      const std::size_t home = comm[node];

      std::vector<std::size_t> touched;
      double self_loop = 0.0;
      for (const auto& [nb, w] : g.adj[node]) {
        if (nb == node) {
          self_loop += w;
          continue;
        }
        const std::size_t c = comm[nb];
        if (link_to[c] == 0.0) touched.push_back(c);
        link_to[c] += w;
      }

      comm_total[home] -= g.degree[node];
      const double base_gain = link_to[home] - g.degree[node] * comm_total[home] / g.two_m;

      double best_gain = base_gain;
      std::size_t best = home;
      for (const std::size_t c : touched) {
        if (c == home) continue;
        const double gain = link_to[c] - g.degree[node] * comm_total[c] / g.two_m;
        if (gain > best_gain || (gain == best_gain && c < best)) {
          best_gain = gain;
          best = c;
        }
      }

      comm_total[best] += g.degree[node];
      if (best != home) {
        comm[node] = best;
        moved = true;
        any_move = true;
      }
      for (const std::size_t c : touched) link_to[c] = 0.0;
      link_to[home] = 0.0;
      (void)self_loop;
    }
  }
  return comm;
}

SymGraph aggregate(const SymGraph& g, const std::vector<std::size_t>& comm,
                   std::vector<std::size_t>& relabel) {
  // dense communities -> 0..k-1, by community id for determinism
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < g.n; ++i) ids.emplace(comm[i], 0);
  std::size_t k = 0;
  for (auto& [old_id, new_id] : ids) new_id = k++;
  relabel.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) relabel[i] = ids[comm[i]];

  std::map<std::pair<std::size_t, std::size_t>, double> edges;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (const auto& [j, w] : g.adj[i]) {
      if (j < i) continue;  // visit each undirected edge once (self-loops j == i)
      const std::size_t a = std::min(relabel[i], relabel[j]);
      const std::size_t b = std::max(relabel[i], relabel[j]);
      // an intra-community edge becomes a self-loop; both endpoint degrees
      // must survive, and stored self-loop weight counts once toward degree
      edges[{a, b}] += (i != j && a == b) ? 2.0 * w : w;
    }
  }
  SymGraph out(k);
  for (const auto& [edge, w] : edges) {
    const auto [a, b] = edge;
    if (a == b) {
      out.adj[a].push_back({a, w});
    } else {
      out.adj[a].push_back({b, w});
      out.adj[b].push_back({a, w});
    }
  }
  out.finalize();
  return out;
}

}  // namespace

std::vector<int> communities(const BigramGraph& graph, std::uint64_t seed) {
  if (graph.n_nodes == 0) return {};
  SymGraph level = symmetrize(graph);

  // node-visit order fixed once from the seed
  std::vector<std::size_t> order(level.n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  rng.shuffle(order);

  // node -> community through all levels so far
  std::vector<std::size_t> assignment(level.n);
  std::iota(assignment.begin(), assignment.end(), 0);

  for (;;) {
    bool any_move = false;
    const auto comm = louvain_level(level, order, any_move);
    std::vector<std::size_t> relabel;
    SymGraph next = aggregate(level, comm, relabel);
    for (auto& a : assignment) a = relabel[a];
    if (!any_move || next.n == level.n) break;
    level = std::move(next);
    order.resize(level.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
  }

  // renumber by first appearance in node order
  std::vector<int> out(assignment.size(), -1);
  std::map<std::size_t, int> seen;
  int next_id = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto [it, inserted] = seen.emplace(assignment[i], next_id);
    if (inserted) ++next_id;
    out[i] = it->second;
  }
  return out;
}

double modularity(const BigramGraph& graph, const std::vector<int>& partition) {
  if (partition.size() != graph.n_nodes) {
    throw std::invalid_argument("modularity: partition size mismatch");
  }
  const SymGraph g = symmetrize(graph);
  if (g.two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (const auto& [j, w] : g.adj[i]) {
      if (partition[i] == partition[static_cast<std::size_t>(j)]) q += w;
    }
  }
  // self-loop weights are stored once but count fully in the double sum
  std::map<int, double> comm_degree;
  for (std::size_t i = 0; i < g.n; ++i) comm_degree[partition[i]] += g.degree[i];
  double penalty = 0.0;
  for (const auto& [c, d] : comm_degree) penalty += d * d;
  return q / g.two_m - penalty / (g.two_m * g.two_m);
}

SegmentationReport segment_candidates(const Corpus& corpus, double assoc_threshold) {
  SegmentationReport report;
  report.per_inscription.resize(corpus.size());

  // global bigram table for association scores
  std::unordered_map<long long, double> pair_count;
  std::vector<double> row_total(corpus.vocab_size(), 0.0);
  std::vector<double> col_total(corpus.vocab_size(), 0.0);
  double total = 0.0;
  const auto key = [](int a, int b) {
    return (static_cast<long long>(a) << 32) | static_cast<unsigned int>(b);
  };
  for (const auto& row : corpus.encoded()) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      pair_count[key(row[i], row[i + 1])] += 1.0;
      row_total[static_cast<std::size_t>(row[i])] += 1.0;
      col_total[static_cast<std::size_t>(row[i + 1])] += 1.0;
      total += 1.0;
    }
  }

  const auto score = [&](int a, int b) {
    const double n11 = pair_count.at(key(a, b));
    const double n12 = row_total[static_cast<std::size_t>(a)] - n11;
    const double n21 = col_total[static_cast<std::size_t>(b)] - n11;
    const double n22 = total - row_total[static_cast<std::size_t>(a)] -
                       col_total[static_cast<std::size_t>(b)] + n11;
    return g2_2x2(n11, n12, n21, n22);
  };

  std::set<std::vector<std::string>> inventory;
  std::size_t total_units = 0;
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& codes = corpus.encoded()[idx];
    const auto& signs = corpus.inscriptions()[idx].signs;
    Segmentation seg;
    std::vector<std::string> unit{signs[0]};
    for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
      if (score(codes[i], codes[i + 1]) < assoc_threshold) {
        seg.units.push_back(std::move(unit));
        unit = {signs[i + 1]};
      } else {
        unit.push_back(signs[i + 1]);
      }
    }
    seg.units.push_back(std::move(unit));
    total_units += seg.units.size();
    for (const auto& u : seg.units) inventory.insert(u);
    report.per_inscription[idx] = std::move(seg);
  }

  report.unit_inventory.assign(inventory.begin(), inventory.end());
  if (corpus.size() > 0) {
    report.mean_segments_per_inscription =
        static_cast<double>(total_units) / static_cast<double>(corpus.size());
  }
  return report;
}

}  // namespace glyphstat
