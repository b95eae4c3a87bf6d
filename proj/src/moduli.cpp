#include "hurwitz/moduli.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hurwitz {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void validate_partition(const std::vector<int>& e, uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("partition: p must be prime");
  if (e.empty()) throw std::invalid_argument("partition: empty");
  for (int h : e) {
    if (h < 2)
      throw std::invalid_argument("partition: part " + std::to_string(h) +
                                  " is below 2");
    if (h % (int)p == 1)
      throw std::invalid_argument("partition: part " + std::to_string(h) +
                                  " is 1 mod p");
  }
}

std::vector<int> sorted_desc(std::vector<int> e) {
  std::sort(e.begin(), e.end(), std::greater<int>());
  return e;
}

// partitions of n into parts >= 2, != 1 mod p, non-increasing
std::vector<std::vector<int>> legal_partitions(int n, uint32_t p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(max_part, remaining); part >= 2; --part) {
      if (part % (int)p == 1) continue;
      if (remaining - part == 1) continue;  // a trailing 1 can never be legal
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a > b;  // descending lexicographic within a size class
            });
  return out;
}

// all sub-multisets of the descending multiset `e` with at least `min_size`
// elements, canonical and duplicate-free
std::vector<std::vector<int>> sub_multisets(const std::vector<int>& e,
                                            size_t min_size) {
  std::vector<std::pair<int, int>> runs;  // value, count
  for (int v : e) {
    if (!runs.empty() && runs.back().first == v)
      ++runs.back().second;
    else
      runs.push_back({v, 1});
  }
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == runs.size()) {
      if (cur.size() >= min_size) out.push_back(cur);
      return;
    }
    for (int take = 0; take <= runs[i].second; ++take) {
      for (int t = 0; t < take; ++t) cur.push_back(runs[i].first);
      self(self, i + 1);
      for (int t = 0; t < take; ++t) cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

const char* kPalette[] = {"black",     "blue4",   "darkgreen", "red3",
                          "purple3",   "orange3", "cyan4",     "magenta3",
                          "goldenrod4"};

}  // namespace

int stratum_dimension(const std::vector<int>& partition, uint32_t p) {
  validate_partition(partition, p);
  int d = std::accumulate(partition.begin(), partition.end(), 0) - 2;
  int dim = d - 1;
  for (int h : partition) dim -= (h - 1) / (int)p;
  return dim;
}

std::optional<std::vector<Stratum>> enumerate_strata(uint32_t p, long long g) {
  if (!is_prime(p)) throw std::invalid_argument("enumerate_strata: p must be prime");
  if (g < 0 || (2 * g) % (long long)(p - 1) != 0) return std::nullopt;
  int d = (int)(2 * g / (long long)(p - 1));
  std::vector<Stratum> out;
  for (auto& e : legal_partitions(d + 2, p))
    out.push_back(Stratum{e, stratum_dimension(e, p)});
  return out;
}

Deformation deformation_exists(const std::vector<int>& e1,
                               const std::vector<int>& e2, uint32_t p,
                               const FormConfig& cfg) {
  validate_partition(e1, p);
  validate_partition(e2, p);
  std::vector<int> a = sorted_desc(e1), b = sorted_desc(e2);
  if (std::accumulate(a.begin(), a.end(), 0) !=
      std::accumulate(b.begin(), b.end(), 0))
    throw std::invalid_argument("deformation_exists: partitions of different integers");

  Deformation result;
  if (a == b) {
    result.exists = true;
    for (int part : a) result.parts.push_back({part, {part}, ChainWitness{}});
    return result;
  }
  if (a.size() >= b.size()) return result;  // refinement adds parts

  for (const auto& blocks : multiset_partitions(b)) {
    if (blocks.size() != a.size()) continue;
    // match blocks to parts by sum (descending, lexicographic tiebreak)
    std::vector<std::pair<int, std::vector<int>>> by_sum;
    for (const auto& blk : blocks)
      by_sum.push_back({std::accumulate(blk.begin(), blk.end(), 0), blk});
    std::sort(by_sum.begin(), by_sum.end(),
              [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first > y.first;
                return x.second > y.second;
              });
    bool sums_match = true;
    for (size_t i = 0; i < a.size(); ++i)
      if (by_sum[i].first != a[i]) sums_match = false;
    if (!sums_match) continue;

    std::vector<PartChain> parts;
    bool ok = true;
    for (size_t i = 0; i < a.size(); ++i) {
      ChainProbe probe =
          chain_probe(a[i], FormType{p, by_sum[i].second}, cfg);
      if (!probe.witness) {
        ok = false;
        if (!probe.certain) result.certain = false;
        break;
      }
      parts.push_back({a[i], by_sum[i].second, std::move(*probe.witness)});
    }
    if (ok) {
      result.exists = true;
      result.certain = true;
      result.parts = std::move(parts);
      return result;
    }
  }
  return result;
}

ModuliGraph build_graph(uint32_t p, long long g, const FormConfig& cfg) {
  auto strata = enumerate_strata(p, g);
  if (!strata)
    throw std::invalid_argument(
        "build_graph: AS_g is empty (2g/(p-1) is not an integer)");

  ModuliGraph G;
  G.p = p;
  G.g = g;
  G.d = (int)(2 * g / (long long)(p - 1));
  G.strata = std::move(*strata);
  size_t n = G.strata.size();
  G.closed.assign(n, true);
  G.irreducible.assign(n, true);
  G.component_of.assign(n, 0);

  UnionFind uf(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j ||
          G.strata[i].partition.size() >= G.strata[j].partition.size())
        continue;
      Deformation def =
          deformation_exists(G.strata[i].partition, G.strata[j].partition, p, cfg);
      if (def.exists) {
        G.edges.push_back({(int)i, (int)j});
        G.closed[j] = false;       // something deforms into j
        G.irreducible[i] = false;  // i deforms into something finer
        uf.unite((int)i, (int)j);
      } else if (!def.certain) {
        G.certain = false;
        G.notes.push_back("edge " + format_type(G.strata[i].partition) +
                          " -> " + format_type(G.strata[j].partition) +
                          " undecided under the configured effort caps");
      }
    }
  std::sort(G.edges.begin(), G.edges.end());

  // weak components, numbered by first appearance
  std::map<int, int> root_index;
  for (size_t i = 0; i < n; ++i) {
    int r = uf.find((int)i);
    auto it = root_index.find(r);
    if (it == root_index.end())
      it = root_index.insert({r, (int)root_index.size()}).first;
    G.component_of[i] = it->second;
  }
  G.component_count = (int)root_index.size();

  // cross-check the closure criterion: Gamma_E is not closed exactly when
  // some sub-multiset of E with >= 2 entries admits an exact form
  for (size_t i = 0; i < n; ++i) {
    bool criterion_open = false, criterion_uncertain = false;
    for (const auto& sub : sub_multisets(G.strata[i].partition, 2)) {
      FormDecision dec = exact_form_exists(FormType{p, sub}, cfg);
      if (dec.verdict == Verdict::yes) {
        criterion_open = true;
        break;
      }
      if (dec.verdict == Verdict::undecided) criterion_uncertain = true;
    }
    if (criterion_open && G.closed[i])
      G.notes.push_back("closure cross-check disagrees at " +
                        format_type(G.strata[i].partition) +
                        ": exact sub-multiset exists but in-degree is 0");
    else if (!criterion_open && !criterion_uncertain && !G.closed[i])
      G.notes.push_back("closure cross-check disagrees at " +
                        format_type(G.strata[i].partition) +
                        ": no exact sub-multiset but in-degree is positive");
    if (criterion_uncertain && !criterion_open) {
      G.certain = false;
      G.notes.push_back("closure criterion undecided at " +
                        format_type(G.strata[i].partition));
    }
  }

  // cross-check irreducibility: out-degree 0 should coincide with all parts
  // <= p, i.e. with codimension 0
  for (size_t i = 0; i < n; ++i) {
    bool top = *std::max_element(G.strata[i].partition.begin(),
                                 G.strata[i].partition.end()) <= (int)p;
    if (top != G.irreducible[i])
      G.notes.push_back("component cross-check disagrees at " +
                        format_type(G.strata[i].partition) + ": parts " +
                        (top ? "all <= p" : "exceed p") + " but out-degree is " +
                        (G.irreducible[i] ? "0" : "positive"));
  }
  return G;
}

std::vector<GenusReport> connectivity_report(uint32_t p, long long g_lo,
                                             long long g_hi,
                                             const FormConfig& cfg) {
  std::vector<GenusReport> out;
  for (long long g = g_lo; g <= g_hi; ++g) {
    GenusReport r;
    r.g = g;
    auto strata = enumerate_strata(p, g);
    if (!strata) {
      out.push_back(std::move(r));
      continue;
    }
    r.nonempty = true;
    ModuliGraph G = build_graph(p, g, cfg);
    r.d = G.d;
    r.strata = (int)G.strata.size();
    r.components = G.component_count;
    r.connected = G.connected();
    r.certain = G.certain;
    for (size_t i = 0; i < G.strata.size(); ++i) {
      if (G.closed[i]) r.closed_strata.push_back(format_type(G.strata[i].partition));
      if (G.irreducible[i])
        r.irreducible_components.push_back(format_type(G.strata[i].partition));
    }

    // the proof's closed-stratum witness in the disconnected band
    int dp2 = G.d + 2;
    if (dp2 >= 4 && dp2 <= 2 * (int)p - 2) {
      std::vector<int> witness;
      if (dp2 % 2 == 1) witness.push_back(3);
      while (std::accumulate(witness.begin(), witness.end(), 0) < dp2)
        witness.push_back(2);
      int idx = -1;
      for (size_t i = 0; i < G.strata.size(); ++i)
        if (G.strata[i].partition == witness) idx = (int)i;
      bool isolated = false;
      if (idx >= 0) {
        isolated = true;
        for (size_t i = 0; i < G.strata.size(); ++i)
          if ((int)G.component_of[i] == G.component_of[idx] && (int)i != idx)
            isolated = false;
      }
      if (idx >= 0 && G.closed[idx] && isolated)
        r.witness_note = "closed-stratum witness " + format_type(witness) +
                         " verified: closed and isolated";
      else
        r.witness_note = "WITNESS CHECK FAILED for " + format_type(witness) +
                         (idx < 0 ? ": stratum missing"
                                  : !G.closed[idx] ? ": not closed"
                                                   : ": not isolated");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string moduli_to_dot(const ModuliGraph& G, bool transitive_reduce) {
  std::set<std::pair<int, int>> has;
  for (const auto& e : G.edges) has.insert(e);
  auto redundant = [&](int i, int j) {
    for (const auto& e : G.edges)
      if (e.first == i && e.second != j && has.count({e.second, j})) return true;
    return false;
  };

  std::ostringstream os;
  os << "digraph C" << G.d << " {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=ellipse];\n";
  for (size_t i = 0; i < G.strata.size(); ++i) {
    const Stratum& s = G.strata[i];
    os << "  \"" << format_type(s.partition) << "\" [label=\""
       << format_type(s.partition) << "\\ndim " << s.dimension << "\"";
    if (G.closed[i]) os << ", peripheries=2";
    os << ", color="
       << kPalette[G.component_of[i] %
                   (int)(sizeof(kPalette) / sizeof(kPalette[0]))];
    os << "];\n";
  }
  for (const auto& e : G.edges) {
    if (transitive_reduce && redundant(e.first, e.second)) continue;
    os << "  \"" << format_type(G.strata[e.first].partition) << "\" -> \""
       << format_type(G.strata[e.second].partition) << "\";\n";
  }
  os << "}\n";
  return os.str();
}

std::string moduli_to_json(const ModuliGraph& G) {
  using ordered = nlohmann::ordered_json;
  ordered j;
  j["p"] = G.p;
  j["g"] = G.g;
  j["d"] = G.d;
  j["connected"] = G.connected();
  j["components"] = ordered::array();
  for (int c = 0; c < G.component_count; ++c) {
    ordered comp = ordered::array();
    for (size_t i = 0; i < G.strata.size(); ++i)
      if (G.component_of[i] == c)
        comp.push_back(format_type(G.strata[i].partition));
    j["components"].push_back(comp);
  }
  j["edges"] = ordered::array();
  for (const auto& e : G.edges)
    j["edges"].push_back({format_type(G.strata[e.first].partition),
                          format_type(G.strata[e.second].partition)});
  j["strata"] = ordered::array();
  for (size_t i = 0; i < G.strata.size(); ++i)
    j["strata"].push_back({{"partition", format_type(G.strata[i].partition)},
                           {"dimension", G.strata[i].dimension},
                           {"closed", (bool)G.closed[i]},
                           {"irreducible_component", (bool)G.irreducible[i]}});
  j["certain"] = G.certain;
  j["notes"] = G.notes;
  return j.dump(2) + "\n";
}

}  // namespace hurwitz
