#pragma once

// Shared graphs, corpus generators and brute-force oracles for the tests.
// The oracles deliberately avoid the library's own algorithms: they work on
// plain integer tuples and recompute everything from definitions.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sgflow/sgflow.hpp"

namespace fixtures {

using sgflow::Edge;
using sgflow::EdgeSet;
using sgflow::Sign;
using sgflow::SignedGraph;

inline constexpr Sign P = Sign::positive;
inline constexpr Sign N = Sign::negative;

// One negative and one positive edge between two vertices.
inline SignedGraph g1() { return SignedGraph(2, {{0, 1, N}, {0, 1, P}}); }
// Two negative loops at one vertex.
inline SignedGraph g2() { return SignedGraph(1, {{0, 0, N}, {0, 0, N}}); }
// A negative loop and a positive loop at one vertex.
inline SignedGraph g3() { return SignedGraph(1, {{0, 0, N}, {0, 0, P}}); }
// Three parallel edges with signs -, -, +.
inline SignedGraph g4() { return SignedGraph(2, {{0, 1, N}, {0, 1, N}, {0, 1, P}}); }
// Three negative loops at one vertex.
inline SignedGraph g5() { return SignedGraph(1, {{0, 0, N}, {0, 0, N}, {0, 0, N}}); }
// Negative loops at both ends of a positive edge; edge order a, b, e.
inline SignedGraph dumbbell() { return SignedGraph(2, {{0, 0, N}, {1, 1, N}, {0, 1, P}}); }
// A balanced triangle.
inline SignedGraph triangle() { return SignedGraph(3, {{0, 1, P}, {1, 2, P}, {0, 2, P}}); }

// ---------------------------------------------------------------------------
// Oracles

/// Balance by trying every vertex signing of the kept edges.
inline bool oracle_balanced(const SignedGraph& g, EdgeSet kept) {
  const int n = g.vertex_count();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (int e : kept.ids()) {
      const Edge& ed = g.edge(e);
      const bool su = (s >> ed.u) & 1U;
      const bool sv = (s >> ed.v) & 1U;
      if ((su != sv) != ed.is_negative()) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// Vertex classes of the kept edges, as a label per vertex.
inline std::vector<int> oracle_labels(const SignedGraph& g, EdgeSet kept) {
  const int n = g.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e : kept.ids()) {
      const Edge& ed = g.edge(e);
      const int lo = std::min(label[ed.u], label[ed.v]);
      if (label[ed.u] != lo || label[ed.v] != lo) {
        label[ed.u] = label[ed.v] = lo;
        changed = true;
      }
    }
  }
  return label;
}

struct OracleComponents {
  int components = 0;
  int balanced = 0;
};

inline OracleComponents oracle_components(const SignedGraph& g, EdgeSet kept) {
  const std::vector<int> label = oracle_labels(g, kept);
  OracleComponents out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (label[v] != v) continue;
    ++out.components;
    EdgeSet mine;
    for (int e : kept.ids())
      if (label[g.edge(e).u] == v) mine.insert(e);
    if (oracle_balanced(g, mine)) ++out.balanced;
  }
  return out;
}

inline int oracle_frame_rank(const SignedGraph& g, EdgeSet kept) {
  return g.vertex_count() - oracle_components(g, kept).balanced;
}

/// Bonds as the minimal edge sets whose removal lowers the frame rank.
inline std::vector<EdgeSet> oracle_bonds(const SignedGraph& g) {
  const int m = g.edge_count();
  const EdgeSet all = g.all_edges();
  const int full = oracle_frame_rank(g, all);
  std::vector<EdgeSet> drops;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask)
    if (oracle_frame_rank(g, all - EdgeSet(mask)) < full) drops.push_back(EdgeSet(mask));
  std::vector<EdgeSet> out;
  for (EdgeSet d : drops) {
    bool minimal = true;
    for (EdgeSet o : drops)
      if (o != d && o.is_subset_of(d)) minimal = false;
    if (minimal) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimal edge sets inside X whose deletion balances G[X].
inline std::vector<EdgeSet> oracle_minimal_balancing_sets(const SignedGraph& g, const std::vector<int>& side) {
  std::vector<bool> in(static_cast<std::size_t>(g.vertex_count()), false);
  for (int v : side) in[v] = true;
  EdgeSet inside;
  for (int e = 0; e < g.edge_count(); ++e)
    if (in[g.edge(e).u] && in[g.edge(e).v]) inside.insert(e);
  const std::vector<int> ids = inside.ids();
  std::vector<EdgeSet> balancing;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ids.size()); ++bits) {
    EdgeSet r;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if ((bits >> i) & 1U) r.insert(ids[i]);
    if (oracle_balanced(g, inside - r)) balancing.push_back(r);
  }
  std::vector<EdgeSet> out;
  for (EdgeSet r : balancing) {
    bool minimal = true;
    for (EdgeSet o : balancing)
      if (o != r && o.is_subset_of(r)) minimal = false;
    if (minimal) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Incidence used by the flow oracle: positive edges run u -> v, negative
/// edges point into both ends, positive loops cancel and negative loops
/// contribute +2.
inline int oracle_incidence(const Edge& e, int v) {
  if (e.is_loop()) return e.u == v && e.is_negative() ? 2 : 0;
  if (v != e.u && v != e.v) return 0;
  if (e.is_negative()) return 1;
  return v == e.v ? 1 : -1;
}

/// Counts assignments into Z_{orders[0]} x ... satisfying conservation.
inline std::uint64_t oracle_flow_count(const SignedGraph& g, const std::vector<std::int64_t>& orders,
                                       bool nowhere_zero) {
  const int m = g.edge_count();
  const int n = g.vertex_count();
  std::int64_t k = 1;
  for (std::int64_t o : orders) k *= o;
  auto decode = [&](std::int64_t idx) {
    std::vector<std::int64_t> r;
    for (std::int64_t o : orders) {
      r.push_back(idx % o);
      idx /= o;
    }
    return r;
  };
  std::vector<std::vector<std::int64_t>> elements;
  for (std::int64_t i = 0; i < k; ++i) elements.push_back(decode(i));
  std::vector<std::int64_t> digit(static_cast<std::size_t>(m), nowhere_zero ? 1 : 0);
  if (nowhere_zero && k == 1 && m > 0) return 0;
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      for (std::size_t c = 0; c < orders.size() && ok; ++c) {
        std::int64_t sum = 0;
        for (int e = 0; e < m; ++e) sum += oracle_incidence(g.edge(e), v) * elements[digit[e]][c];
        ok = ((sum % orders[c]) + orders[c]) % orders[c] == 0;
      }
    }
    if (ok) ++count;
    int i = 0;
    for (; i < m; ++i) {
      if (++digit[i] < k) break;
      digit[i] = nowhere_zero ? 1 : 0;
    }
    if (i == m) break;
  }
  return count;
}

/// F_d by the subset sum, using the oracle component counts.
inline sgflow::IntPolynomial oracle_fd(const SignedGraph& g, int d) {
  const int m = g.edge_count();
  const int n = g.vertex_count();
  std::vector<sgflow::BigInt> coeffs(static_cast<std::size_t>(m + 1));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const EdgeSet kept = g.all_edges() - EdgeSet(mask);
    const OracleComponents c = oracle_components(g, kept);
    const int kappa = c.components - c.balanced;
    const int beta = kept.size() - n + c.balanced;
    const sgflow::BigInt term = sgflow::BigInt(1) << (kappa * d);
    if (std::popcount(mask) % 2) coeffs[beta] -= term;
    else coeffs[beta] += term;
  }
  return sgflow::IntPolynomial(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Corpus

/// Edge list with endpoints ordered and sorted, used as a permutation key.
inline std::vector<std::tuple<int, int, int>> edge_key(const SignedGraph& g, const std::vector<int>& perm) {
  std::vector<std::tuple<int, int, int>> key;
  for (const Edge& e : g.edges()) {
    const int a = perm[e.u];
    const int b = perm[e.v];
    key.emplace_back(std::min(a, b), std::max(a, b), e.is_negative() ? 1 : 0);
  }
  std::sort(key.begin(), key.end());
  return key;
}

inline std::vector<std::tuple<int, int, int>> canonical_key(const SignedGraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  auto best = edge_key(g, perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, edge_key(g, perm));
  return best;
}

/// Every connected signed multigraph with 1..max_n vertices and 1..max_m
/// edges (loops and parallel edges allowed), one per isomorphism class.
inline std::vector<SignedGraph> exhaustive_corpus(int max_n = 4, int max_m = 5) {
  std::vector<SignedGraph> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<Edge> kinds;
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v)
        for (Sign s : {P, N}) kinds.push_back({u, v, s});
    std::set<std::vector<std::tuple<int, int, int>>> seen;
    std::vector<Edge> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (!chosen.empty()) {
        const SignedGraph g(n, chosen);
        if (sgflow::is_connected(g) && seen.insert(canonical_key(g)).second) out.push_back(g);
      }
      if (static_cast<int>(chosen.size()) == max_m) return;
      for (std::size_t i = from; i < kinds.size(); ++i) {
        chosen.push_back(kinds[i]);
        rec(i);
        chosen.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

/// Random connected signed multigraphs: a random spanning tree plus extra
/// edges, loops included, with independent random signs.
inline std::vector<SignedGraph> random_corpus(int count, int max_n, int max_m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SignedGraph> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    const int m = std::uniform_int_distribution<int>(std::max(1, n - 1), max_m)(rng);
    std::vector<Edge> edges;
    auto sign = [&] { return std::bernoulli_distribution(0.5)(rng) ? N : P; };
    for (int v = 1; v < n; ++v) edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v, sign()});
    while (static_cast<int>(edges.size()) < m) {
      const int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
      const int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
      edges.push_back({u, v, sign()});
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

/// Disjoint unions of pairs of small corpus graphs, mixing balanced and
/// unbalanced components.
inline std::vector<SignedGraph> multi_component_corpus(const std::vector<SignedGraph>& parts, int max_m) {
  std::vector<SignedGraph> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i; j < parts.size(); ++j)
      if (parts[i].edge_count() + parts[j].edge_count() <= max_m &&
          parts[i].vertex_count() + parts[j].vertex_count() <= 5)
        out.push_back(sgflow::disjoint_union(parts[i], parts[j]));
  return out;
}

inline sgflow::EdgeOrder random_order(int m, std::mt19937_64& rng) {
  std::vector<int> ids(static_cast<std::size_t>(m));
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  return sgflow::EdgeOrder(ids);
}

inline std::vector<int> random_switching(int n, std::mt19937_64& rng) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int& x : s) x = std::bernoulli_distribution(0.5)(rng) ? -1 : 1;
  return s;
}

// ---------------------------------------------------------------------------
// Trees

/// Unlabelled trees on exactly n vertices, built by attaching leaves and
/// deduplicating on a canonical form.
inline std::vector<SignedGraph> all_trees(int n) {
  using Adj = std::vector<std::vector<int>>;
  auto encode = [](const Adj& adj, int root, auto&& self, int parent) -> std::string {
    std::vector<std::string> kids;
    for (int w : adj[root])
      if (w != parent) kids.push_back(self(adj, w, self, root));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const std::string& k : kids) s += k;
    return s + ")";
  };
  auto canonical = [&](const Adj& adj) {
    std::string best;
    for (int r = 0; r < static_cast<int>(adj.size()); ++r) {
      std::string s = encode(adj, r, encode, -1);
      if (best.empty() || s < best) best = s;
    }
    return best;
  };
  std::vector<Adj> level{Adj(1)};
  for (int size = 2; size <= n; ++size) {
    std::map<std::string, Adj> next;
    for (const Adj& t : level)
      for (int v = 0; v < static_cast<int>(t.size()); ++v) {
        Adj grown = t;
        grown.push_back({v});
        grown[v].push_back(size - 1);
        next.emplace(canonical(grown), grown);
      }
    level.clear();
    for (auto& [key, adj] : next) level.push_back(adj);
  }
  std::vector<SignedGraph> out;
  for (const Adj& adj : level) {
    std::vector<Edge> edges;
    for (int u = 0; u < static_cast<int>(adj.size()); ++u)
      for (int w : adj[u])
        if (u < w) edges.push_back({u, w, P});
    out.emplace_back(static_cast<int>(adj.size()), std::move(edges));
  }
  return out;
}

inline SignedGraph path_tree(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({v - 1, v, P});
  return SignedGraph(n, std::move(edges));
}

inline SignedGraph star_tree(int leaves) {
  std::vector<Edge> edges;
  for (int v = 1; v <= leaves; ++v) edges.push_back({0, v, P});
  return SignedGraph(leaves + 1, std::move(edges));
}

inline sgflow::GroupElement elem(std::vector<std::int64_t> r) { return sgflow::GroupElement{std::move(r)}; }

}  // namespace fixtures
