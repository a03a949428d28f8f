#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sgflow/detail/parity_union_find.hpp"
#include "sgflow/error.hpp"
#include "sgflow/polynomial.hpp"
#include "sgflow/signed_graph.hpp"

namespace sgflow {

/// Linear order on edge ids. rank(e) is the position of e; order()[i] is the
/// edge at position i.
class EdgeOrder {
 public:
  EdgeOrder() = default;

  static EdgeOrder identity(int m) {
    std::vector<EdgeId> ids(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) ids[i] = i;
    return EdgeOrder(std::move(ids));
  }

  /// `ascending` lists every edge id exactly once, smallest first.
  explicit EdgeOrder(std::vector<EdgeId> ascending) : order_(std::move(ascending)), rank_(order_.size(), -1) {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const EdgeId e = order_[i];
      if (e < 0 || e >= static_cast<EdgeId>(order_.size()) || rank_[e] != -1)
        throw Error(ErrorCode::invalid_argument, "edge order must be a permutation of the edge ids");
      rank_[e] = static_cast<int>(i);
    }
  }

  int size() const noexcept { return static_cast<int>(order_.size()); }
  int rank(EdgeId e) const { return rank_.at(static_cast<std::size_t>(e)); }
  const std::vector<EdgeId>& order() const noexcept { return order_; }

  /// The largest edge of a non-empty set.
  EdgeId max_of(EdgeSet s) const {
    EdgeId best = -1;
    for (EdgeId e : s.ids())
      if (best < 0 || rank(e) > rank(best)) best = e;
    return best;
  }

 private:
  std::vector<EdgeId> order_;
  std::vector<int> rank_;
};

inline void require_order(const SignedGraph& g, const EdgeOrder& order) {
  if (order.size() != g.edge_count()) throw Error(ErrorCode::invalid_argument, "edge order has the wrong length");
}

/// A bond [X, X^C] u E_X together with one witness (X, E_X).
struct Bond {
  EdgeSet edges;
  std::vector<Vertex> side;  // X
  EdgeSet balancing;         // E_X
};

namespace detail {

inline bool in_side(const std::vector<char>& mark, Vertex v) { return mark[static_cast<std::size_t>(v)] != 0; }

inline std::vector<EdgeSet> minimal_sets(std::vector<EdgeSet> family) {
  std::sort(family.begin(), family.end(), [](EdgeSet a, EdgeSet b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<EdgeSet> out;
  for (EdgeSet s : family) {
    bool minimal = true;
    for (EdgeSet t : out)
      if (t.is_subset_of(s)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Edges with both ends in X, and edges with exactly one end in X.
inline std::pair<EdgeSet, EdgeSet> split_edges(const SignedGraph& g, const std::vector<char>& mark) {
  EdgeSet inside;
  EdgeSet boundary;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const bool a = in_side(mark, g.edge(e).u);
    const bool b = in_side(mark, g.edge(e).v);
    if (a && b) inside.insert(e);
    else if (a != b) boundary.insert(e);
  }
  return {inside, boundary};
}

inline std::vector<EdgeSet> minimal_balancing_sets_marked(const SignedGraph& g, const std::vector<char>& mark,
                                                          Budget budget) {
  const EdgeSet inside = split_edges(g, mark).first;
  // Free vertices: all of X except the first vertex of each component of G[X].
  std::vector<Vertex> free_vertices;
  for (const Component& c : components(g, inside)) {
    if (!in_side(mark, c.vertices.front())) continue;
    for (std::size_t i = 1; i < c.vertices.size(); ++i) free_vertices.push_back(c.vertices[i]);
  }
  if (free_vertices.size() >= 63) throw Error(ErrorCode::resource_budget, "vertex set too large");
  require_budget(std::uint64_t{1} << free_vertices.size(), budget, "balancing-set enumeration");
  std::vector<int> s(static_cast<std::size_t>(g.vertex_count()), 1);
  std::vector<EdgeSet> violated;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_vertices.size()); ++bits) {
    for (std::size_t i = 0; i < free_vertices.size(); ++i) s[free_vertices[i]] = ((bits >> i) & 1U) ? -1 : 1;
    EdgeSet viol;
    for (EdgeId e : inside.ids()) {
      const Edge& ed = g.edge(e);
      if ((ed.is_negative() ? -1 : 1) != s[ed.u] * s[ed.v]) viol.insert(e);
    }
    violated.push_back(viol);
  }
  return minimal_sets(std::move(violated));
}

inline std::vector<char> mark_of(const SignedGraph& g, const std::vector<Vertex>& side) {
  std::vector<char> mark(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : side) {
    if (v < 0 || v >= g.vertex_count()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
    mark[v] = 1;
  }
  return mark;
}

inline int frame_rank(const ParityUnionFind& uf, int n) { return n - uf.components() + uf.unbalanced_components(); }

}  // namespace detail

/// All inclusion-minimal E_X within G[X] whose removal leaves G[X] balanced;
/// {} (a single empty set) when G[X] is already balanced.
inline std::vector<EdgeSet> minimal_balancing_sets(const SignedGraph& g, const std::vector<Vertex>& side,
                                                   Budget budget = kDefaultSubsetBudget) {
  if (side.empty()) throw Error(ErrorCode::invalid_argument, "vertex set X must be non-empty");
  return detail::minimal_balancing_sets_marked(g, detail::mark_of(g, side), budget);
}

/// Bonds straight from the definition: every non-empty X including X = V,
/// every minimal E_X, then the inclusion-minimal cuts.
inline std::vector<Bond> enumerate_bonds_by_cuts(const SignedGraph& g, Budget budget = kDefaultSubsetBudget) {
  const int n = g.vertex_count();
  if (n > 38) throw Error(ErrorCode::resource_budget, "too many vertices for cut enumeration");
  std::uint64_t work = 1;
  for (int i = 0; i < n; ++i) work = detail::saturating_mul(work, 3);
  detail::require_budget(work, budget, "cut enumeration");

  std::vector<Bond> cuts;
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (std::uint64_t xs = 1; xs < (std::uint64_t{1} << n); ++xs) {
    std::vector<Vertex> side;
    for (Vertex v = 0; v < n; ++v) {
      mark[v] = static_cast<char>((xs >> v) & 1U);
      if (mark[v]) side.push_back(v);
    }
    const EdgeSet boundary = detail::split_edges(g, mark).second;
    for (EdgeSet ex : detail::minimal_balancing_sets_marked(g, mark, budget)) {
      const EdgeSet b = boundary | ex;
      if (!b.empty()) cuts.push_back(Bond{b, side, ex});
    }
  }
  std::vector<EdgeSet> family;
  for (const Bond& c : cuts) family.push_back(c.edges);
  std::vector<Bond> bonds;
  for (EdgeSet b : detail::minimal_sets(std::move(family))) {
    auto it = std::find_if(cuts.begin(), cuts.end(), [b](const Bond& c) { return c.edges == b; });
    bonds.push_back(*it);
  }
  return bonds;
}

/// Bonds computed as the complements of hyperplanes of the frame matroid
/// (rank n minus the number of balanced components). Each hyperplane is the
/// closure of an independent set of size rank - 1. Returns the same family
/// as enumerate_bonds_by_cuts, sorted by edge mask, with a witness per bond.
inline std::vector<Bond> enumerate_bonds(const SignedGraph& g, Budget budget = kDefaultSubsetBudget) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const BalanceSummary whole = summarize(g, g.all_edges());
  const int rank = n - (whole.components - whole.unbalanced_components);
  if (rank == 0) return {};
  const int target = rank - 1;

  std::uint64_t binom = 1;  // C(m, target), saturating
  for (int i = 1; i <= target; ++i) {
    binom = detail::saturating_mul(binom, static_cast<std::uint64_t>(m - target + i));
    binom /= static_cast<std::uint64_t>(i);
  }
  detail::require_budget(binom, budget, "hyperplane enumeration");

  std::unordered_set<std::uint64_t> seen;
  std::vector<EdgeSet> cocircuits;
  detail::ParityUnionFind uf(n);
  auto rec = [&](auto&& self, int e, int size) -> void {
    if (size == target) {
      EdgeSet closure;
      for (EdgeId a = 0; a < m; ++a) {
        const std::size_t mark = uf.checkpoint();
        const Edge& ed = g.edge(a);
        uf.add_edge(ed.u, ed.v, ed.is_negative());
        if (detail::frame_rank(uf, n) == target) closure.insert(a);
        uf.rollback(mark);
      }
      const EdgeSet complement = g.all_edges() - closure;
      if (seen.insert(complement.mask()).second) cocircuits.push_back(complement);
      return;
    }
    if (m - e < target - size) return;
    const std::size_t mark = uf.checkpoint();
    const Edge& ed = g.edge(e);
    const int before = detail::frame_rank(uf, n);
    uf.add_edge(ed.u, ed.v, ed.is_negative());
    if (detail::frame_rank(uf, n) > before) self(self, e + 1, size + 1);
    uf.rollback(mark);
    self(self, e + 1, size);
  };
  rec(rec, 0, 0);
  std::sort(cocircuits.begin(), cocircuits.end());

  std::vector<Bond> bonds;
  for (EdgeSet d : cocircuits) {
    std::optional<Bond> found;
    for (const Component& c : components(g, g.all_edges() - d)) {
      if (!is_balanced(g, c.edges)) continue;
      std::vector<char> mark = detail::mark_of(g, c.vertices);
      auto [inside, boundary] = detail::split_edges(g, mark);
      const EdgeSet ex = inside & d;
      const EdgeSet b = boundary | ex;
      if (b.empty()) continue;
      if (b != d) throw Error(ErrorCode::internal, "cocircuit does not match its cut witness");
      found = Bond{d, c.vertices, ex};
      break;
    }
    if (!found) throw Error(ErrorCode::internal, "cocircuit without a cut witness");
    bonds.push_back(std::move(*found));
  }
  return bonds;
}

/// Each bond minus its largest edge, deduplicated and sorted; may contain {}.
inline std::vector<EdgeSet> broken_bonds(const std::vector<Bond>& bonds, const EdgeOrder& order) {
  std::set<EdgeSet> out;
  for (const Bond& b : bonds) {
    EdgeSet s = b.edges;
    s.erase(order.max_of(b.edges));
    out.insert(s);
  }
  return {out.begin(), out.end()};
}

inline std::vector<EdgeSet> broken_bonds(const SignedGraph& g, const EdgeOrder& order,
                                         Budget budget = kDefaultSubsetBudget) {
  require_order(g, order);
  return broken_bonds(enumerate_bonds(g, budget), order);
}

/// Enumerates the edge subsets containing no broken bond (the complex of
/// broken-bond-free sets), in depth-first order over edge ids.
inline std::vector<EdgeSet> bb_free_sets(const SignedGraph& g, const std::vector<EdgeSet>& broken,
                                         Budget budget = kDefaultSubsetBudget) {
  const std::vector<EdgeSet> minimal = detail::minimal_sets(broken);
  if (!minimal.empty() && minimal.front().empty()) return {};
  const int m = g.edge_count();
  std::vector<std::vector<EdgeSet>> through(static_cast<std::size_t>(m));
  for (EdgeSet b : minimal)
    for (EdgeId e : b.ids()) through[e].push_back(b);

  std::vector<EdgeSet> out;
  std::uint64_t visited = 0;
  auto rec = [&](auto&& self, int e, EdgeSet f) -> void {
    if (++visited > budget.max_candidates) detail::require_budget(visited, budget, "broken-bond-free enumeration");
    if (e == m) {
      out.push_back(f);
      return;
    }
    self(self, e + 1, f);
    EdgeSet with = f;
    with.insert(e);
    for (EdgeSet b : through[e])
      if (b.is_subset_of(with)) return;
    self(self, e + 1, with);
  };
  rec(rec, 0, EdgeSet{});
  return out;
}

/// a_i = number of i-edge subsets containing no broken bond.
struct ComplexFVector {
  std::vector<std::uint64_t> a;
  friend bool operator==(const ComplexFVector&, const ComplexFVector&) = default;
};

inline ComplexFVector fvector_of(const SignedGraph& g, const std::vector<EdgeSet>& family) {
  int top = std::max(0, g.edge_count() - g.vertex_count());
  for (EdgeSet f : family) top = std::max(top, f.size());
  ComplexFVector fv{std::vector<std::uint64_t>(static_cast<std::size_t>(top) + 1, 0)};
  for (EdgeSet f : family) ++fv.a[static_cast<std::size_t>(f.size())];
  return fv;
}

inline ComplexFVector bb_free_fvector(const SignedGraph& g, const EdgeOrder& order,
                                      Budget budget = kDefaultSubsetBudget) {
  return fvector_of(g, bb_free_sets(g, broken_bonds(g, order, budget), budget));
}

/// F_0(G, x) as the sum over broken-bond-free F of (-1)^|F| x^beta(G-F).
inline IntPolynomial f0_broken(const SignedGraph& g, const EdgeOrder& order, Budget budget = kDefaultSubsetBudget) {
  const EdgeSet all = g.all_edges();
  std::vector<BigInt> coeffs(static_cast<std::size_t>(g.edge_count()) + 1);
  for (EdgeSet f : bb_free_sets(g, broken_bonds(g, order, budget), budget)) {
    const int b = summarize(g, all - f).beta();
    coeffs[static_cast<std::size_t>(b)] += (f.size() % 2 == 0) ? 1 : -1;
  }
  return IntPolynomial(std::move(coeffs));
}

/// Number of edges e having some e' after e in the order such that
///  1) e or e' is a cut edge and G - {e, e'} has a balanced component, or
///  2) {e, e'} is an edge cut and G - {e, e'} has a balanced component, or
///  3) e, e' lie in one component w and w - {e, e'} is balanced.
inline int sigma(const SignedGraph& g, const EdgeOrder& order) {
  require_order(g, order);
  const int m = g.edge_count();
  const EdgeSet all = g.all_edges();
  const int base_components = summarize(g, all).components;
  std::vector<char> cut_edge(static_cast<std::size_t>(m), 0);
  for (EdgeId e = 0; e < m; ++e) cut_edge[e] = summarize(g, all - EdgeSet::of({e})).components > base_components;
  const std::vector<Component> comps = components(g);
  std::vector<int> comp_of(static_cast<std::size_t>(m), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (EdgeId e : comps[c].edges.ids()) comp_of[e] = static_cast<int>(c);

  int count = 0;
  for (EdgeId e = 0; e < m; ++e) {
    bool hit = false;
    for (EdgeId f = 0; f < m && !hit; ++f) {
      if (order.rank(f) <= order.rank(e)) continue;
      const EdgeSet pair = EdgeSet::of({e, f});
      const BalanceSummary rest = summarize(g, all - pair);
      const bool balanced_part = rest.components > rest.unbalanced_components;
      const bool c1 = (cut_edge[e] || cut_edge[f]) && balanced_part;
      const bool c2 = rest.components > base_components && balanced_part;
      const bool c3 = comp_of[e] == comp_of[f] && is_balanced(g, comps[comp_of[e]].edges - pair);
      hit = c1 || c2 || c3;
    }
    count += hit ? 1 : 0;
  }
  return count;
}

struct HomogeneityReport {
  bool applicable = false;  // connected, unbalanced and F_0 not identically zero
  std::string reason;
  int top_dimension = 0;    // m - n
  bool homogeneous = false;
  bool characterization_holds = false;
  std::vector<EdgeSet> maximal;
  std::optional<EdgeSet> counterexample;
  ComplexFVector fvector;
};

/// Checks that every broken-bond-free set extends to one of size m - n, and
/// that such a set F has exactly size m - n iff every component of G - F has
/// exactly one circuit, which is unbalanced.
inline HomogeneityReport check_homogeneous(const SignedGraph& g, const EdgeOrder& order,
                                           Budget budget = kDefaultSubsetBudget) {
  require_order(g, order);
  HomogeneityReport r;
  r.top_dimension = g.edge_count() - g.vertex_count();
  const std::vector<EdgeSet> family = bb_free_sets(g, broken_bonds(g, order, budget), budget);
  r.fvector = fvector_of(g, family);
  if (!is_connected(g)) r.reason = "graph is disconnected";
  else if (is_balanced(g)) r.reason = "graph is balanced";
  else if (family.empty()) r.reason = "empty set is a broken bond (F_0 is identically zero)";
  else r.applicable = true;
  if (!r.applicable) return r;

  std::unordered_set<std::uint64_t> members;
  for (EdgeSet f : family) members.insert(f.mask());
  r.homogeneous = true;
  r.characterization_holds = true;
  const EdgeSet all = g.all_edges();
  for (EdgeSet f : family) {
    bool maximal = true;
    for (EdgeId e = 0; e < g.edge_count() && maximal; ++e)
      if (!f.contains(e) && members.count((f | EdgeSet::of({e})).mask()) != 0) maximal = false;
    if (maximal) {
      r.maximal.push_back(f);
      if (f.size() != r.top_dimension && r.homogeneous) {
        r.homogeneous = false;
        r.counterexample = f;
      }
    }
    const BalanceSummary s = summarize(g, all - f);
    const bool unicyclic_unbalanced = s.unbalanced_components == s.components && s.edges == s.vertices;
    if ((f.size() == r.top_dimension) != unicyclic_unbalanced && r.characterization_holds) {
      r.characterization_holds = false;
      if (!r.counterexample) r.counterexample = f;
    }
  }
  return r;
}

struct PropositionReport {
  bool vacuous = false;  // G balanced
  std::optional<EdgeSet> counterexample;
  bool pass() const noexcept { return !counterexample.has_value(); }
};

/// If F contains no broken bond then every component of G - F is unbalanced.
inline PropositionReport proposition_check(const SignedGraph& g, const EdgeOrder& order,
                                           Budget budget = kDefaultSubsetBudget) {
  require_order(g, order);
  PropositionReport r;
  if (is_balanced(g)) {
    r.vacuous = true;
    return r;
  }
  const EdgeSet all = g.all_edges();
  for (EdgeSet f : bb_free_sets(g, broken_bonds(g, order, budget), budget)) {
    const BalanceSummary s = summarize(g, all - f);
    if (s.components != s.unbalanced_components) {
      r.counterexample = f;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Trees whose leaves are replaced by unbalanced circuits.

inline void validate_tree(const SignedGraph& t) {
  if (t.vertex_count() < 2) throw Error(ErrorCode::not_a_tree, "tree needs at least two vertices");
  if (t.edge_count() != t.vertex_count() - 1 || !is_connected(t))
    throw Error(ErrorCode::not_a_tree, "input is not a tree");
  for (const Edge& e : t.edges())
    if (e.is_loop()) throw Error(ErrorCode::not_a_tree, "tree contains a loop");
}

struct GtGraph {
  SignedGraph graph;
  EdgeOrder order;
  Vertex root;  // the leaf used to orient father/child relations
};

/// Replaces every leaf of `tree` by an unbalanced circuit of length `girth`
/// (girth - 1 positive edges and one negative edge; a negative loop for
/// girth 1). Edge ids follow the order: circuit edges by leaf, then tree edges
/// farthest from the root leaf first, so no child follows its father.
inline GtGraph build_gt(const SignedGraph& tree, int girth) {
  validate_tree(tree);
  if (girth < 1) throw Error(ErrorCode::invalid_argument, "girth must be at least 1");
  const int t = tree.vertex_count();
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < t; ++v)
    if (tree.incident_edges(v).size() == 1) leaves.push_back(v);
  const Vertex root = leaves.front();

  std::vector<int> depth(static_cast<std::size_t>(t), -1);
  std::vector<Vertex> child_of_edge(static_cast<std::size_t>(tree.edge_count()), -1);
  std::queue<Vertex> q;
  depth[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    for (EdgeId e : tree.incident_edges(x)) {
      const Vertex y = tree.edge(e).other(x);
      if (depth[y] != -1) continue;
      depth[y] = depth[x] + 1;
      child_of_edge[e] = y;
      q.push(y);
    }
  }

  std::vector<Edge> edges;
  int next_vertex = t;
  for (Vertex leaf : leaves) {
    if (girth == 1) {
      edges.push_back({leaf, leaf, Sign::negative});
      continue;
    }
    std::vector<Vertex> cyc{leaf};
    for (int i = 1; i < girth; ++i) cyc.push_back(next_vertex++);
    for (int i = 0; i + 1 < girth; ++i) edges.push_back({cyc[i], cyc[i + 1], Sign::positive});
    edges.push_back({cyc.back(), leaf, Sign::negative});
  }
  std::vector<EdgeId> tree_edges(static_cast<std::size_t>(tree.edge_count()));
  for (EdgeId e = 0; e < tree.edge_count(); ++e) tree_edges[e] = e;
  std::sort(tree_edges.begin(), tree_edges.end(), [&](EdgeId a, EdgeId b) {
    const Vertex ca = child_of_edge[a];
    const Vertex cb = child_of_edge[b];
    return depth[ca] != depth[cb] ? depth[ca] > depth[cb] : ca < cb;
  });
  for (EdgeId e : tree_edges) {
    const Edge& ed = tree.edge(e);
    edges.push_back({std::min(ed.u, ed.v), std::max(ed.u, ed.v), Sign::positive});
  }
  const int m = static_cast<int>(edges.size());
  return GtGraph{SignedGraph(next_vertex, std::move(edges)), EdgeOrder::identity(m), root};
}

/// (x - 1) times, for each vertex of degree d >= 3, the truncated expansion
/// sum_{j=0}^{d-2} (-1)^j C(d-1, j) x^(d-2-j).
inline IntPolynomial gt_formula(const SignedGraph& tree) {
  validate_tree(tree);
  IntPolynomial result{-1, 1};
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    const int d = static_cast<int>(tree.incident_edges(v).size());
    if (d < 3) continue;
    std::vector<BigInt> coeffs(static_cast<std::size_t>(d - 1));
    BigInt binom = 1;  // C(d-1, j)
    for (int j = 0; j <= d - 2; ++j) {
      coeffs[static_cast<std::size_t>(d - 2 - j)] = (j % 2 == 0) ? binom : BigInt(-binom);
      binom = binom * (d - 1 - j) / (j + 1);
    }
    result = result * IntPolynomial(std::move(coeffs));
  }
  return result;
}

}  // namespace sgflow
