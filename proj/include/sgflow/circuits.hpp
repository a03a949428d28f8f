#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/signed_graph.hpp"

namespace sgflow {

/// Integer edge vector with entries in {-2, -1, 0, 1, 2}.
struct CircuitVector {
  std::vector<int> values;

  int operator[](EdgeId e) const { return values.at(static_cast<std::size_t>(e)); }

  EdgeSet support() const {
    EdgeSet s;
    for (std::size_t e = 0; e < values.size(); ++e)
      if (values[e] != 0) s.insert(static_cast<EdgeId>(e));
    return s;
  }

  friend bool operator==(const CircuitVector&, const CircuitVector&) = default;
};

enum class CircuitKind { balanced_circuit, barbell };

struct FundamentalCircuit {
  EdgeId edge;          // the cotree edge generating the circuit
  EdgeSet edges;        // C_e
  CircuitKind kind;
  EdgeSet barbell_path;  // empty unless kind == barbell
  CircuitVector vector;  // f_e, with f_e(edge) = 1
};

/// Signed rooted tree of a connected graph together with its fundamental
/// circuits. Everything is expressed on `graph`, the switching of `original`
/// that makes `tree` all-positive, under `orientation` (root edge
/// extroverted, other negative edges introverted).
///
/// For a balanced input there is no root edge: the cotree is E - T and every
/// fundamental circuit is an ordinary cycle.
struct FundamentalSystem {
  SignedGraph original;
  std::vector<int> switching;
  SignedGraph graph;
  Orientation orientation;
  EdgeSet tree;
  std::optional<EdgeId> root_edge;
  std::vector<EdgeId> cotree;  // ascending edge ids
  EdgeSet root_circuit;
  CircuitVector root_vector;
  std::vector<FundamentalCircuit> circuits;  // aligned with cotree

  bool is_balanced() const noexcept { return !root_edge.has_value(); }
};

namespace detail {

struct TreePath {
  std::vector<Vertex> vertices;  // from start to end
  std::vector<EdgeId> edges;     // edges[i] joins vertices[i] and vertices[i+1]
};

inline TreePath tree_path(const PositiveTree& pt, Vertex a, Vertex b) {
  const SignedGraph& g = pt.graph;
  std::vector<Vertex> from_a{a};
  std::vector<EdgeId> edges_a;
  std::vector<Vertex> from_b{b};
  std::vector<EdgeId> edges_b;
  while (a != b) {
    if (pt.depth[a] >= pt.depth[b]) {
      const EdgeId e = pt.parent_edge[a];
      a = g.edge(e).other(a);
      edges_a.push_back(e);
      from_a.push_back(a);
    } else {
      const EdgeId e = pt.parent_edge[b];
      b = g.edge(e).other(b);
      edges_b.push_back(e);
      from_b.push_back(b);
    }
  }
  TreePath path{std::move(from_a), std::move(edges_a)};
  for (std::size_t i = from_b.size() - 1; i-- > 0;) path.vertices.push_back(from_b[i]);
  for (std::size_t i = edges_b.size(); i-- > 0;) path.edges.push_back(edges_b[i]);
  return path;
}

inline EdgeSet edge_set_of(const std::vector<EdgeId>& ids) {
  EdgeSet s;
  for (EdgeId e : ids) s.insert(e);
  return s;
}

/// Half-edge sign of non-loop edge e at its endpoint x.
inline int end_sign(const SignedGraph& g, const Orientation& d, EdgeId e, Vertex x) {
  return g.edge(e).u == x ? d.at(e).at_u : d.at(e).at_v;
}

struct CircuitWalk {
  std::vector<std::pair<EdgeId, int>> values;
  int closing_sum = 0;  // net conservation contribution at the base vertex
};

/// Walks the circuit `cycle` (a connected 2-regular edge set) from `base`,
/// starting with `first` at value 1, and propagates integer conservation
/// through every other vertex of the circuit.
inline CircuitWalk walk_circuit(const SignedGraph& g, const Orientation& d, EdgeSet cycle, Vertex base,
                                EdgeId first) {
  CircuitWalk walk;
  const Edge& fe = g.edge(first);
  if (fe.is_loop()) {
    walk.values.push_back({first, 1});
    walk.closing_sum = incidence_coefficient(g, d, base, first);
    return walk;
  }
  walk.values.push_back({first, 1});
  EdgeId prev = first;
  int prev_value = 1;
  Vertex cur = fe.other(base);
  while (cur != base) {
    EdgeId next = -1;
    for (EdgeId a : g.incident_edges(cur))
      if (cycle.contains(a) && a != prev) {
        next = a;
        break;
      }
    if (next < 0) throw Error(ErrorCode::internal, "circuit walk left the circuit");
    const int value = -end_sign(g, d, prev, cur) * prev_value * end_sign(g, d, next, cur);
    walk.values.push_back({next, value});
    prev = next;
    prev_value = value;
    cur = g.edge(next).other(cur);
  }
  walk.closing_sum = end_sign(g, d, first, base) + end_sign(g, d, prev, base) * prev_value;
  return walk;
}

inline EdgeId first_edge_at(const SignedGraph& g, EdgeSet cycle, Vertex x) {
  for (EdgeId a : g.incident_edges(x))
    if (cycle.contains(a)) return a;
  throw Error(ErrorCode::internal, "vertex not on circuit");
}

inline std::vector<Vertex> vertices_of(const SignedGraph& g, EdgeSet s) {
  std::vector<Vertex> vs;
  for (EdgeId e : s.ids()) {
    vs.push_back(g.edge(e).u);
    vs.push_back(g.edge(e).v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

inline FundamentalCircuit balanced_fundamental_circuit(const SignedGraph& g, const Orientation& d, EdgeId e,
                                                       EdgeSet cycle) {
  FundamentalCircuit fc{e, cycle, CircuitKind::balanced_circuit, {}, {}};
  fc.vector.values.assign(static_cast<std::size_t>(g.edge_count()), 0);
  const CircuitWalk walk = walk_circuit(g, d, cycle, g.edge(e).u, e);
  for (auto [a, v] : walk.values) fc.vector.values[a] = v;
  if (walk.closing_sum != 0) throw Error(ErrorCode::internal, "fundamental circuit is not balanced");
  return fc;
}

/// Barbell made of `c0` (holding the root edge), `c1` (holding e) and the tree
/// path joining them.
inline FundamentalCircuit barbell_circuit(const SignedGraph& g, const PositiveTree& pt, const Orientation& d,
                                          EdgeId e, EdgeSet c0, EdgeSet c1) {
  const std::vector<Vertex> v0 = vertices_of(g, c0);
  const std::vector<Vertex> v1 = vertices_of(g, c1);
  auto in = [](const std::vector<Vertex>& vs, Vertex x) { return std::binary_search(vs.begin(), vs.end(), x); };

  TreePath bridge;
  std::optional<Vertex> shared;
  for (Vertex x : v1)
    if (in(v0, x)) shared = x;
  if (shared) {
    bridge.vertices = {*shared};
  } else {
    const TreePath full = tree_path(pt, v1.front(), v0.front());
    std::size_t start = 0;
    while (start + 1 < full.vertices.size() && in(v1, full.vertices[start + 1])) ++start;
    std::size_t stop = start;
    while (!in(v0, full.vertices[stop])) ++stop;
    bridge.vertices.assign(full.vertices.begin() + static_cast<std::ptrdiff_t>(start),
                           full.vertices.begin() + static_cast<std::ptrdiff_t>(stop) + 1);
    bridge.edges.assign(full.edges.begin() + static_cast<std::ptrdiff_t>(start),
                        full.edges.begin() + static_cast<std::ptrdiff_t>(stop));
  }
  const Vertex x1 = bridge.vertices.front();
  const Vertex x0 = bridge.vertices.back();

  FundamentalCircuit fc{e, c0 | c1 | edge_set_of(bridge.edges), CircuitKind::barbell, edge_set_of(bridge.edges), {}};
  auto& f = fc.vector.values;
  f.assign(static_cast<std::size_t>(g.edge_count()), 0);

  // Circuit through e, scaled so that f(e) = 1.
  CircuitWalk w1 = walk_circuit(g, d, c1, x1, first_edge_at(g, c1, x1));
  int scale1 = 0;
  for (auto [a, v] : w1.values)
    if (a == e) scale1 = v;
  for (auto [a, v] : w1.values) f[a] = v * scale1;
  int carried = w1.closing_sum * scale1;

  // Barbell path carries +-2.
  for (std::size_t i = 0; i < bridge.edges.size(); ++i) {
    const EdgeId a = bridge.edges[i];
    const int value = -carried * end_sign(g, d, a, bridge.vertices[i]);
    f[a] = value;
    carried = end_sign(g, d, a, bridge.vertices[i + 1]) * value;
  }

  // Root-side circuit closes the balance at x0.
  CircuitWalk w0 = walk_circuit(g, d, c0, x0, first_edge_at(g, c0, x0));
  if (std::abs(w0.closing_sum) != 2 || std::abs(carried) != 2)
    throw Error(ErrorCode::internal, "barbell circuits are not unbalanced");
  const int scale0 = -carried / w0.closing_sum;
  for (auto [a, v] : w0.values) f[a] = v * scale0;
  return fc;
}

inline FundamentalSystem build_system(const SignedGraph& g, bool allow_balanced) {
  if (g.vertex_count() == 0 || !is_connected(g))
    throw Error(ErrorCode::disconnected_graph, "fundamental systems need a connected graph");
  const bool balanced = is_balanced(g);
  if (balanced && !allow_balanced)
    throw Error(ErrorCode::balanced_graph, "graph is balanced; use the ordinary cycle basis");

  PositiveTree pt = normalize_positive_tree(g);
  FundamentalSystem fs;
  fs.original = g;
  fs.switching = pt.switching;
  fs.graph = pt.graph;
  fs.tree = pt.tree;
  const SignedGraph& h = fs.graph;
  const int m = h.edge_count();
  if (!balanced) fs.root_edge = first_negative_edge(h);
  fs.orientation = canonical_orientation(h, fs.root_edge);
  const Orientation& d = fs.orientation;

  fs.root_vector.values.assign(static_cast<std::size_t>(m), 0);
  TreePath root_path;
  if (fs.root_edge) {
    const Edge& r = h.edge(*fs.root_edge);
    const Vertex p = std::min(r.u, r.v);
    const Vertex q = std::max(r.u, r.v);
    root_path = tree_path(pt, p, q);
    fs.root_circuit = edge_set_of(root_path.edges);
    fs.root_circuit.insert(*fs.root_edge);
    fs.root_vector.values[*fs.root_edge] = 1;
    // Tree path directed from p to q, so q receives both ends of the root circuit.
    for (std::size_t i = 0; i < root_path.edges.size(); ++i) {
      const EdgeId a = root_path.edges[i];
      fs.root_vector.values[a] = end_sign(h, d, a, root_path.vertices[i + 1]);
    }
  }

  for (EdgeId e = 0; e < m; ++e) {
    if (fs.tree.contains(e) || (fs.root_edge && *fs.root_edge == e)) continue;
    fs.cotree.push_back(e);
    const Edge& ed = h.edge(e);
    const TreePath path = tree_path(pt, ed.u, ed.v);
    EdgeSet own = edge_set_of(path.edges);
    own.insert(e);
    if (!ed.is_negative()) {
      fs.circuits.push_back(balanced_fundamental_circuit(h, d, e, own));
      continue;
    }
    const EdgeSet shared = edge_set_of(path.edges) & edge_set_of(root_path.edges);
    if (!shared.empty())
      fs.circuits.push_back(balanced_fundamental_circuit(h, d, e, own ^ fs.root_circuit));
    else
      fs.circuits.push_back(barbell_circuit(h, pt, d, e, fs.root_circuit, own));
  }
  return fs;
}

}  // namespace detail

/// Signed rooted tree and fundamental circuits of a connected unbalanced graph.
inline FundamentalSystem build_fundamental_system(const SignedGraph& g) { return detail::build_system(g, false); }

/// Like build_fundamental_system, but a balanced graph yields its ordinary
/// fundamental-cycle system (no root edge) instead of an error.
inline FundamentalSystem build_flow_basis(const SignedGraph& g) { return detail::build_system(g, true); }

inline const CircuitVector& root_vector(const FundamentalSystem& fs) { return fs.root_vector; }

struct ConservationViolation {
  std::string vector;  // "f_<edge>" or "g"
  Vertex vertex;
  int sum;
};

struct CircuitReport {
  std::vector<ConservationViolation> violations;
  bool pass() const noexcept { return violations.empty(); }
};

inline int conservation_sum(const SignedGraph& g, const Orientation& d, const CircuitVector& x, Vertex v) {
  int sum = 0;
  for (EdgeId e : g.incident_edges(v)) sum += incidence_coefficient(g, d, v, e) * x[e];
  return sum;
}

/// Every f_e must satisfy integer conservation; g only modulo 2, so that
/// gamma * g is a flow exactly when 2 gamma = 0.
inline CircuitReport verify_circuit_vectors(const FundamentalSystem& fs) {
  CircuitReport report;
  const SignedGraph& g = fs.graph;
  for (const FundamentalCircuit& c : fs.circuits)
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (int s = conservation_sum(g, fs.orientation, c.vector, v); s != 0)
        report.violations.push_back({"f_" + std::to_string(c.edge), v, s});
  if (fs.root_edge)
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (int s = conservation_sum(g, fs.orientation, fs.root_vector, v); s % 2 != 0)
        report.violations.push_back({"g", v, s});
  return report;
}

}  // namespace sgflow
