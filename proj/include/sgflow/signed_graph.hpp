#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sgflow/detail/parity_union_find.hpp"
#include "sgflow/edge_set.hpp"
#include "sgflow/error.hpp"

namespace sgflow {

enum class Sign : std::uint8_t { positive, negative };

constexpr Sign flip(Sign s) noexcept { return s == Sign::positive ? Sign::negative : Sign::positive; }
constexpr char to_char(Sign s) noexcept { return s == Sign::positive ? '+' : '-'; }

struct Edge {
  Vertex u;
  Vertex v;
  Sign sign;

  constexpr bool is_loop() const noexcept { return u == v; }
  constexpr bool is_negative() const noexcept { return sign == Sign::negative; }
  constexpr Vertex other(Vertex w) const noexcept { return w == u ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Signed multigraph on vertices 0..n-1. Loops and parallel edges are allowed;
/// the position of an edge in edges() is its id and the default linear order.
class SignedGraph {
 public:
  SignedGraph() = default;

  SignedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw Error(ErrorCode::invalid_argument, "vertex count must be non-negative");
    if (static_cast<int>(edges_.size()) > kMaxEdges)
      throw Error(ErrorCode::invalid_argument, "at most " + std::to_string(kMaxEdges) + " edges are supported");
    incident_.assign(static_cast<std::size_t>(n_), {});
    for (EdgeId e = 0; e < edge_count(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.u < 0 || ed.u >= n_ || ed.v < 0 || ed.v >= n_)
        throw Error(ErrorCode::invalid_argument, "edge " + std::to_string(e) + " has an endpoint out of range");
      incident_[ed.u].push_back(e);
      if (!ed.is_loop()) incident_[ed.v].push_back(e);
    }
  }

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  EdgeSet all_edges() const { return EdgeSet::all(edge_count()); }

  /// Edge ids touching v in increasing order; a loop appears once.
  const std::vector<EdgeId>& incident_edges(Vertex v) const { return incident_.at(static_cast<std::size_t>(v)); }

  EdgeSet negative_edges() const {
    EdgeSet s;
    for (EdgeId e = 0; e < edge_count(); ++e)
      if (edges_[e].is_negative()) s.insert(e);
    return s;
  }

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

// ---------------------------------------------------------------------------
// Text format: "n <count>" followed by "e <u> <v> <+|->" lines, '#' comments.

inline SignedGraph parse_graph(std::string_view text) {
  std::optional<int> n;
  std::vector<Edge> edges;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string tag;
    if (!(in >> tag)) continue;
    auto fail = [&](const std::string& msg) -> Error {
      return Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + msg, line_no);
    };
    auto read_int = [&](const char* what) {
      std::string tok;
      if (!(in >> tok)) throw fail(std::string("missing ") + what);
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw fail(std::string("bad ") + what + " '" + tok + "'");
      }
      if (used != tok.size() || value < 0 || value > 1'000'000)
        throw fail(std::string("bad ") + what + " '" + tok + "'");
      return static_cast<int>(value);
    };
    if (tag == "n") {
      if (n) throw fail("duplicate vertex count");
      n = read_int("vertex count");
      if (*n < 1) throw fail("vertex count must be at least 1");
    } else if (tag == "e") {
      if (!n) throw fail("edge before vertex count");
      const int u = read_int("vertex");
      const int v = read_int("vertex");
      if (u >= *n || v >= *n) throw fail("vertex index out of range");
      std::string s;
      if (!(in >> s)) throw fail("missing sign");
      Sign sign;
      if (s == "+") sign = Sign::positive;
      else if (s == "-") sign = Sign::negative;
      else throw fail("unknown sign '" + s + "'");
      if (static_cast<int>(edges.size()) == kMaxEdges)
        throw fail("more than " + std::to_string(kMaxEdges) + " edges");
      edges.push_back(Edge{u, v, sign});
    } else {
      throw fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (in >> extra) throw fail("trailing token '" + extra + "'");
  }
  if (!n) throw Error(ErrorCode::parse_error, "missing vertex count line", line_no == 0 ? 1 : line_no);
  return SignedGraph(*n, std::move(edges));
}

inline std::string format_graph(const SignedGraph& g) {
  std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
  for (const Edge& e : g.edges())
    out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + to_char(e.sign) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Components and subgraphs.

struct Component {
  std::vector<Vertex> vertices;  // ascending
  EdgeSet edges;
};

/// Connected components of (V, kept); vertices of a component are sorted and
/// components are ordered by their smallest vertex.
inline std::vector<Component> components(const SignedGraph& g, EdgeSet kept) {
  const int n = g.vertex_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<Component> out;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      out[id].vertices.push_back(x);
      for (EdgeId e : g.incident_edges(x)) {
        if (!kept.contains(e)) continue;
        out[id].edges.insert(e);
        const Vertex y = g.edge(e).other(x);
        if (comp[y] == -1) {
          comp[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(out[id].vertices.begin(), out[id].vertices.end());
  }
  return out;
}

inline std::vector<Component> components(const SignedGraph& g) { return components(g, g.all_edges()); }

inline bool is_connected(const SignedGraph& g) { return components(g).size() <= 1; }

/// A graph extracted from a parent, with maps from new ids to parent ids.
struct Subgraph {
  SignedGraph graph;
  std::vector<Vertex> vertex_map;
  std::vector<EdgeId> edge_map;
};

inline Subgraph induced_subgraph(const SignedGraph& g, const Component& c) {
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) local[c.vertices[i]] = static_cast<int>(i);
  Subgraph sub;
  sub.vertex_map = c.vertices;
  std::vector<Edge> edges;
  for (EdgeId e : c.edges.ids()) {
    const Edge& ed = g.edge(e);
    edges.push_back(Edge{local[ed.u], local[ed.v], ed.sign});
    sub.edge_map.push_back(e);
  }
  sub.graph = SignedGraph(static_cast<int>(c.vertices.size()), std::move(edges));
  return sub;
}

/// G - F. Vertices are retained; surviving edges keep their relative order.
inline Subgraph delete_edges(const SignedGraph& g, EdgeSet removed) {
  if (!removed.is_subset_of(g.all_edges()))
    throw Error(ErrorCode::invalid_argument, "edge id out of range in deleted set");
  Subgraph sub;
  for (Vertex v = 0; v < g.vertex_count(); ++v) sub.vertex_map.push_back(v);
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (removed.contains(e)) continue;
    edges.push_back(g.edge(e));
    sub.edge_map.push_back(e);
  }
  sub.graph = SignedGraph(g.vertex_count(), std::move(edges));
  return sub;
}

/// Vertices and edges of b are appended after those of a.
inline SignedGraph disjoint_union(const SignedGraph& a, const SignedGraph& b) {
  std::vector<Edge> edges = a.edges();
  const int shift = a.vertex_count();
  for (const Edge& e : b.edges()) edges.push_back(Edge{e.u + shift, e.v + shift, e.sign});
  return SignedGraph(a.vertex_count() + b.vertex_count(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Balance, switching, and the invariants beta and kappa.

/// Vertex signs s with sign(e) = s(u)s(v) on every kept edge, if they exist.
/// Unreached vertices get +1.
inline std::optional<std::vector<int>> balancing_signs(const SignedGraph& g, EdgeSet kept) {
  const int n = g.vertex_count();
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  for (Vertex root = 0; root < n; ++root) {
    if (s[root] != 0) continue;
    s[root] = 1;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      for (EdgeId e : g.incident_edges(x)) {
        if (!kept.contains(e)) continue;
        const Edge& ed = g.edge(e);
        const int sign = ed.is_negative() ? -1 : 1;
        const Vertex y = ed.other(x);
        if (s[y] == 0) {
          s[y] = s[x] * sign;
          q.push(y);
        } else if (s[y] != s[x] * sign) {
          return std::nullopt;
        }
      }
    }
  }
  return s;
}

inline bool is_balanced(const SignedGraph& g, EdgeSet kept) { return balancing_signs(g, kept).has_value(); }
inline bool is_balanced(const SignedGraph& g) { return is_balanced(g, g.all_edges()); }

/// Component statistics of the spanning subgraph (V, kept).
struct BalanceSummary {
  int vertices = 0;
  int edges = 0;
  int components = 0;
  int unbalanced_components = 0;

  int beta() const noexcept { return edges - vertices + (components - unbalanced_components); }
  int kappa() const noexcept { return unbalanced_components; }
};

inline BalanceSummary summarize(const SignedGraph& g, EdgeSet kept) {
  detail::ParityUnionFind uf(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!kept.contains(e)) continue;
    const Edge& ed = g.edge(e);
    uf.add_edge(ed.u, ed.v, ed.is_negative());
  }
  return BalanceSummary{g.vertex_count(), uf.edges(), uf.components(), uf.unbalanced_components()};
}

/// Sum over components of m - n + 1 (balanced) or m - n (unbalanced).
inline int beta(const SignedGraph& g) { return summarize(g, g.all_edges()).beta(); }
/// Number of unbalanced components.
inline int kappa(const SignedGraph& g) { return summarize(g, g.all_edges()).kappa(); }

/// Switches by a vertex-sign function: sign(uv) becomes s(u) sign(uv) s(v).
inline SignedGraph switch_by(const SignedGraph& g, const std::vector<int>& s) {
  if (static_cast<int>(s.size()) != g.vertex_count())
    throw Error(ErrorCode::invalid_argument, "switching function has wrong length");
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges)
    if (s[e.u] * s[e.v] < 0) e.sign = flip(e.sign);
  return SignedGraph(g.vertex_count(), std::move(edges));
}

inline SignedGraph switch_at(const SignedGraph& g, Vertex v) {
  if (v < 0 || v >= g.vertex_count()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  std::vector<int> s(static_cast<std::size_t>(g.vertex_count()), 1);
  s[v] = -1;
  return switch_by(g, s);
}

struct PositiveTree {
  SignedGraph graph;           // switching-equivalent to the input
  EdgeSet tree;                // spanning tree, all positive in `graph`
  std::vector<int> switching;  // graph = switch_by(input, switching)
  std::vector<EdgeId> parent_edge;  // BFS parent edge per vertex, -1 at the root
  std::vector<int> depth;
};

/// BFS spanning tree from vertex 0 (lowest edge id first), then switching so
/// every tree edge is positive.
inline PositiveTree normalize_positive_tree(const SignedGraph& g) {
  const int n = g.vertex_count();
  if (n == 0 || !is_connected(g))
    throw Error(ErrorCode::disconnected_graph, "a positive spanning tree needs a connected graph");
  PositiveTree out;
  out.switching.assign(static_cast<std::size_t>(n), 0);
  out.parent_edge.assign(static_cast<std::size_t>(n), -1);
  out.depth.assign(static_cast<std::size_t>(n), 0);
  out.switching[0] = 1;
  std::queue<Vertex> q;
  q.push(0);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    for (EdgeId e : g.incident_edges(x)) {
      const Edge& ed = g.edge(e);
      const Vertex y = ed.other(x);
      if (out.switching[y] != 0) continue;
      out.switching[y] = out.switching[x] * (ed.is_negative() ? -1 : 1);
      out.parent_edge[y] = e;
      out.depth[y] = out.depth[x] + 1;
      out.tree.insert(e);
      q.push(y);
    }
  }
  out.graph = switch_by(g, out.switching);
  return out;
}

// ---------------------------------------------------------------------------
// Orientations with half-edges.

enum class NegativeState : std::uint8_t { extroverted, introverted };

/// Orientation of one edge as the directions of its two half-edges: +1 when the
/// half-edge at that end points into the end vertex, -1 when it points away.
/// Positive edges have opposite half-edge signs, negative edges equal ones.
struct EdgeOrientation {
  std::int8_t at_u;
  std::int8_t at_v;

  friend bool operator==(const EdgeOrientation&, const EdgeOrientation&) = default;
};

class Orientation {
 public:
  Orientation() = default;
  Orientation(const SignedGraph& g, std::vector<EdgeOrientation> halves) : halves_(std::move(halves)) {
    if (static_cast<int>(halves_.size()) != g.edge_count())
      throw Error(ErrorCode::invalid_argument, "orientation size does not match edge count");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto [a, b] = halves_[e];
      const bool ok = (a == 1 || a == -1) && (b == 1 || b == -1) &&
                      (g.edge(e).is_negative() ? a == b : a == -b);
      if (!ok) throw Error(ErrorCode::invalid_argument, "invalid orientation for edge " + std::to_string(e));
    }
  }

  int edge_count() const noexcept { return static_cast<int>(halves_.size()); }
  const EdgeOrientation& at(EdgeId e) const { return halves_.at(static_cast<std::size_t>(e)); }

  /// Tail and head of a positive edge.
  std::pair<Vertex, Vertex> direction(const SignedGraph& g, EdgeId e) const {
    const Edge& ed = g.edge(e);
    return at(e).at_v > 0 ? std::pair{ed.u, ed.v} : std::pair{ed.v, ed.u};
  }

  NegativeState state(EdgeId e) const {
    return at(e).at_u > 0 ? NegativeState::extroverted : NegativeState::introverted;
  }

  /// The same orientation with edge e reversed (both half-edges flipped).
  Orientation reversed(EdgeId e) const {
    Orientation r = *this;
    auto& h = r.halves_.at(static_cast<std::size_t>(e));
    h.at_u = static_cast<std::int8_t>(-h.at_u);
    h.at_v = static_cast<std::int8_t>(-h.at_v);
    return r;
  }

  friend bool operator==(const Orientation&, const Orientation&) = default;

 private:
  std::vector<EdgeOrientation> halves_;
};

/// Positive edges point from the lower to the higher endpoint (loops u->u);
/// the root negative edge is extroverted and every other negative edge is
/// introverted.
inline Orientation canonical_orientation(const SignedGraph& g, std::optional<EdgeId> root_edge) {
  if (root_edge) {
    if (*root_edge < 0 || *root_edge >= g.edge_count())
      throw Error(ErrorCode::invalid_argument, "root edge out of range");
    if (!g.edge(*root_edge).is_negative())
      throw Error(ErrorCode::invalid_argument, "root edge must be negative");
  }
  std::vector<EdgeOrientation> halves;
  halves.reserve(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_negative()) {
      const std::int8_t s = (root_edge && *root_edge == e) ? 1 : -1;
      halves.push_back({s, s});
    } else if (ed.u > ed.v) {
      halves.push_back({1, -1});
    } else {
      halves.push_back({-1, 1});
    }
  }
  return Orientation(g, std::move(halves));
}

inline std::optional<EdgeId> first_negative_edge(const SignedGraph& g) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).is_negative()) return e;
  return std::nullopt;
}

/// Canonical orientation rooted at the smallest-id negative edge.
inline Orientation default_orientation(const SignedGraph& g) {
  return canonical_orientation(g, first_negative_edge(g));
}

/// Net coefficient of edge e in the conservation equation at v: half-edges
/// pointing into v count +1, those pointing away -1.
inline int incidence_coefficient(const SignedGraph& g, const Orientation& d, Vertex v, EdgeId e) {
  const Edge& ed = g.edge(e);
  int eta = 0;
  if (ed.u == v) eta += d.at(e).at_u;
  if (ed.v == v) eta += d.at(e).at_v;
  return eta;
}

}  // namespace sgflow
