#pragma once

#include <cstdint>
#include <vector>

#include "sgflow/circuits.hpp"
#include "sgflow/error.hpp"
#include "sgflow/group.hpp"
#include "sgflow/polynomial.hpp"
#include "sgflow/signed_graph.hpp"

namespace sgflow {

/// Edge-indexed assignment of group elements. The group and the orientation
/// it is read under are supplied by the caller.
struct FlowVector {
  std::vector<GroupElement> values;

  const GroupElement& operator[](EdgeId e) const { return values.at(static_cast<std::size_t>(e)); }

  friend bool operator==(const FlowVector&, const FlowVector&) = default;
  friend auto operator<=>(const FlowVector&, const FlowVector&) = default;
};

struct FlowDecomposition {
  GroupElement gamma;                      // coefficient of g, an involution
  std::vector<GroupElement> coefficients;  // aligned with FundamentalSystem::cotree

  friend bool operator==(const FlowDecomposition&, const FlowDecomposition&) = default;
};

struct FlowClass {
  GroupElement gamma;
  std::vector<FlowVector> flows;
};

/// Kirchhoff's law at every vertex under orientation d.
inline bool check_conservation(const SignedGraph& g, const Orientation& d, const AbelianGroup& group,
                               const FlowVector& f) {
  if (static_cast<int>(f.values.size()) != g.edge_count())
    throw Error(ErrorCode::invalid_argument, "flow must assign every edge");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    GroupElement sum = group.zero();
    for (EdgeId e : g.incident_edges(v))
      sum = group.add(sum, group.scale(incidence_coefficient(g, d, v, e), f[e]));
    if (!group.is_zero(sum)) return false;
  }
  return true;
}

/// gamma * g + sum over the cotree of coeffs[i] * f_{cotree[i]}.
inline FlowVector compose_flow(const FundamentalSystem& fs, const AbelianGroup& group, const GroupElement& gamma,
                               const std::vector<GroupElement>& coeffs) {
  if (!group.is_involution(gamma)) throw Error(ErrorCode::invalid_argument, "gamma must satisfy 2 gamma = 0");
  if (fs.is_balanced() && !group.is_zero(gamma))
    throw Error(ErrorCode::invalid_argument, "a balanced system has no root circuit; gamma must be zero");
  if (coeffs.size() != fs.cotree.size())
    throw Error(ErrorCode::invalid_argument, "one coefficient per cotree edge is required");
  const int m = fs.graph.edge_count();
  FlowVector f;
  f.values.reserve(static_cast<std::size_t>(m));
  for (EdgeId a = 0; a < m; ++a) f.values.push_back(group.scale(fs.root_vector[a], gamma));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const CircuitVector& fe = fs.circuits[i].vector;
    for (EdgeId a : fs.circuits[i].edges.ids())
      f.values[a] = group.add(f.values[a], group.scale(fe[a], coeffs[i]));
  }
  return f;
}

/// Inverse of compose_flow: coefficients are read off the cotree and gamma
/// is f(e0) minus the values on the other negative edges.
inline FlowDecomposition decompose_flow(const FundamentalSystem& fs, const AbelianGroup& group, const FlowVector& f) {
  if (!check_conservation(fs.graph, fs.orientation, group, f))
    throw Error(ErrorCode::invalid_argument, "assignment violates conservation");
  FlowDecomposition dec{group.zero(), {}};
  for (EdgeId e : fs.cotree) dec.coefficients.push_back(f[e]);
  if (fs.root_edge) {
    dec.gamma = f[*fs.root_edge];
    for (EdgeId e : fs.graph.negative_edges().ids())
      if (e != *fs.root_edge) dec.gamma = group.sub(dec.gamma, f[e]);
  }
  if (!group.is_involution(dec.gamma))
    throw Error(ErrorCode::internal, "decomposition produced a non-involution root coefficient");
  if (compose_flow(fs, group, dec.gamma, dec.coefficients) != f)
    throw Error(ErrorCode::internal, "flow is not generated by the fundamental system");
  return dec;
}

namespace detail {

/// Calls visit(coeffs) for every assignment of group elements to `slots` positions.
template <class Visit>
void for_each_tuple(const std::vector<GroupElement>& elements, std::size_t slots, Visit&& visit) {
  std::vector<std::size_t> digit(slots, 0);
  std::vector<GroupElement> tuple(slots, elements.front());
  while (true) {
    visit(tuple);
    std::size_t i = 0;
    for (; i < slots; ++i) {
      if (++digit[i] < elements.size()) {
        tuple[i] = elements[digit[i]];
        break;
      }
      digit[i] = 0;
      tuple[i] = elements.front();
    }
    if (i == slots) return;
  }
}

inline std::uint64_t basis_flow_count(const FundamentalSystem& fs, const AbelianGroup& group) {
  const std::uint64_t roots = fs.is_balanced() ? 1 : (std::uint64_t{1} << group.epsilon());
  return saturating_mul(roots, saturating_pow(static_cast<std::uint64_t>(group.order()), fs.cotree.size()));
}

}  // namespace detail

/// The flows gamma * g + sum gamma_e f_e grouped by gamma, in increasing
/// involution order. Each class holds k^|cotree| flows.
inline std::vector<FlowClass> flow_classes(const FundamentalSystem& fs, const AbelianGroup& group,
                                           Budget budget = kDefaultFlowBudget) {
  detail::require_budget(detail::basis_flow_count(fs, group), budget, "flow enumeration");
  const std::vector<GroupElement> elements = group.elements();
  std::vector<GroupElement> gammas = fs.is_balanced() ? std::vector<GroupElement>{group.zero()} : group.involutions();
  std::vector<FlowClass> classes;
  for (const GroupElement& gamma : gammas) {
    FlowClass cls{gamma, {}};
    detail::for_each_tuple(elements, fs.cotree.size(), [&](const std::vector<GroupElement>& coeffs) {
      cls.flows.push_back(compose_flow(fs, group, gamma, coeffs));
    });
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Every flow of the system's graph under its orientation, generated from
/// the fundamental circuits.
inline std::vector<FlowVector> enumerate_flows(const FundamentalSystem& fs, const AbelianGroup& group,
                                               Budget budget = kDefaultFlowBudget) {
  std::vector<FlowVector> out;
  for (FlowClass& cls : flow_classes(fs, group, budget))
    for (FlowVector& f : cls.flows) out.push_back(std::move(f));
  return out;
}

/// Re-expresses f, a flow under `from`, as the same flow under `to`:
/// values on edges oriented differently are negated.
inline FlowVector reorient(const AbelianGroup& group, const FlowVector& f, const Orientation& from,
                           const Orientation& to) {
  FlowVector r = f;
  for (EdgeId e = 0; e < from.edge_count(); ++e)
    if (from.at(e).at_u != to.at(e).at_u) r.values[e] = group.neg(r.values[e]);
  return r;
}

/// Maps a flow of fs.graph under fs.orientation to the corresponding flow of
/// fs.original under default_orientation(fs.original). The map is an involution.
inline FlowVector to_original_frame(const FundamentalSystem& fs, const AbelianGroup& group, const FlowVector& f) {
  const Orientation h = default_orientation(fs.original);
  FlowVector r = f;
  for (EdgeId e = 0; e < fs.graph.edge_count(); ++e) {
    const int lambda = fs.orientation.at(e).at_u * fs.switching[fs.graph.edge(e).u] * h.at(e).at_u;
    if (lambda < 0) r.values[e] = group.neg(r.values[e]);
  }
  return r;
}

namespace detail {

/// Exhaustive odometer over edge assignments, maintaining every vertex sum
/// incrementally. Calls visit(values) with element indices for each flow.
template <class Visit>
std::uint64_t brute_force_scan(const SignedGraph& g, const Orientation& d, const AbelianGroup& group,
                               bool nowhere_zero, Budget budget, Visit&& visit) {
  const GroupTable table(group);
  const int k = table.order();
  const int m = g.edge_count();
  const int radix = nowhere_zero ? k - 1 : k;
  const int offset = nowhere_zero ? 1 : 0;
  if (m > 0 && radix == 0) return 0;
  require_budget(saturating_pow(static_cast<std::uint64_t>(radix), static_cast<std::uint64_t>(m)), budget,
                 "brute-force flow enumeration");

  struct Touch {
    Vertex v;
    int eta;
  };
  std::vector<std::vector<Touch>> touches(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) {
      if (int eta = incidence_coefficient(g, d, ed.u, e); eta != 0) touches[e].push_back({ed.u, eta});
    } else {
      touches[e].push_back({ed.u, d.at(e).at_u});
      touches[e].push_back({ed.v, d.at(e).at_v});
    }
  }

  std::vector<int> value(static_cast<std::size_t>(m), offset);
  std::vector<int> sum(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < m; ++e)
    for (const Touch& t : touches[e]) sum[t.v] = table.add(sum[t.v], table.scale(t.eta, value[e]));
  int nonzero = 0;
  for (int s : sum) nonzero += s != 0 ? 1 : 0;

  std::uint64_t found = 0;
  while (true) {
    if (nonzero == 0) {
      ++found;
      visit(value);
    }
    int e = 0;
    for (; e < m; ++e) {
      const int old = value[e];
      int next = old + 1;
      if (next == offset + radix) next = offset;
      value[e] = next;
      for (const Touch& t : touches[e]) {
        const int before = sum[t.v];
        int s = table.add(before, table.scale(-t.eta, old));
        s = table.add(s, table.scale(t.eta, next));
        sum[t.v] = s;
        nonzero += (s != 0 ? 1 : 0) - (before != 0 ? 1 : 0);
      }
      if (next != offset) break;
    }
    if (e == m) break;
  }
  return found;
}

}  // namespace detail

/// Independent oracle: tries every edge assignment under orientation d and
/// keeps those satisfying conservation. Makes no use of fundamental circuits.
inline std::vector<FlowVector> brute_force_flows(const SignedGraph& g, const Orientation& d, const AbelianGroup& group,
                                                 bool nowhere_zero, Budget budget = kDefaultFlowBudget) {
  const std::vector<GroupElement> elements = group.elements();
  std::vector<FlowVector> out;
  detail::brute_force_scan(g, d, group, nowhere_zero, budget, [&](const std::vector<int>& idx) {
    FlowVector f;
    f.values.reserve(idx.size());
    for (int i : idx) f.values.push_back(elements[static_cast<std::size_t>(i)]);
    out.push_back(std::move(f));
  });
  return out;
}

inline std::vector<FlowVector> brute_force_flows(const SignedGraph& g, const AbelianGroup& group, bool nowhere_zero,
                                                 Budget budget = kDefaultFlowBudget) {
  return brute_force_flows(g, default_orientation(g), group, nowhere_zero, budget);
}

inline std::uint64_t brute_force_count(const SignedGraph& g, const Orientation& d, const AbelianGroup& group,
                                       bool nowhere_zero, Budget budget = kDefaultFlowBudget) {
  return detail::brute_force_scan(g, d, group, nowhere_zero, budget, [](const std::vector<int>&) {});
}

inline std::uint64_t brute_force_count(const SignedGraph& g, const AbelianGroup& group, bool nowhere_zero,
                                       Budget budget = kDefaultFlowBudget) {
  return brute_force_count(g, default_orientation(g), group, nowhere_zero, budget);
}

/// Number of (not necessarily nowhere-zero) flows: 2^(kappa * epsilon) k^beta.
inline BigInt total_flow_count(const SignedGraph& g, const AbelianGroup& group) {
  const BalanceSummary s = summarize(g, g.all_edges());
  BigInt count = 1;
  for (int i = 0; i < s.kappa() * group.epsilon(); ++i) count *= 2;
  for (int i = 0; i < s.beta(); ++i) count *= group.order();
  return count;
}

/// All flows of an arbitrary graph under default_orientation(g), built from a
/// fundamental system per component.
inline std::vector<FlowVector> enumerate_all_flows(const SignedGraph& g, const AbelianGroup& group,
                                                   bool nowhere_zero = false, Budget budget = kDefaultFlowBudget) {
  std::uint64_t total = 1;
  std::vector<Subgraph> parts;
  std::vector<FundamentalSystem> systems;
  for (const Component& c : components(g)) {
    parts.push_back(induced_subgraph(g, c));
    systems.push_back(build_flow_basis(parts.back().graph));
    total = detail::saturating_mul(total, detail::basis_flow_count(systems.back(), group));
  }
  detail::require_budget(total, budget, "flow enumeration");

  // Halves of each edge under its component's default orientation.
  std::vector<EdgeOrientation> halves(static_cast<std::size_t>(g.edge_count()));
  std::vector<std::vector<FlowVector>> local;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Orientation od = default_orientation(parts[i].graph);
    for (std::size_t j = 0; j < parts[i].edge_map.size(); ++j)
      halves[parts[i].edge_map[j]] = od.at(static_cast<EdgeId>(j));
    std::vector<FlowVector> fl;
    for (const FlowVector& f : enumerate_flows(systems[i], group, budget)) {
      FlowVector o = to_original_frame(systems[i], group, f);
      bool keep = true;
      if (nowhere_zero)
        for (const GroupElement& x : o.values) keep = keep && !group.is_zero(x);
      if (keep) fl.push_back(std::move(o));
    }
    local.push_back(std::move(fl));
  }
  const Orientation assembled(g, std::move(halves));
  const Orientation target = default_orientation(g);

  std::vector<FlowVector> out;
  FlowVector cur{std::vector<GroupElement>(static_cast<std::size_t>(g.edge_count()), group.zero())};
  auto rec = [&](auto&& self, std::size_t part) -> void {
    if (part == parts.size()) {
      out.push_back(reorient(group, cur, assembled, target));
      return;
    }
    for (const FlowVector& f : local[part]) {
      for (std::size_t j = 0; j < parts[part].edge_map.size(); ++j) cur.values[parts[part].edge_map[j]] = f.values[j];
      self(self, part + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace sgflow
