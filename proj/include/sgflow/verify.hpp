#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "sgflow/bonds.hpp"
#include "sgflow/circuits.hpp"
#include "sgflow/flow_polynomial.hpp"
#include "sgflow/flows.hpp"
#include "sgflow/group.hpp"
#include "sgflow/signed_graph.hpp"

namespace sgflow {

enum class CheckStatus { pass, fail, skipped };

constexpr std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool complete = true;  // false when a check was skipped for budget reasons

  bool all_pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::fail; });
  }
};

inline std::vector<AbelianGroup> verification_groups() {
  return {make_group({3}), make_group({4}), make_group({5}), make_group({2, 2}), make_group({6}), make_group({2, 4})};
}

inline std::string group_label(const AbelianGroup& group) {
  std::string s;
  for (std::int64_t n : group.cyclic_orders()) s += (s.empty() ? "Z" : "xZ") + std::to_string(n);
  return s;
}

struct VerifyOptions {
  Budget flow_budget = kDefaultFlowBudget;
  Budget subset_budget = kDefaultSubsetBudget;
};

/// Cross-checks every closed form and structural statement available for
/// `g` against exhaustive enumeration.
inline VerifyReport verify_graph(const SignedGraph& g, const EdgeOrder& order, VerifyOptions options = {}) {
  require_order(g, order);
  VerifyReport report;
  auto run = [&](const std::string& name, const std::function<std::pair<CheckStatus, std::string>()>& body) {
    try {
      auto [status, detail] = body();
      report.checks.push_back({name, status, detail});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::resource_budget) throw;
      report.complete = false;
      report.checks.push_back({name, CheckStatus::skipped, e.what()});
    }
  };
  auto verdict = [](bool ok, std::string detail = {}) {
    return std::pair{ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
  };
  const int m = g.edge_count();
  const int n = g.vertex_count();

  run("circuit_vectors", [&] {
    for (const Component& c : components(g)) {
      const Subgraph sub = induced_subgraph(g, c);
      if (is_balanced(sub.graph)) continue;
      const FundamentalSystem fs = build_fundamental_system(sub.graph);
      if (const CircuitReport r = verify_circuit_vectors(fs); !r.pass())
        return verdict(false, r.violations.front().vector + " violates conservation at vertex " +
                                  std::to_string(sub.vertex_map[r.violations.front().vertex]));
    }
    return verdict(true);
  });

  for (const AbelianGroup& group : verification_groups()) {
    const std::string label = group_label(group);
    run("nowhere_zero_count[" + label + "]", [&] {
      const BigInt poly = evaluate(fd_polynomial(g, group.epsilon(), options.subset_budget), group.order());
      const std::uint64_t brute = brute_force_count(g, group, true, options.flow_budget);
      return verdict(poly == brute, "polynomial " + poly.str() + ", enumeration " + std::to_string(brute));
    });
    run("total_flow_count[" + label + "]", [&] {
      const BigInt closed = total_flow_count(g, group);
      const std::uint64_t brute = brute_force_count(g, group, false, options.flow_budget);
      return verdict(closed == brute, "closed form " + closed.str() + ", enumeration " + std::to_string(brute));
    });
    run("flow_basis[" + label + "]", [&] {
      std::vector<FlowVector> generated = enumerate_all_flows(g, group, false, options.flow_budget);
      std::vector<FlowVector> brute = brute_force_flows(g, group, false, options.flow_budget);
      std::sort(generated.begin(), generated.end());
      const bool distinct = std::adjacent_find(generated.begin(), generated.end()) == generated.end();
      std::sort(brute.begin(), brute.end());
      if (!distinct) return verdict(false, "generated flows are not pairwise distinct");
      if (generated != brute) return verdict(false, "generated flow set differs from enumeration");
      for (const Component& c : components(g)) {
        const Subgraph sub = induced_subgraph(g, c);
        if (is_balanced(sub.graph)) continue;
        const FundamentalSystem fs = build_fundamental_system(sub.graph);
        const BigInt expected = boost::multiprecision::pow(BigInt(group.order()),
                                                           static_cast<unsigned>(fs.cotree.size()));
        for (const FlowClass& cls : flow_classes(fs, group, options.flow_budget))
          if (BigInt(cls.flows.size()) != expected) return verdict(false, "uneven flow classes");
      }
      return verdict(true, std::to_string(brute.size()) + " flows");
    });
  }

  run("broken_bond_expansion", [&] {
    const IntPolynomial subset = fd_polynomial(g, 0, options.subset_budget);
    const IntPolynomial broken = f0_broken(g, order, options.subset_budget);
    return verdict(subset == broken, "subset " + subset.to_string() + ", broken bonds " + broken.to_string());
  });

  run("bond_routes_agree", [&] {
    std::vector<EdgeSet> a;
    std::vector<EdgeSet> b;
    for (const Bond& x : enumerate_bonds(g, options.subset_budget)) a.push_back(x.edges);
    for (const Bond& x : enumerate_bonds_by_cuts(g, options.subset_budget)) b.push_back(x.edges);
    return verdict(a == b, std::to_string(a.size()) + " bonds");
  });

  run("empty_broken_bond", [&] {
    const std::vector<EdgeSet> bb = broken_bonds(g, order, options.subset_budget);
    const bool empty_is_broken = !bb.empty() && bb.front().empty();
    if (!empty_is_broken) return std::pair{CheckStatus::skipped, std::string("empty set is not a broken bond")};
    const bool zero = fd_polynomial(g, 0, options.subset_budget).is_zero();
    const bool none3 = brute_force_count(g, make_group({3}), true, options.flow_budget) == 0;
    const bool none5 = brute_force_count(g, make_group({5}), true, options.flow_budget) == 0;
    return verdict(zero && none3 && none5, "F_0 must vanish and odd-order groups admit no nowhere-zero flow");
  });

  run("balanced_components_excluded", [&] {
    const PropositionReport r = proposition_check(g, order, options.subset_budget);
    if (r.vacuous) return std::pair{CheckStatus::skipped, std::string("graph is balanced")};
    return verdict(r.pass(), r.counterexample ? "counterexample found" : "");
  });

  const bool connected_unbalanced = is_connected(g) && !is_balanced(g);
  run("coefficient_interpretation", [&] {
    if (!connected_unbalanced) return std::pair{CheckStatus::skipped, std::string("needs a connected unbalanced graph")};
    const IntPolynomial f0 = fd_polynomial(g, 0, options.subset_budget);
    if (f0.is_zero()) return std::pair{CheckStatus::skipped, std::string("F_0 is identically zero")};
    const ComplexFVector fv = bb_free_fvector(g, order, options.subset_budget);
    const int top = m - n;
    bool ok = static_cast<int>(fv.a.size()) == top + 1 && fv.a[0] == 1 && f0.degree() == top;
    for (int i = 0; ok && i <= top; ++i) {
      const BigInt expected = (i % 2 == 0) ? BigInt(fv.a[i]) : BigInt(-BigInt(fv.a[i]));
      ok = fv.a[i] > 0 && f0.coefficient(top - i) == expected;
    }
    if (!ok) return verdict(false, "coefficients do not match broken-bond-free counts");
    const int s = sigma(g, order);
    if (top >= 1 && static_cast<std::int64_t>(fv.a[1]) != m - s)
      return verdict(false, "a_1 = " + std::to_string(fv.a[1]) + " but m - sigma = " + std::to_string(m - s));
    return verdict(true);
  });

  run("homogeneous_complex", [&] {
    const HomogeneityReport r = check_homogeneous(g, order, options.subset_budget);
    if (!r.applicable) return std::pair{CheckStatus::skipped, r.reason};
    return verdict(r.homogeneous && r.characterization_holds,
                   std::to_string(r.maximal.size()) + " maximal simplices");
  });

  return report;
}

}  // namespace sgflow
