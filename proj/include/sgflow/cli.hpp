#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sgflow/bonds.hpp"
#include "sgflow/circuits.hpp"
#include "sgflow/flow_polynomial.hpp"
#include "sgflow/flows.hpp"
#include "sgflow/group.hpp"
#include "sgflow/signed_graph.hpp"
#include "sgflow/verify.hpp"

namespace sgflow::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

/// Reported when the input file cannot be read.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

inline Json to_json(const IntPolynomial& p) {
  Json arr = Json::array();
  for (const BigInt& c : p.coefficients()) arr.push_back(to_json(c));
  return arr;
}

inline Json to_json(EdgeSet s) { return Json(s.ids()); }

inline Json to_json(const GroupElement& g) { return Json(g.residues); }

inline SignedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

inline EdgeOrder parse_order(const std::string& text, int m) {
  if (text.empty()) return EdgeOrder::identity(m);
  std::vector<EdgeId> ids;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      ids.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, "bad edge id '" + tok + "' in --order");
    }
  }
  if (static_cast<int>(ids.size()) != m) throw Error(ErrorCode::invalid_argument, "--order must list every edge id once");
  return EdgeOrder(std::move(ids));
}

inline Json error_json(std::string_view code, const std::string& message, std::optional<int> line = std::nullopt) {
  Json err{{"code", code}, {"message", message}};
  if (line) err["line"] = *line;
  return Json{{"error", err}};
}

}  // namespace detail

/// Runs one command. `args` excludes the program name. JSON goes to `out`,
/// usage text to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flows, flow polynomials and broken bonds of signed graphs", "sgflow"};
  app.require_subcommand(1);
  std::uint64_t subset_budget = kDefaultSubsetBudget.max_candidates;
  std::uint64_t flow_budget = kDefaultFlowBudget.max_candidates;
  app.add_option("--budget", subset_budget, "Maximum subsets visited by subset enumerations");
  app.add_option("--flow-budget", flow_budget, "Maximum assignments visited by flow enumerations");

  std::string file;
  std::string order_text;
  int d = 0;
  std::string mode = "incremental";
  std::string method = "broken";
  std::string group_spec;
  bool nowhere_zero = false;
  bool list = false;
  bool count = false;
  bool broken = false;
  std::string tree_file;
  int girth = 1;

  auto* info = app.add_subcommand("info", "Vertex and edge counts, beta, kappa and balance");
  info->add_option("file", file, "Graph file")->required();

  auto* poly = app.add_subcommand("poly", "Flow polynomial F_d by subset expansion");
  poly->add_option("--d", d, "Number of Z_2 factors (epsilon of the group)")->required()->check(CLI::NonNegativeNumber);
  poly->add_option("--mode", mode, "Expansion mode")->check(CLI::IsMember({"incremental", "naive"}));
  poly->add_option("file", file, "Graph file")->required();

  auto* f0 = app.add_subcommand("f0", "F_0 by broken bonds or by subset expansion");
  f0->add_option("--method", method, "broken or subset")->check(CLI::IsMember({"broken", "subset"}));
  f0->add_option("--order", order_text, "Edge ids in ascending order, comma separated");
  f0->add_option("file", file, "Graph file")->required();

  auto* flows = app.add_subcommand("flows", "Count or list group flows");
  flows->add_option("--group", group_spec, "Cyclic orders, e.g. 2,4")->required();
  flows->add_flag("--nowhere-zero", nowhere_zero, "Only nowhere-zero flows");
  auto* count_flag = flows->add_flag("--count", count, "Print the number of flows (default)");
  flows->add_flag("--list", list, "Print every flow")->excludes(count_flag);
  flows->add_option("--method", method, "basis or brute")->check(CLI::IsMember({"basis", "brute"}));
  flows->add_option("file", file, "Graph file")->required();

  auto* bonds = app.add_subcommand("bonds", "Bonds or broken bonds as edge-id sets");
  bonds->add_flag("--broken", broken, "Print broken bonds");
  bonds->add_option("--order", order_text, "Edge ids in ascending order, comma separated");
  bonds->add_option("file", file, "Graph file")->required();

  auto* complex = app.add_subcommand("complex", "f-vector and homogeneity of the broken-bond-free complex");
  complex->add_option("--order", order_text, "Edge ids in ascending order, comma separated");
  complex->add_option("file", file, "Graph file")->required();

  auto* circuits = app.add_subcommand("circuits", "Signed rooted tree and fundamental circuit vectors");
  circuits->add_option("file", file, "Graph file")->required();

  auto* gt = app.add_subcommand("gt", "Replace the leaves of a tree by unbalanced circuits");
  gt->add_option("--tree", tree_file, "Tree in graph-file format (signs ignored)")->required();
  gt->add_option("--girth", girth, "Length of each leaf circuit")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Cross-check all closed forms against enumeration");
  verify->add_option("--order", order_text, "Edge ids in ascending order, comma separated");
  verify->add_option("file", file, "Graph file")->required();

  auto emit = [&](const Json& j) { out << j.dump() << '\n'; };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    emit(detail::error_json("usage", e.what()));
    return kExitUsage;
  }

  const Budget sb{subset_budget};
  const Budget fb{flow_budget};
  try {
    if (*info) {
      const SignedGraph g = detail::load_graph(file);
      emit(Json{{"n", g.vertex_count()},
                {"m", g.edge_count()},
                {"beta", beta(g)},
                {"kappa", kappa(g)},
                {"balanced", is_balanced(g)}});
    } else if (*poly) {
      const SignedGraph g = detail::load_graph(file);
      const auto m = mode == "naive" ? ExpansionMode::naive : ExpansionMode::incremental;
      emit(Json{{"d", d}, {"coeffs", detail::to_json(fd_polynomial(g, d, sb, m))}});
    } else if (*f0) {
      const SignedGraph g = detail::load_graph(file);
      const EdgeOrder order = detail::parse_order(order_text, g.edge_count());
      if (method == "basis" || method == "brute") throw Error(ErrorCode::invalid_argument, "method must be broken or subset");
      const IntPolynomial p = method == "subset" ? fd_polynomial(g, 0, sb) : f0_broken(g, order, sb);
      emit(Json{{"method", method}, {"coeffs", detail::to_json(p)}});
    } else if (*flows) {
      const SignedGraph g = detail::load_graph(file);
      const AbelianGroup group = parse_group_spec(group_spec);
      std::vector<FlowVector> found;
      if (method == "brute") {
        found = brute_force_flows(g, group, nowhere_zero, fb);
      } else {
        found = enumerate_all_flows(g, group, nowhere_zero, fb);
      }
      std::sort(found.begin(), found.end());
      if (list) {
        Json arr = Json::array();
        for (const FlowVector& f : found) {
          Json row = Json::array();
          for (const GroupElement& x : f.values) row.push_back(detail::to_json(x));
          arr.push_back(std::move(row));
        }
        emit(arr);
      } else {
        emit(Json{{"group", group.cyclic_orders()}, {"nowhere_zero", nowhere_zero}, {"count", found.size()}});
      }
    } else if (*bonds) {
      const SignedGraph g = detail::load_graph(file);
      const EdgeOrder order = detail::parse_order(order_text, g.edge_count());
      Json arr = Json::array();
      if (broken) {
        for (EdgeSet s : broken_bonds(g, order, sb)) arr.push_back(detail::to_json(s));
      } else {
        for (const Bond& b : enumerate_bonds(g, sb)) arr.push_back(detail::to_json(b.edges));
      }
      emit(arr);
    } else if (*complex) {
      const SignedGraph g = detail::load_graph(file);
      const EdgeOrder order = detail::parse_order(order_text, g.edge_count());
      const HomogeneityReport r = check_homogeneous(g, order, sb);
      Json maximal = Json::array();
      for (EdgeSet s : r.maximal) maximal.push_back(detail::to_json(s));
      Json j{{"fvector", r.fvector.a}, {"top_dimension", r.top_dimension}, {"applicable", r.applicable}};
      if (r.applicable) {
        j["homogeneous"] = r.homogeneous;
        j["characterization"] = r.characterization_holds;
        j["maximal"] = maximal;
      } else {
        j["reason"] = r.reason;
      }
      emit(j);
    } else if (*circuits) {
      const SignedGraph g = detail::load_graph(file);
      const FundamentalSystem fs = build_flow_basis(g);
      std::string signs;
      for (const Edge& e : fs.graph.edges()) signs += to_char(e.sign);
      Json list_json = Json::array();
      for (const FundamentalCircuit& c : fs.circuits) {
        list_json.push_back(Json{{"edge", c.edge},
                                 {"kind", c.kind == CircuitKind::barbell ? "barbell" : "balanced_circuit"},
                                 {"edges", detail::to_json(c.edges)},
                                 {"barbell_path", detail::to_json(c.barbell_path)},
                                 {"vector", c.vector.values}});
      }
      Json j{{"switching", fs.switching}, {"signs", signs}, {"tree", detail::to_json(fs.tree)}};
      j["root_edge"] = fs.root_edge ? Json(*fs.root_edge) : Json(nullptr);
      j["root_circuit"] = detail::to_json(fs.root_circuit);
      j["root_vector"] = fs.root_vector.values;
      j["circuits"] = list_json;
      j["verified"] = verify_circuit_vectors(fs).pass();
      emit(j);
    } else if (*gt) {
      const SignedGraph tree = detail::load_graph(tree_file);
      const GtGraph built = build_gt(tree, girth);
      const IntPolynomial formula = gt_formula(tree);
      const IntPolynomial by_bonds = f0_broken(built.graph, built.order, sb);
      const IntPolynomial by_subsets = fd_polynomial(built.graph, 0, sb);
      emit(Json{{"graph", format_graph(built.graph)},
                {"formula", detail::to_json(formula)},
                {"f0_broken", detail::to_json(by_bonds)},
                {"f0_subset", detail::to_json(by_subsets)},
                {"agree", formula == by_bonds && by_bonds == by_subsets}});
    } else if (*verify) {
      const SignedGraph g = detail::load_graph(file);
      const EdgeOrder order = detail::parse_order(order_text, g.edge_count());
      const VerifyReport r = verify_graph(g, order, VerifyOptions{fb, sb});
      Json checks = Json::array();
      for (const CheckResult& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
      emit(Json{{"checks", checks}, {"complete", r.complete}, {"all_pass", r.all_pass()}});
    }
  } catch (const detail::FileError& e) {
    emit(detail::error_json("file_not_found", e.what()));
    return kExitDomainError;
  } catch (const Error& e) {
    emit(detail::error_json(to_string(e.code()), e.what(), e.line()));
    return kExitDomainError;
  } catch (const std::exception& e) {
    emit(detail::error_json("internal", e.what()));
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace sgflow::cli
