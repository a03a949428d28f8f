#pragma once

#include <cstdint>
#include <vector>

#include "sgflow/detail/parity_union_find.hpp"
#include "sgflow/error.hpp"
#include "sgflow/polynomial.hpp"
#include "sgflow/signed_graph.hpp"

namespace sgflow {

enum class ExpansionMode {
  incremental,  // depth-first over edges with an undoable union-find
  naive,        // recompute components from scratch for every subset
};

namespace detail {

/// signed_count[beta][kappa] = sum of (-1)^|F| over F with beta(G-F), kappa(G-F).
class SubsetTally {
 public:
  SubsetTally(int m, int n) : n_(n), counts_(static_cast<std::size_t>(m + 1) * (n + 1), 0) {}

  void add(int beta, int kappa, bool odd) { counts_[static_cast<std::size_t>(beta) * (n_ + 1) + kappa] += odd ? -1 : 1; }

  IntPolynomial polynomial(int d) const {
    const int rows = static_cast<int>(counts_.size()) / (n_ + 1);
    std::vector<BigInt> coeffs(static_cast<std::size_t>(rows));
    for (int b = 0; b < rows; ++b)
      for (int k = 0; k <= n_; ++k) {
        const std::int64_t c = counts_[static_cast<std::size_t>(b) * (n_ + 1) + k];
        if (c != 0) coeffs[b] += BigInt(c) << (k * d);
      }
    return IntPolynomial(std::move(coeffs));
  }

 private:
  int n_;
  std::vector<std::int64_t> counts_;
};

inline void expand_incremental(const SignedGraph& g, SubsetTally& tally) {
  const int m = g.edge_count();
  const int n = g.vertex_count();
  ParityUnionFind uf(n);
  auto rec = [&](auto&& self, int e, int deleted) -> void {
    if (e == m) {
      const int kept = m - deleted;
      tally.add(kept - n + uf.components() - uf.unbalanced_components(), uf.unbalanced_components(),
                (deleted & 1) != 0);
      return;
    }
    self(self, e + 1, deleted + 1);
    const std::size_t mark = uf.checkpoint();
    const Edge& ed = g.edge(e);
    uf.add_edge(ed.u, ed.v, ed.is_negative());
    self(self, e + 1, deleted);
    uf.rollback(mark);
  };
  rec(rec, 0, 0);
}

inline void expand_naive(const SignedGraph& g, SubsetTally& tally) {
  const int m = g.edge_count();
  const EdgeSet all = g.all_edges();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const EdgeSet removed(mask);
    const BalanceSummary s = summarize(g, all - removed);
    tally.add(s.beta(), s.kappa(), (removed.size() & 1) != 0);
  }
}

}  // namespace detail

/// F_d(G, x) = sum over F of (-1)^|F| 2^(kappa(G-F) d) x^beta(G-F).
inline IntPolynomial fd_polynomial(const SignedGraph& g, int d, Budget budget = kDefaultSubsetBudget,
                                   ExpansionMode mode = ExpansionMode::incremental) {
  if (d < 0) throw Error(ErrorCode::invalid_argument, "d must be non-negative");
  const int m = g.edge_count();
  detail::require_budget(m >= 64 ? ~std::uint64_t{0} : std::uint64_t{1} << m, budget, "subset expansion");
  detail::SubsetTally tally(m, g.vertex_count());
  if (mode == ExpansionMode::incremental) detail::expand_incremental(g, tally);
  else detail::expand_naive(g, tally);
  return tally.polynomial(d);
}

inline BigInt evaluate(const IntPolynomial& p, const BigInt& x) { return p.evaluate(x); }

/// True when F_d(G, x) is not the zero polynomial.
inline bool is_admissible(const SignedGraph& g, int d, Budget budget = kDefaultSubsetBudget) {
  return !fd_polynomial(g, d, budget).is_zero();
}

}  // namespace sgflow
