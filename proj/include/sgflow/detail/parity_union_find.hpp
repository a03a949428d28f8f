#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sgflow::detail {

/// Union-find over vertices that also tracks, per component, whether the
/// signed edges seen so far admit a consistent vertex-sign assignment.
/// No path compression, so every operation can be undone with rollback().
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n)
      : parent_(n), rank_(n, 0), parity_(n, 0), unbalanced_(n, 0), components_(n) {
    for (int v = 0; v < n; ++v) parent_[v] = v;
  }

  int components() const noexcept { return components_; }
  int unbalanced_components() const noexcept { return unbalanced_count_; }
  int edges() const noexcept { return edges_; }

  /// Root of v and the parity of v relative to it.
  std::pair<int, int> find(int v) const noexcept {
    int p = 0;
    while (parent_[v] != v) {
      p ^= parity_[v];
      v = parent_[v];
    }
    return {v, p};
  }

  bool same_component(int u, int v) const noexcept { return find(u).first == find(v).first; }
  bool component_unbalanced(int v) const noexcept { return unbalanced_[find(v).first] != 0; }

  /// Adds edge uv; `negative` is its sign.
  void add_edge(int u, int v, bool negative) {
    auto [ru, pu] = find(u);
    auto [rv, pv] = find(v);
    const int rel = pu ^ pv ^ (negative ? 1 : 0);
    Record rec{};
    rec.kind = Record::none;
    ++edges_;
    if (ru == rv) {
      if (rel != 0 && unbalanced_[ru] == 0) {
        unbalanced_[ru] = 1;
        ++unbalanced_count_;
        rec.kind = Record::mark;
        rec.child = ru;
      }
    } else {
      if (rank_[ru] < rank_[rv]) std::swap(ru, rv);
      rec.kind = Record::merge;
      rec.child = rv;
      rec.root = ru;
      rec.rank_bumped = rank_[ru] == rank_[rv];
      rec.root_was_unbalanced = unbalanced_[ru];
      parent_[rv] = ru;
      parity_[rv] = static_cast<std::uint8_t>(rel);
      if (rec.rank_bumped) ++rank_[ru];
      --components_;
      if (unbalanced_[ru] != 0 && unbalanced_[rv] != 0) --unbalanced_count_;
      unbalanced_[ru] = static_cast<std::uint8_t>(unbalanced_[ru] | unbalanced_[rv]);
    }
    history_.push_back(rec);
  }

  std::size_t checkpoint() const noexcept { return history_.size(); }

  void rollback(std::size_t to) {
    while (history_.size() > to) {
      const Record rec = history_.back();
      history_.pop_back();
      --edges_;
      if (rec.kind == Record::mark) {
        unbalanced_[rec.child] = 0;
        --unbalanced_count_;
      } else if (rec.kind == Record::merge) {
        const int ru = rec.root;
        const int rv = rec.child;
        if (rec.root_was_unbalanced != 0 && unbalanced_[rv] != 0) ++unbalanced_count_;
        unbalanced_[ru] = rec.root_was_unbalanced;
        if (rec.rank_bumped) --rank_[ru];
        parent_[rv] = rv;
        parity_[rv] = 0;
        ++components_;
      }
    }
  }

 private:
  struct Record {
    enum Kind : std::uint8_t { none, mark, merge } kind;
    bool rank_bumped;
    std::uint8_t root_was_unbalanced;
    int child;
    int root;
  };

  std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<std::uint8_t> parity_;
  std::vector<std::uint8_t> unbalanced_;
  std::vector<Record> history_;
  int components_;
  int unbalanced_count_ = 0;
  int edges_ = 0;
};

}  // namespace sgflow::detail
