#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sgflow/error.hpp"

namespace sgflow {

/// An element of Z_{n_1} x ... x Z_{n_r}; residues[i] lies in [0, n_i).
struct GroupElement {
  std::vector<std::int64_t> residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Finite abelian group presented as a product of cyclic groups.
///
/// Presentations are not canonicalised: Z_6 and Z_2 x Z_3 are distinct objects
/// whose elements are not comparable, but every count computed downstream
/// depends only on the order and on epsilon().
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::int64_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    if (orders_.empty()) throw Error(ErrorCode::invalid_group, "group needs at least one cyclic factor");
    order_ = 1;
    for (std::int64_t n : orders_) {
      if (n < 1) throw Error(ErrorCode::invalid_group, "cyclic order must be >= 1, got " + std::to_string(n));
      if (order_ > (std::int64_t{1} << 62) / n) throw Error(ErrorCode::invalid_group, "group order overflows");
      order_ *= n;
    }
  }

  const std::vector<std::int64_t>& cyclic_orders() const noexcept { return orders_; }
  std::int64_t order() const noexcept { return order_; }

  /// Largest d with Z_2^d a subgroup: the number of even cyclic factors.
  int epsilon() const noexcept {
    int d = 0;
    for (std::int64_t n : orders_) d += (n % 2 == 0) ? 1 : 0;
    return d;
  }

  GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(orders_.size(), 0)}; }

  GroupElement element(std::vector<std::int64_t> residues) const {
    GroupElement g{std::move(residues)};
    check(g);
    return g;
  }

  bool contains(const GroupElement& g) const noexcept {
    if (g.residues.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < orders_.size(); ++i)
      if (g.residues[i] < 0 || g.residues[i] >= orders_[i]) return false;
    return true;
  }

  GroupElement add(const GroupElement& g, const GroupElement& h) const {
    check(g);
    check(h);
    GroupElement r = g;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      r.residues[i] += h.residues[i];
      if (r.residues[i] >= orders_[i]) r.residues[i] -= orders_[i];
    }
    return r;
  }

  GroupElement neg(const GroupElement& g) const {
    check(g);
    GroupElement r = g;
    for (std::size_t i = 0; i < orders_.size(); ++i)
      r.residues[i] = r.residues[i] == 0 ? 0 : orders_[i] - r.residues[i];
    return r;
  }

  GroupElement sub(const GroupElement& g, const GroupElement& h) const { return add(g, neg(h)); }

  /// g added to itself c times (negated for c < 0).
  GroupElement scale(std::int64_t c, const GroupElement& g) const {
    check(g);
    GroupElement r = g;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::int64_t n = orders_[i];
      const std::int64_t cm = ((c % n) + n) % n;
      r.residues[i] = static_cast<std::int64_t>((static_cast<__int128>(cm) * g.residues[i]) % n);
    }
    return r;
  }

  bool is_zero(const GroupElement& g) const {
    check(g);
    for (std::int64_t r : g.residues)
      if (r != 0) return false;
    return true;
  }

  /// Mixed-radix rank of an element, first factor least significant.
  std::int64_t index_of(const GroupElement& g) const {
    check(g);
    std::int64_t idx = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) idx = idx * orders_[i] + g.residues[i];
    return idx;
  }

  GroupElement element_at(std::int64_t index) const {
    if (index < 0 || index >= order_) throw Error(ErrorCode::invalid_argument, "element index out of range");
    GroupElement g = zero();
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      g.residues[i] = index % orders_[i];
      index /= orders_[i];
    }
    return g;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (std::int64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
    return out;
  }

  /// The elements t with 2t = 0, zero included. There are 2^epsilon() of them,
  /// returned in increasing index order.
  std::vector<GroupElement> involutions() const {
    std::vector<GroupElement> out{zero()};
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (orders_[i] % 2 != 0) continue;
      const std::size_t existing = out.size();
      for (std::size_t j = 0; j < existing; ++j) {
        GroupElement t = out[j];
        t.residues[i] = orders_[i] / 2;
        out.push_back(std::move(t));
      }
    }
    std::sort(out.begin(), out.end(), [this](const GroupElement& a, const GroupElement& b) {
      return index_of(a) < index_of(b);
    });
    return out;
  }

  bool is_involution(const GroupElement& g) const { return is_zero(scale(2, g)); }

  /// All x with 2x = 2*gamma, i.e. gamma shifted by every involution.
  std::vector<GroupElement> double_solutions(const GroupElement& gamma) const {
    std::vector<GroupElement> out;
    for (const GroupElement& t : involutions()) out.push_back(add(gamma, t));
    std::sort(out.begin(), out.end(), [this](const GroupElement& a, const GroupElement& b) {
      return index_of(a) < index_of(b);
    });
    return out;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.orders_ == b.orders_; }

 private:
  void check(const GroupElement& g) const {
    if (!contains(g)) throw Error(ErrorCode::group_mismatch, "element does not belong to this group presentation");
  }

  std::vector<std::int64_t> orders_;
  std::int64_t order_ = 1;
};

inline AbelianGroup make_group(std::vector<std::int64_t> cyclic_orders) {
  return AbelianGroup(std::move(cyclic_orders));
}

/// Parses "2,4" into Z_2 x Z_4.
inline AbelianGroup parse_group_spec(std::string_view text) {
  std::vector<std::int64_t> orders;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t n = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw Error(ErrorCode::invalid_group, "bad group spec '" + std::string(text) + "'");
    orders.push_back(n);
    pos = comma + 1;
  }
  return AbelianGroup(std::move(orders));
}

/// Index-based arithmetic tables for a small group, used by the exhaustive
/// enumerators. Elements are identified with AbelianGroup::index_of.
class GroupTable {
 public:
  static constexpr std::int64_t kMaxOrder = 4096;

  explicit GroupTable(const AbelianGroup& group) : k_(static_cast<int>(group.order())) {
    if (group.order() > kMaxOrder)
      throw Error(ErrorCode::resource_budget, "group too large for tabulated arithmetic");
    const auto elems = group.elements();
    add_.resize(static_cast<std::size_t>(k_) * k_);
    for (int a = 0; a < k_; ++a)
      for (int b = 0; b < k_; ++b)
        add_[idx(a, b)] = static_cast<int>(group.index_of(group.add(elems[a], elems[b])));
    for (int c = -2; c <= 2; ++c) {
      auto& row = scale_[c + 2];
      row.resize(k_);
      for (int a = 0; a < k_; ++a) row[a] = static_cast<int>(group.index_of(group.scale(c, elems[a])));
    }
  }

  int order() const noexcept { return k_; }
  int add(int a, int b) const noexcept { return add_[idx(a, b)]; }
  /// c * a for c in [-2, 2].
  int scale(int c, int a) const noexcept { return scale_[c + 2][a]; }

 private:
  std::size_t idx(int a, int b) const noexcept { return static_cast<std::size_t>(a) * k_ + b; }

  int k_;
  std::vector<int> add_;
  std::vector<int> scale_[5];
};

}  // namespace sgflow
