#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace sgflow {

using Vertex = int;
using EdgeId = int;

/// Graphs are capped at this many edges so that edge subsets fit one machine word.
inline constexpr int kMaxEdges = 64;

/// A set of edge ids in [0, 64), stored as a bitmask.
class EdgeSet {
 public:
  constexpr EdgeSet() = default;
  constexpr explicit EdgeSet(std::uint64_t mask) : mask_(mask) {}

  static EdgeSet all(int m) {
    return EdgeSet(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }
  static EdgeSet of(std::initializer_list<EdgeId> ids) {
    EdgeSet s;
    for (EdgeId e : ids) s.insert(e);
    return s;
  }

  constexpr std::uint64_t mask() const noexcept { return mask_; }
  constexpr bool contains(EdgeId e) const noexcept { return (mask_ >> e) & 1U; }
  constexpr void insert(EdgeId e) noexcept { mask_ |= std::uint64_t{1} << e; }
  constexpr void erase(EdgeId e) noexcept { mask_ &= ~(std::uint64_t{1} << e); }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept { return std::popcount(mask_); }

  constexpr bool is_subset_of(EdgeSet other) const noexcept { return (mask_ & ~other.mask_) == 0; }

  std::vector<EdgeId> ids() const {
    std::vector<EdgeId> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend constexpr EdgeSet operator|(EdgeSet a, EdgeSet b) noexcept { return EdgeSet(a.mask_ | b.mask_); }
  friend constexpr EdgeSet operator&(EdgeSet a, EdgeSet b) noexcept { return EdgeSet(a.mask_ & b.mask_); }
  friend constexpr EdgeSet operator-(EdgeSet a, EdgeSet b) noexcept { return EdgeSet(a.mask_ & ~b.mask_); }
  friend constexpr EdgeSet operator^(EdgeSet a, EdgeSet b) noexcept { return EdgeSet(a.mask_ ^ b.mask_); }
  friend constexpr bool operator==(EdgeSet, EdgeSet) = default;
  friend constexpr auto operator<=>(EdgeSet, EdgeSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

}  // namespace sgflow
