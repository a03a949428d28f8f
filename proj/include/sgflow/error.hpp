#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sgflow {

enum class ErrorCode {
  invalid_group,
  group_mismatch,
  parse_error,
  invalid_argument,
  resource_budget,
  balanced_graph,
  disconnected_graph,
  not_a_tree,
  internal,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_group: return "invalid_group";
    case ErrorCode::group_mismatch: return "group_mismatch";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::resource_budget: return "resource_budget";
    case ErrorCode::balanced_graph: return "balanced_graph";
    case ErrorCode::disconnected_graph: return "disconnected_graph";
    case ErrorCode::not_a_tree: return "not_a_tree";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

/// Every failure raised by the library. `line()` is set for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<int> line = std::nullopt)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<int> line_;
};

/// Cap on the number of candidates an exponential enumeration may visit.
struct Budget {
  std::uint64_t max_candidates;
};

inline constexpr Budget kDefaultFlowBudget{10'000'000};
inline constexpr Budget kDefaultSubsetBudget{std::uint64_t{1} << 30};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

inline void require_budget(std::uint64_t candidates, Budget budget, std::string_view what) {
  if (candidates > budget.max_candidates)
    throw Error(ErrorCode::resource_budget,
                std::string(what) + ": " + std::to_string(candidates) +
                    " candidates exceed the budget of " + std::to_string(budget.max_candidates));
}

}  // namespace detail
}  // namespace sgflow
