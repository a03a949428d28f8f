#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace sgflow {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial in x with exact integer coefficients, lowest degree first.
/// Trailing zero coefficients are never stored; the zero polynomial is empty.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static IntPolynomial constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }
  static IntPolynomial monomial(const BigInt& c, int degree) {
    std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return IntPolynomial(std::move(v));
  }

  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  BigInt coefficient(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(degree)];
  }

  BigInt leading_coefficient() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

  /// Horner evaluation.
  BigInt evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return IntPolynomial(std::move(r));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] -= b.coeffs_[i];
    return IntPolynomial(std::move(r));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(r));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Human-readable form such as "x^2 - 3x + 2".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
      BigInt c = coeffs_[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      const bool negative = c < 0;
      if (negative) c = -c;
      if (out.empty()) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      if (c != 1 || d == 0) out += c.str();
      if (d >= 1) out += "x";
      if (d >= 2) out += "^" + std::to_string(d);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

}  // namespace sgflow
