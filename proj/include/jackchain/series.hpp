#pragma once

// Univariate polynomials and truncated power series over exact rationals.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace jackchain {

/// Dense univariate polynomial, coefficients low degree first, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const Rational& a) { return UPoly({a}); }
  /// (u - root)
  static UPoly linear_root(const Rational& root) { return UPoly({Rational(-root), Rational(1)}); }

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return UPoly(std::move(out));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return UPoly(std::move(out));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(out));
  }
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  Rational operator()(const Rational& u) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + *it;
    return acc;
  }

  /// p(u + shift)
  UPoly shifted(const Rational& shift) const {
    UPoly out;
    const UPoly lin({shift, Rational(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * lin + constant(*it);
    return out;
  }

  /// Divides by (u - root); returns the quotient and writes the remainder.
  UPoly divide_by_root(const Rational& root, Rational& remainder) const {
    if (c_.empty()) {
      remainder = 0;
      return UPoly();
    }
    std::vector<Rational> q(c_.size() - 1);
    Rational acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) {
      acc = acc * root + c_[k];
      if (k > 0) q[k - 1] = acc;
    }
    remainder = acc;
    return UPoly(std::move(q));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UPoly product_of_roots(const std::vector<Rational>& roots) {
  UPoly out = UPoly::constant(1);
  for (const auto& r : roots) out = out * UPoly::linear_root(r);
  return out;
}

/// Power series in w truncated at w^order (coefficients of w^0..w^{order-1} are exact).
/// Coefficients may be any ring type supporting +, -, * and construction from int.
template <class Coeff = Rational>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : c_(order, Coeff(0)) {}
  TruncatedSeries(std::vector<Coeff> coeffs, std::size_t order) : c_(std::move(coeffs)) {
    c_.resize(order, Coeff(0));
  }

  std::size_t order() const noexcept { return c_.size(); }
  const Coeff& operator[](std::size_t k) const { return c_.at(k); }
  Coeff& operator[](std::size_t k) { return c_.at(k); }
  const std::vector<Coeff>& coeffs() const noexcept { return c_; }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k < out.order(); ++k) out.c_[k] = a.c_[k] + b.c_[k];
    return out;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k < out.order(); ++k) out.c_[k] = a.c_[k] - b.c_[k];
    return out;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < out.order(); ++i)
      for (std::size_t j = 0; i + j < out.order(); ++j) out.c_[i + j] = out.c_[i + j] + a.c_[i] * b.c_[j];
    return out;
  }
  TruncatedSeries scaled(const Rational& s) const {
    TruncatedSeries out(order());
    for (std::size_t k = 0; k < order(); ++k) out.c_[k] = c_[k] * s;
    return out;
  }

  /// 1 / (1 + g) where g has zero constant term (requires c_[0] == 1).
  TruncatedSeries inverse_unit() const {
    if (!(c_.at(0) == Coeff(1))) throw std::domain_error("inverse_unit: constant term must be 1");
    TruncatedSeries out(order());
    out.c_[0] = Coeff(1);
    for (std::size_t k = 1; k < order(); ++k) {
      Coeff acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc = acc + c_[j] * out.c_[k - j];
      out.c_[k] = Coeff(0) - acc;
    }
    return out;
  }

  /// log(1 + g) for constant term 1, via w d/dw log f = w f' / f.
  TruncatedSeries log_unit() const {
    if (!(c_.at(0) == Coeff(1))) throw std::domain_error("log_unit: constant term must be 1");
    TruncatedSeries deriv(order());
    for (std::size_t k = 1; k < order(); ++k) deriv.c_[k] = c_[k] * Rational(static_cast<long>(k));
    const TruncatedSeries q = deriv * inverse_unit();
    TruncatedSeries out(order());
    for (std::size_t k = 1; k < order(); ++k) out.c_[k] = q.c_[k] * (Rational(1) / Rational(static_cast<long>(k)));
    return out;
  }

  /// exp(g) for g with zero constant term, via f' = g' f.
  TruncatedSeries exp_nilpotent() const {
    if (!(c_.at(0) == Coeff(0))) throw std::domain_error("exp_nilpotent: constant term must be 0");
    TruncatedSeries out(order());
    out.c_[0] = Coeff(1);
    for (std::size_t k = 1; k < order(); ++k) {
      Coeff acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc = acc + c_[j] * Rational(static_cast<long>(j)) * out.c_[k - j];
      out.c_[k] = acc * (Rational(1) / Rational(static_cast<long>(k)));
    }
    return out;
  }

 private:
  std::vector<Coeff> c_;
};

/// prod_i (1 - a_i w) truncated at `order`.
inline TruncatedSeries<Rational> one_minus_product(const std::vector<Rational>& as, std::size_t order) {
  TruncatedSeries<Rational> out({Rational(1)}, order);
  for (const auto& a : as) out = out * TruncatedSeries<Rational>({Rational(1), Rational(-a)}, order);
  return out;
}

}  // namespace jackchain
