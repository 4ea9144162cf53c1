#pragma once

// Dense exact linear algebra over the rationals: elimination, characteristic
// polynomials, and factorization against a predicted set of roots.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "series.hpp"

namespace jackchain {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return row_reduce(m).size(); }

enum class SolveStatus { unique, rank_deficient, inconsistent };

struct SolveResult {
  SolveStatus status;
  std::vector<Rational> x;
};

/// Solves a (possibly overdetermined) system A x = b exactly.
inline SolveResult solve(const Matrix& a, const std::vector<Rational>& b) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b.at(i);
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return {SolveStatus::inconsistent, {}};
  if (pivots.size() < a.cols()) return {SolveStatus::rank_deficient, {}};
  std::vector<Rational> x(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) x[i] = aug(i, a.cols());
  return {SolveStatus::unique, std::move(x)};
}

/// det(x I - M) via reduction to upper Hessenberg form by similarity transforms.
inline UPoly characteristic_polynomial(Matrix h) {
  const std::size_t n = h.rows();
  if (n != h.cols()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, m));
    }
    const Rational pivot = h(m, m - 1);
    for (std::size_t r = m + 1; r < n; ++r) {
      if (h(r, m - 1) == 0) continue;
      const Rational f = h(r, m - 1) / pivot;
      for (std::size_t j = 0; j < n; ++j) h(r, j) -= f * h(m, j);
      for (std::size_t j = 0; j < n; ++j) h(j, m) += f * h(j, r);
    }
  }
  // p_k = char poly of leading k x k block.
  std::vector<UPoly> p(n + 1);
  p[0] = UPoly::constant(1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = UPoly::linear_root(h(k - 1, k - 1)) * p[k - 1];
    Rational prod = 1;
    for (std::size_t i = 1; i < k; ++i) {
      prod *= h(k - i, k - i - 1);
      if (prod == 0) break;
      p[k] = p[k] - UPoly::constant(prod * h(k - i - 1, k - 1)) * p[k - i - 1];
    }
  }
  return p[n];
}

class FactorizationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootMultiplicity {
  Rational root;
  int multiplicity;
};

/// Strips (x - r) factors for each candidate r; throws if anything is left over.
inline std::vector<RootMultiplicity> factor_against(const UPoly& monic, const std::vector<Rational>& candidates) {
  UPoly rest = monic;
  std::vector<RootMultiplicity> out;
  for (const auto& r : candidates) {
    int mult = 0;
    while (rest.degree() > 0) {
      Rational rem;
      UPoly q = rest.divide_by_root(r, rem);
      if (rem != 0) break;
      rest = std::move(q);
      ++mult;
    }
    out.push_back({r, mult});
  }
  if (rest.degree() != 0)
    throw FactorizationMismatch("characteristic polynomial has a factor of degree " +
                                std::to_string(rest.degree()) + " outside the predicted roots");
  return out;
}

}  // namespace jackchain
