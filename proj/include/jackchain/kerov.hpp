#pragma once

// Kerov interlacing coordinates at Jack parameter theta, the partial-fraction
// residues pi_up / pi_down, and the down / up transition probabilities.

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partitions.hpp"
#include "rational.hpp"

namespace jackchain {

/// Strictly positive rational Jack parameter.
class JackTheta {
 public:
  explicit JackTheta(Rational value) : value_(std::move(value)) {
    if (value_ <= 0) throw std::invalid_argument("theta must be positive");
  }
  const Rational& value() const noexcept { return value_; }
  JackTheta inverse() const { return JackTheta(Rational(1) / value_); }
  bool operator==(const JackTheta& o) const { return value_ == o.value_; }

 private:
  Rational value_;
};

/// (theta, z+z', zz'). z and z' only enter through their symmetric functions.
class Params {
 public:
  Params(JackTheta theta, Rational sum_zz, Rational prod_zz)
      : theta_(std::move(theta)), sum_zz_(std::move(sum_zz)), prod_zz_(std::move(prod_zz)) {
    // zz' + theta n != 0 for every n >= 0.
    const Rational ratio = -prod_zz_ / theta_.value();
    if (ratio >= 0 && is_integer(ratio))
      throw std::invalid_argument("zz' + theta*n vanishes for n = " + ratio.get_str());
  }
  const JackTheta& theta() const noexcept { return theta_; }
  const Rational& sum_zz() const noexcept { return sum_zz_; }
  const Rational& prod_zz() const noexcept { return prod_zz_; }
  /// theta^{-1} zz'
  Rational tau() const { return prod_zz_ / theta_.value(); }

  std::string str() const {
    return "theta=" + to_string(theta_.value()) + " z+z'=" + to_string(sum_zz_) +
           " zz'=" + to_string(prod_zz_);
  }

 private:
  JackTheta theta_;
  Rational sum_zz_;
  Rational prod_zz_;
};

struct Corner {
  int r;
  int s;
  bool operator==(const Corner&) const = default;
};

/// Interlacing coordinates x_1 > y_1 > x_2 > ... > y_{d-1} > x_d of a diagram.
/// Inner corners (x's) correspond to addable boxes, outer corners (y's) to
/// removable boxes; both are listed from the first row downwards.
struct KerovCoords {
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  std::vector<Corner> inner;
  std::vector<Corner> outer;

  std::size_t d() const noexcept { return xs.size(); }
};

inline KerovCoords kerov_coords(const Partition& lambda, const JackTheta& theta) {
  KerovCoords c;
  const auto& rows = lambda.rows();
  // One outer corner per run of equal rows, ending at the run's last row.
  std::size_t i = 0;
  int top = rows.empty() ? 0 : rows.front();
  c.inner.push_back({0, top});
  while (i < rows.size()) {
    const int v = rows[i];
    std::size_t j = i;
    while (j < rows.size() && rows[j] == v) ++j;
    const int end = static_cast<int>(j);
    c.outer.push_back({end, v});
    c.inner.push_back({end, j < rows.size() ? rows[j] : 0});
    i = j;
  }
  const Rational& t = theta.value();
  for (const auto& k : c.inner) c.xs.emplace_back(Rational(k.s) - t * k.r);
  for (const auto& k : c.outer) c.ys.emplace_back(Rational(k.s) - t * k.r);
  return c;
}

/// Residues of prod(u - x_i) / prod(u - y_j) = u - sum_j pi_down_j / (u - y_j).
inline std::vector<Rational> pi_down(const KerovCoords& c) {
  std::vector<Rational> out;
  out.reserve(c.ys.size());
  for (std::size_t j = 0; j < c.ys.size(); ++j) {
    Rational num = 1, den = 1;
    for (const auto& x : c.xs) num *= c.ys[j] - x;
    for (std::size_t l = 0; l < c.ys.size(); ++l)
      if (l != j) den *= c.ys[j] - c.ys[l];
    out.emplace_back(-num / den);
  }
  return out;
}

/// Residues of prod(u - y_j) / prod(u - x_i) = sum_i pi_up_i / (u - x_i).
inline std::vector<Rational> pi_up(const KerovCoords& c) {
  std::vector<Rational> out;
  out.reserve(c.xs.size());
  for (std::size_t i = 0; i < c.xs.size(); ++i) {
    Rational num = 1, den = 1;
    for (const auto& y : c.ys) num *= c.xs[i] - y;
    for (std::size_t l = 0; l < c.xs.size(); ++l)
      if (l != i) den *= c.xs[i] - c.xs[l];
    out.emplace_back(num / den);
  }
  return out;
}

/// sum_{1 <= i <= j <= d-1} (x_i - y_i)(y_j - x_{j+1}); equals theta * |lambda|.
inline Rational area(const KerovCoords& c) {
  Rational total = 0;
  for (std::size_t i = 0; i < c.ys.size(); ++i)
    for (std::size_t j = i; j < c.ys.size(); ++j)
      total += (c.xs[i] - c.ys[i]) * (c.ys[j] - c.xs[j + 1]);
  return total;
}

using ProbabilityMap = std::map<Partition, Rational>;

/// p_down(lambda, lambda minus box_j) = pi_down_j / Area.
inline ProbabilityMap down_probs(const Partition& lambda, const JackTheta& theta) {
  if (lambda.empty()) throw std::invalid_argument("down_probs: the empty diagram has no down move");
  const auto c = kerov_coords(lambda, theta);
  const auto pis = pi_down(c);
  const Rational a = area(c);
  ProbabilityMap out;
  for (std::size_t j = 0; j < c.outer.size(); ++j) {
    const auto row = static_cast<std::size_t>(c.outer[j].r - 1);
    out.emplace(lambda.without_box_in_row(row), pis[j] / a);
  }
  return out;
}

/// p_up(lambda, lambda plus box_i) = (zz' + (z+z') x_i + x_i^2) / (zz' + theta n) * pi_up_i.
inline ProbabilityMap up_probs(const Partition& lambda, const Params& p) {
  const auto c = kerov_coords(lambda, p.theta());
  const auto pis = pi_up(c);
  const Rational denom = p.prod_zz() + p.theta().value() * lambda.size();
  ProbabilityMap out;
  for (std::size_t i = 0; i < c.inner.size(); ++i) {
    const Rational& x = c.xs[i];
    const Rational w = (p.prod_zz() + p.sum_zz() * x + x * x) / denom * pis[i];
    out.emplace(lambda.with_box_in_row(static_cast<std::size_t>(c.inner[i].r)), w);
  }
  return out;
}

enum class Series { principal, complementary, degenerate_or_invalid };

inline const char* series_name(Series s) {
  switch (s) {
    case Series::principal: return "principal";
    case Series::complementary: return "complementary";
    default: return "degenerate-or-invalid";
  }
}

/// Tolerance for deciding that a real root sits on a lattice point of Z + theta Z.
inline constexpr double kLatticeTolerance = 1e-12;
inline constexpr int kDefaultPositivityScan = 8;

/// Principal: z' = conj(z) nonreal. Complementary: real z, z' strictly inside one
/// gap of Z + theta Z (spacing 1/b for theta = a/b in lowest terms), corroborated
/// by strict positivity of every up probability on levels 0..scan_levels.
inline Series classify_series(const Params& p, int scan_levels = kDefaultPositivityScan) {
  const Rational disc = p.sum_zz() * p.sum_zz() - 4 * p.prod_zz();
  if (disc < 0) return Series::principal;
  const double root = std::sqrt(disc.get_d());
  const double s = p.sum_zz().get_d();
  const double z1 = (s - root) / 2, z2 = (s + root) / 2;
  const double b = p.theta().value().get_den().get_d();
  const double u1 = z1 * b, u2 = z2 * b;
  auto near_lattice = [](double u) { return std::abs(u - std::round(u)) <= kLatticeTolerance * std::max(1.0, std::abs(u)); };
  if (near_lattice(u1) || near_lattice(u2)) return Series::degenerate_or_invalid;
  if (std::floor(u1) != std::floor(u2)) return Series::degenerate_or_invalid;
  for (int n = 0; n <= scan_levels; ++n)
    for (const auto& lambda : enumerate_level(n))
      for (const auto& [nu, w] : up_probs(lambda, p))
        if (w <= 0) return Series::degenerate_or_invalid;
  return Series::complementary;
}

}  // namespace jackchain
