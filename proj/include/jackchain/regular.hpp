#pragma once

// The algebra of theta-regular functions on Young diagrams: generating series
// Phi, H, E, the generators p*_m, frak-p_m, h_m, e~_m, evaluation at diagrams,
// interpolation from values back to the h-basis, and top-degree terms.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kerov.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace jackchain {

/// p*_m(lambda) = sum_i [(lambda_i - theta i)^m - (-theta i)^m].
inline Rational p_star(int m, const Partition& lambda, const JackTheta& theta) {
  if (m < 1) throw std::invalid_argument("p_star: m must be >= 1");
  const Rational& t = theta.value();
  Rational total = 0;
  for (std::size_t i = 0; i < lambda.length(); ++i) {
    const Rational ti = t * static_cast<long>(i + 1);
    total += rpow(Rational(lambda.rows()[i] - ti), static_cast<unsigned>(m)) - rpow(Rational(-ti), static_cast<unsigned>(m));
  }
  return total;
}

/// H(u; lambda) = prod(1 - y_j w) / prod(1 - x_i w) with w = 1/u, truncated at w^order.
inline TruncatedSeries<Rational> h_series(const KerovCoords& c, std::size_t order) {
  return one_minus_product(c.ys, order) * one_minus_product(c.xs, order).inverse_unit();
}

/// h_1(lambda), ..., h_K(lambda).
inline std::vector<Rational> h_values(const Partition& lambda, const JackTheta& theta, int order) {
  if (order < 1) throw std::invalid_argument("h_values: order must be >= 1");
  const auto s = h_series(kerov_coords(lambda, theta), static_cast<std::size_t>(order) + 1);
  return {s.coeffs().begin() + 1, s.coeffs().end()};
}

/// e~_1(lambda), ..., e~_K(lambda): coefficients of E = -1/H.
inline std::vector<Rational> e_tilde_values(const Partition& lambda, const JackTheta& theta, int order) {
  if (order < 1) throw std::invalid_argument("e_tilde_values: order must be >= 1");
  const auto c = kerov_coords(lambda, theta);
  const std::size_t ord = static_cast<std::size_t>(order) + 1;
  const auto e = (one_minus_product(c.xs, ord) * one_minus_product(c.ys, ord).inverse_unit()).scaled(-1);
  return {e.coeffs().begin() + 1, e.coeffs().end()};
}

/// frak-p_m(lambda) = sum x_i^m - sum y_j^m.
inline Rational frak_p(int m, const Partition& lambda, const JackTheta& theta) {
  if (m < 1) throw std::invalid_argument("frak_p: m must be >= 1");
  const auto c = kerov_coords(lambda, theta);
  Rational total = 0;
  for (const auto& x : c.xs) total += rpow(x, static_cast<unsigned>(m));
  for (const auto& y : c.ys) total -= rpow(y, static_cast<unsigned>(m));
  return total;
}

/// Phi(u; lambda) = N(u) / D(u) with N = prod (u + theta i), D = prod (u - lambda_i + theta i).
struct PhiFraction {
  UPoly numerator;
  UPoly denominator;
};

inline PhiFraction phi_fraction(const Partition& lambda, const JackTheta& theta) {
  PhiFraction f{UPoly::constant(1), UPoly::constant(1)};
  const Rational& t = theta.value();
  for (std::size_t i = 0; i < lambda.length(); ++i) {
    const Rational ti = t * static_cast<long>(i + 1);
    f.numerator = f.numerator * UPoly::linear_root(-ti);
    f.denominator = f.denominator * UPoly::linear_root(Rational(lambda.rows()[i] - ti));
  }
  return f;
}

/// H(u) = u prod(u - y) / prod(u - x) as numerator / denominator polynomials in u.
inline PhiFraction h_fraction(const KerovCoords& c) {
  return {UPoly({Rational(0), Rational(1)}) * product_of_roots(c.ys), product_of_roots(c.xs)};
}

/// Exact check of H(u) = Phi(u - theta) / Phi(u), cross-multiplied as polynomials.
inline bool phi_check(const Partition& lambda, const JackTheta& theta) {
  const auto h = h_fraction(kerov_coords(lambda, theta));
  const auto phi = phi_fraction(lambda, theta);
  const Rational shift = -theta.value();
  const UPoly lhs = h.numerator * phi.numerator * phi.denominator.shifted(shift);
  const UPoly rhs = h.denominator * phi.numerator.shifted(shift) * phi.denominator;
  return lhs == rhs;
}

/// Ratio H(u; lambda + box_x) / H(u; lambda) against (u-x)(u-x+theta-1) / ((u-x-1)(u-x+theta)).
inline bool add_box_ratio_check(const Partition& lambda, std::size_t inner_index, const JackTheta& theta) {
  const auto c = kerov_coords(lambda, theta);
  const Rational& x = c.xs.at(inner_index);
  const Rational& t = theta.value();
  const auto bigger = lambda.with_box_in_row(static_cast<std::size_t>(c.inner[inner_index].r));
  const auto hn = h_fraction(kerov_coords(bigger, theta));
  const auto ho = h_fraction(c);
  const UPoly num = UPoly::linear_root(x) * UPoly::linear_root(x - t + 1);
  const UPoly den = UPoly::linear_root(x + 1) * UPoly::linear_root(x - t);
  return hn.numerator * ho.denominator * den == ho.numerator * hn.denominator * num;
}

/// Ratio H(u; lambda - box_y) / H(u; lambda) against (u-y+1)(u-y-theta) / ((u-y)(u-y-theta+1)).
inline bool remove_box_ratio_check(const Partition& lambda, std::size_t outer_index, const JackTheta& theta) {
  const auto c = kerov_coords(lambda, theta);
  const Rational& y = c.ys.at(outer_index);
  const Rational& t = theta.value();
  const auto smaller = lambda.without_box_in_row(static_cast<std::size_t>(c.outer[outer_index].r - 1));
  const auto hn = h_fraction(kerov_coords(smaller, theta));
  const auto ho = h_fraction(c);
  const UPoly num = UPoly::linear_root(y - 1) * UPoly::linear_root(y + t);
  const UPoly den = UPoly::linear_root(y) * UPoly::linear_root(y + t - 1);
  return hn.numerator * ho.denominator * den == ho.numerator * hn.denominator * num;
}

/// Evaluates an h-basis element at a diagram.
inline Rational evaluate(const ShiftedSymPoly& f, const Partition& lambda, const JackTheta& theta) {
  if (f.is_zero()) return 0;
  const int k = std::max(f.max_index(), 2);
  const auto h = h_values(lambda, theta, k);
  return f.evaluate<Rational>([&](int i) { return h[static_cast<std::size_t>(i - 1)]; });
}

/// Evaluation with precomputed h-values (h[0] = h_1).
inline Rational evaluate(const ShiftedSymPoly& f, const std::vector<Rational>& h) {
  return f.evaluate<Rational>([&](int i) { return h.at(static_cast<std::size_t>(i - 1)); });
}

/// frak-p_m in the h-basis, read off log H = sum frak-p_m w^m / m.
inline ShiftedSymPoly frak_p_poly(int m) {
  if (m < 1) throw std::invalid_argument("frak_p_poly: m must be >= 1");
  const std::size_t ord = static_cast<std::size_t>(m) + 1;
  TruncatedSeries<ShiftedSymPoly> h(ord);
  h[0] = ShiftedSymPoly(1);
  for (std::size_t k = 2; k < ord; ++k) h[k] = ShiftedSymPoly::variable(static_cast<int>(k));
  return h.log_unit()[static_cast<std::size_t>(m)] * Rational(m);
}

/// p*_m in the h-basis, by inverting frak-p_{m+1} = (m+1) sum_{l<=m} binom(m, m+1-l) theta^{m+1-l} p*_l / l.
inline ShiftedSymPoly p_star_poly(int m, const JackTheta& theta) {
  if (m < 1) throw std::invalid_argument("p_star_poly: m must be >= 1");
  std::vector<ShiftedSymPoly> ps(static_cast<std::size_t>(m) + 1);
  const Rational& t = theta.value();
  for (int k = 1; k <= m; ++k) {
    const int big = k + 1;
    ShiftedSymPoly rest = frak_p_poly(big);
    for (int l = 1; l < k; ++l) {
      const Rational c = Rational(big) * binomial(static_cast<unsigned>(big - 1), static_cast<unsigned>(big - l)) *
                         rpow(t, static_cast<unsigned>(big - l)) / l;
      rest -= ps[static_cast<std::size_t>(l)] * c;
    }
    ps[static_cast<std::size_t>(k)] = rest * (Rational(1) / (Rational(big) * t));
  }
  return ps[static_cast<std::size_t>(m)];
}

class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class Inconsistent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using DiagramValues = std::map<Partition, Rational>;

/// The unique F of degree <= max_degree matching every provided value.
/// Design points are taken level by level (in level order) until the design
/// matrix reaches full rank; all remaining values are then checked against F.
inline ShiftedSymPoly interpolate(const DiagramValues& values, int max_degree, const JackTheta& theta) {
  const auto basis = monomial_basis<HTraits>(max_degree);
  const int kmax = std::max(2, max_degree + 1);
  std::map<int, std::vector<std::pair<Partition, Rational>>> by_level;
  for (const auto& [lambda, v] : values) by_level[lambda.size()].emplace_back(lambda, v);

  struct Row {
    std::vector<Rational> design;
    Rational value;
  };
  std::vector<Row> rows;
  auto make_row = [&](const Partition& lambda, const Rational& v) {
    const auto h = h_values(lambda, theta, kmax);
    Row r;
    r.value = v;
    for (const auto& mono : basis) r.design.push_back(evaluate(ShiftedSymPoly::monomial(mono), h));
    return r;
  };
  auto to_matrix = [&](const std::vector<Row>& rs) {
    Matrix a(rs.size(), basis.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) a(i, j) = rs[i].design[j];
    return a;
  };

  std::vector<Rational> coeffs;
  bool solved = false;
  for (const auto& [n, items] : by_level) {
    for (const auto& [lambda, v] : items) rows.push_back(make_row(lambda, v));
    if (solved) continue;
    const Matrix a = to_matrix(rows);
    if (rank(a) < basis.size()) continue;
    std::vector<Rational> b;
    for (const auto& r : rows) b.push_back(r.value);
    const auto res = solve(a, b);
    if (res.status == SolveStatus::inconsistent)
      throw Inconsistent("values are not those of a theta-regular function of degree <= " + std::to_string(max_degree));
    coeffs = res.x;
    solved = true;
  }
  if (!solved) throw RankDeficient("not enough diagrams to determine a degree-" + std::to_string(max_degree) + " element");

  ShiftedSymPoly f;
  for (std::size_t j = 0; j < basis.size(); ++j) f.add_term(basis[j], coeffs[j]);
  for (const auto& r : rows) {
    Rational fit = 0;
    for (std::size_t j = 0; j < basis.size(); ++j) fit += r.design[j] * coeffs[j];
    if (fit != r.value)
      throw Inconsistent("values are not those of a theta-regular function of degree <= " + std::to_string(max_degree));
  }
  return f;
}

/// Image in Lambda of the degree-`deg` component: h_rho -> prod theta p_{rho_i - 1}.
inline SymFunction graded_component(const ShiftedSymPoly& f, int deg, const JackTheta& theta) {
  SymFunction out;
  const ShiftedSymPoly part = f.component(deg);
  for (const auto& [mono, c] : part.terms()) {
    Monomial p;
    for (int k : mono) p.push_back(k - 1);
    out.add_term(p, c * rpow(theta.value(), static_cast<unsigned>(mono.size())));
  }
  return out;
}

/// Top filtration component of a nonzero F, as an element of Lambda.
inline SymFunction top_term(const ShiftedSymPoly& f, const JackTheta& theta) {
  if (f.is_zero()) throw std::invalid_argument("top_term of the zero element");
  return graded_component(f, f.degree(), theta);
}

/// Values of F on every diagram of levels lo..hi.
template <class Fn>
DiagramValues tabulate(int lo, int hi, Fn&& fn) {
  DiagramValues out;
  for (int n = lo; n <= hi; ++n)
    for (const auto& lambda : enumerate_level(n)) out.emplace(lambda, fn(lambda));
  return out;
}

}  // namespace jackchain
