#pragma once

// Formal differential operators in moment coordinates: the pre-generator A,
// the graded operator B on Lambda, the Ethier-Kurtz and two-parameter limits,
// the square field, exact matrices on filtered subspaces and their spectra,
// plus interpolation-based checks of the top-degree parts of D, U and B~.

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chain.hpp"
#include "kerov.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "regular.hpp"

namespace jackchain {

using QOperator = DiffOperator<QTraits>;
using POperator = DiffOperator<PTraits>;
using HOperator = DiffOperator<HTraits>;

namespace detail {

/// q_k with q_0 = 1.
inline QPoly q_var(int k) { return k == 0 ? QPoly(1) : QPoly::variable(k); }

/// sum_{i,j>=1} (i+1)(j+1)(q_{i+j} - q_i q_j) d^2/dq_i dq_j, shared by A and its limits.
inline void add_second_order_q(QOperator& op) {
  const int k = op.max_index();
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      op.add((q_var(i + j) - q_var(i) * q_var(j)) * Rational((i + 1) * (j + 1)), {i, j});
}

}  // namespace detail

inline constexpr int kDefaultOperatorIndex = 8;

/// The pre-generator in moment coordinates, derivatives up to q_{max_index}.
inline QOperator build_A(const Params& p, int max_index = kDefaultOperatorIndex) {
  QOperator a(max_index, 0);
  detail::add_second_order_q(a);
  const Rational& t = p.theta().value();
  for (int i = 1; i <= max_index; ++i) {
    const Rational c_prev = (Rational(1) - t) * i + p.sum_zz();
    const Rational c_self = Rational(i) + p.tau();
    a.add((detail::q_var(i - 1) * c_prev - detail::q_var(i) * c_self) * Rational(i + 1), {i});
  }
  for (int i = 0; i <= max_index; ++i)
    for (int j = 0; i + j + 2 <= max_index; ++j)
      a.add(detail::q_var(i) * detail::q_var(j) * (t * (i + j + 3)), {i + j + 2});
  return a;
}

/// The degree-0 operator B on Lambda = Q[p_1, p_2, ...].
inline POperator build_B(const Params& p, int max_index = kDefaultOperatorIndex) {
  POperator b(max_index, 0);
  const Rational& t = p.theta().value();
  auto pv = [](int k) { return SymFunction::variable(k); };
  for (int k = 2; k <= max_index; ++k)
    for (int l = 2; l <= max_index; ++l)
      b.add((pv(1) * pv(k + l - 1) - pv(k) * pv(l)) * Rational(k * l), {k, l});
  for (int k = 2; k <= max_index; ++k) {
    const Rational c_prev = (Rational(1) - t) * (k * (k - 1)) + p.sum_zz() * k;
    const Rational c_self = Rational(k * (k - 1)) + p.tau() * k;
    b.add(pv(1) * pv(k - 1) * c_prev - pv(k) * c_self, {k});
  }
  for (int k = 1; k <= max_index; ++k)
    for (int l = 1; k + l + 1 <= max_index; ++l) b.add(pv(1) * pv(k) * pv(l) * (t * (k + l + 1)), {k + l + 1});
  return b;
}

/// Sets p_1 = 1 and renames p_k -> q_{k-1}. Throws if B differentiates in p_1.
inline QOperator restrict_to_quotient(const POperator& b) {
  QOperator a(b.max_index() - 1, b.degree_shift());
  for (const auto& term : b.terms()) {
    if (!term.derivs.empty() && term.derivs.front() == 1)
      throw InvariantViolation("operator contains d/dp_1 and does not descend to the quotient");
    QPoly coeff;
    for (const auto& [mono, c] : term.coeff.terms()) {
      Monomial q;
      for (int k : mono)
        if (k > 1) q.push_back(k - 1);
      coeff.add_term(q, c);
    }
    Monomial derivs;
    for (int k : term.derivs) derivs.push_back(k - 1);
    a.add(coeff, derivs);
  }
  return a;
}

enum class LimitKind { ethier_kurtz, petrov };

/// Ethier-Kurtz limit (alpha ignored) or its two-parameter extension.
inline QOperator build_limit(LimitKind kind, const Rational& alpha, const Rational& tau,
                             int max_index = kDefaultOperatorIndex) {
  if (kind == LimitKind::ethier_kurtz) {
    if (tau <= 0) throw std::invalid_argument("Ethier-Kurtz limit needs tau > 0");
  } else {
    if (alpha < 0 || alpha >= 1) throw std::invalid_argument("two-parameter limit needs 0 <= alpha < 1");
    if (tau <= -alpha) throw std::invalid_argument("two-parameter limit needs tau > -alpha");
  }
  const Rational a = kind == LimitKind::petrov ? alpha : Rational(0);
  QOperator op(max_index, 0);
  detail::add_second_order_q(op);
  for (int i = 1; i <= max_index; ++i)
    op.add((detail::q_var(i - 1) * (Rational(i) - a) - detail::q_var(i) * (Rational(i) + tau)) * Rational(i + 1), {i});
  return op;
}

/// Largest |coefficient difference| over all terms of two operators.
inline Rational max_coefficient_gap(const QOperator& a, const QOperator& b) {
  Rational worst = 0;
  auto scan = [&](const QOperator& x, const QOperator& y) {
    for (const auto& term : x.terms()) {
      const QPoly diff = term.coeff - y.coefficient(term.derivs);
      for (const auto& [mono, c] : diff.terms()) worst = std::max(worst, abs(c));
    }
  };
  scan(a, b);
  scan(b, a);
  return worst;
}

struct LimitTrace {
  std::vector<Rational> t;
  std::vector<double> deviation;  // max coefficient gap to the limit at each t
  double extrapolated_gap = 0;    // gap of the Richardson estimate 2 A(t/2) - A(t)
};

/// Follows A along theta = t, zz' = tau t, z + z' = -alpha + t for t = 2^-1 .. 2^-steps.
/// Every coefficient of A is affine in t along this path, so the deviation is O(t)
/// and one Richardson step recovers the limit.
inline LimitTrace limit_trace(LimitKind kind, const Rational& alpha, const Rational& tau, int steps = 20,
                              int max_index = 6) {
  if (steps < 2) throw std::invalid_argument("limit_trace: need at least two steps");
  const QOperator target = build_limit(kind, alpha, tau, max_index);
  const Rational a = kind == LimitKind::petrov ? alpha : Rational(0);
  LimitTrace out;
  std::vector<QOperator> ops;
  Rational t = 1;
  for (int k = 1; k <= steps; ++k) {
    t /= 2;
    const Params p(JackTheta(t), -a + t, tau * t);
    ops.push_back(build_A(p, max_index));
    out.t.push_back(t);
    out.deviation.push_back(max_coefficient_gap(ops.back(), target).get_d());
  }
  QOperator richardson(max_index, 0);
  const QOperator& fine = ops[ops.size() - 1];
  const QOperator& coarse = ops[ops.size() - 2];
  for (const auto& term : fine.terms()) richardson.add(term.coeff * Rational(2), term.derivs);
  for (const auto& term : coarse.terms()) richardson.add(-term.coeff, term.derivs);
  out.extrapolated_gap = max_coefficient_gap(richardson, target).get_d();
  return out;
}

/// Gamma(F, G) = sum (i+1)(j+1)(q_{i+j} - q_i q_j) dF/dq_i dG/dq_j.
inline QPoly square_field(const QPoly& f, const QPoly& g) {
  QPoly out;
  const int kf = f.max_index(), kg = g.max_index();
  for (int i = 1; i <= kf; ++i) {
    const QPoly fi = f.derivative(i);
    if (fi.is_zero()) continue;
    for (int j = 1; j <= kg; ++j) {
      const QPoly gj = g.derivative(j);
      if (gj.is_zero()) continue;
      out += (detail::q_var(i + j) - detail::q_var(i) * detail::q_var(j)) * fi * gj * Rational((i + 1) * (j + 1));
    }
  }
  return out;
}

/// Matrix of `op` on span{monomials of degree <= max_degree}; column j is op(basis_j).
template <class Traits>
Matrix matrix_on_filtered(const DiffOperator<Traits>& op, int max_degree) {
  const auto basis = monomial_basis<Traits>(max_degree);
  std::map<Monomial, std::size_t> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) pos.emplace(basis[i], i);
  Matrix m(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto source = MonomialPoly<Traits>::monomial(basis[j]);
    const auto image = op.apply(source);
    if (image.degree() > source.degree())
      throw InvariantViolation("operator raises the degree of " + source.str());
    for (const auto& [mono, c] : image.terms()) m(pos.at(mono), j) = c;
  }
  return m;
}

inline constexpr int kDefaultGeneratorSpectrumBound = 8;

/// Spectrum of A on the degree <= m subspace against {0} and {-sigma_k : 2 <= k <= m}.
inline std::vector<SpectrumEntry> spectrum_check(int m, const Params& p, int bound = kDefaultGeneratorSpectrumBound) {
  if (m > bound) throw std::invalid_argument("spectrum_check: degree above configured bound");
  const Matrix mat = matrix_on_filtered(build_A(p, std::max(1, m)), m);
  const UPoly chi = characteristic_polynomial(mat);
  std::vector<Rational> candidates{Rational(0)};
  std::vector<SpectrumEntry> out{{0, Rational(0), 1, 0}};
  for (int k = 2; k <= m; ++k) {
    candidates.push_back(-sigma(k, p));
    out.push_back({k, -sigma(k, p), partitions_without_ones(k), 0});
  }
  const auto factors = factor_against(chi, candidates);
  for (std::size_t i = 0; i < factors.size(); ++i) out[i].observed = factors[i].multiplicity;
  return out;
}

inline bool spectrum_matches(const std::vector<SpectrumEntry>& table) {
  return std::all_of(table.begin(), table.end(), [](const SpectrumEntry& e) { return e.predicted == e.observed; });
}

/// CSV: m, sigma_num, sigma_den, multiplicity_predicted, multiplicity_observed.
inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumEntry>& table) {
  os << "m,sigma_num,sigma_den,multiplicity_predicted,multiplicity_observed\n";
  for (const auto& e : table) {
    const Rational s = -e.eigenvalue;
    os << e.m << ',' << s.get_num().get_str() << ',' << s.get_den().get_str() << ',' << e.predicted << ','
       << e.observed << '\n';
  }
}

/// JSON list of {coeff_monomial, coeff_scalar, derivs}, one entry per coefficient monomial.
template <class Traits>
nlohmann::json operator_to_json(const DiffOperator<Traits>& op) {
  auto out = nlohmann::json::array();
  for (const auto& term : op.terms())
    for (const auto& [mono, c] : term.coeff.terms())
      out.push_back({{"coeff_monomial", MonomialPoly<Traits>::monomial_str(mono)},
                     {"coeff_scalar", to_string(c)},
                     {"derivs", term.derivs}});
  return out;
}

// ---------------------------------------------------------------------------
// Top-degree parts of D, U and B~ in the h-basis.

namespace detail {
inline ShiftedSymPoly h_var(int k) { return ShiftedSymPoly::variable(k); }
}  // namespace detail

/// Terms of D of degree 1, 0 and -1.
inline HOperator d_top(const JackTheta& theta, int max_index) {
  using detail::h_var;
  const Rational& t = theta.value();
  HOperator d(max_index, 1);
  d.add(h_var(2), {});
  for (int r = 2; r <= max_index; ++r) {
    for (int s = 2; s <= max_index; ++s) {
      d.add(h_var(r + s - 2) * (t * t * ((r - 1) * (s - 1)) / 2), {r, s});
      d.add(h_var(r) * h_var(s) * (t * (r + s) / 2), {r + s});
    }
    d.add(h_var(r) * (-t * (r - 1)), {r});
    if (r >= 3) d.add(h_var(r - 1) * (t * (1 - t) * ((r - 1) * (r - 2)) / 2), {r});
  }
  return d;
}

/// Terms of U of degree 1, 0 and -1.
inline HOperator u_top(const Params& p, int max_index) {
  using detail::h_var;
  const Rational& t = p.theta().value();
  HOperator u(max_index, 1);
  u.add(h_var(2) + ShiftedSymPoly(p.prod_zz()), {});
  u.add(ShiftedSymPoly(t * p.prod_zz()), {2});
  for (int r = 2; r <= max_index; ++r) {
    for (int s = 2; s <= max_index; ++s) {
      u.add(h_var(r + s - 2) * (t * t * ((r - 1) * (s - 1)) / 2), {r, s});
      u.add(h_var(r) * h_var(s) * (t * (r + s - 2) / 2), {r + s});
    }
    u.add(h_var(r) * (t * (r - 1)), {r});
    if (r >= 3) {
      u.add(h_var(r - 1) * (t * p.sum_zz() * (r - 1)), {r});
      u.add(h_var(r - 1) * (t * (1 - t) * ((r - 1) * (r - 2)) / 2), {r});
    }
  }
  return u;
}

/// Degree-0 component of B~.
inline HOperator btilde_top(const Params& p, int max_index) {
  using detail::h_var;
  const Rational& t = p.theta().value();
  const Rational ti = Rational(1) / t;
  HOperator b(max_index, 0);
  for (int r = 3; r <= max_index; ++r)
    for (int s = 3; s <= max_index; ++s)
      b.add((h_var(2) * h_var(r + s - 2) - h_var(r) * h_var(s)) * Rational((r - 1) * (s - 1)), {r, s});
  for (int r = 3; r <= max_index; ++r) {
    const ShiftedSymPoly h2hr1 = h_var(2) * h_var(r - 1);
    b.add(h2hr1 * ((ti - 1) * ((r - 1) * (r - 2)) + ti * p.sum_zz() * (r - 1)) -
              h_var(r) * (Rational((r - 1) * (r - 2)) + p.tau() * (r - 1)),
          {r});
  }
  for (int r = 2; r <= max_index; ++r)
    for (int s = 2; s <= max_index; ++s) b.add(h_var(2) * h_var(r) * h_var(s) * (ti * (r + s - 1)), {r + s});
  return b;
}

struct OperatorReport {
  std::string name;
  bool pass = false;
  int degree_bound = 0;      // bound stated by the theorem
  int degree_used = 0;       // bound at which interpolation succeeded (-1: never)
  ShiftedSymPoly interpolant;
  ShiftedSymPoly residual;   // interpolant minus the explicit top-degree formula
  std::string detail;
};

namespace detail {

/// Interpolates at `bound`; on failure retries at bound + 1 and records it.
inline void interpolate_with_retry(OperatorReport& rep, const DiagramValues& values, int bound, const JackTheta& theta) {
  rep.degree_bound = bound;
  rep.degree_used = -1;
  for (int b = bound; b <= bound + 1; ++b) {
    try {
      rep.interpolant = interpolate(values, b, theta);
      rep.degree_used = b;
      if (b != bound) rep.detail += "interpolation failed at the stated degree bound " + std::to_string(bound) + "; ";
      return;
    } catch (const std::exception& e) {
      rep.detail += std::string("bound ") + std::to_string(b) + ": " + e.what() + "; ";
    }
  }
}

inline void finish_report(OperatorReport& rep, const ShiftedSymPoly& explicit_part, int residual_max_degree,
                          const SymFunction& expected_top, int top_degree, const JackTheta& theta) {
  if (rep.degree_used != rep.degree_bound) {
    rep.pass = false;
    return;
  }
  rep.residual = rep.interpolant - explicit_part;
  const bool residual_ok = rep.residual.is_zero() || rep.residual.degree() <= residual_max_degree;
  const SymFunction top = graded_component(rep.interpolant, top_degree, theta);
  const bool top_ok = top == expected_top;
  rep.pass = residual_ok && top_ok;
  std::ostringstream os;
  os << "interpolant degree " << rep.interpolant.degree() << "; residual degree " << rep.residual.degree()
     << " (allowed <= " << residual_max_degree << "); degree-" << top_degree << " part "
     << (top_ok ? "matches" : "differs: got " + top.str() + ", expected " + expected_top.str());
  rep.detail += os.str();
}

}  // namespace detail

inline int default_level_bound(const ShiftedSymPoly& f) { return std::max(f.degree(), 0) + 4; }

struct DUReport {
  OperatorReport down;
  OperatorReport up;
  bool pass() const { return down.pass && up.pass; }
};

/// Checks D and U against their stated top-degree terms on levels up to N.
inline DUReport verify_DU_top(const ShiftedSymPoly& f, const Params& p, int max_level = -1) {
  const JackTheta& theta = p.theta();
  const Rational& t = theta.value();
  const int deg = std::max(f.degree(), 0);
  const int levels = max_level < 0 ? default_level_bound(f) : max_level;
  const int kmax = deg + 3;

  std::vector<DiagramValues> f_levels;
  for (int n = 0; n <= levels + 1; ++n) f_levels.push_back(tabulate(n, n, [&](const Partition& l) { return evaluate(f, l, theta); }));

  DUReport rep;
  rep.down.name = "D";
  rep.up.name = "U";

  // G_D(nu) = theta (n+1) sum_lambda p_down(nu, lambda) F(lambda), nu in Y_{n+1}.
  DiagramValues gd;
  for (int n = 0; n < levels; ++n)
    for (const auto& nu : enumerate_level(n + 1)) {
      Rational acc = 0;
      for (const auto& [lambda, pd] : down_probs(nu, theta)) acc += pd * f_levels[static_cast<std::size_t>(n)].at(lambda);
      gd.emplace(nu, acc * t * (n + 1));
    }
  // G_U(lambda) = (zz' + theta n) sum_nu p_up(lambda, nu) F(nu), lambda in Y_n.
  DiagramValues gu;
  for (int n = 0; n <= levels; ++n)
    for (const auto& lambda : enumerate_level(n)) {
      Rational acc = 0;
      for (const auto& [nu, pu] : up_probs(lambda, p)) acc += pu * f_levels[static_cast<std::size_t>(n + 1)].at(nu);
      gu.emplace(lambda, acc * (p.prod_zz() + t * n));
    }

  const SymFunction top_f = f.is_zero() ? SymFunction() : graded_component(f, deg, theta);
  const SymFunction expected = SymFunction::variable(1) * top_f * t;

  detail::interpolate_with_retry(rep.down, gd, deg + 1, theta);
  detail::finish_report(rep.down, d_top(theta, kmax).apply(f), deg - 2, expected, deg + 1, theta);
  detail::interpolate_with_retry(rep.up, gu, deg + 1, theta);
  detail::finish_report(rep.up, u_top(p, kmax).apply(f), deg - 2, expected, deg + 1, theta);
  return rep;
}

/// Checks eps_n^{-1}(T_n - 1) F against the degree-0 part of B~ and against B on the top component.
inline OperatorReport verify_Btilde(const ShiftedSymPoly& f, const Params& p, int max_level = -1) {
  const JackTheta& theta = p.theta();
  const int deg = std::max(f.degree(), 0);
  const int levels = max_level < 0 ? default_level_bound(f) : max_level;
  const int kmax = deg + 3;

  DiagramValues g;
  for (int n = 1; n <= levels; ++n) {
    const auto tm = transition_matrix(n, p);
    std::vector<Rational> fv;
    for (const auto& lambda : tm.level) fv.push_back(evaluate(f, lambda, theta));
    const auto tf = tm.entries.apply(fv);
    const Rational inv_eps = Rational(1) / scale_factor(n, p);
    for (std::size_t i = 0; i < fv.size(); ++i) g.emplace(tm.level[i], (tf[i] - fv[i]) * inv_eps);
  }

  OperatorReport rep;
  rep.name = "Btilde";
  const SymFunction top_f = f.is_zero() ? SymFunction() : graded_component(f, deg, theta);
  const SymFunction expected = build_B(p, std::max(2, deg + 2)).apply(top_f);
  detail::interpolate_with_retry(rep, g, deg, theta);
  detail::finish_report(rep, btilde_top(p, kmax).apply(f), deg - 1, expected, deg, theta);
  return rep;
}

}  // namespace jackchain
