#pragma once

// Points of the Thoma simplex with finite support, their moment coordinates,
// the embedding of Y_n by splitting a diagram along the line s = theta r, and
// the error between normalized regular functions and their limits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chain.hpp"
#include "kerov.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "regular.hpp"

namespace jackchain {

class ThomaPoint {
 public:
  ThomaPoint() = default;
  ThomaPoint(std::vector<Rational> alpha, std::vector<Rational> beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    check(alpha_, "alpha");
    check(beta_, "beta");
    if (gamma() < 0) throw std::invalid_argument("Thoma point: sum of alpha and beta exceeds 1");
  }

  const std::vector<Rational>& alpha() const noexcept { return alpha_; }
  const std::vector<Rational>& beta() const noexcept { return beta_; }
  Rational gamma() const {
    Rational g = 1;
    for (const auto& a : alpha_) g -= a;
    for (const auto& b : beta_) g -= b;
    return g;
  }
  bool operator==(const ThomaPoint& o) const { return alpha_ == o.alpha_ && beta_ == o.beta_; }

 private:
  static void check(const std::vector<Rational>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] > 1) throw std::invalid_argument(std::string("Thoma point: ") + name + " outside [0,1]");
      if (i > 0 && v[i] > v[i - 1]) throw std::invalid_argument(std::string("Thoma point: ") + name + " not descending");
    }
  }

  std::vector<Rational> alpha_, beta_;
};

/// q_k = sum alpha_i^{k+1} + (-theta)^k sum beta_i^{k+1}, k = 1..K.
inline std::vector<Rational> moments(const ThomaPoint& w, const JackTheta& theta, int order) {
  if (order < 1) throw std::invalid_argument("moments: order must be >= 1");
  std::vector<Rational> q;
  for (int k = 1; k <= order; ++k) {
    Rational sa = 0, sb = 0;
    for (const auto& a : w.alpha()) sa += rpow(a, static_cast<unsigned>(k + 1));
    for (const auto& b : w.beta()) sb += rpow(b, static_cast<unsigned>(k + 1));
    q.push_back(sa + rpow(-theta.value(), static_cast<unsigned>(k)) * sb);
  }
  return q;
}

/// The Thoma measure as atoms: alpha_i at alpha_i, beta_j at -theta beta_j, gamma at 0.
inline std::map<Rational, Rational> thoma_atoms(const ThomaPoint& w, const JackTheta& theta) {
  std::map<Rational, Rational> atoms;
  for (const auto& a : w.alpha()) atoms[a] += a;
  for (const auto& b : w.beta()) atoms[Rational(-theta.value() * b)] += b;
  atoms[Rational(0)] += w.gamma();
  return atoms;
}

/// k-th moments of the atomic measure summed directly.
inline std::vector<Rational> atomic_moments(const ThomaPoint& w, const JackTheta& theta, int order) {
  const auto atoms = thoma_atoms(w, theta);
  std::vector<Rational> q;
  for (int k = 1; k <= order; ++k) {
    Rational s = 0;
    for (const auto& [x, mass] : atoms) {
      Rational xk = 1;
      for (int i = 0; i < k; ++i) xk *= x;
      s += xk * mass;
    }
    q.push_back(s);
  }
  return q;
}

namespace detail {

/// integral over r in [i-1, i] of max(0, len - slope r).
inline Rational strip_area(long len, long i, const Rational& slope) {
  const Rational lo = slope * (i - 1), hi = slope * i;
  if (len >= hi) return Rational(len) - (lo + hi) / 2;
  if (len <= lo) return 0;
  const Rational d = Rational(len) - lo;
  return d * d / (2 * slope);
}

}  // namespace detail

struct Embedding {
  std::vector<Rational> a;  // areas above the line in each row
  std::vector<Rational> b;  // areas below the line in each column
  ThomaPoint point;
};

inline Embedding embed_areas(const Partition& lambda, const JackTheta& theta) {
  if (lambda.empty()) throw std::invalid_argument("embed: empty diagram");
  const Rational n = static_cast<long>(lambda.size());
  Embedding e;
  const Partition cols = lambda.transpose();
  for (std::size_t i = 0; i < lambda.length(); ++i) {
    const Rational a = detail::strip_area(lambda.rows()[i], static_cast<long>(i + 1), theta.value());
    if (a > 0) e.a.push_back(a);
  }
  const Rational inv = theta.inverse().value();
  for (std::size_t j = 0; j < cols.length(); ++j) {
    const Rational b = detail::strip_area(cols.rows()[j], static_cast<long>(j + 1), inv);
    if (b > 0) e.b.push_back(b);
  }
  std::vector<Rational> alpha, beta;
  for (const auto& a : e.a) alpha.push_back(a / n);
  for (const auto& b : e.b) beta.push_back(b / n);
  e.point = ThomaPoint(std::move(alpha), std::move(beta));
  return e;
}

inline ThomaPoint embed(const Partition& lambda, const JackTheta& theta) { return embed_areas(lambda, theta).point; }

/// CSV: partition, alpha, beta (';'-separated rationals) and their float versions.
inline void write_embedding_csv(std::ostream& os, const std::vector<Partition>& diagrams, const JackTheta& theta) {
  os << "partition,alpha,beta,alpha_float,beta_float\n";
  auto join = [](const std::vector<Rational>& v, bool as_float) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += as_float ? std::to_string(v[i].get_d()) : to_string(v[i]);
    }
    return out;
  };
  for (const auto& lambda : diagrams) {
    const auto w = embed(lambda, theta);
    os << '"' << lambda.str() << "\"," << join(w.alpha(), false) << ',' << join(w.beta(), false) << ','
       << join(w.alpha(), true) << ',' << join(w.beta(), true) << '\n';
  }
}

/// phi in Lambda evaluated on the quotient p_1 = 1 at a Thoma point: p_k -> q_{k-1}.
inline Rational evaluate_at_point(const SymFunction& phi, const ThomaPoint& w, const JackTheta& theta) {
  const int k = std::max(phi.max_index(), 2);
  const auto q = moments(w, theta, k - 1);
  return phi.evaluate<Rational>([&](int i) { return i == 1 ? Rational(1) : q[static_cast<std::size_t>(i - 2)]; });
}

/// |F(lambda)/n^m - phi(iota(lambda))| with phi the degree-m part of F.
inline Rational asymptotic_gap(const ShiftedSymPoly& f, const SymFunction& phi, int m, const Partition& lambda,
                               const JackTheta& theta) {
  const Rational n = static_cast<long>(lambda.size());
  return abs(evaluate(f, lambda, theta) / rpow(n, static_cast<unsigned>(m)) - evaluate_at_point(phi, embed(lambda, theta), theta));
}

inline constexpr int kExhaustiveAsymptoticsBound = 12;

enum class AsymptoticsMode { exhaustive, sampled };

struct AsymptoticsOptions {
  AsymptoticsMode mode = AsymptoticsMode::exhaustive;
  const Params* params = nullptr;  // needed for sampled mode
  int samples = 1000;
  std::uint64_t seed = 0;
};

/// Max over Y_n (or over grow_sample draws) of the normalized error.
inline Rational asymptotics_error(const ShiftedSymPoly& f, const JackTheta& theta, int n, const AsymptoticsOptions& opt = {}) {
  if (f.is_zero()) throw std::invalid_argument("asymptotics_error: zero function");
  if (n < 1) throw std::invalid_argument("asymptotics_error: level must be >= 1");
  const int m = f.degree();
  const SymFunction phi = top_term(f, theta);
  Rational worst = 0;
  if (opt.mode == AsymptoticsMode::exhaustive) {
    if (n > kExhaustiveAsymptoticsBound) throw std::invalid_argument("asymptotics_error: exhaustive mode limited to n <= 12");
    for (const auto& lambda : enumerate_level(n)) worst = std::max(worst, asymptotic_gap(f, phi, m, lambda, theta));
    return worst;
  }
  if (opt.params == nullptr) throw std::invalid_argument("asymptotics_error: sampled mode needs parameters");
  Rng rng(opt.seed);
  for (int s = 0; s < opt.samples; ++s)
    worst = std::max(worst, asymptotic_gap(f, phi, m, grow_sample(n, *opt.params, rng), theta));
  return worst;
}

/// Least-squares slope of log(error) against log(n).
inline double loglog_slope(const std::vector<std::pair<int, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(points.size());
  for (const auto& [n, e] : points) {
    const double x = std::log(static_cast<double>(n)), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

struct DecayVerdict {
  bool nonincreasing = true;
  bool identically_zero = true;
  double slope = 0;  // meaningful only when no error vanishes
  bool pass(double max_slope) const { return nonincreasing && (identically_zero || slope <= max_slope); }
};

/// Monotonicity and log-log slope of an error sequence. A sequence that is zero
/// throughout decays as fast as possible and has no finite slope.
inline DecayVerdict decay_verdict(const std::vector<std::pair<int, double>>& points) {
  DecayVerdict v;
  bool any_zero = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].second > points[i - 1].second) v.nonincreasing = false;
    if (points[i].second != 0) v.identically_zero = false;
    else any_zero = true;
  }
  if (v.identically_zero) {
    v.slope = -HUGE_VAL;
  } else if (any_zero) {
    std::vector<std::pair<int, double>> nz;
    for (const auto& pt : points)
      if (pt.second != 0) nz.push_back(pt);
    v.slope = nz.size() > 1 ? loglog_slope(nz) : -HUGE_VAL;
  } else {
    v.slope = loglog_slope(points);
  }
  return v;
}

/// CSV: n, max_error_float.
inline void write_asymptotics_csv(std::ostream& os, const std::vector<std::pair<int, double>>& points) {
  os << "n,max_error_float\n";
  for (const auto& [n, e] : points) os << n << ',' << e << '\n';
}

}  // namespace jackchain
