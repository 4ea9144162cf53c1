#pragma once

// Up-down chains on Y_n: transition matrices, rescaled generators, exact
// spectra, and Monte Carlo sampling of chain steps and Markov growth.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kerov.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "rational.hpp"
#include "zmeasure.hpp"

namespace jackchain {

/// T_n(lambda, kappa) = sum over nu of p_up(lambda, nu) p_down(nu, kappa).
struct TransitionMatrix {
  Level level;
  Matrix entries;

  const Rational& operator()(const Partition& a, const Partition& b) const {
    return entries(level.index(a), level.index(b));
  }
};

inline TransitionMatrix transition_matrix(int n, const Params& p) {
  if (n < 1) throw std::invalid_argument("transition_matrix: level must be >= 1");
  Level level(n);
  Matrix t(level.size(), level.size());
  for (std::size_t i = 0; i < level.size(); ++i)
    for (const auto& [nu, up] : up_probs(level[i], p))
      for (const auto& [kappa, down] : down_probs(nu, p.theta())) t(i, level.index(kappa)) += up * down;
  return {std::move(level), std::move(t)};
}

/// epsilon_n = 1 / ((theta^{-1} zz' + n)(n + 1)).
inline Rational scale_factor(int n, const Params& p) {
  return Rational(1) / ((p.tau() + n) * (n + 1));
}

/// A_n = epsilon_n^{-1} (T_n - I).
inline Matrix generator_matrix(int n, const Params& p) {
  const auto t = transition_matrix(n, p);
  const Rational inv_eps = Rational(1) / scale_factor(n, p);
  Matrix a = t.entries;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    a(i, i) -= 1;
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= inv_eps;
  }
  return a;
}

/// sigma_m = m (m - 1 + theta^{-1} zz').
inline Rational sigma(int m, const Params& p) { return Rational(m) * (Rational(m - 1) + p.tau()); }

/// Number of partitions of m with no part equal to 1, i.e. p(m) - p(m-1).
inline int partitions_without_ones(int m) {
  if (m == 0) return 1;
  if (m == 1) return 0;
  return static_cast<int>(enumerate_level(m).size() - enumerate_level(m - 1).size());
}

struct SpectrumEntry {
  int m;  // 0 for the eigenvalue 0, otherwise the index of -sigma_m
  Rational eigenvalue;
  int predicted;
  int observed;
};

inline constexpr int kDefaultChainSpectrumBound = 7;

/// Factors det(x - A_n) against {0} and {-sigma_m : 2 <= m <= n}.
inline std::vector<SpectrumEntry> exact_spectrum(int n, const Params& p, int bound = kDefaultChainSpectrumBound) {
  if (n > bound) throw std::invalid_argument("exact_spectrum: level above configured bound");
  const UPoly chi = characteristic_polynomial(generator_matrix(n, p));
  std::vector<Rational> candidates{Rational(0)};
  std::vector<SpectrumEntry> out{{0, Rational(0), 1, 0}};
  for (int m = 2; m <= n; ++m) {
    candidates.push_back(-sigma(m, p));
    out.push_back({m, -sigma(m, p), partitions_without_ones(m), 0});
  }
  const auto factors = factor_against(chi, candidates);
  for (std::size_t i = 0; i < factors.size(); ++i) out[i].observed = factors[i].multiplicity;
  return out;
}

/// Reproducible random source; std::mt19937_64 seeded with the 64-bit user seed.
using Rng = std::mt19937_64;

namespace detail {
inline Partition sample_from(const ProbabilityMap& probs, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double acc = 0;
  const Partition* last = nullptr;
  for (const auto& [key, w] : probs) {
    acc += w.get_d();
    last = &key;
    if (u < acc) return key;
  }
  return *last;
}
}  // namespace detail

/// One up-down step: nu from p_up(lambda, .), then kappa from p_down(nu, .).
inline Partition step(const Partition& lambda, const Params& p, Rng& rng) {
  if (lambda.empty()) throw std::invalid_argument("step: chain lives on levels n >= 1");
  const Partition nu = detail::sample_from(up_probs(lambda, p), rng);
  return detail::sample_from(down_probs(nu, p.theta()), rng);
}

/// Markov growth from the empty diagram through n up steps.
inline Partition grow_sample(int n, const Params& p, Rng& rng) {
  if (n < 0) throw std::invalid_argument("grow_sample: negative level");
  Partition lambda;
  for (int k = 0; k < n; ++k) lambda = detail::sample_from(up_probs(lambda, p), rng);
  return lambda;
}

}  // namespace jackchain
