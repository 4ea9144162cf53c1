#include <gtest/gtest.h>

#include "jackchain/chain.hpp"

using namespace jackchain;

namespace {
Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}
const Params kPrincipal(JackTheta(q(1, 2)), 1, 5);
const Params kOnePrincipal(JackTheta(1), 1, 5);
}  // namespace

TEST(TransitionMatrix, LevelOne) {
  const auto t = transition_matrix(1, kPrincipal);
  EXPECT_EQ(t.entries, Matrix::identity(1));
  EXPECT_THROW(transition_matrix(0, kPrincipal), std::invalid_argument);
}

TEST(TransitionMatrix, LevelTwoStochasticAndReversible) {
  const auto t = transition_matrix(2, kOnePrincipal);
  const auto m = z_weights(2, kOnePrincipal);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(t.entries(i, 0) + t.entries(i, 1), 1);
  EXPECT_EQ(m.weights[0] * t.entries(0, 1), m.weights[1] * t.entries(1, 0));
}

TEST(TransitionMatrix, RowsSumToOneAndRespectAdjacency) {
  for (int n = 1; n <= 7; ++n) {
    const auto t = transition_matrix(n, kPrincipal);
    for (std::size_t i = 0; i < t.level.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < t.level.size(); ++j) {
        s += t.entries(i, j);
        EXPECT_GE(t.entries(i, j), 0);
        if (i != j && t.entries(i, j) != 0) {
          EXPECT_TRUE(updown_adjacent(t.level[i], t.level[j]));
        }
      }
      EXPECT_EQ(s, 1);
    }
  }
}

TEST(TransitionMatrix, StationaryAndDetailedBalance) {
  const Params P(JackTheta(2), 1, q(3, 16));
  for (int n = 1; n <= 7; ++n) {
    const auto t = transition_matrix(n, P);
    const auto m = z_weights(n, P);
    for (std::size_t j = 0; j < t.level.size(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < t.level.size(); ++i) {
        s += m.weights[i] * t.entries(i, j);
        EXPECT_EQ(m.weights[i] * t.entries(i, j), m.weights[j] * t.entries(j, i));
      }
      EXPECT_EQ(s, m.weights[j]);
    }
  }
}

TEST(GeneratorMatrix, Basics) {
  EXPECT_EQ(generator_matrix(1, kPrincipal), Matrix(1, 1));
  for (int n = 1; n <= 5; ++n) {
    const auto a = generator_matrix(n, kPrincipal);
    const auto ones = a.apply(std::vector<Rational>(a.cols(), Rational(1)));
    for (const auto& v : ones) EXPECT_EQ(v, 0);
  }
  EXPECT_EQ(scale_factor(3, kPrincipal), Rational(1) / ((10 + 3) * 4));
}

TEST(GeneratorMatrix, LevelTwoEigenvalue) {
  const auto a = generator_matrix(2, kPrincipal);
  // trace = 0 + (-sigma_2)
  EXPECT_EQ(a(0, 0) + a(1, 1), -sigma(2, kPrincipal));
  EXPECT_EQ(sigma(2, kPrincipal), 2 * (1 + kPrincipal.tau()));
}

TEST(PartitionsWithoutOnes, Counts) {
  const std::vector<int> expected{1, 0, 1, 1, 2, 2, 4, 4, 7};
  for (int m = 0; m <= 8; ++m) EXPECT_EQ(partitions_without_ones(m), expected[static_cast<std::size_t>(m)]);
}

TEST(ExactSpectrum, Examples) {
  const auto s1 = exact_spectrum(1, kPrincipal);
  ASSERT_EQ(s1.size(), 1u);
  EXPECT_EQ(s1[0].observed, 1);
  const auto s2 = exact_spectrum(2, kPrincipal);
  EXPECT_EQ(s2[0].observed, 1);
  EXPECT_EQ(s2[1].observed, 1);
  EXPECT_EQ(s2[1].eigenvalue, -sigma(2, kPrincipal));
  const auto s4 = exact_spectrum(4, kPrincipal);
  std::vector<int> obs;
  for (const auto& e : s4) obs.push_back(e.observed);
  EXPECT_EQ(obs, (std::vector<int>{1, 1, 1, 2}));
  EXPECT_THROW(exact_spectrum(8, kPrincipal), std::invalid_argument);
}

TEST(ExactSpectrum, MultiplicitiesUpToSeven) {
  for (int n = 1; n <= 7; ++n)
    for (const auto& e : exact_spectrum(n, kPrincipal)) EXPECT_EQ(e.observed, e.predicted) << n;
}

TEST(FactorAgainst, RejectsForeignRoots) {
  // (x - 1)(x - 2) against {1} leaves a linear factor.
  const UPoly p = UPoly::linear_root(1) * UPoly::linear_root(2);
  EXPECT_THROW(factor_against(p, {Rational(1)}), FactorizationMismatch);
  const auto f = factor_against(p * UPoly::linear_root(1), {Rational(1), Rational(2)});
  EXPECT_EQ(f[0].multiplicity, 2);
  EXPECT_EQ(f[1].multiplicity, 1);
}

TEST(Step, SingleStateAndReproducible) {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(step(Partition({1}), kPrincipal, rng), Partition({1}));
  EXPECT_THROW(step(Partition(), kPrincipal, rng), std::invalid_argument);
  Rng a(42), b(42);
  Partition x{2, 1}, y{2, 1};
  for (int i = 0; i < 50; ++i) {
    x = step(x, kPrincipal, a);
    y = step(y, kPrincipal, b);
    EXPECT_EQ(x, y);
  }
}

TEST(GrowSample, LevelTwoFrequencies) {
  Rng rng(11);
  const auto m = z_weights(2, kPrincipal);
  const int total = 100000;
  int first = 0;
  for (int i = 0; i < total; ++i) first += grow_sample(2, kPrincipal, rng) == Partition({2});
  const double p = m.weights[0].get_d();
  const double se = std::sqrt(p * (1 - p) / total);
  EXPECT_LT(std::abs(first / static_cast<double>(total) - p), 4 * se);
  EXPECT_EQ(grow_sample(0, kPrincipal, rng), Partition());
}

TEST(GrowSample, LargeLevelRuns) {
  Rng rng(3);
  EXPECT_EQ(grow_sample(200, kPrincipal, rng).size(), 200);
}
