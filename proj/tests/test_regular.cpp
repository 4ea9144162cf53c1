#include <gtest/gtest.h>

#include "jackchain/regular.hpp"

using namespace jackchain;

namespace {
Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}
const std::vector<JackTheta> kThetas{JackTheta(1), JackTheta(q(1, 2)), JackTheta(2), JackTheta(q(2, 3))};

// Coefficients of u(u - y)/((u - x1)(u - x2)) in w = 1/u, by long division.
std::vector<Rational> single_box_h(const Rational& t, int order) {
  // 1 / ((1 - w)(1 + t w)) = sum_k w^k sum_{j<=k} (-t)^j
  std::vector<Rational> inv(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    Rational s = 0, pw = 1;
    for (int j = 0; j <= k; ++j, pw *= -t) s += pw;
    inv[static_cast<std::size_t>(k)] = s;
  }
  // multiply by (1 - (1 - t) w)
  std::vector<Rational> out;
  for (int k = 1; k <= order; ++k) out.push_back(inv[static_cast<std::size_t>(k)] - (1 - t) * inv[static_cast<std::size_t>(k - 1)]);
  return out;
}
}  // namespace

TEST(PStar, Examples) {
  for (const auto& th : kThetas) {
    EXPECT_EQ(p_star(1, Partition({2, 1}), th), 3);
    EXPECT_EQ(p_star(2, Partition({1}), th), 1 - 2 * th.value());
    EXPECT_EQ(p_star(4, Partition(), th), 0);
  }
  EXPECT_THROW(p_star(0, Partition({1}), JackTheta(1)), std::invalid_argument);
}

TEST(HValues, Examples) {
  EXPECT_EQ(h_values(Partition(), JackTheta(q(1, 2)), 3), (std::vector<Rational>{0, 0, 0}));
  for (const auto& th : kThetas) {
    EXPECT_EQ(h_values(Partition({1}), th, 2), (std::vector<Rational>{0, th.value()}));
    EXPECT_EQ(h_values(Partition({1}), th, 6), single_box_h(th.value(), 6));
  }
  EXPECT_THROW(h_values(Partition({1}), JackTheta(1), 0), std::invalid_argument);
}

TEST(HValues, H2IsThetaN) {
  for (const auto& th : kThetas)
    for (int n = 0; n <= 6; ++n)
      for (const auto& l : enumerate_level(n)) {
        const auto h = h_values(l, th, 2);
        EXPECT_EQ(h[0], 0);
        EXPECT_EQ(h[1], th.value() * n);
      }
}

TEST(ETilde, EmptyAndInverseSeries) {
  EXPECT_EQ(e_tilde_values(Partition(), JackTheta(1), 2), (std::vector<Rational>{0, 0}));
  // E = -1/H: (1 + sum h_k w^k)(1 - sum e~_k w^k) = 1
  for (const auto& l : enumerate_level(5)) {
    const auto h = h_values(l, JackTheta(q(1, 3)), 6);
    const auto e = e_tilde_values(l, JackTheta(q(1, 3)), 6);
    for (int k = 1; k <= 6; ++k) {
      Rational c = h[static_cast<std::size_t>(k - 1)] - e[static_cast<std::size_t>(k - 1)];
      for (int j = 1; j < k; ++j) c -= h[static_cast<std::size_t>(j - 1)] * e[static_cast<std::size_t>(k - j - 1)];
      EXPECT_EQ(c, 0);
    }
  }
}

TEST(FrakP, Examples) {
  for (const auto& th : kThetas) {
    EXPECT_EQ(frak_p(2, Partition({1}), th), 2 * th.value());
    for (int n = 0; n <= 6; ++n)
      for (const auto& l : enumerate_level(n)) {
        EXPECT_EQ(frak_p(1, l, th), 0);
        EXPECT_EQ(frak_p(2, l, th), 2 * h_values(l, th, 2)[1]);
      }
  }
}

TEST(PhiCheck, AllSmallDiagrams) {
  EXPECT_TRUE(phi_check(Partition(), JackTheta(1)));
  EXPECT_TRUE(phi_check(Partition({3, 3, 1}), JackTheta(q(2, 3))));
  for (const auto& th : {JackTheta(1), JackTheta(q(1, 2)), JackTheta(2)})
    for (int n = 0; n <= 6; ++n)
      for (const auto& l : enumerate_level(n)) EXPECT_TRUE(phi_check(l, th)) << l.str();
}

TEST(BoxRatios, AddAndRemove) {
  for (const auto& th : kThetas)
    for (int n = 0; n <= 5; ++n)
      for (const auto& l : enumerate_level(n)) {
        const auto c = kerov_coords(l, th);
        for (std::size_t i = 0; i < c.xs.size(); ++i) EXPECT_TRUE(add_box_ratio_check(l, i, th));
        for (std::size_t j = 0; j < c.ys.size(); ++j) EXPECT_TRUE(remove_box_ratio_check(l, j, th));
      }
}

TEST(Evaluate, Examples) {
  const JackTheta th(1);
  EXPECT_EQ(evaluate(ShiftedSymPoly(1), Partition({2, 1}), th), 1);
  EXPECT_EQ(evaluate(ShiftedSymPoly::variable(2), Partition({4, 2}), JackTheta(q(1, 2))), 3);
  const auto h = h_values(Partition({2, 1}), th, 3);
  EXPECT_EQ(evaluate(ShiftedSymPoly::variable(2) * ShiftedSymPoly::variable(3), Partition({2, 1}), th), h[1] * h[2]);
}

TEST(Evaluate, FrakAndStarPolynomials) {
  for (const auto& th : kThetas)
    for (int m = 1; m <= 5; ++m) {
      const auto fp = frak_p_poly(m);
      const auto ps = p_star_poly(m, th);
      for (int n = 0; n <= 5; ++n)
        for (const auto& l : enumerate_level(n)) {
          EXPECT_EQ(evaluate(fp, l, th), frak_p(m, l, th));
          EXPECT_EQ(evaluate(ps, l, th), p_star(m, l, th));
        }
    }
}

TEST(Interpolate, Examples) {
  const JackTheta th(q(1, 2));
  const auto lin = tabulate(0, 3, [&](const Partition& l) { return th.value() * l.size(); });
  EXPECT_EQ(interpolate(lin, 1, th), ShiftedSymPoly::variable(2));
  const auto one = tabulate(0, 3, [](const Partition&) { return Rational(1); });
  EXPECT_EQ(interpolate(one, 2, th), ShiftedSymPoly(1));
  const auto p3 = tabulate(0, 5, [&](const Partition& l) { return frak_p(3, l, th); });
  const auto f = interpolate(p3, 2, th);
  EXPECT_EQ(f, frak_p_poly(3));
  EXPECT_LE(f.max_index(), 3);
}

TEST(Interpolate, Errors) {
  const JackTheta th(1);
  const auto few = tabulate(0, 1, [](const Partition& l) { return Rational(l.size()); });
  EXPECT_THROW(interpolate(few, 4, th), RankDeficient);
  // lambda_1 is not a regular function of degree <= 1
  const auto first_row = tabulate(0, 4, [](const Partition& l) { return Rational(l.empty() ? 0 : l.rows()[0]); });
  EXPECT_THROW(interpolate(first_row, 1, th), Inconsistent);
}

TEST(TopTerm, Examples) {
  const JackTheta th(q(1, 3));
  const auto h = [](int k) { return ShiftedSymPoly::variable(k); };
  EXPECT_EQ(top_term(h(2), th), SymFunction::variable(1) * th.value());
  EXPECT_EQ(top_term(h(3) * h(3), th), SymFunction::variable(2) * SymFunction::variable(2) * (th.value() * th.value()));
  EXPECT_EQ(top_term(h(4) + h(2), th), SymFunction::variable(3) * th.value());
  EXPECT_THROW(top_term(ShiftedSymPoly(), th), std::invalid_argument);
}

TEST(TextForm, RoundTrip) {
  const auto h = [](int k) { return ShiftedSymPoly::variable(k); };
  for (const auto& f : {h(2) * h(3) * Rational(q(3, 7)) + h(4) - Rational(2), h(3).pow(3), ShiftedSymPoly(q(-5, 2))})
    EXPECT_EQ(ShiftedSymPoly::parse(f.str()), f) << f.str();
}
