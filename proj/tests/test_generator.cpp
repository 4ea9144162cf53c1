#include <gtest/gtest.h>

#include "jackchain/generator.hpp"

using namespace jackchain;

namespace {
Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}
QPoly qv(int k) { return QPoly::variable(k); }
SymFunction pv(int k) { return SymFunction::variable(k); }
ShiftedSymPoly hv(int k) { return ShiftedSymPoly::variable(k); }
const Params kP(JackTheta(q(1, 2)), 1, 5);
}  // namespace

TEST(BuildA, ConstantsAndFirstMoment) {
  const auto a = build_A(kP);
  EXPECT_TRUE(a.apply(QPoly(1)).is_zero());
  const Rational t = kP.theta().value(), s = kP.sum_zz(), tau = kP.tau();
  EXPECT_EQ(a.apply(qv(1)), QPoly(2 * (1 - t + s)) - qv(1) * (2 * (1 + tau)));
}

TEST(BuildA, EigenvectorAtDegreeOne) {
  for (const auto& P : {kP, Params(JackTheta(2), q(1, 2), q(3, 64)), Params(JackTheta(q(1, 3)), 0, 1)}) {
    const Rational t = P.theta().value();
    const Rational c = (1 - t + P.sum_zz()) / (1 + P.tau());
    const QPoly v = qv(1) - QPoly(c);
    EXPECT_EQ(build_A(P).apply(v), v * (-sigma(2, P)));
  }
}

TEST(SquareField, Examples) {
  EXPECT_TRUE(square_field(QPoly(1), qv(3)).is_zero());
  EXPECT_EQ(square_field(qv(1), qv(1)), (qv(2) - qv(1) * qv(1)) * Rational(4));
  EXPECT_EQ(square_field(qv(1) * qv(2), qv(3)), square_field(qv(3), qv(1) * qv(2)));
}

TEST(SquareField, Polarization) {
  const auto a = build_A(kP, 6);
  const auto basis = monomial_basis<QTraits>(5);
  for (std::size_t i = 0; i < basis.size(); i += 3)
    for (std::size_t j = 0; j < basis.size(); j += 4) {
      const auto f = QPoly::monomial(basis[i]), g = QPoly::monomial(basis[j]);
      if (f.max_index() + g.max_index() > 6) continue;
      EXPECT_EQ(a.apply(f * g) - f * a.apply(g) - g * a.apply(f), square_field(f, g) * Rational(2));
    }
}

TEST(MatrixOnFiltered, SmallCases) {
  const auto a = build_A(kP);
  EXPECT_EQ(matrix_on_filtered(a, 0), Matrix(1, 1));
  const auto m = matrix_on_filtered(a, 2);
  ASSERT_EQ(m.rows(), 2u);
  EXPECT_EQ(m(0, 0) + m(1, 1), -sigma(2, kP));
  EXPECT_EQ(m(1, 0), 0);
}

TEST(MatrixOnFiltered, RejectsDegreeRaisingOperator) {
  QOperator raise(2, 0);
  raise.add(qv(1) * qv(1), {1});
  EXPECT_THROW(matrix_on_filtered(raise, 3), InvariantViolation);
}

TEST(SpectrumCheck, Examples) {
  const auto s2 = spectrum_check(2, kP);
  ASSERT_EQ(s2.size(), 2u);
  EXPECT_EQ(s2[1].observed, 1);
  std::vector<int> obs;
  for (const auto& e : spectrum_check(4, kP)) obs.push_back(e.observed);
  EXPECT_EQ(obs, (std::vector<int>{1, 1, 1, 2}));
  const auto s6 = spectrum_check(6, kP);
  EXPECT_EQ(s6.back().m, 6);
  EXPECT_EQ(s6.back().observed, 4);
  EXPECT_TRUE(spectrum_matches(s6));
  EXPECT_THROW(spectrum_check(9, kP), std::invalid_argument);
}

TEST(SpectrumCheck, ComplementarySeries) {
  const Params P(JackTheta(q(1, 3)), q(1, 3), q(1, 48));
  EXPECT_TRUE(spectrum_matches(spectrum_check(6, P)));
}

TEST(BuildB, ActionOnP2) {
  const auto b = build_B(kP);
  const Rational t = kP.theta().value();
  EXPECT_EQ(b.apply(pv(2)), pv(1) * pv(1) * (2 * (1 - t + kP.sum_zz())) - pv(2) * (2 * (1 + kP.tau())));
  EXPECT_TRUE(b.apply(pv(1)).is_zero());
}

TEST(BuildB, PreservesGrading) {
  const auto b = build_B(kP, 7);
  for (const auto& mono : monomial_basis<PTraits>(6)) {
    const auto f = SymFunction::monomial(mono);
    const auto g = b.apply(f);
    if (g.is_zero()) continue;
    EXPECT_EQ(g.component(f.degree()), g) << f.str();
  }
}

TEST(BuildB, RestrictsToA) {
  const auto restricted = restrict_to_quotient(build_B(kP, 7));
  const auto a = build_A(kP, 6);
  for (const auto& mono : monomial_basis<QTraits>(6)) {
    const auto f = QPoly::monomial(mono);
    EXPECT_EQ(restricted.apply(f), a.apply(f)) << f.str();
  }
  POperator bad(3, 0);
  bad.add(pv(2), {1});
  EXPECT_THROW(restrict_to_quotient(bad), InvariantViolation);
}

TEST(Limits, PetrovAtZeroIsEthierKurtz) {
  const auto ek = build_limit(LimitKind::ethier_kurtz, 0, q(3, 2));
  const auto pt = build_limit(LimitKind::petrov, 0, q(3, 2));
  EXPECT_EQ(max_coefficient_gap(ek, pt), 0);
}

TEST(Limits, SecondOrderPartIsParameterFree) {
  const auto ek = build_limit(LimitKind::ethier_kurtz, 0, 2, 5);
  const auto a = build_A(Params(JackTheta(q(3, 5)), q(7, 3), q(1, 9)), 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i; j <= 5; ++j) EXPECT_EQ(ek.coefficient({i, j}), a.coefficient({i, j}));
}

TEST(Limits, RangeChecks) {
  EXPECT_THROW(build_limit(LimitKind::ethier_kurtz, 0, 0), std::invalid_argument);
  EXPECT_THROW(build_limit(LimitKind::petrov, 1, 1), std::invalid_argument);
  EXPECT_THROW(build_limit(LimitKind::petrov, q(1, 2), q(-1, 2)), std::invalid_argument);
  EXPECT_NO_THROW(build_limit(LimitKind::petrov, q(1, 2), q(-1, 4)));
}

TEST(Limits, TraceConvergesMonotonically) {
  for (const auto kind : {LimitKind::ethier_kurtz, LimitKind::petrov}) {
    const auto tr = limit_trace(kind, q(1, 4), 1, 20);
    ASSERT_EQ(tr.deviation.size(), 20u);
    for (std::size_t i = 1; i < tr.deviation.size(); ++i) EXPECT_LE(tr.deviation[i], tr.deviation[i - 1]);
    EXPECT_LT(tr.deviation.back(), 1e-4);
    EXPECT_LE(tr.extrapolated_gap, 1e-9);
  }
}

TEST(VerifyDU, ConstantFunction) {
  const auto r = verify_DU_top(ShiftedSymPoly(1), kP, 4);
  EXPECT_TRUE(r.pass()) << r.down.detail << " | " << r.up.detail;
  EXPECT_EQ(r.down.interpolant, hv(2));
  EXPECT_EQ(r.up.interpolant, hv(2) + ShiftedSymPoly(kP.prod_zz()));
}

TEST(VerifyDU, LowDegreeFunctions) {
  for (const auto& f : {hv(2), hv(3)}) {
    const auto r = verify_DU_top(f, kP);
    EXPECT_TRUE(r.pass()) << f.str() << ": " << r.down.detail << " | " << r.up.detail;
    EXPECT_LE(r.down.interpolant.degree(), f.degree() + 1);
  }
  const auto r = verify_DU_top(hv(2), Params(JackTheta(1), 1, 5));
  EXPECT_EQ(graded_component(r.down.interpolant, 2, JackTheta(1)), pv(1) * pv(1));
}

TEST(VerifyBtilde, Examples) {
  const auto r2 = verify_Btilde(hv(2), kP);
  EXPECT_TRUE(r2.pass) << r2.detail;
  EXPECT_TRUE(r2.interpolant.component(1).is_zero());
  const auto r3 = verify_Btilde(hv(3), kP);
  EXPECT_TRUE(r3.pass) << r3.detail;
  EXPECT_EQ(graded_component(r3.interpolant, 2, kP.theta()), build_B(kP).apply(pv(2) * kP.theta().value()));
  const auto r33 = verify_Btilde(hv(3) * hv(3), Params(JackTheta(1), 1, 5));
  EXPECT_TRUE(r33.pass) << r33.detail;
  EXPECT_LE(r33.interpolant.degree(), 4);
}

TEST(OperatorJson, Shape) {
  const auto j = operator_to_json(build_limit(LimitKind::ethier_kurtz, 0, 1, 2));
  ASSERT_TRUE(j.is_array());
  ASSERT_FALSE(j.empty());
  EXPECT_TRUE(j[0].contains("derivs"));
}
