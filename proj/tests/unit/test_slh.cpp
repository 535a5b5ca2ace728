#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhorn/errors.hpp"
#include "qhorn/slh.hpp"
#include "qhorn_acceptance/oracles.hpp"

using namespace qhorn;
using namespace qhorn::slh;
using linalg::max_abs_diff;

namespace {

const cplx I(0.0, 1.0);

double numeric_diff(const NumericSLH& a, const NumericSLH& b) {
  double d = max_abs_diff(a.H, b.H);
  for (std::size_t i = 0; i < a.L.size(); ++i) d = std::max(d, max_abs_diff(a.L[i], b.L[i]));
  for (std::size_t i = 0; i < a.S.size(); ++i)
    for (std::size_t j = 0; j < a.S.size(); ++j) d = std::max(d, max_abs_diff(a.S[i][j], b.S[i][j]));
  return d;
}

JCParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  JCParams p;
  p.kappa = 5.0 + u(rng);
  p.gamma = u(rng);
  p.Delta = u(rng) - 1.0;
  p.Theta = u(rng) - 1.0;
  p.g = u(rng);
  p.alpha = cplx(u(rng), u(rng) - 1.0);
  return p;
}

}  // namespace

TEST(Concatenate, LaserWithPassthrough) {
  const auto g = concatenate(laser_triple(cplx(0.5, 0.2), 1), passthrough(1));
  ASSERT_EQ(g.n_channels(), 2u);
  EXPECT_LT(std::abs(g.L[0].scalar_part() - cplx(0.5, 0.2)), 1e-15);
  EXPECT_TRUE(g.L[1].is_zero());
  EXPECT_TRUE(g.H.is_zero());
  EXPECT_EQ(concatenate(jc_triple(JCParams{}, "jc1"), passthrough(3)).n_channels(), 5u);
}

TEST(Concatenate, RejectsUnsharedFactorCollision) {
  const auto j = jc_triple(JCParams{}, "jc1");
  EXPECT_THROW(concatenate(j, j), PreconditionError);
  EXPECT_NO_THROW(concatenate(j, j, j.factors()));
}

TEST(Concatenate, BlockScatteringStaysUnitary) {
  const auto g = concatenate(permutation_triple({1, 0}), concatenate(jc_triple(JCParams{}, "jc1"), permutation_triple({2, 0, 1}), {}));
  EXPECT_LT(scattering_unitarity_residual(evaluate(g, 3)), 1e-12);
}

TEST(Series, PassthroughIsIdentity) {
  const auto g = jc_triple(JCParams{}, "jc1");
  const auto a = evaluate(g, 3);
  EXPECT_LT(numeric_diff(evaluate(series(g, passthrough(2)), 3), a), 1e-14);
  EXPECT_LT(numeric_diff(evaluate(series(passthrough(2), g), 3), a), 1e-14);
  EXPECT_THROW(series(g, passthrough(3)), QhornError);
}

TEST(Series, LaserDriveTerm) {
  JCParams p;
  p.alpha = cplx(0.7, 0.3);
  const auto driven = series(jc_triple(p, "jc1"), laser_triple(p.alpha, 2));
  const double rk = std::sqrt(p.kappa);
  const OpExpr expect = OpExpr(0.5 * I) * (OpExpr(rk * std::conj(p.alpha)) * OpExpr::a("jc1") -
                                           OpExpr(p.alpha * rk) * OpExpr::a_dag("jc1"));
  EXPECT_TRUE((driven.H - jc_triple(p, "jc1").H - expect).is_zero(1e-12)) << describe(driven);
}

TEST(Series, CascadeFirstChannel) {
  const JCParams p;
  const auto g = jc_cascade(p);
  const double rk = std::sqrt(p.kappa);
  const OpExpr expect = OpExpr(p.alpha) + OpExpr(rk) * OpExpr::a("jc1") + OpExpr(rk) * OpExpr::a("jc2");
  EXPECT_TRUE((g.L[0] - expect).is_zero(1e-12));
}

TEST(Series, Associative) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 3; ++trial) {
    const auto g1 = jc_triple(random_params(rng), "a");
    const auto g2 = permute_channels(jc_triple(random_params(rng), "b"), {1, 0});
    const auto g3 = jc_triple(random_params(rng), "c");
    const auto lhs = evaluate(series(g3, series(g2, g1)), 2);
    const auto rhs = evaluate(series(series(g3, g2), g1), 2);
    EXPECT_LT(numeric_diff(lhs, rhs), 1e-10);
    EXPECT_LT(scattering_unitarity_residual(lhs), 1e-12);
    EXPECT_LT(hamiltonian_hermiticity_residual(lhs), 1e-12);
  }
}

TEST(Permute, Examples) {
  const auto g = concatenate(jc_triple(JCParams{}, "jc1"), passthrough(1));
  EXPECT_LT(numeric_diff(evaluate(permute_channels(g, {0, 1, 2}), 3), evaluate(g, 3)), 1e-15);
  EXPECT_LT(numeric_diff(evaluate(permute_channels(permute_channels(g, {0, 2, 1}), {0, 2, 1}), 3), evaluate(g, 3)),
            1e-15);
  EXPECT_THROW(permute_channels(g, {0, 0, 1}), QhornError);
  EXPECT_THROW(permute_channels(g, {0, 1}), QhornError);
}

TEST(Cascade, CrossingScattering) {
  const auto g = jc_cascade(JCParams::reference());
  const int crossing[3][3] = {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ASSERT_TRUE(g.S[i][j].is_scalar());
      EXPECT_EQ(g.S[i][j].scalar_part(), cplx(crossing[i][j]));
    }
}

TEST(Cascade, MatchesPrintedFormAtCutoffs) {
  std::mt19937_64 rng(2);
  for (const JCParams& p : {JCParams::reference(), random_params(rng)})
    for (std::size_t cutoff : {2, 3, 4}) {
      const auto num = evaluate(jc_cascade(p), cutoff);
      const auto ref = oracle::printed_cascade(p, cutoff);
      EXPECT_LT(max_abs_diff(num.H, ref.H), 1e-12);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(max_abs_diff(num.L[i], ref.L[i]), 1e-12);
      EXPECT_LT(hamiltonian_hermiticity_residual(num), 1e-12);
      EXPECT_LT(scattering_unitarity_residual(num), 1e-12);
    }
}

TEST(JaynesCummings, HermitianAndDecoupled) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) EXPECT_LT(hamiltonian_hermiticity_residual(evaluate(jc_triple(random_params(rng), "jc1"), 4)), 1e-12);
  JCParams p = random_params(rng);
  p.g = 0.0;
  const auto h = evaluate(jc_triple(p, "jc1"), 3).H;  // tls (x) fock
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i / 3 != j / 3) {
        EXPECT_EQ(h(i, j), cplx(0.0));
      }
}

TEST(JaynesCummings, LaserTriple) {
  const auto g = laser_triple(cplx(1.0, -0.5), 3);
  EXPECT_EQ(g.L[0].scalar_part(), cplx(1.0, -0.5));
  EXPECT_TRUE(g.L[1].is_zero() && g.L[2].is_zero() && g.H.is_zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(g.S[i][j].scalar_part(), cplx(i == j ? 1.0 : 0.0));
}

TEST(Adiabatic, MatchesPrintedAndHermitian) {
  std::mt19937_64 rng(4);
  for (const JCParams& p : {JCParams::reference(), random_params(rng)}) {
    const auto num = evaluate(adiabatic_jc_cascade(p), 3);
    ASSERT_EQ(num.H.rows(), 4u);
    const auto ref = oracle::printed_adiabatic(p);
    EXPECT_LT(max_abs_diff(num.H, ref.H), 1e-12);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(max_abs_diff(num.L[i], ref.L[i]), 1e-12);
    EXPECT_LT(hamiltonian_hermiticity_residual(num), 1e-12);
  }
}

TEST(Adiabatic, DecoupledLimit) {
  JCParams p;
  p.alpha = 0.0;
  p.g = 0.0;
  p.Delta = 0.3;
  const auto g = adiabatic_jc_cascade(p);
  EXPECT_TRUE(g.L[0].is_zero());
  EXPECT_TRUE((g.L[1] - OpExpr(std::sqrt(p.gamma)) * OpExpr::sigma("jc2")).is_zero());
  EXPECT_TRUE((g.L[2] - OpExpr(std::sqrt(p.gamma)) * OpExpr::sigma("jc1")).is_zero());
  EXPECT_TRUE((g.H - OpExpr(0.3) * (OpExpr::pi_e("jc1") + OpExpr::pi_e("jc2"))).is_zero());
  p.kappa = 0.0;
  EXPECT_THROW(adiabatic_jc_cascade(p), PreconditionError);
}

TEST(Adiabatic, CutoffIndependent) {
  const auto g = adiabatic_jc_cascade(JCParams::reference());
  const auto a = evaluate(g, 2);
  EXPECT_EQ(numeric_diff(a, evaluate(g, 3)), 0.0);
  EXPECT_EQ(numeric_diff(a, evaluate(g, 4)), 0.0);
}

TEST(Assumptions, TrivialDataHasZeroResiduals) {
  AdiabaticData d;
  const std::size_t n = 3;
  d.Y = d.A = d.B = ComplexMatrix(n, n);
  d.F = d.G = {ComplexMatrix(n, n)};
  d.W = {{ComplexMatrix::identity(n)}};
  d.P0 = ComplexMatrix::identity(n);
  d.P1 = ComplexMatrix(n, n);
  const auto r = check_adiabatic_assumptions(d, 5.0);
  for (const auto& [name, v] : r.residuals) EXPECT_EQ(v, 0.0) << name;
}

TEST(Assumptions, FlagsNoiseLeakingOutOfSlowSpace) {
  AdiabaticData d;
  d.Y = d.A = d.B = ComplexMatrix(2, 2);
  d.F = {ComplexMatrix(2, 2)};
  d.G = {linalg::pauli_x()};
  d.W = {{ComplexMatrix::identity(2)}};
  d.P0 = ComplexMatrix::diag_real({1.0, 0.0});
  d.P1 = ComplexMatrix::diag_real({0.0, 1.0});
  EXPECT_GT(check_adiabatic_assumptions(d, 1.0).get("A4.P1L"), 0.5);
}

TEST(Assumptions, SyntheticGeneratorMinusConvention) {
  std::mt19937_64 rng(5);
  AdiabaticData d;
  const auto h = linalg::random_hermitian(3, rng);
  const auto g = linalg::random_matrix(3, 3, rng);
  d.Y = d.A = ComplexMatrix(3, 3);
  d.B = h * (-I) - g.dagger() * g * cplx(0.5);
  d.F = {ComplexMatrix(3, 3)};
  d.G = {g};
  d.W = {{ComplexMatrix::identity(3)}};
  d.P0 = ComplexMatrix::identity(3);
  d.P1 = ComplexMatrix(3, 3);
  const auto r = check_adiabatic_assumptions(d, 2.0);
  EXPECT_LT(r.get("A1.generator(-)"), 1e-12);
  EXPECT_GT(r.get("A1.generator(+)"), 1e-3);
}
