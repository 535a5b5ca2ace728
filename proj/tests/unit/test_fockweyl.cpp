#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhorn/errors.hpp"
#include "qhorn/fockweyl.hpp"

using namespace qhorn;
using namespace qhorn::fockweyl;

namespace {

constexpr double T = 2.0;
constexpr std::size_t K = 8;
const cplx I(0.0, 1.0);

TestFunction rand_fn(std::mt19937_64& rng, double scale = 0.6) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<cplx> v(K);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return TestFunction(T, v);
}

ExponentialVectorSum rand_sum(std::mt19937_64& rng, std::size_t terms) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<ExpTerm> ts;
  for (std::size_t i = 0; i < terms; ++i) ts.push_back({cplx(g(rng), g(rng)), rand_fn(rng)});
  return ExponentialVectorSum(ts);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Kernel, VacuumAndConstant) {
  const auto z = TestFunction::zero(T, K);
  EXPECT_NEAR(kernel(z, z).real(), std::exp(-T), 1e-15);
  const cplx c(0.7, -0.4);
  const auto f = TestFunction::constant(T, K, c);
  EXPECT_LT(rel(exp_inner(ExponentialVectorSum::single(f), ExponentialVectorSum::single(f)),
                std::exp(std::norm(c) * T - T)),
            1e-14);
}

TEST(Kernel, GridMismatchThrows) {
  EXPECT_THROW(kernel(TestFunction::zero(T, K), TestFunction::zero(T, K + 1)), QhornError);
  EXPECT_THROW(kernel(TestFunction::zero(T, K), TestFunction::zero(T + 1.0, K)), QhornError);
}

TEST(Kernel, GramMatrixIsPositive) {
  std::mt19937_64 rng(1);
  for (std::size_t m = 1; m <= 5; ++m) {
    std::vector<TestFunction> fs;
    for (std::size_t i = 0; i < m; ++i) fs.push_back(rand_fn(rng));
    linalg::ComplexMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) g(i, j) = kernel(fs[i], fs[j]);
    EXPECT_GE(linalg::hermitian_eigen(g).eigenvalues.front(), -1e-10);
  }
}

TEST(Kernel, ContinuousTensorFactorization) {
  const double s = 0.75;
  const auto f = TestFunction::window(T, K, 0.0, s, cplx(0.4, 0.9));
  const auto g = TestFunction::window(T, K, s, T, cplx(-1.1, 0.2));
  const auto h = f + g;
  const cplx lhs = kernel(h, h) * std::exp(T);
  const cplx rhs = kernel(f, f) * std::exp(T) * kernel(g, g) * std::exp(T);
  EXPECT_LT(rel(lhs, rhs), 1e-13);
}

TEST(Kernel, RefinementStable) {
  std::mt19937_64 rng(2);
  const auto u = rand_fn(rng), v = rand_fn(rng);
  const auto u2 = u.refined(2), v2 = v.refined(2);
  EXPECT_LT(rel(kernel(u2, v2), kernel(u, v)), 1e-12);
  EXPECT_LT(rel(gauge_elem(1.5, u2, v2), gauge_elem(1.5, u, v)), 1e-12);
  EXPECT_LT(rel(annihilation_elem(0.5, u2, v2), annihilation_elem(0.5, u, v)), 1e-12);
}

TEST(Weyl, ZeroIsIdentity) {
  std::mt19937_64 rng(3);
  const auto v = rand_sum(rng, 3);
  const auto w = weyl_apply(TestFunction::zero(T, K), v);
  EXPECT_LT(rel(exp_inner(w, w), exp_inner(v, v)), 1e-14);
  EXPECT_LT(rel(exp_inner(w, v), exp_inner(v, v)), 1e-14);
}

TEST(Weyl, ActsOnVacuum) {
  std::mt19937_64 rng(4);
  const auto f = rand_fn(rng);
  const auto w = weyl_apply(f, ExponentialVectorSum::single(TestFunction::zero(T, K)));
  ASSERT_EQ(w.terms().size(), 1u);
  EXPECT_LT(rel(w.terms()[0].coef, std::exp(-0.5 * f.norm2())), 1e-14);
  EXPECT_LT(rel(kernel(w.terms()[0].f, f), kernel(f, f)), 1e-14);
}

TEST(Weyl, PreservesInnerProducts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = rand_fn(rng);
    const auto u = rand_sum(rng, 3), v = rand_sum(rng, 2);
    EXPECT_LT(rel(exp_inner(weyl_apply(f, u), weyl_apply(f, v)), exp_inner(u, v)), 1e-12);
  }
}

TEST(Weyl, CompositionPhase) {
  std::mt19937_64 rng(6);
  std::vector<TestFunction> probes{rand_fn(rng), rand_fn(rng), TestFunction::zero(T, K)};
  const auto f = rand_fn(rng), g = rand_fn(rng);
  EXPECT_LT(std::abs(weyl_compose_check(f, TestFunction::zero(T, K), probes) - 1.0), 1e-12);

  std::vector<cplx> re_f(K), re_g(K);
  for (std::size_t i = 0; i < K; ++i) {
    re_f[i] = f.values()[i].real();
    re_g[i] = g.values()[i].real();
  }
  EXPECT_LT(std::abs(weyl_compose_check(TestFunction(T, re_f), TestFunction(T, re_g), probes) - 1.0), 1e-12);

  const cplx c = weyl_compose_check(f, g, probes);
  EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
  EXPECT_LT(std::abs(c - std::exp(-I * l2_inner(f, g).imag())), 1e-12);

  const auto gc = TestFunction::constant(T, K, 0.8);
  const cplx ci = weyl_compose_check(gc * I, gc, probes);
  EXPECT_LT(std::abs(ci - std::exp(I * gc.norm2())), 1e-12);  // Im<i g, g> = -|g|^2
}

TEST(Processes, VacuumAndEndpoints) {
  std::mt19937_64 rng(7);
  const auto z = TestFunction::zero(T, K);
  const auto u = rand_fn(rng), v = rand_fn(rng);
  EXPECT_EQ(gauge_elem(0.0, u, v), cplx(0.0));
  EXPECT_EQ(gauge_elem(1.0, z, z), cplx(0.0));
  EXPECT_EQ(annihilation_elem(1.0, u, z), cplx(0.0));
  EXPECT_THROW(gauge_elem(T + 0.1, u, v), QhornError);
  EXPECT_THROW(creation_elem(-0.1, u, v), QhornError);
}

TEST(Processes, Adjointness) {
  std::mt19937_64 rng(8);
  const auto u = rand_fn(rng), v = rand_fn(rng);
  for (double t : {0.25, 1.0, T}) {
    EXPECT_LT(std::abs(annihilation_elem(t, u, v) - std::conj(creation_elem(t, v, u))), 1e-13);
    EXPECT_LT(std::abs(gauge_elem(t, u, v) - std::conj(gauge_elem(t, v, u))), 1e-13);
  }
}

// <A_t^dag e(u), A_t^dag e(v)> as a mixed derivative of the kernel in the direction 1_[0,t].
TEST(Processes, CanonicalCommutationRelation) {
  std::mt19937_64 rng(9);
  const double h = 1e-4;
  for (double t : {0.5, 1.25}) {
    const auto chi = TestFunction::window(T, K, 0.0, t, 1.0);
    const auto u = rand_fn(rng), v = rand_fn(rng);
    auto k = [&](double e, double d) { return kernel(u + chi * cplx(e), v + chi * cplx(d)); };
    const cplx aad = (k(h, h) - k(h, -h) - k(-h, h) + k(-h, -h)) / (4.0 * h * h);
    const cplx ada = std::conj(u.integral(t)) * v.integral(t) * kernel(u, v);
    EXPECT_LT(rel(aad - ada, t * kernel(u, v)), 1e-6) << "t=" << t;
    const cplx dcre = (k(0.0, h) - k(0.0, -h)) / (2.0 * h);
    EXPECT_LT(rel(creation_elem(t, u, v), dcre), 1e-7);
  }
}

TEST(Coherent, Expectations) {
  const cplx c(0.6, 0.8);
  const auto f = TestFunction::constant(T, K, c);
  EXPECT_LT(std::abs(coherent_expectation(identity_elem(), f) - 1.0), 1e-13);
  EXPECT_LT(std::abs(coherent_expectation(gauge_at(T), f) - std::norm(c) * T), 1e-13);
  EXPECT_LT(std::abs(coherent_expectation(annihilation_at(0.5), f) - c * 0.5), 1e-13);
  EXPECT_LT(std::abs(coherent_expectation(creation_at(0.5), f) - std::conj(c) * 0.5), 1e-13);
}

TEST(PoissonOracle, AgreesWithGauge) {
  EXPECT_EQ(poisson_mc_oracle(1.0, TestFunction::zero(T, K), 1000, 1), 0.0);
  const auto f = TestFunction::window(1.0, 10, 0.0, 1.0, 1.0);
  const double est = poisson_mc_oracle(1.0, f, 100000, 20240611);
  EXPECT_NEAR(est, 1.0, 0.02);
  EXPECT_NEAR(est, coherent_expectation(gauge_at(1.0), f).real(), 0.02);
  const double fine = poisson_mc_oracle(1.0, f.refined(10), 100000, 20240611);
  EXPECT_NEAR(fine, 1.0, 0.02);
}

TEST(PoissonOracle, DeterministicPerSeed) {
  const auto f = TestFunction::constant(T, K, cplx(0.5, 0.5));
  EXPECT_EQ(poisson_mc_oracle(1.0, f, 2000, 42), poisson_mc_oracle(1.0, f, 2000, 42));
}
