#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhorn/errors.hpp"
#include "qhorn/qprob.hpp"
#include "qhorn/qwalk.hpp"
#include "qhorn_acceptance/oracles.hpp"

using namespace qhorn;
using namespace qhorn::qwalk;
using linalg::basis_vector;
using linalg::cplx;
using linalg::max_abs_diff;

namespace {

StructureMaps hadamard_maps(std::size_t walker = 3) { return build_structure_maps(CoinSpec::hadamard(), walker); }

ComplexMatrix rand_op(std::size_t n, std::mt19937_64& rng) { return linalg::random_matrix(n, n, rng); }

}  // namespace

TEST(StructureMaps, TrivialCoinIsDiagonalIdentity) {
  const auto maps = build_structure_maps(CoinSpec::trivial(2), 3);
  std::mt19937_64 rng(1);
  const auto x = rand_op(3, rng);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_LT(max_abs_diff(maps.apply(i, j, x), i == j ? x : ComplexMatrix(3, 3)), 1e-14);
}

TEST(StructureMaps, HadamardIsUnital) {
  const auto maps = hadamard_maps(4);
  EXPECT_LT(max_abs_diff(maps.theta(ComplexMatrix::identity(4)), ComplexMatrix::identity(8)), 1e-12);
  EXPECT_LT(max_abs_diff(maps.apply(0, 0, ComplexMatrix::identity(4)), ComplexMatrix::identity(4)), 1e-12);
}

TEST(StructureMaps, HadamardIsLinear) {
  const auto maps = hadamard_maps();
  std::mt19937_64 rng(2);
  const auto x = rand_op(3, rng), y = rand_op(3, rng);
  const cplx a(0.3, -1.2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_LT(max_abs_diff(maps.apply(i, j, x * a + y), maps.apply(i, j, x) * a + maps.apply(i, j, y)), 1e-12);
}

TEST(StructureMaps, RejectsNonUnitaryCoin) {
  CoinSpec c = CoinSpec::hadamard();
  c.coin = ComplexMatrix::diag_real({1.0, 0.5});
  EXPECT_THROW(build_structure_maps(c, 3), QhornError);
}

TEST(QuantumFlow, ZeroStepIsIdentityMap) {
  const auto maps = hadamard_maps();
  EXPECT_LT(max_abs_diff(QuantumFlow(maps, 0).apply(ComplexMatrix::identity(3)).matrix, ComplexMatrix::identity(3)),
            1e-15);
  EXPECT_LT(max_abs_diff(QuantumFlow(maps, 3).apply(ComplexMatrix::identity(3)).matrix, ComplexMatrix::identity(24)),
            1e-12);
}

TEST(QuantumFlow, MarkovProperty) {
  const auto maps = hadamard_maps();
  std::mt19937_64 rng(3);
  const auto vac = basis_vector(2, 0);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto x = rand_op(3, rng);
    const auto lhs = condition_on_past(QuantumFlow(maps, n).apply(x), vac, n - 1);
    const auto rhs = QuantumFlow(maps, n - 1).apply(maps.apply(0, 0, x)).matrix;
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-10) << "n=" << n;
  }
}

TEST(QuantumFlow, StarHomomorphism) {
  const auto maps = hadamard_maps();
  std::mt19937_64 rng(4);
  for (std::size_t n = 0; n <= 3; ++n) {
    const QuantumFlow flow(maps, n);
    const auto x = rand_op(3, rng), y = rand_op(3, rng);
    EXPECT_LT(max_abs_diff(flow.apply(x.dagger()).matrix, flow.apply(x).matrix.dagger()), 1e-10);
    EXPECT_LT(max_abs_diff(flow.apply(x * y).matrix, flow.apply(x).matrix * flow.apply(y).matrix), 1e-9);
  }
}

TEST(QuantumFlow, FlowStepMatchesDirectRecursion) {
  const auto maps = hadamard_maps();
  std::mt19937_64 rng(5);
  const auto x = rand_op(3, rng);
  EXPECT_LT(max_abs_diff(flow_step(QuantumFlow(maps, 2), x).matrix, QuantumFlow(maps, 3).apply(x).matrix), 1e-12);
}

TEST(QuantumFlow, TruncationGuard) {
  EXPECT_THROW(QuantumFlow(hadamard_maps(), MAX_CHAIN + 1).apply(ComplexMatrix::identity(3)), PreconditionError);
  EXPECT_THROW(QuantumFlow(hadamard_maps(), 11).apply(ComplexMatrix::identity(3)), PreconditionError);
}

TEST(ConditionOnPast, ZeroStepAndIdempotence) {
  const auto maps = hadamard_maps();
  std::mt19937_64 rng(6);
  const auto x = rand_op(3, rng);
  const auto vac = basis_vector(2, 0);
  EXPECT_LT(max_abs_diff(condition_on_past(QuantumFlow(maps, 0).apply(x), vac), x), 1e-15);

  const auto j3 = QuantumFlow(maps, 3).apply(x);
  const auto once = condition_on_past(j3, vac, 1);
  const FlowOperator again{1, 3, 2, once};
  EXPECT_LT(max_abs_diff(condition_on_past(again, vac, 1), once), 1e-15);
}

TEST(ConditionOnPast, TowerProperty) {
  const auto maps = hadamard_maps();
  std::mt19937_64 rng(7);
  const auto vac = basis_vector(2, 0);
  const auto j3 = QuantumFlow(maps, 3).apply(rand_op(3, rng));
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t m = 0; m <= n; ++m) {
      const FlowOperator inner{n, 3, 2, condition_on_past(j3, vac, n)};
      EXPECT_LT(max_abs_diff(condition_on_past(inner, vac, m), condition_on_past(j3, vac, m)), 1e-12);
    }
}

TEST(ConditionOnPast, MatchesVectorDefinition) {
  const auto maps = hadamard_maps();
  std::mt19937_64 rng(8);
  const auto vac = basis_vector(2, 0);
  const auto j2 = QuantumFlow(maps, 2).apply(rand_op(3, rng));
  const auto e = condition_on_past(j2, vac, 1);
  const auto u = linalg::random_state(6, rng), v = linalg::random_state(6, rng);
  const cplx lhs = linalg::inner(u, e * v);
  const cplx rhs = linalg::inner(linalg::kron(u, vac), j2.matrix * linalg::kron(v, vac));
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);
}

TEST(HadamardWalk, FirstTwoSteps) {
  const auto p0 = position_distribution(hadamard_walk(0));
  ASSERT_EQ(p0.size(), 1u);
  EXPECT_NEAR(p0[0], 1.0, 1e-15);
  const auto p1 = position_distribution(hadamard_walk(1));
  EXPECT_NEAR(p1[0], 0.5, 1e-15);
  EXPECT_NEAR(p1[1], 0.0, 1e-15);
  EXPECT_NEAR(p1[2], 0.5, 1e-15);
  const auto p2 = position_distribution(hadamard_walk(2));
  EXPECT_NEAR(p2[0], 0.25, 1e-15);
  EXPECT_NEAR(p2[2], 0.5, 1e-15);
  EXPECT_NEAR(p2[4], 0.25, 1e-15);
}

TEST(HadamardWalk, NormAndParity) {
  WalkState s = WalkState::localized();
  for (std::size_t n = 1; n <= 200; ++n) {
    s = hadamard_step(s);
    EXPECT_NEAR(s.norm2(), 1.0, 1e-12);
  }
  const auto p = position_distribution(hadamard_walk(7));
  for (std::size_t i = 0; i < p.size(); ++i)
    if ((i % 2) == 1) {  // i = x + 7, odd x only
      EXPECT_EQ(p[i], 0.0) << "x=" << static_cast<long>(i) - 7;
    }
}

TEST(HadamardWalk, MatchesBruteForce) {
  const auto oracle = oracle::brute_force_walk(20);
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto p = position_distribution(hadamard_walk(n));
    ASSERT_EQ(p.size(), oracle[n].size());
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], oracle[n][i], 1e-12);
  }
}

TEST(HadamardWalk, BallisticSpread) {
  const double r = distribution_stddev(position_distribution(hadamard_walk(100))) /
                   distribution_stddev(position_distribution(hadamard_walk(50)));
  EXPECT_GE(r, 1.85);
  EXPECT_LE(r, 2.05);
}

TEST(HadamardWalk, StepIsAutomorphismOfTruncatedLogic) {
  const auto u = walk_unitary(CoinSpec::hadamard(), 5);
  ASSERT_TRUE(linalg::is_unitary(u));
  std::mt19937_64 rng(9);
  std::vector<qprob::Projection> sample{qprob::Projection::zero(10), qprob::Projection::identity(10)};
  for (int k = 0; k < 4; ++k) sample.push_back(qprob::Projection::onto({linalg::random_state(10, rng)}));
  EXPECT_TRUE(qprob::check_automorphism(u, sample));
}

TEST(NoiseOps, SingleAnnihilation) {
  const auto ops = discrete_noise_ops(1, 3);
  const auto excited = basis_vector(8, 4);  // slot 1 excited
  const auto out = ops.a * excited;
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(out[i], i == 0 ? cplx(1.0) : cplx(0.0));
}

TEST(NoiseOps, SlotAlgebra) {
  const std::size_t len = 4;
  for (std::size_t k = 1; k <= len; ++k) {
    const auto a = slot_annihilator(k, len);
    const auto lam = a.dagger() * a;
    EXPECT_EQ((a * a).max_abs(), 0.0);
    EXPECT_LT(max_abs_diff(lam * lam, lam), 1e-15);
    for (std::size_t l = 1; l <= len; ++l)
      if (l != k) {
        EXPECT_EQ(linalg::commutator(a, slot_annihilator(l, len).dagger()).max_abs(), 0.0);
      }
  }
}

TEST(NoiseOps, CountingOperator) {
  const auto ops = discrete_noise_ops(3, 4);
  EXPECT_EQ(ops.lambda(0, 0), cplx(0.0));  // vacuum
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const double count = ((idx >> 3) & 1U) + ((idx >> 2) & 1U) + ((idx >> 1) & 1U);
    EXPECT_NEAR(ops.lambda(idx, idx).real(), count, 1e-15);
    EXPECT_NEAR(printed_lambda(3, 4)(idx, idx).real(), 3.0 - 2.0 * count, 1e-15);
  }
  EXPECT_LT(max_abs_diff(ops.a_dag, ops.a.dagger()), 1e-15);
  EXPECT_THROW(discrete_noise_ops(2, MAX_CHAIN + 1), PreconditionError);
}

TEST(MarkovChainUnitary, Examples) {
  EXPECT_LT(max_abs_diff(markov_chain_unitary({1.0, 0.0}, 2), ComplexMatrix::identity(2)), 1e-15);
  const double r3 = std::sqrt(3.0) / 2.0;
  EXPECT_LT(max_abs_diff(markov_chain_unitary({0.25, 0.75}, 2), ComplexMatrix{{0.5, r3}, {-r3, 0.5}}), 1e-15);
  EXPECT_THROW(markov_chain_unitary({0.0, 1.0}, 2), PreconditionError);
}

TEST(MarkovChainUnitary, OrthogonalOnRandomRows) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (std::size_t d = 1; d <= 6; ++d) {
    std::vector<double> p(d);
    double s = 0.0;
    for (auto& x : p) s += (x = u(rng));
    double rest = 0.0;
    for (std::size_t i = 1; i < d; ++i) rest += (p[i] /= s);
    p[0] = 1.0 - rest;
    const auto m = markov_chain_unitary(p, d);
    EXPECT_LT(max_abs_diff(m * m.dagger(), ComplexMatrix::identity(d)), 1e-12);
    for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(m(0, j).real(), std::sqrt(p[j]), 1e-15);
  }
}

TEST(MarkovEmbedding, IdentityChain) {
  const auto maps = embed_markov_chain({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  const auto f = ComplexMatrix::diag_real({0.4, -1.0, 2.5});
  EXPECT_LT(max_abs_diff(maps.apply(0, 0, f), f), 1e-12);
}

TEST(MarkovEmbedding, SwapChain) {
  const auto maps = embed_markov_chain({0.5, 0.5}, {{0, 1}, {1, 0}});
  const auto f = ComplexMatrix::diag_real({3.0, -1.0});
  EXPECT_LT(max_abs_diff(maps.apply(0, 0, f), ComplexMatrix::diag_real({1.0, 1.0})), 1e-12);
}

TEST(MarkovEmbedding, VacuumStatisticsMatchChain) {
  const std::vector<std::vector<double>> t{{0.2, 0.8}, {0.55, 0.45}};
  const std::vector<double> f{2.0, -0.5};
  const auto maps = embed_markov_chain(t);
  const auto vac = basis_vector(maps.d(), 0);
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto e = condition_on_past(QuantumFlow(maps, n).apply(ComplexMatrix::diag_real(f)), vac);
    const auto expect = oracle::chain_expectation(t, f, n);
    for (std::size_t s = 0; s < 2; ++s) EXPECT_NEAR(e(s, s).real(), expect[s], 1e-10) << "n=" << n;
    EXPECT_LT(std::abs(e(0, 1)) + std::abs(e(1, 0)), 1e-10);
  }
}

TEST(FunctionalDecomposition, ReproducesMatrix) {
  const std::vector<std::vector<double>> t{{0.1, 0.6, 0.3}, {0.5, 0.5, 0.0}, {0.0, 0.25, 0.75}};
  const auto fd = functional_decomposition(t);
  double total = 0.0;
  for (double p : fd.p) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_GT(fd.p[0], 0.0);
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t q = 0; q < 3; ++q) {
      double acc = 0.0;
      for (std::size_t j = 0; j < fd.p.size(); ++j)
        if (fd.maps[j][s] == q) acc += fd.p[j];
      EXPECT_NEAR(acc, t[s][q], 1e-12);
    }
  EXPECT_THROW(functional_decomposition({{0.5, 0.6}, {0.5, 0.5}}), PreconditionError);
}
