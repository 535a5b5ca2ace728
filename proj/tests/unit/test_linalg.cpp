#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhorn/errors.hpp"
#include "qhorn/linalg.hpp"

using namespace qhorn;
using namespace qhorn::linalg;

namespace {

const cplx I(0.0, 1.0);

ComplexMatrix bell_phi_plus() {
  const double s = std::sqrt(0.5);
  const ComplexVector v{s, 0.0, 0.0, s};
  return outer(v, v);
}

}  // namespace

TEST(Kron, MatchesHandExpansion) {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(0, 1), cplx(1.0));
  EXPECT_EQ(k(1, 0), cplx(1.0));
  EXPECT_EQ(k(2, 1), cplx(3.0));
  EXPECT_EQ(k(2, 3), cplx(4.0));
  EXPECT_EQ(k(0, 3), cplx(2.0));
  EXPECT_EQ(k(0, 0), cplx(0.0));
}

TEST(Kron, Associative) {
  std::mt19937_64 rng(11);
  const auto a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng), c = random_matrix(2, 2, rng);
  EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-14);
}

TEST(Dagger, InvolutionAndAntihomomorphism) {
  std::mt19937_64 rng(12);
  const auto a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
  EXPECT_EQ(max_abs_diff(a.dagger().dagger(), a), 0.0);
  EXPECT_LT(max_abs_diff((a * b).dagger(), b.dagger() * a.dagger()), 1e-14);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const auto r = partial_trace(bell_phi_plus(), {2, 2}, {0});
  EXPECT_LT(max_abs_diff(r, ComplexMatrix::identity(2) * cplx(0.5)), 1e-15);
}

TEST(PartialTrace, ProductStateKeepsFactor) {
  std::mt19937_64 rng(13);
  const auto ra = random_density(2, rng), rb = random_density(3, rng);
  EXPECT_LT(max_abs_diff(partial_trace(kron(ra, rb), {2, 3}, {1}), rb), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(kron(ra, rb), {2, 3}, {0}), ra), 1e-14);
}

TEST(PartialTrace, PreservesTrace) {
  std::mt19937_64 rng(14);
  const auto rho = random_matrix(12, 12, rng);
  for (const auto& keep : std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 2}, {}})
    EXPECT_LT(std::abs(partial_trace(rho, {2, 3, 2}, keep).trace() - rho.trace()), 1e-12);
}

TEST(EmbedOperator, ActsOnListedFactorsInOrder) {
  const ComplexMatrix x = pauli_x(), z = pauli_z();
  EXPECT_LT(max_abs_diff(embed_operator(kron(x, z), {2, 2, 2}, {2, 0}),
                         kron_all({z, ComplexMatrix::identity(2), x})),
            1e-15);
  EXPECT_THROW(embed_operator(x, {2, 2}, {2}), QhornError);
}

TEST(ReducedState, OrderedAsListed) {
  std::mt19937_64 rng(15);
  const auto ra = random_density(2, rng), rb = random_density(2, rng);
  EXPECT_LT(max_abs_diff(reduced_state(kron(ra, rb), {2, 2}, {1, 0}), kron(rb, ra)), 1e-14);
}

TEST(HermitianEigen, PauliSpectra) {
  const auto z = hermitian_eigen(pauli_z());
  EXPECT_NEAR(z.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(z.eigenvalues[1], 1.0, 1e-14);
  const auto x = hermitian_eigen(pauli_x());
  EXPECT_NEAR(x.eigenvalues[0], -1.0, 1e-14);
  const ComplexVector minus = column(x.eigenvectors, 0);
  EXPECT_NEAR(std::abs(inner(minus, ComplexVector{std::sqrt(0.5), -std::sqrt(0.5)})), 1.0, 1e-12);
}

TEST(HermitianEigen, ResidualAndReconstruction) {
  std::mt19937_64 rng(16);
  const auto a = random_hermitian(6, rng);
  const auto e = hermitian_eigen(a);
  ComplexMatrix rebuilt(6, 6);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto v = column(e.eigenvectors, k);
    const auto av = a * v;
    for (std::size_t i = 0; i < 6; ++i) EXPECT_LT(std::abs(av[i] - e.eigenvalues[k] * v[i]), 1e-9);
    rebuilt += outer(v, v) * cplx(e.eigenvalues[k]);
  }
  EXPECT_LT(max_abs_diff(rebuilt, a), 1e-10);
}

TEST(HermitianEigen, RejectsNonHermitian) {
  EXPECT_THROW(hermitian_eigen(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), QhornError);
}

TEST(MatrixExp, ZeroIsIdentity) {
  EXPECT_LT(max_abs_diff(matrix_exp(ComplexMatrix(3, 3)), ComplexMatrix::identity(3)), 1e-15);
}

TEST(MatrixExp, HalfTurnOfSigmaX) {
  EXPECT_LT(max_abs_diff(matrix_exp(pauli_x() * (I * M_PI / 2.0)), pauli_x() * I), 1e-10);
}

TEST(MatrixExp, InverseAndUnitarity) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    ComplexMatrix a = random_matrix(4, 4, rng);
    a *= cplx(2.0 / std::max(1.0, a.max_abs() * 4.0));
    EXPECT_LT(max_abs_diff(matrix_exp(a) * matrix_exp(-a), ComplexMatrix::identity(4)), 1e-10);
    const ComplexMatrix h = random_hermitian(4, rng);
    EXPECT_TRUE(is_unitary(matrix_exp(h * I), 1e-9));
  }
}

TEST(ProjectorFromVectors, Examples) {
  const auto e0 = basis_vector(2, 0), e1 = basis_vector(2, 1);
  EXPECT_LT(max_abs_diff(projector_from_vectors({e0}), outer(e0, e0)), 1e-15);
  EXPECT_LT(max_abs_diff(projector_from_vectors({e0, e0}), outer(e0, e0)), 1e-15);
  const ComplexMatrix half_plus = (ComplexMatrix::identity(2) + pauli_x()) * cplx(0.5);
  EXPECT_LT(max_abs_diff(projector_from_vectors({ComplexVector{1.0, 1.0}}), half_plus), 1e-15);
  EXPECT_THROW(projector_from_vectors({ComplexVector{}}), QhornError);
}

TEST(ProjectorFromVectors, IsOrthogonalProjector) {
  std::mt19937_64 rng(18);
  const auto p = projector_from_vectors({random_state(5, rng), random_state(5, rng)});
  EXPECT_LT(max_abs_diff(p * p, p), 1e-12);
  EXPECT_LT(max_abs_diff(p.dagger(), p), 1e-12);
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-12);
}

TEST(Commutator, PauliAlgebra) {
  EXPECT_LT(max_abs_diff(commutator(pauli_x(), pauli_y()), pauli_z() * (2.0 * I)), 1e-15);
  EXPECT_EQ(commutator(ComplexMatrix::identity(2), pauli_x()).max_abs(), 0.0);
  EXPECT_EQ(commutator(ComplexMatrix::diag_real({1, 2}), ComplexMatrix::diag_real({3, 4})).max_abs(), 0.0);
  EXPECT_THROW(commutator(pauli_x(), ComplexMatrix::identity(3)), QhornError);
}
