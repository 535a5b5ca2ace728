#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhorn/errors.hpp"
#include "qhorn/qprob.hpp"

using namespace qhorn;
using namespace qhorn::qprob;
using linalg::basis_vector;
using linalg::cplx;
using linalg::max_abs_diff;

namespace {

// The two incompatible rank-1 projectors at angle +-theta to |0>, cos^2 theta = 0.9999999.
struct Lantern {
  double theta = std::acos(std::sqrt(0.9999999));
  Projection p = Projection::onto({ComplexVector{std::cos(theta), std::sin(theta)}});
  Projection q = Projection::onto({ComplexVector{std::cos(theta), -std::sin(theta)}});
};

QuantumState ket0() { return QuantumState::pure(basis_vector(2, 0)); }

ComplexMatrix nondegenerate(std::size_t m, std::mt19937_64& rng) {
  std::vector<double> ev(m);
  for (std::size_t i = 0; i < m; ++i) ev[i] = 1.5 * static_cast<double>(i) - 1.0;
  const auto u = linalg::random_unitary(m, rng);
  return u * ComplexMatrix::diag_real(ev) * u.dagger();
}

}  // namespace

TEST(Projection, RejectsNonProjector) {
  EXPECT_THROW(Projection(ComplexMatrix::diag_real({1.0, 0.5})), PreconditionError);
}

TEST(Gleason, Examples) {
  EXPECT_NEAR(gleason_probability(ket0(), Projection::onto({basis_vector(2, 0)})), 1.0, 1e-15);
  const Lantern l;
  EXPECT_NEAR(gleason_probability(ket0(), l.p), 0.9999999, 1e-12);
  EXPECT_NEAR(gleason_probability(ket0(), l.q), 0.9999999, 1e-12);
  std::mt19937_64 rng(1);
  const auto e = Projection::onto({linalg::random_state(2, rng)});
  EXPECT_NEAR(gleason_probability(QuantumState::maximally_mixed(2), e), 0.5, 1e-12);
}

TEST(Gleason, AdditiveOnOrthogonalProjections) {
  std::mt19937_64 rng(2);
  const QuantumState s(linalg::random_density(3, rng));
  const auto e = Projection::onto({basis_vector(3, 0)}), f = Projection::onto({basis_vector(3, 2)});
  EXPECT_NEAR(gleason_probability(s, lattice_join(e, f)), gleason_probability(s, e) + gleason_probability(s, f), 1e-12);
}

TEST(Lattice, MeetExamples) {
  const Lantern l;
  EXPECT_TRUE(same_projection(lattice_meet(l.p, l.p), l.p));
  EXPECT_EQ(lattice_meet(l.p, l.q).rank(), 0u);
  EXPECT_NEAR(gleason_probability(ket0(), lattice_meet(l.p, l.q)), 0.0, 1e-15);
  EXPECT_TRUE(same_projection(lattice_meet(Projection::identity(2), l.q), l.q));
}

TEST(Lattice, JoinExamples) {
  const Lantern l;
  const auto p0 = Projection::onto({basis_vector(2, 0)}), p1 = Projection::onto({basis_vector(2, 1)});
  EXPECT_TRUE(same_projection(lattice_join(Projection::zero(2), l.q), l.q));
  EXPECT_TRUE(same_projection(lattice_join(p0, p1), Projection::identity(2)));
  EXPECT_TRUE(same_projection(lattice_join(l.p, l.q), Projection::identity(2)));
}

TEST(Lattice, Orthocomplement) {
  std::mt19937_64 rng(3);
  EXPECT_TRUE(same_projection(orthocomplement(Projection::zero(3)), Projection::identity(3)));
  const auto p = Projection::onto({linalg::random_state(3, rng)});
  EXPECT_TRUE(same_projection(lattice_join(p, orthocomplement(p)), Projection::identity(3)));
  EXPECT_EQ(lattice_meet(p, orthocomplement(p)).rank(), 0u);
  EXPECT_TRUE(same_projection(orthocomplement(orthocomplement(p)), p));
}

TEST(Lattice, DeMorgan) {
  std::mt19937_64 rng(4);
  const auto p = Projection::onto({linalg::random_state(3, rng)});
  const auto q = Projection::onto({linalg::random_state(3, rng)});
  EXPECT_TRUE(same_projection(orthocomplement(lattice_join(p, q)),
                              lattice_meet(orthocomplement(p), orthocomplement(q))));
}

TEST(Lattice, DistributivityFailsOnIncompatibleSample) {
  const Lantern l;
  const auto lhs = lattice_meet(l.p, lattice_join(l.q, orthocomplement(l.q)));
  const auto rhs = lattice_join(lattice_meet(l.p, l.q), lattice_meet(l.p, orthocomplement(l.q)));
  EXPECT_FALSE(same_projection(lhs, rhs));
}

TEST(Lattice, DistributivityHoldsOnCommutingSample) {
  const auto a = Projection::onto({basis_vector(3, 0)});
  const auto b = Projection::onto({basis_vector(3, 1)});
  const auto c = Projection::onto({basis_vector(3, 0), basis_vector(3, 2)});
  EXPECT_TRUE(same_projection(lattice_meet(a, lattice_join(b, c)),
                              lattice_join(lattice_meet(a, b), lattice_meet(a, c))));
}

TEST(Compatibility, Examples) {
  const Lantern l;
  EXPECT_TRUE(is_compatible(Projection::onto({basis_vector(2, 0)}), Projection::onto({basis_vector(2, 1)})));
  EXPECT_FALSE(is_compatible(l.p, l.q));
  const auto pq = Projection(linalg::kron(l.p.matrix(), ComplexMatrix::identity(2)));
  const auto iq = Projection(linalg::kron(ComplexMatrix::identity(2), l.q.matrix()));
  EXPECT_TRUE(is_compatible(pq, iq));
}

TEST(Automorphism, Examples) {
  const double h = std::sqrt(0.5);
  const std::vector<Projection> sample{Projection::zero(2), Projection::identity(2),
                                       Projection::onto({basis_vector(2, 0)}), Projection::onto({basis_vector(2, 1)})};
  EXPECT_TRUE(check_automorphism(ComplexMatrix::identity(2), sample));
  EXPECT_TRUE(check_automorphism(ComplexMatrix{{h, h}, {h, -h}}, sample));
  EXPECT_THROW(check_automorphism(ComplexMatrix::diag_real({1.0, 0.5}), sample), PreconditionError);
}

TEST(ConditionalExpectation, Examples) {
  std::mt19937_64 rng(5);
  const auto a = SpectralDecomposition::of(ComplexMatrix::diag_real({1.0, 1.0, -2.0}));
  const QuantumState s(linalg::random_density(3, rng));
  EXPECT_LT(max_abs_diff(conditional_expectation(ComplexMatrix::identity(3), a, s), ComplexMatrix::identity(3)),
            1e-12);
  const auto sz = SpectralDecomposition::of(linalg::pauli_z());
  EXPECT_THROW(conditional_expectation(linalg::pauli_x(), sz, QuantumState::maximally_mixed(2)), PreconditionError);
  EXPECT_THROW(conditional_expectation(linalg::pauli_z(), sz, ket0()), PreconditionError);  // null event
}

TEST(ConditionalExpectation, TowerProperty) {
  std::mt19937_64 rng(6);
  const auto a = SpectralDecomposition::of(ComplexMatrix::diag_real({1.0, 1.0, -2.0}));
  ComplexMatrix d(3, 3);
  d(0, 0) = 0.3;
  d(0, 1) = cplx(0.2, 0.1);
  d(1, 0) = cplx(0.2, -0.1);
  d(1, 1) = -1.0;
  d(2, 2) = 4.0;
  ASSERT_TRUE(in_commutant(d, a));
  const QuantumState s(linalg::random_density(3, rng));
  const auto ce = conditional_expectation(d, a, s);
  for (const auto& p : a.projectors)
    EXPECT_NEAR((s.rho() * ce * p.matrix()).trace().real(), (s.rho() * d * p.matrix()).trace().real(), 1e-9);
}

TEST(XPrime, Examples) {
  const std::vector<ComplexVector> qubit{basis_vector(2, 0), basis_vector(2, 1)};
  EXPECT_LT(max_abs_diff(build_xprime(1, 1, qubit), ComplexMatrix::identity(2)), 1e-15);
  EXPECT_LT(max_abs_diff(build_xprime(0, 1, qubit), linalg::pauli_x()), 1e-15);
  for (std::size_t m = 2; m <= 5; ++m) {
    std::vector<ComplexVector> basis;
    for (std::size_t i = 0; i < m; ++i) basis.push_back(basis_vector(m, i));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const auto x = build_xprime(a, b, basis);
        EXPECT_TRUE(linalg::is_unitary(x));
        EXPECT_LT(max_abs_diff(x * x, ComplexMatrix::identity(m)), 1e-14);
      }
  }
  EXPECT_THROW(build_xprime(0, 2, qubit), QhornError);
}

TEST(Probe, RejectsDegenerateSpectrum) {
  EXPECT_THROW(build_probe_unitary(SpectralDecomposition::of(ComplexMatrix::diag_real({1.0, 1.0, 2.0})), 0),
               PreconditionError);
}

// Both branches of the copy identity: c equal to and different from the pointer level.
TEST(Probe, IdentityHoldsOnBothBranches) {
  std::mt19937_64 rng(7);
  for (std::size_t m = 2; m <= 4; ++m)
    for (std::size_t p = 0; p < m; ++p) {
      const auto sys = build_probe_unitary(SpectralDecomposition::of(nondegenerate(m, rng)), p);
      EXPECT_TRUE(linalg::is_unitary(sys.unitary));
      for (std::size_t c = 0; c < m; ++c)
        EXPECT_LT(max_abs_diff(probe_heisenberg_projector(sys, c), probe_identity_rhs(sys, c)), 1e-10)
            << "m=" << m << " p=" << p << " c=" << c;
    }
}

TEST(Probe, CopiesStatistics) {
  std::mt19937_64 rng(8);
  const auto sd = SpectralDecomposition::of(nondegenerate(3, rng));
  const auto sys = build_probe_unitary(sd, 0);
  const QuantumState s(linalg::random_density(3, rng));
  const ComplexMatrix joint = linalg::kron(s.rho(), linalg::outer(basis_vector(3, 0), basis_vector(3, 0)));
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_NEAR((joint * probe_heisenberg_projector(sys, c)).trace().real(),
                (s.rho() * sd.projectors[c].matrix()).trace().real(), 1e-12);
    EXPECT_NEAR(probe_conditional_ratio(sys, s, c), 1.0, 1e-10);
  }
}

TEST(Probe, Disturbance) {
  const auto sz = SpectralDecomposition::of(linalg::pauli_z());
  const auto sx = SpectralDecomposition::of(linalg::pauli_x());
  EXPECT_GT(probe_disturbance(sz, sx, ket0()), 0.1);
  EXPECT_LT(probe_disturbance(sz, sz, ket0()), 1e-10);
  std::mt19937_64 rng(9);
  const QuantumState s(linalg::random_density(2, rng));
  EXPECT_LT(probe_disturbance(sz, SpectralDecomposition::of(ComplexMatrix::diag_real({3.0, -1.0})), s), 1e-10);
}
