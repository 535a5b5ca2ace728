#pragma once

#include <cstddef>
#include <vector>

#include "qhorn/linalg.hpp"

namespace qhorn::qprob {

using linalg::ComplexMatrix;
using linalg::ComplexVector;

inline constexpr double PROJECTION_TOL = 1e-10;
inline constexpr double COMMUTANT_TOL = 1e-9;
inline constexpr double CLIP_WINDOW = 1e-12;
inline constexpr double NULL_EVENT_TOL = 1e-12;

class Projection {
 public:
  // Throws PreconditionError unless m is an orthogonal projector within PROJECTION_TOL.
  explicit Projection(ComplexMatrix m);
  static Projection zero(std::size_t n);
  static Projection identity(std::size_t n);
  static Projection onto(const std::vector<ComplexVector>& vs);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  std::size_t rank() const;

 private:
  ComplexMatrix m_;
};

class QuantumState {
 public:
  explicit QuantumState(ComplexMatrix rho);
  static QuantumState pure(const ComplexVector& psi);
  static QuantumState maximally_mixed(std::size_t n);

  const ComplexMatrix& rho() const { return rho_; }
  std::size_t dim() const { return rho_.rows(); }

 private:
  ComplexMatrix rho_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // distinct, ascending
  std::vector<Projection> projectors;

  // Groups the eigenvalues of a Hermitian matrix that agree within tol.
  static SpectralDecomposition of(const ComplexMatrix& hermitian, double tol = 1e-9);
  std::size_t dim() const { return projectors.empty() ? 0 : projectors.front().dim(); }
  ComplexMatrix observable() const;
};

struct ProbeSystem {
  std::size_t system_dim = 0;
  SpectralDecomposition observable;
  std::size_t pointer_index = 0;
  ComplexMatrix unitary;  // on system (x) probe
};

double gleason_probability(const QuantumState& state, const Projection& e);
Projection lattice_meet(const Projection& p, const Projection& q);
Projection lattice_join(const Projection& p, const Projection& q);
Projection orthocomplement(const Projection& p);
bool is_compatible(const Projection& p, const Projection& q);
bool check_automorphism(const ComplexMatrix& tau, const std::vector<Projection>& sample);
bool same_projection(const Projection& p, const Projection& q, double tol = 1e-9);

// True when d commutes with every spectral projector of a.
bool in_commutant(const ComplexMatrix& d, const SpectralDecomposition& a);
ComplexMatrix conditional_expectation(const ComplexMatrix& d, const SpectralDecomposition& a,
                                      const QuantumState& state);

// Level-swap unitary exchanging basis[a] and basis[b]; identity when a == b.
ComplexMatrix build_xprime(std::size_t a, std::size_t b, const std::vector<ComplexVector>& basis);
// U = sum_a P_a (x) X'_{a p}, probe basis canonical.
ProbeSystem build_probe_unitary(const SpectralDecomposition& a, std::size_t p);

// U^dag (I (x) P'_c) U for the probe system.
ComplexMatrix probe_heisenberg_projector(const ProbeSystem& sys, std::size_t c);
// The closed-form right-hand side of the copy identity for outcome c.
ComplexMatrix probe_identity_rhs(const ProbeSystem& sys, std::size_t c);
// Conditional ratio P(U^dag(I(x)P'_c)U (P_c(x)I)) / P(P_c(x)I) in state rho (x) |p><p|.
double probe_conditional_ratio(const ProbeSystem& sys, const QuantumState& state, std::size_t c);

// Statistics of A after probing A then B on system (x) probeA (x) probeB, compared to before.
double probe_disturbance(const SpectralDecomposition& a, const SpectralDecomposition& b,
                         const QuantumState& state);

}  // namespace qhorn::qprob
