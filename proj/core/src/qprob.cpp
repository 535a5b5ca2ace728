#include "qhorn/qprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhorn/errors.hpp"

namespace qhorn::qprob {

using linalg::cplx;

namespace {

void require_same_dim(const Projection& p, const Projection& q, const char* op) {
  if (p.dim() != q.dim()) throw DimensionError(std::string(op) + ": projection dimensions differ");
}

ComplexMatrix symmetrize(const ComplexMatrix& m) { return (m + m.dagger()) * cplx(0.5, 0.0); }

}  // namespace

Projection::Projection(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.square()) throw DimensionError("Projection: non-square matrix");
  if (!linalg::is_projector(m_, PROJECTION_TOL)) throw PreconditionError("Projection: matrix is not an orthogonal projector");
}

Projection Projection::zero(std::size_t n) { return Projection(ComplexMatrix(n, n)); }
Projection Projection::identity(std::size_t n) { return Projection(ComplexMatrix::identity(n)); }
Projection Projection::onto(const std::vector<ComplexVector>& vs) {
  return Projection(linalg::projector_from_vectors(vs));
}

std::size_t Projection::rank() const { return static_cast<std::size_t>(std::lround(m_.trace().real())); }

QuantumState::QuantumState(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (!rho_.square()) throw DimensionError("QuantumState: non-square density matrix");
  if (!linalg::is_hermitian(rho_, 1e-10)) throw PreconditionError("QuantumState: density matrix not Hermitian");
  if (std::abs(rho_.trace() - 1.0) > 1e-10) throw PreconditionError("QuantumState: trace differs from 1");
  const auto e = linalg::hermitian_eigen(rho_);
  if (!e.eigenvalues.empty() && e.eigenvalues.front() < -1e-9)
    throw PreconditionError("QuantumState: density matrix has a negative eigenvalue");
}

QuantumState QuantumState::pure(const ComplexVector& psi) {
  const auto v = linalg::normalized(psi);
  return QuantumState(linalg::outer(v, v));
}

QuantumState QuantumState::maximally_mixed(std::size_t n) {
  return QuantumState(ComplexMatrix::identity(n) * cplx(1.0 / static_cast<double>(n), 0.0));
}

SpectralDecomposition SpectralDecomposition::of(const ComplexMatrix& hermitian, double tol) {
  const auto e = linalg::hermitian_eigen(hermitian);
  SpectralDecomposition out;
  std::size_t k = 0;
  const std::size_t n = e.eigenvalues.size();
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n && e.eigenvalues[end] - e.eigenvalues[k] <= tol) ++end;
    std::vector<ComplexVector> vs;
    double mean = 0.0;
    for (std::size_t j = k; j < end; ++j) {
      vs.push_back(linalg::column(e.eigenvectors, j));
      mean += e.eigenvalues[j];
    }
    out.eigenvalues.push_back(mean / static_cast<double>(end - k));
    out.projectors.push_back(Projection::onto(vs));
    k = end;
  }
  return out;
}

ComplexMatrix SpectralDecomposition::observable() const {
  ComplexMatrix a(dim(), dim());
  for (std::size_t i = 0; i < projectors.size(); ++i) a += projectors[i].matrix() * cplx(eigenvalues[i], 0.0);
  return a;
}

double gleason_probability(const QuantumState& state, const Projection& e) {
  if (state.dim() != e.dim()) throw DimensionError("gleason_probability: dimension mismatch");
  double p = (state.rho() * e.matrix()).trace().real();
  if (p < 0.0 && p > -CLIP_WINDOW) p = 0.0;
  if (p > 1.0 && p < 1.0 + CLIP_WINDOW) p = 1.0;
  return p;
}

Projection lattice_meet(const Projection& p, const Projection& q) {
  require_same_dim(p, q, "lattice_meet");
  const std::size_t n = p.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix s = symmetrize((id - p.matrix()) + (id - q.matrix()));
  const auto e = linalg::hermitian_eigen(s);
  return Projection(linalg::spectral_window(e, -std::numeric_limits<double>::infinity(), linalg::RANK_TOL));
}

Projection lattice_join(const Projection& p, const Projection& q) {
  require_same_dim(p, q, "lattice_join");
  return Projection(linalg::range_projector(symmetrize(p.matrix() + q.matrix())));
}

Projection orthocomplement(const Projection& p) {
  return Projection(ComplexMatrix::identity(p.dim()) - p.matrix());
}

bool is_compatible(const Projection& p, const Projection& q) {
  require_same_dim(p, q, "is_compatible");
  return linalg::commutator(p.matrix(), q.matrix()).max_abs() < COMMUTANT_TOL;
}

bool same_projection(const Projection& p, const Projection& q, double tol) {
  return p.dim() == q.dim() && linalg::max_abs_diff(p.matrix(), q.matrix()) < tol;
}

bool check_automorphism(const ComplexMatrix& tau, const std::vector<Projection>& sample) {
  if (!linalg::is_unitary(tau)) throw PreconditionError("check_automorphism: tau is not unitary");
  const std::size_t n = tau.rows();
  const auto image = [&](const Projection& e) { return Projection(symmetrize(tau * e.matrix() * tau.dagger())); };
  if (!same_projection(image(Projection::zero(n)), Projection::zero(n))) return false;
  if (!same_projection(image(Projection::identity(n)), Projection::identity(n))) return false;
  for (const auto& e : sample) {
    if (e.dim() != n) throw DimensionError("check_automorphism: sample dimension mismatch");
    if (!same_projection(image(orthocomplement(e)), orthocomplement(image(e)))) return false;
  }
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i; j < sample.size(); ++j) {
      const auto& p = sample[i];
      const auto& q = sample[j];
      if (!same_projection(image(lattice_join(p, q)), lattice_join(image(p), image(q)))) return false;
      if (!same_projection(image(lattice_meet(p, q)), lattice_meet(image(p), image(q)))) return false;
    }
  return true;
}

bool in_commutant(const ComplexMatrix& d, const SpectralDecomposition& a) {
  return std::all_of(a.projectors.begin(), a.projectors.end(), [&](const Projection& p) {
    return linalg::commutator(d, p.matrix()).max_abs() < COMMUTANT_TOL;
  });
}

ComplexMatrix conditional_expectation(const ComplexMatrix& d, const SpectralDecomposition& a,
                                      const QuantumState& state) {
  if (d.rows() != a.dim() || state.dim() != a.dim())
    throw DimensionError("conditional_expectation: dimension mismatch");
  if (!in_commutant(d, a)) throw PreconditionError("not conditionable");
  ComplexMatrix out(a.dim(), a.dim());
  for (const auto& p : a.projectors) {
    const cplx den = (state.rho() * p.matrix()).trace();
    if (std::abs(den) <= NULL_EVENT_TOL) throw PreconditionError("null event");
    const cplx num = (state.rho() * d * p.matrix()).trace();
    out += p.matrix() * (num / den);
  }
  return out;
}

ComplexMatrix build_xprime(std::size_t a, std::size_t b, const std::vector<ComplexVector>& basis) {
  const std::size_t n = basis.size();
  if (a >= n || b >= n) throw DimensionError("build_xprime: level index out of range");
  for (const auto& v : basis)
    if (v.size() != n) throw DimensionError("build_xprime: basis vectors must span the space");
  if (a == b) return ComplexMatrix::identity(n);
  ComplexMatrix x = linalg::outer(basis[b], basis[a]) + linalg::outer(basis[a], basis[b]);
  for (std::size_t c = 0; c < n; ++c)
    if (c != a && c != b) x += linalg::outer(basis[c], basis[c]);
  return x;
}

namespace {

std::vector<ComplexVector> canonical_basis(std::size_t n) {
  std::vector<ComplexVector> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(linalg::basis_vector(n, i));
  return b;
}

ComplexMatrix probe_projector(std::size_t n, std::size_t c) {
  const auto e = linalg::basis_vector(n, c);
  return linalg::outer(e, e);
}

}  // namespace

ProbeSystem build_probe_unitary(const SpectralDecomposition& a, std::size_t p) {
  const std::size_t m = a.dim();
  if (a.projectors.size() != m || m < 2) throw PreconditionError("degenerate spectral data");
  if (p >= m) throw DimensionError("build_probe_unitary: pointer index out of range");
  const auto basis = canonical_basis(m);
  ComplexMatrix u(m * m, m * m);
  for (std::size_t k = 0; k < m; ++k) u += linalg::kron(a.projectors[k].matrix(), build_xprime(k, p, basis));
  if (!linalg::is_unitary(u)) throw PreconditionError("build_probe_unitary: result is not unitary");
  return ProbeSystem{m, a, p, std::move(u)};
}

ComplexMatrix probe_heisenberg_projector(const ProbeSystem& sys, std::size_t c) {
  const std::size_t m = sys.system_dim;
  const ComplexMatrix ipc = linalg::kron(ComplexMatrix::identity(m), probe_projector(m, c));
  return sys.unitary.dagger() * ipc * sys.unitary;
}

ComplexMatrix probe_identity_rhs(const ProbeSystem& sys, std::size_t c) {
  const std::size_t m = sys.system_dim;
  if (c >= m) throw DimensionError("probe_identity_rhs: outcome out of range");
  const auto& proj = sys.observable.projectors;
  if (c != sys.pointer_index) {
    const ComplexMatrix& pc = proj[c].matrix();
    return linalg::kron(pc, probe_projector(m, sys.pointer_index)) +
           linalg::kron(ComplexMatrix::identity(m) - pc, probe_projector(m, c));
  }
  ComplexMatrix r(m * m, m * m);
  for (std::size_t k = 0; k < m; ++k) r += linalg::kron(proj[k].matrix(), probe_projector(m, k));
  return r;
}

double probe_conditional_ratio(const ProbeSystem& sys, const QuantumState& state, std::size_t c) {
  const std::size_t m = sys.system_dim;
  if (state.dim() != m) throw DimensionError("probe_conditional_ratio: state dimension mismatch");
  const ComplexMatrix joint = linalg::kron(state.rho(), probe_projector(m, sys.pointer_index));
  const ComplexMatrix pc = linalg::kron(sys.observable.projectors[c].matrix(), ComplexMatrix::identity(m));
  const double den = (joint * pc).trace().real();
  if (den <= NULL_EVENT_TOL) throw PreconditionError("null event");
  const double num = (joint * probe_heisenberg_projector(sys, c) * pc).trace().real();
  return num / den;
}

double probe_disturbance(const SpectralDecomposition& a, const SpectralDecomposition& b,
                         const QuantumState& state) {
  const std::size_t m = a.dim();
  if (b.dim() != m || state.dim() != m) throw DimensionError("probe_disturbance: dimension mismatch");
  const auto basis = canonical_basis(m);
  const ComplexMatrix im = ComplexMatrix::identity(m);
  // system (x) probeA (x) probeB, both probes parked at pointer level 0
  ComplexMatrix ua(m * m * m, m * m * m), ub(m * m * m, m * m * m);
  for (std::size_t k = 0; k < a.projectors.size(); ++k)
    ua += linalg::kron_all({a.projectors[k].matrix(), build_xprime(k % m, 0, basis), im});
  for (std::size_t k = 0; k < b.projectors.size(); ++k)
    ub += linalg::kron_all({b.projectors[k].matrix(), im, build_xprime(k % m, 0, basis)});
  const ComplexMatrix p0 = probe_projector(m, 0);
  ComplexMatrix rho = linalg::kron_all({state.rho(), p0, p0});
  rho = ua * rho * ua.dagger();
  rho = ub * rho * ub.dagger();
  const ComplexMatrix reduced = linalg::partial_trace(rho, {m, m, m}, {0});
  double worst = 0.0;
  for (const auto& p : a.projectors) {
    const double before = (state.rho() * p.matrix()).trace().real();
    const double after = (reduced * p.matrix()).trace().real();
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

}  // namespace qhorn::qprob
