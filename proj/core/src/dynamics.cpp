#include "qhorn/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qhorn/errors.hpp"

namespace qhorn::dynamics {

namespace {

const cplx I{0.0, 1.0};

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.dagger()) * cplx(0.5, 0.0); }

ComplexMatrix parity_zz() { return ComplexMatrix::diag_real({1.0, -1.0, -1.0, 1.0}); }

}  // namespace

LindbladModel::LindbladModel(ComplexMatrix h, std::vector<ComplexMatrix> ls) : H(std::move(h)), Ls(std::move(ls)) {
  if (!H.square()) throw DimensionError("LindbladModel: H not square");
  dim = H.rows();
  if (!linalg::is_hermitian(H, linalg::UNITARITY_TOL)) throw PreconditionError("LindbladModel: H is not Hermitian");
  for (const auto& l : Ls)
    if (l.rows() != dim || l.cols() != dim) throw DimensionError("LindbladModel: coupling operator dimension");
}

LindbladModel lindblad_from_slh(const slh::NumericSLH& g) { return LindbladModel(g.H, g.L); }

LindbladModel lindblad_from_slh(const slh::SLHTriple& g, std::size_t fock_cutoff) {
  return lindblad_from_slh(slh::evaluate(g, fock_cutoff));
}

ComplexMatrix lindblad_rhs(const LindbladModel& m, const ComplexMatrix& rho) {
  // -i (K rho - rho K^dag) + sum L rho L^dag with K = H - (i/2) sum L^dag L
  ComplexMatrix k = m.H;
  for (const auto& l : m.Ls) k -= (l.dagger() * l) * (0.5 * I);
  const ComplexMatrix krho = k * rho;
  ComplexMatrix d = (krho - krho.dagger()) * (-I);
  for (const auto& l : m.Ls) d += l * rho * l.dagger();
  return d;
}

Trajectory rk4_integrate(const LindbladModel& m, const ComplexMatrix& rho0, double t_max, double dt) {
  if (!(dt > 0.0)) throw PreconditionError("rk4_integrate: dt must be positive");
  if (!(t_max >= 0.0)) throw PreconditionError("rk4_integrate: t_max must be nonnegative");
  if (rho0.rows() != m.dim || rho0.cols() != m.dim) throw DimensionError("rk4_integrate: state dimension");
  const bool two_qubit = m.dim == 4;
  const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
  const double tr0 = rho0.trace().real();
  Trajectory out;
  out.times.reserve(steps + 1);
  out.states.reserve(steps + 1);
  const auto record = [&](double t, const ComplexMatrix& rho) {
    out.times.push_back(t);
    out.states.push_back(rho);
    out.trace.push_back(rho.trace().real());
    out.purity.push_back((rho * rho).trace().real());
    if (two_qubit) out.concurrence.push_back(wootters_concurrence(rho));
  };
  ComplexMatrix rho = hermitian_part(rho0);
  record(0.0, rho);
  const cplx h(dt, 0.0), half(0.5 * dt, 0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    const ComplexMatrix k1 = lindblad_rhs(m, rho);
    const ComplexMatrix k2 = lindblad_rhs(m, rho + k1 * half);
    const ComplexMatrix k3 = lindblad_rhs(m, rho + k2 * half);
    const ComplexMatrix k4 = lindblad_rhs(m, rho + k3 * h);
    rho += (k1 + k2 * cplx(2.0, 0.0) + k3 * cplx(2.0, 0.0) + k4) * cplx(dt / 6.0, 0.0);
    rho = hermitian_part(rho);
    if (!rho.all_finite() || std::abs(rho.trace().real() - tr0) > TRACE_DRIFT_LIMIT)
      throw PreconditionError("step size too large");
    record(static_cast<double>(s) * dt, rho);
  }
  return out;
}

double wootters_concurrence(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("wootters_concurrence: two-qubit state required");
  if (!linalg::is_hermitian(rho, 1e-9)) throw PreconditionError("wootters_concurrence: not a state (non-Hermitian)");
  if (std::abs(rho.trace() - 1.0) > 1e-6) throw PreconditionError("wootters_concurrence: not a state (trace)");
  const auto e = linalg::hermitian_eigen(hermitian_part(rho));
  if (e.eigenvalues.front() < -1e-7) throw PreconditionError("wootters_concurrence: not a state (negative eigenvalue)");
  // rho = W W^dag with W columns sqrt(p_k) v_k; the lambdas are the singular values of W^T (Y(x)Y) W
  ComplexMatrix w(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double sp = std::sqrt(std::max(0.0, e.eigenvalues[k]));
    for (std::size_t i = 0; i < 4; ++i) w(i, k) = sp * e.eigenvectors(i, k);
  }
  const ComplexMatrix yy = linalg::kron(linalg::pauli_y(), linalg::pauli_y());
  const auto sv = linalg::singular_values(w.transpose() * yy * w);
  return std::max(0.0, sv[0] - sv[1] - sv[2] - sv[3]);
}

bool is_x_state(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != 4 || rho.cols() != 4) return false;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(rho(i, j)) > tol) return false;
  return true;
}

bool preserves_x_pattern(const LindbladModel& m) {
  if (m.dim != 4) return false;
  const ComplexMatrix z = parity_zz();
  if ((m.H * z - z * m.H).max_abs() > 1e-12) return false;
  for (const auto& l : m.Ls) {
    const bool even = (l * z - z * l).max_abs() <= 1e-12;
    const bool odd = (l * z + z * l).max_abs() <= 1e-12;
    if (!even && !odd) return false;
  }
  return true;
}

std::size_t two_atom_index(const std::string& label) {
  if (label.size() != 2) throw PreconditionError("initial state must be one of ee, eg, ge, gg");
  const auto bit = [&](char c) -> std::size_t {
    if (c == 'e') return 1;
    if (c == 'g') return 0;
    throw PreconditionError("initial state must be one of ee, eg, ge, gg");
  };
  return bit(label[0]) * 2 + bit(label[1]);
}

Trajectory run_jc_cascade(const slh::JCParams& p, const std::string& initial, double t_max, double dt) {
  const std::size_t idx = two_atom_index(initial);
  const LindbladModel m = lindblad_from_slh(slh::adiabatic_jc_cascade(p), p.fock_cutoff);
  if (m.dim != 4) throw DimensionError("run_jc_cascade: adiabatic model is not two-qubit");
  ComplexMatrix rho0(4, 4);
  rho0(idx, idx) = 1.0;
  Trajectory t = rk4_integrate(m, rho0, t_max, dt);
  if (preserves_x_pattern(m))
    for (const auto& rho : t.states)
      if (!is_x_state(rho, 1e-12)) throw QhornError("run_jc_cascade: X-pattern lost along the flow");
  return t;
}

double max_concurrence(const Trajectory& t) {
  double m = 0.0;
  for (double c : t.concurrence) m = std::max(m, c);
  return m;
}

}  // namespace qhorn::dynamics
