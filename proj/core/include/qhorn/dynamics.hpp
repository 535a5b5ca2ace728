#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qhorn/linalg.hpp"
#include "qhorn/slh.hpp"

namespace qhorn::dynamics {

using linalg::ComplexMatrix;
using linalg::cplx;

inline constexpr double TRACE_DRIFT_LIMIT = 1e-6;

struct LindbladModel {
  ComplexMatrix H;
  std::vector<ComplexMatrix> Ls;
  std::size_t dim = 0;

  LindbladModel() = default;
  LindbladModel(ComplexMatrix h, std::vector<ComplexMatrix> ls);
};

LindbladModel lindblad_from_slh(const slh::NumericSLH& g);
LindbladModel lindblad_from_slh(const slh::SLHTriple& g, std::size_t fock_cutoff);

// -i[H, rho] + sum_k (L rho L^dag - {L^dag L, rho} / 2)
ComplexMatrix lindblad_rhs(const LindbladModel& m, const ComplexMatrix& rho);

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::vector<double> trace;
  std::vector<double> purity;
  std::vector<double> concurrence;  // filled only for two-qubit models
};

// Classical RK4; throws "step size too large" once |tr rho - tr rho0| exceeds TRACE_DRIFT_LIMIT.
Trajectory rk4_integrate(const LindbladModel& m, const ComplexMatrix& rho0, double t_max, double dt);

double wootters_concurrence(const ComplexMatrix& rho);

// Nonzero entries only on the diagonal and anti-diagonal.
bool is_x_state(const ComplexMatrix& rho, double tol = 1e-12);
// Generator maps X-states to X-states: H commutes with Z(x)Z, each L has definite Z(x)Z parity.
bool preserves_x_pattern(const LindbladModel& m);

// Basis index of |ee>, |eg>, |ge>, |gg> (first letter: atom of jc1; g = 0, e = 1).
std::size_t two_atom_index(const std::string& label);

Trajectory run_jc_cascade(const slh::JCParams& p, const std::string& initial, double t_max, double dt);

double max_concurrence(const Trajectory& t);

}  // namespace qhorn::dynamics
