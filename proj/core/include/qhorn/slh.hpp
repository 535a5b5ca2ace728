#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qhorn/linalg.hpp"
#include "qhorn/opexpr.hpp"

namespace qhorn::slh {

using linalg::ComplexMatrix;
using linalg::cplx;

// Symbolic SLH triple; numeric matrices come from evaluate().
struct SLHTriple {
  std::vector<std::vector<OpExpr>> S;
  std::vector<OpExpr> L;
  OpExpr H;

  std::size_t n_channels() const { return L.size(); }
  std::vector<Factor> factors() const;
};

struct NumericSLH {
  Space space;
  std::vector<std::vector<ComplexMatrix>> S;
  std::vector<ComplexMatrix> L;
  ComplexMatrix H;
};

NumericSLH evaluate(const SLHTriple& g, const Space& space);
NumericSLH evaluate(const SLHTriple& g, std::size_t fock_cutoff);

// max |sum_l S_il S_jl^dag - delta_ij I| over the block matrix
double scattering_unitarity_residual(const NumericSLH& g);
double hamiltonian_hermiticity_residual(const NumericSLH& g);

SLHTriple passthrough(std::size_t n_channels);
SLHTriple permutation_triple(const std::vector<std::size_t>& perm);
SLHTriple laser_triple(cplx alpha, std::size_t n_channels);

// Throws when g1 and g2 act on a common factor that is not listed in shared.
SLHTriple concatenate(const SLHTriple& g1, const SLHTriple& g2, const std::vector<Factor>& shared = {});
SLHTriple series(const SLHTriple& g2, const SLHTriple& g1);
// Output channel i carries input channel perm[i].
SLHTriple permute_channels(const SLHTriple& g, const std::vector<std::size_t>& perm);

struct JCParams {
  double kappa = 10.0;
  double gamma = 0.1;
  double Delta = 0.0;
  double Theta = 0.0;
  double g = 1.0;
  cplx alpha = 1.0;
  std::size_t fock_cutoff = 3;

  // Reference parameter set fixed for the cascade experiments.
  static JCParams reference() { return JCParams{}; }
};

SLHTriple jc_triple(const JCParams& p, const std::string& component);
SLHTriple jc_cascade(const JCParams& p);
SLHTriple adiabatic_jc_cascade(const JCParams& p);

struct AdiabaticData {
  ComplexMatrix Y, A, B;
  std::vector<ComplexMatrix> F, G;
  std::vector<std::vector<ComplexMatrix>> W;
  ComplexMatrix P0, P1;
};

struct AssumptionReport {
  std::vector<std::pair<std::string, double>> residuals;
  double get(const std::string& name) const;
  double max_for(const std::string& prefix) const;
};

AssumptionReport check_adiabatic_assumptions(const AdiabaticData& d, double k);

std::string describe(const SLHTriple& g);
std::string describe_numeric(const NumericSLH& g);

}  // namespace qhorn::slh
