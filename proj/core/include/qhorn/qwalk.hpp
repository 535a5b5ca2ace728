#pragma once

#include <cstddef>
#include <vector>

#include "qhorn/linalg.hpp"

namespace qhorn::qwalk {

using linalg::ComplexMatrix;
using linalg::ComplexVector;

inline constexpr std::size_t MAX_FLOW_DIM = 4096;
inline constexpr std::size_t MAX_CHAIN = 12;

// Coin unitary plus a walker shift per coin outcome (ring of walker_dim sites).
struct CoinSpec {
  std::size_t d = 2;
  ComplexMatrix coin;
  std::vector<int> shifts;

  static CoinSpec hadamard();
  static CoinSpec trivial(std::size_t d);
};

// theta_i^j as superoperators on row-major vec(X) of walker operators.
class StructureMaps {
 public:
  StructureMaps(std::size_t d, std::size_t walker_dim, std::vector<ComplexMatrix> supers);

  std::size_t d() const { return d_; }
  std::size_t walker_dim() const { return w_; }
  ComplexMatrix apply(std::size_t i, std::size_t j, const ComplexMatrix& x) const;
  // Full homomorphism Theta(X) as a (walker (x) coin) operator with coin last.
  ComplexMatrix theta(const ComplexMatrix& x) const;
  const ComplexMatrix& superoperator(std::size_t i, std::size_t j) const { return supers_[i * d_ + j]; }

 private:
  std::size_t d_;
  std::size_t w_;
  std::vector<ComplexMatrix> supers_;
};

// Generic construction: theta_i^j(X) = sum_k conj(V[k,i]) V[k,j] C_k^dag X C_k.
StructureMaps structure_maps_from(const ComplexMatrix& v, const std::vector<ComplexMatrix>& carriers);

StructureMaps build_structure_maps(const CoinSpec& coin, std::size_t walker_dim);

struct FlowOperator {
  std::size_t n = 0;
  std::size_t walker_dim = 0;
  std::size_t d = 0;
  ComplexMatrix matrix;  // walker (x) slot_1 (x) ... (x) slot_n
};

// j_n(X) = sum_ij j_{n-1}(theta_i^j X) (x) |e_i><e_j|, j_0(X) = X.
class QuantumFlow {
 public:
  QuantumFlow(StructureMaps maps, std::size_t n);

  std::size_t steps() const { return n_; }
  const StructureMaps& maps() const { return maps_; }
  FlowOperator apply(const ComplexMatrix& x) const;
  QuantumFlow step() const { return QuantumFlow(maps_, n_ + 1); }

 private:
  ComplexMatrix recurse(const ComplexMatrix& x, std::size_t n) const;
  StructureMaps maps_;
  std::size_t n_;
};

// One application of the recursion on top of a flow at step prev_n.
FlowOperator flow_step(const QuantumFlow& prev, const ComplexMatrix& x);

// Partial expectation of the slots beyond keep in the product state vacuum^(x)(n-keep).
ComplexMatrix condition_on_past(const FlowOperator& op, const ComplexVector& vacuum, std::size_t keep);
inline ComplexMatrix condition_on_past(const FlowOperator& op, const ComplexVector& vacuum) {
  return condition_on_past(op, vacuum, 0);
}

struct WalkState {
  std::size_t n = 0;
  std::vector<linalg::cplx> psi_r;  // index x + n, x in [-n, n]
  std::vector<linalg::cplx> psi_l;

  static WalkState localized(linalg::cplx right = 1.0, linalg::cplx left = 0.0);
  double norm2() const;
};

WalkState hadamard_step(const WalkState& s);
WalkState hadamard_walk(std::size_t steps, const WalkState& start = WalkState::localized());
std::vector<double> position_distribution(const WalkState& s);
double distribution_stddev(const std::vector<double>& prob);  // positions x = i - (size-1)/2

// Full walk step unitary S (coin (x) walker) on a ring, coin first.
ComplexMatrix walk_unitary(const CoinSpec& coin, std::size_t ring);

struct NoiseOps {
  ComplexMatrix a;        // A_n
  ComplexMatrix a_dag;    // A_n^dag
  ComplexMatrix lambda;   // sum a_k^dag a_k
};
ComplexMatrix slot_annihilator(std::size_t k, std::size_t chain_len);  // k is 1-based
NoiseOps discrete_noise_ops(std::size_t n, std::size_t chain_len);
// diag(n - 2|U|) on basis e_U, U the excited slots among the first n; exposed for comparison.
ComplexMatrix printed_lambda(std::size_t n, std::size_t chain_len);

ComplexMatrix markov_chain_unitary(const std::vector<double>& p_row, std::size_t d);

struct FunctionalDecomposition {
  std::vector<double> p;                          // p_j, sums to 1, p_0 > 0
  std::vector<std::vector<std::size_t>> maps;     // phi_j(s)
};
// Writes a row-stochastic T as T[s][t] = sum_j p_j [phi_j(s) == t].
FunctionalDecomposition functional_decomposition(const std::vector<std::vector<double>>& t);

// Structure maps of the pullbacks f -> f o phi_j; meaningful on diagonal (function) observables.
StructureMaps embed_markov_chain(const std::vector<double>& p, const std::vector<std::vector<std::size_t>>& maps);
StructureMaps embed_markov_chain(const std::vector<std::vector<double>>& t);

}  // namespace qhorn::qwalk
