#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <vector>

namespace qhorn::linalg {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

inline constexpr double HERMITICITY_TOL = 1e-10;
inline constexpr double RANK_TOL = 1e-10;
inline constexpr double UNITARITY_TOL = 1e-9;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diag(const std::vector<cplx>& d);
  static ComplexMatrix diag_real(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);

// max_ij |a_ij - b_ij|; throws on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);
// Operator on the listed factors (in that order) extended by identity on the rest.
ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& targets);
// Reduced state on the listed factors, ordered as listed.
ComplexMatrix reduced_state(const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& targets);
HermitianEigen hermitian_eigen(const ComplexMatrix& a);
ComplexMatrix matrix_exp(const ComplexMatrix& a);
ComplexMatrix projector_from_vectors(const std::vector<ComplexVector>& vs);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Gauss-Jordan inverse with partial pivoting; throws on singular input.
ComplexMatrix inverse(const ComplexMatrix& a);

// Singular values, descending, by one-sided Jacobi.
std::vector<double> singular_values(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = HERMITICITY_TOL);
bool is_unitary(const ComplexMatrix& a, double tol = UNITARITY_TOL);
bool is_projector(const ComplexMatrix& a, double tol = HERMITICITY_TOL);

// Projector onto eigenvectors of a Hermitian matrix whose eigenvalue lies in [lo, hi].
ComplexMatrix spectral_window(const HermitianEigen& e, double lo, double hi);
// Projector onto the range of a positive semidefinite matrix.
ComplexMatrix range_projector(const ComplexMatrix& psd);

cplx inner(const ComplexVector& u, const ComplexVector& v);  // conjugate-linear in u
double norm(const ComplexVector& v);
ComplexVector normalized(const ComplexVector& v);
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);  // |u><v|
ComplexVector basis_vector(std::size_t dim, std::size_t i);
ComplexVector column(const ComplexMatrix& m, std::size_t j);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Random fixtures for property checks.
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng);
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);
ComplexMatrix random_density(std::size_t n, std::mt19937_64& rng);
ComplexVector random_state(std::size_t n, std::mt19937_64& rng);

}  // namespace qhorn::linalg
