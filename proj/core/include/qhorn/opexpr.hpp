#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qhorn/linalg.hpp"

namespace qhorn::slh {

using linalg::ComplexMatrix;
using linalg::cplx;

enum class FactorKind { Tls = 0, Fock = 1 };

// A tensor factor, e.g. the atom or the cavity mode of component "jc1".
struct Factor {
  std::string component;
  FactorKind kind = FactorKind::Tls;

  std::string label() const { return (kind == FactorKind::Tls ? "tls_" : "fock_") + component; }
  auto operator<=>(const Factor&) const = default;
};

// Normal form of an operator on a single factor.
// Tls: code in {0: sigma_{g,e}, 1: sigma_{e,g}, 2: Pi_e}. Fock: (a^dag)^m a^n.
struct FactorOp {
  Factor factor;
  int m = 0;
  int n = 0;
  auto operator<=>(const FactorOp&) const = default;
};

using Word = std::vector<FactorOp>;  // sorted by factor, identity factors omitted

// Ordered list of factors with evaluation dimensions.
struct Space {
  std::vector<Factor> factors;
  std::size_t fock_cutoff = 3;

  std::vector<std::size_t> dims() const;
  std::size_t dim() const;
  std::size_t index_of(const Factor& f) const;
};

// Polynomial in the letters a, a^dag, sigma, sigma^dag, Pi_e with complex coefficients.
class OpExpr {
 public:
  OpExpr() = default;
  OpExpr(cplx c);  // NOLINT: scalars promote implicitly

  static OpExpr sigma(const std::string& component);      // |g><e|
  static OpExpr sigma_dag(const std::string& component);  // |e><g|
  static OpExpr pi_e(const std::string& component);       // |e><e|
  static OpExpr a(const std::string& component);
  static OpExpr a_dag(const std::string& component);

  OpExpr& operator+=(const OpExpr& o);
  OpExpr& operator-=(const OpExpr& o);
  friend OpExpr operator+(OpExpr x, const OpExpr& y) { return x += y; }
  friend OpExpr operator-(OpExpr x, const OpExpr& y) { return x -= y; }
  friend OpExpr operator-(const OpExpr& x) { return x * cplx(-1.0, 0.0); }
  friend OpExpr operator*(const OpExpr& x, const OpExpr& y);

  OpExpr dagger() const;
  bool is_zero(double tol = 1e-14) const;
  // Scalar value when the expression is a multiple of the identity.
  bool is_scalar(double tol = 1e-14) const;
  cplx scalar_part() const;
  std::vector<Factor> factors() const;
  const std::map<Word, cplx>& terms() const { return terms_; }

  ComplexMatrix evaluate(const Space& space) const;
  std::string to_string() const;

 private:
  void add_term(const Word& w, cplx c);
  std::map<Word, cplx> terms_;
};

// Space over the given factors in canonical order (component name, then atom before mode).
Space canonical_space(std::vector<Factor> factors, std::size_t fock_cutoff);

// Numeric letter matrices used by evaluate (tls basis g=0, e=1).
ComplexMatrix sigma_matrix();
ComplexMatrix annihilation_matrix(std::size_t cutoff);
ComplexMatrix embed(const Space& space, const Factor& f, const ComplexMatrix& local);

std::string format_complex(cplx c);

}  // namespace qhorn::slh
