#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qhorn/linalg.hpp"

namespace qhorn::fockweyl {

using linalg::cplx;

// Piecewise-constant function on K uniform cells of [0, T].
class TestFunction {
 public:
  TestFunction(double horizon, std::vector<cplx> values);
  static TestFunction constant(double horizon, std::size_t cells, cplx c);
  static TestFunction zero(double horizon, std::size_t cells) { return constant(horizon, cells, 0.0); }
  // c on [t0, t1), zero elsewhere; t0 and t1 should sit on cell edges.
  static TestFunction window(double horizon, std::size_t cells, double t0, double t1, cplx c);

  double horizon() const { return horizon_; }
  std::size_t cells() const { return values_.size(); }
  double dt() const { return horizon_ / static_cast<double>(values_.size()); }
  const std::vector<cplx>& values() const { return values_; }

  // Same function on a grid with factor-times more cells.
  TestFunction refined(std::size_t factor) const;
  // Integral of f over [0, t], exact for piecewise-constant f.
  cplx integral(double t) const;
  double norm2() const;
  bool same_grid(const TestFunction& o) const;

  TestFunction operator+(const TestFunction& o) const;
  TestFunction operator*(cplx s) const;

 private:
  double horizon_;
  std::vector<cplx> values_;
};

// <f, g> restricted to [0, t]: sum over cells of conj(f) g times the covered length.
cplx l2_inner(const TestFunction& f, const TestFunction& g, double t);
inline cplx l2_inner(const TestFunction& f, const TestFunction& g) { return l2_inner(f, g, f.horizon()); }

// <e(f), e(g)> = exp(<f, g> - T).
cplx kernel(const TestFunction& f, const TestFunction& g);

struct ExpTerm {
  cplx coef;
  TestFunction f;
};

class ExponentialVectorSum {
 public:
  ExponentialVectorSum() = default;
  explicit ExponentialVectorSum(std::vector<ExpTerm> terms);
  static ExponentialVectorSum single(const TestFunction& f, cplx coef = 1.0);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  ExponentialVectorSum operator+(const ExponentialVectorSum& o) const;
  ExponentialVectorSum operator*(cplx s) const;

 private:
  std::vector<ExpTerm> terms_;
};

cplx exp_inner(const ExponentialVectorSum& u, const ExponentialVectorSum& v);

// W(f) e(g) = exp(-<f, g> - |f|^2 / 2) e(f + g), termwise.
ExponentialVectorSum weyl_apply(const TestFunction& f, const ExponentialVectorSum& v);

// c with W(f) W(g) e(p) = c W(f + g) e(p) for every probe p.
cplx weyl_compose_check(const TestFunction& f, const TestFunction& g, const std::vector<TestFunction>& probes);

// Matrix elements <e(u), X e(v)>.
using MatrixElement = std::function<cplx(const TestFunction&, const TestFunction&)>;

cplx gauge_elem(double t, const TestFunction& u, const TestFunction& v);
cplx annihilation_elem(double t, const TestFunction& u, const TestFunction& v);
cplx creation_elem(double t, const TestFunction& u, const TestFunction& v);

MatrixElement gauge_at(double t);
MatrixElement annihilation_at(double t);
MatrixElement creation_at(double t);
MatrixElement identity_elem();

// Sesquilinear extension of a matrix element to exponential-vector sums.
cplx matrix_element(const MatrixElement& x, const ExponentialVectorSum& u, const ExponentialVectorSum& v);

// <e(f), X e(f)> exp(T - |f|^2).
cplx coherent_expectation(const MatrixElement& x, const TestFunction& f);

// Monte-Carlo estimate of E[N_t] in the coherent state of f: per-cell Poisson counts with mean |f|^2 dt.
double poisson_mc_oracle(double t, const TestFunction& f, std::size_t samples, std::uint64_t seed);

}  // namespace qhorn::fockweyl
