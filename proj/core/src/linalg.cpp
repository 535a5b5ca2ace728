#include "qhorn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qhorn/errors.hpp"

namespace qhorn::linalg {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::diag(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diag_real(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m = *this;
  for (auto& x : m.data_) x = std::conj(x);
  return m;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw DimensionError("trace of non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ci = &c(i, 0);
    for (std::size_t l = 0; l < k; ++l) {
      const cplx ail = a(i, l);
      if (ail == cplx{0.0, 0.0}) continue;
      const double ar = ail.real(), ai = ail.imag();
      const cplx* bl = &b(l, 0);
      // spelled out: std::complex operator* takes the slow NaN-recovery path
      for (std::size_t j = 0; j < m; ++j) {
        const double br = bl[j].real(), bi = bl[j].imag();
        ci[j] += cplx(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.size()) throw DimensionError("matvec: dimension mismatch");
  ComplexVector r(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  ComplexMatrix r(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) r(i * p + k, j * q + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix r = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) r = kron(r, factors[i]);
  return r;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

namespace {

std::vector<std::size_t> digits_of(std::size_t idx, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    d[i] = idx % dims[i];
    idx /= dims[i];
  }
  return d;
}

void check_targets(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& targets) {
  std::vector<bool> seen(dims.size(), false);
  for (auto t : targets) {
    if (t >= dims.size()) throw DimensionError("target factor out of range");
    if (seen[t]) throw DimensionError("target factor repeated");
    seen[t] = true;
  }
}

}  // namespace

ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& targets) {
  check_targets(dims, targets);
  std::size_t sub = 1, total = 1;
  for (auto t : targets) sub *= dims[t];
  for (auto d : dims) total *= d;
  if (op.rows() != sub || op.cols() != sub)
    throw DimensionError("embed_operator: operator is " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + ", targets span " + std::to_string(sub));
  std::vector<bool> is_target(dims.size(), false);
  for (auto t : targets) is_target[t] = true;
  const auto sub_index = [&](const std::vector<std::size_t>& d) {
    std::size_t s = 0;
    for (auto t : targets) s = s * dims[t] + d[t];
    return s;
  };
  ComplexMatrix out(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto di = digits_of(i, dims);
    for (std::size_t j = 0; j < total; ++j) {
      const auto dj = digits_of(j, dims);
      bool same = true;
      for (std::size_t k = 0; k < dims.size() && same; ++k)
        if (!is_target[k] && di[k] != dj[k]) same = false;
      if (same) out(i, j) = op(sub_index(di), sub_index(dj));
    }
  }
  return out;
}

ComplexMatrix reduced_state(const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& targets) {
  check_targets(dims, targets);
  std::size_t total = 1, sub = 1;
  for (auto d : dims) total *= d;
  for (auto t : targets) sub *= dims[t];
  if (rho.rows() != total || !rho.square()) throw DimensionError("reduced_state: shape mismatch");
  std::vector<bool> is_target(dims.size(), false);
  for (auto t : targets) is_target[t] = true;
  ComplexMatrix out(sub, sub);
  for (std::size_t i = 0; i < total; ++i) {
    const auto di = digits_of(i, dims);
    std::size_t si = 0;
    for (auto t : targets) si = si * dims[t] + di[t];
    for (std::size_t j = 0; j < total; ++j) {
      const auto dj = digits_of(j, dims);
      bool same = true;
      for (std::size_t k = 0; k < dims.size() && same; ++k)
        if (!is_target[k] && di[k] != dj[k]) same = false;
      if (!same) continue;
      std::size_t sj = 0;
      for (auto t : targets) sj = sj * dims[t] + dj[t];
      out(si, sj) += rho(i, j);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  if (!rho.square()) throw DimensionError("partial_trace: rho not square");
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (total != rho.rows())
    throw DimensionError("partial_trace: dims product " + std::to_string(total) +
                         " != " + std::to_string(rho.rows()));
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) throw DimensionError("partial_trace: keep index out of range");
    kept[k] = true;
  }
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  // full index for (kept multi-index a, traced multi-index t)
  std::size_t nk = 1, nt = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) (kept[i] ? nk : nt) *= dims[i];
  std::vector<std::size_t> kofs(nk, 0), tofs(nt, 0);
  for (std::size_t a = 0; a < nk; ++a) {
    std::size_t rem = a, off = 0;
    for (std::size_t i = dims.size(); i-- > 0;)
      if (kept[i]) {
        off += (rem % dims[i]) * stride[i];
        rem /= dims[i];
      }
    kofs[a] = off;
  }
  for (std::size_t t = 0; t < nt; ++t) {
    std::size_t rem = t, off = 0;
    for (std::size_t i = dims.size(); i-- > 0;)
      if (!kept[i]) {
        off += (rem % dims[i]) * stride[i];
        rem /= dims[i];
      }
    tofs[t] = off;
  }
  ComplexMatrix r(nk, nk);
  for (std::size_t a = 0; a < nk; ++a)
    for (std::size_t b = 0; b < nk; ++b) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < nt; ++t) s += rho(kofs[a] + tofs[t], kofs[b] + tofs[t]);
      r(a, b) = s;
    }
  return r;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (!a.square()) return false;
  return max_abs_diff(a * a.dagger(), ComplexMatrix::identity(a.rows())) < tol;
}

bool is_projector(const ComplexMatrix& a, double tol) {
  return is_hermitian(a, tol) && max_abs_diff(a * a, a) < tol;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& input) {
  if (!input.square()) throw DimensionError("hermitian_eigen: non-square input");
  if (!is_hermitian(input, HERMITICITY_TOL)) throw PreconditionError("hermitian_eigen: input is not Hermitian");
  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  double scale = 0.0;
  for (const auto& x : a.data()) scale += std::norm(x);
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g < 1e-300) continue;
        const cplx e = apq / g;
        const cplx eb = std::conj(e);
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J on (p,q) = [[c, s], [-s*conj(e), c*conj(e)]];  a <- J^H a J
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * eb * akq;
          a(k, q) = s * akp + c * eb * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * eb * vkq;
          v(k, q) = s * vkp + c * eb * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  if (!a.square()) throw DimensionError("matrix_exp: non-square input");
  const std::size_t n = a.rows();
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a(i, j));
    norm1 = std::max(norm1, s);
  }
  int squarings = 0;
  if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
  const ComplexMatrix x = a * cplx(std::ldexp(1.0, -squarings), 0.0);
  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * x) * cplx(1.0 / k, 0.0);
    result += term;
    if (term.max_abs() < 1e-18 * std::max(1.0, result.max_abs())) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

ComplexMatrix projector_from_vectors(const std::vector<ComplexVector>& vs) {
  if (vs.empty()) throw PreconditionError("projector_from_vectors: no vectors, ambient dimension unknown");
  const std::size_t dim = vs.front().size();
  if (dim == 0) throw PreconditionError("projector_from_vectors: zero-dimensional ambient space");
  std::vector<ComplexVector> basis;
  for (const auto& v : vs) {
    if (v.size() != dim) throw DimensionError("projector_from_vectors: inconsistent dimensions");
    ComplexVector w = v;
    // two passes of modified Gram-Schmidt for stability
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const cplx c = inner(b, w);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= c * b[i];
      }
    const double nw = norm(w);
    if (nw < RANK_TOL) continue;
    for (auto& x : w) x /= nw;
    basis.push_back(std::move(w));
  }
  ComplexMatrix p(dim, dim);
  for (const auto& b : basis) p += outer(b, b);
  return p;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw DimensionError("commutator: operands must be square of equal size");
  return a * b - b * a;
}

ComplexMatrix inverse(const ComplexMatrix& input) {
  if (!input.square()) throw DimensionError("inverse: non-square input");
  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, input.max_abs());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-14 * scale) throw PreconditionError("inverse: singular matrix");
    if (piv != col)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(piv, k), a(col, k));
        std::swap(inv(piv, k), inv(col, k));
      }
    const cplx d = a(col, col);
    for (std::size_t k = 0; k < n; ++k) {
      a(col, k) /= d;
      inv(col, k) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = a(r, col);
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(col, k);
        inv(r, k) -= f * inv(col, k);
      }
    }
  }
  return inv;
}

std::vector<double> singular_values(const ComplexMatrix& input) {
  // One-sided Jacobi on columns: rotate until columns are mutually orthogonal.
  ComplexMatrix u = input.rows() >= input.cols() ? input : input.dagger();
  const std::size_t m = u.rows(), n = u.cols();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(u(i, p));
          beta += std::norm(u(i, q));
          gamma += std::conj(u(i, p)) * u(i, q);
        }
        const double g = std::abs(gamma);
        if (g <= 1e-15 * std::sqrt(alpha * beta) || g == 0.0) continue;
        rotated = true;
        const cplx e = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const cplx eb = std::conj(e);
        for (std::size_t i = 0; i < m; ++i) {
          const cplx up = u(i, p), uq = u(i, q);
          u(i, p) = c * up - s * eb * uq;
          u(i, q) = s * up + c * eb * uq;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(u(i, j));
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

ComplexMatrix spectral_window(const HermitianEigen& e, double lo, double hi) {
  const std::size_t n = e.eigenvalues.size();
  ComplexMatrix p(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = e.eigenvalues[k];
    if (l < lo || l > hi) continue;
    p += outer(column(e.eigenvectors, k), column(e.eigenvectors, k));
  }
  return p;
}

ComplexMatrix range_projector(const ComplexMatrix& psd) {
  const auto e = hermitian_eigen(psd);
  return spectral_window(e, RANK_TOL, std::numeric_limits<double>::infinity());
}

cplx inner(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw DimensionError("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(const ComplexVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

ComplexVector normalized(const ComplexVector& v) {
  const double n = norm(v);
  if (n < RANK_TOL) throw PreconditionError("normalized: zero vector");
  ComplexVector r = v;
  for (auto& x : r) x /= n;
  return r;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexVector basis_vector(std::size_t dim, std::size_t i) {
  if (i >= dim) throw DimensionError("basis_vector: index out of range");
  ComplexVector v(dim, 0.0);
  v[i] = 1.0;
  return v;
}

ComplexVector column(const ComplexMatrix& m, std::size_t j) {
  ComplexVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& x : m.data()) x = cplx(nd(rng), nd(rng));
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  return (g + g.dagger()) * cplx(0.5, 0.0);
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  std::vector<ComplexVector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    ComplexVector w = column(g, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : cols) {
        const cplx c = inner(b, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
      }
    cols.push_back(normalized(w));
  }
  ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j][i];
  return u;
}

ComplexMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix rho = g * g.dagger();
  return rho * cplx(1.0 / rho.trace().real(), 0.0);
}

ComplexVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexVector v(n);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  return normalized(v);
}

}  // namespace qhorn::linalg
