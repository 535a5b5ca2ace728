#include "qhorn/opexpr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "qhorn/errors.hpp"

namespace qhorn::slh {

namespace {

constexpr int kSigma = 0;     // |g><e|
constexpr int kSigmaDag = 1;  // |e><g|
constexpr int kPiE = 2;       // |e><e|

using Local = std::optional<FactorOp>;  // nullopt: identity on that factor
using LocalSum = std::vector<std::pair<Local, cplx>>;

LocalSum tls_product(const Factor& f, int x, int y) {
  const auto op = [&](int code) { return Local(FactorOp{f, code, 0}); };
  switch (x * 3 + y) {
    case kSigma * 3 + kSigmaDag:
      return {{std::nullopt, 1.0}, {op(kPiE), -1.0}};
    case kSigma * 3 + kPiE:
      return {{op(kSigma), 1.0}};
    case kSigmaDag * 3 + kSigma:
      return {{op(kPiE), 1.0}};
    case kPiE * 3 + kSigmaDag:
      return {{op(kSigmaDag), 1.0}};
    case kPiE * 3 + kPiE:
      return {{op(kPiE), 1.0}};
    default:
      return {};
  }
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

LocalSum fock_product(const Factor& f, int m1, int n1, int m2, int n2) {
  // (a^dag)^m1 a^n1 (a^dag)^m2 a^n2 in normal order
  LocalSum out;
  double fact = 1.0;
  for (int k = 0; k <= std::min(n1, m2); ++k) {
    if (k > 0) fact *= k;
    const double c = binom(n1, k) * binom(m2, k) * fact;
    const int m = m1 + m2 - k, n = n1 + n2 - k;
    if (m == 0 && n == 0)
      out.emplace_back(std::nullopt, c);
    else
      out.emplace_back(FactorOp{f, m, n}, c);
  }
  return out;
}

LocalSum local_product(const Local& x, const Local& y) {
  if (!x) return {{y, 1.0}};
  if (!y) return {{x, 1.0}};
  if (x->factor.kind == FactorKind::Tls) return tls_product(x->factor, x->m, y->m);
  return fock_product(x->factor, x->m, x->n, y->m, y->n);
}

std::string letter_name(const FactorOp& op) {
  const std::string lab = "[" + op.factor.label() + "]";
  if (op.factor.kind == FactorKind::Tls) {
    if (op.m == kSigma) return "sigma_ge" + lab;
    if (op.m == kSigmaDag) return "sigma_eg" + lab;
    return "Pi_e" + lab;
  }
  std::string s;
  const auto power = [](int p) { return p == 1 ? std::string() : "^" + std::to_string(p); };
  if (op.m > 0) s += "a_dag" + lab + power(op.m);
  if (op.n > 0) s += (s.empty() ? "" : " ") + std::string("a") + lab + power(op.n);
  return s;
}

ComplexMatrix local_matrix(const FactorOp& op, std::size_t cutoff) {
  if (op.factor.kind == FactorKind::Tls) {
    const ComplexMatrix s = sigma_matrix();
    if (op.m == kSigma) return s;
    if (op.m == kSigmaDag) return s.dagger();
    return s.dagger() * s;
  }
  const ComplexMatrix a = annihilation_matrix(cutoff);
  const ComplexMatrix ad = a.dagger();
  ComplexMatrix r = ComplexMatrix::identity(cutoff);
  for (int i = 0; i < op.m; ++i) r = r * ad;
  for (int i = 0; i < op.n; ++i) r = r * a;
  return r;
}

}  // namespace

std::vector<std::size_t> Space::dims() const {
  std::vector<std::size_t> d;
  for (const auto& f : factors) d.push_back(f.kind == FactorKind::Tls ? 2 : fock_cutoff);
  return d;
}

std::size_t Space::dim() const {
  std::size_t n = 1;
  for (auto d : dims()) n *= d;
  return n;
}

std::size_t Space::index_of(const Factor& f) const {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i] == f) return i;
  throw DimensionError("Space: factor " + f.label() + " not present");
}

Space canonical_space(std::vector<Factor> factors, std::size_t fock_cutoff) {
  std::sort(factors.begin(), factors.end());
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  return Space{std::move(factors), fock_cutoff};
}

ComplexMatrix sigma_matrix() { return ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}; }

ComplexMatrix annihilation_matrix(std::size_t cutoff) {
  ComplexMatrix a(cutoff, cutoff);
  for (std::size_t n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix embed(const Space& space, const Factor& f, const ComplexMatrix& local) {
  const std::size_t idx = space.index_of(f);
  const auto dims = space.dims();
  std::vector<ComplexMatrix> parts;
  for (std::size_t i = 0; i < dims.size(); ++i)
    parts.push_back(i == idx ? local : ComplexMatrix::identity(dims[i]));
  return linalg::kron_all(parts);
}

std::string format_complex(cplx c) {
  const auto clean = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gj", clean(c.real()), clean(c.imag()));
  return buf;
}

OpExpr::OpExpr(cplx c) {
  if (c != cplx{0.0, 0.0}) terms_[Word{}] = c;
}

OpExpr OpExpr::sigma(const std::string& component) {
  OpExpr e;
  e.terms_[Word{FactorOp{Factor{component, FactorKind::Tls}, kSigma, 0}}] = 1.0;
  return e;
}

OpExpr OpExpr::sigma_dag(const std::string& component) {
  OpExpr e;
  e.terms_[Word{FactorOp{Factor{component, FactorKind::Tls}, kSigmaDag, 0}}] = 1.0;
  return e;
}

OpExpr OpExpr::pi_e(const std::string& component) {
  OpExpr e;
  e.terms_[Word{FactorOp{Factor{component, FactorKind::Tls}, kPiE, 0}}] = 1.0;
  return e;
}

OpExpr OpExpr::a(const std::string& component) {
  OpExpr e;
  e.terms_[Word{FactorOp{Factor{component, FactorKind::Fock}, 0, 1}}] = 1.0;
  return e;
}

OpExpr OpExpr::a_dag(const std::string& component) {
  OpExpr e;
  e.terms_[Word{FactorOp{Factor{component, FactorKind::Fock}, 1, 0}}] = 1.0;
  return e;
}

void OpExpr::add_term(const Word& w, cplx c) {
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) it->second += c;
  if (it->second == cplx{0.0, 0.0}) terms_.erase(it);
}

OpExpr& OpExpr::operator+=(const OpExpr& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

OpExpr& OpExpr::operator-=(const OpExpr& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

OpExpr operator*(const OpExpr& x, const OpExpr& y) {
  OpExpr out;
  for (const auto& [wx, cx] : x.terms_)
    for (const auto& [wy, cy] : y.terms_) {
      // merge the two words factor by factor; factors commute with each other
      std::vector<LocalSum> parts;
      std::size_t i = 0, j = 0;
      while (i < wx.size() || j < wy.size()) {
        if (j == wy.size() || (i < wx.size() && wx[i].factor < wy[j].factor)) {
          parts.push_back({{wx[i++], 1.0}});
        } else if (i == wx.size() || wy[j].factor < wx[i].factor) {
          parts.push_back({{wy[j++], 1.0}});
        } else {
          parts.push_back(local_product(wx[i++], wy[j++]));
        }
      }
      std::vector<std::pair<Word, cplx>> acc{{Word{}, cx * cy}};
      for (const auto& p : parts) {
        std::vector<std::pair<Word, cplx>> next;
        for (const auto& [w, c] : acc)
          for (const auto& [loc, lc] : p) {
            Word nw = w;
            if (loc) nw.push_back(*loc);
            next.emplace_back(std::move(nw), c * lc);
          }
        acc = std::move(next);
      }
      for (const auto& [w, c] : acc) out.add_term(w, c);
    }
  return out;
}

OpExpr OpExpr::dagger() const {
  OpExpr out;
  for (const auto& [w, c] : terms_) {
    Word d = w;
    for (auto& op : d) {
      if (op.factor.kind == FactorKind::Tls) {
        if (op.m == kSigma)
          op.m = kSigmaDag;
        else if (op.m == kSigmaDag)
          op.m = kSigma;
      } else {
        std::swap(op.m, op.n);
      }
    }
    out.add_term(d, std::conj(c));
  }
  return out;
}

bool OpExpr::is_zero(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return std::abs(t.second) <= tol; });
}

bool OpExpr::is_scalar(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.empty() || std::abs(t.second) <= tol; });
}

cplx OpExpr::scalar_part() const {
  const auto it = terms_.find(Word{});
  return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
}

std::vector<Factor> OpExpr::factors() const {
  std::vector<Factor> fs;
  for (const auto& [w, c] : terms_)
    for (const auto& op : w) fs.push_back(op.factor);
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

ComplexMatrix OpExpr::evaluate(const Space& space) const {
  const auto dims = space.dims();
  ComplexMatrix out(space.dim(), space.dim());
  for (const auto& [w, c] : terms_) {
    std::vector<ComplexMatrix> parts;
    for (std::size_t i = 0; i < dims.size(); ++i) parts.push_back(ComplexMatrix::identity(dims[i]));
    for (const auto& op : w) parts[space.index_of(op.factor)] = local_matrix(op, space.fock_cutoff);
    out += linalg::kron_all(parts) * c;
  }
  return out;
}

std::string OpExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format_complex(c) << ")";
    for (const auto& op : w) os << " " << letter_name(op);
  }
  return os.str();
}

}  // namespace qhorn::slh
