#include "qhorn/horn/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qhorn/errors.hpp"

namespace qhorn::horn {

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  std::map<std::string, int> acc;
  for (const auto& [s, p] : a) acc[s] += p;
  for (const auto& [s, p] : b) acc[s] += p;
  return Monomial(acc.begin(), acc.end());
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (const auto& [name, p] : m) {
    if (!s.empty()) s += "*";
    s += name;
    if (p != 1) s += "^" + std::to_string(p);
  }
  return s;
}

}  // namespace

std::string format_number(cplx c) {
  const auto clean = [](double x) { return std::abs(x) < 1e-13 ? 0.0 : x; };
  const double re = clean(c.real()), im = clean(c.imag());
  char buf[64];
  if (im == 0.0)
    std::snprintf(buf, sizeof buf, "%.6g", re);
  else if (re == 0.0)
    std::snprintf(buf, sizeof buf, "%.6gi", im);
  else
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", re, im);
  return buf;
}

Poly::Poly(cplx c) {
  if (c != cplx{0.0, 0.0}) terms_[Monomial{}] = c;
}

Poly Poly::symbol(const std::string& name) {
  Poly p;
  p.terms_[Monomial{{name, 1}}] = 1.0;
  return p;
}

void Poly::add(const Monomial& m, cplx c) {
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < 1e-300) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add(multiply(ma, mb), ca * cb);
  return out;
}

Poly Poly::conj() const {
  // parameters are real
  Poly out;
  for (const auto& [m, c] : terms_) out.terms_[m] = std::conj(c);
  return out;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

cplx Poly::constant() const {
  const auto it = terms_.find(Monomial{});
  return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
}

cplx Poly::evaluate(const ParamTable& params) const {
  cplx total = 0.0;
  for (const auto& [m, c] : terms_) {
    cplx v = c;
    for (const auto& [name, p] : m) {
      const auto it = params.find(name);
      if (it == params.end()) throw PreconditionError("unknown parameter " + name);
      v *= std::pow(it->second, p);
    }
    total += v;
  }
  return total;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string piece;
    if (m.empty()) {
      piece = format_number(c);
    } else if (c == cplx{1.0, 0.0}) {
      piece = monomial_text(m);
    } else if (c == cplx{-1.0, 0.0}) {
      piece = "-" + monomial_text(m);
    } else {
      piece = format_number(c) + "*" + monomial_text(m);
    }
    if (out.empty())
      out = piece;
    else if (!piece.empty() && piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out;
}

KetExpr KetExpr::scalar(const Poly& c) { return basis("", c); }

KetExpr KetExpr::basis(const std::string& label, const Poly& c) {
  KetExpr k;
  if (!c.is_zero()) k.terms_[label] = c;
  return k;
}

KetExpr& KetExpr::operator+=(const KetExpr& o) {
  for (const auto& [l, c] : o.terms_) {
    auto& slot = terms_[l];
    slot += c;
    if (slot.is_zero()) terms_.erase(l);
  }
  return *this;
}

KetExpr& KetExpr::operator-=(const KetExpr& o) {
  for (const auto& [l, c] : o.terms_) {
    auto& slot = terms_[l];
    slot -= c;
    if (slot.is_zero()) terms_.erase(l);
  }
  return *this;
}

KetExpr KetExpr::scaled(const Poly& c) const {
  KetExpr out;
  for (const auto& [l, p] : terms_) {
    Poly q = p * c;
    if (!q.is_zero()) out.terms_[l] = std::move(q);
  }
  return out;
}

KetExpr KetExpr::tensor(const KetExpr& o) const {
  KetExpr out;
  for (const auto& [la, ca] : terms_)
    for (const auto& [lb, cb] : o.terms_) out += basis(la + lb, ca * cb);
  return out;
}

bool KetExpr::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Poly KetExpr::scalar_value() const {
  const auto it = terms_.find("");
  return it == terms_.end() ? Poly() : it->second;
}

std::optional<std::size_t> KetExpr::label_length() const {
  if (terms_.empty()) return std::nullopt;
  const std::size_t n = terms_.begin()->first.size();
  for (const auto& [l, c] : terms_)
    if (l.size() != n) return std::nullopt;
  return n;
}

std::map<std::string, cplx> KetExpr::numeric(const ParamTable& params) const {
  std::map<std::string, cplx> out;
  for (const auto& [l, c] : terms_) out[l] = c.evaluate(params);
  return out;
}

std::string KetExpr::to_string() const {
  if (terms_.empty()) return "0";
  if (is_scalar()) return scalar_value().to_string();
  std::string out;
  for (const auto& [l, c] : terms_) {
    std::string coef;
    if (c == Poly(cplx(1.0, 0.0))) {
      coef = "";
    } else if (c == Poly(cplx(-1.0, 0.0))) {
      coef = "-";
    } else if (c.terms().size() == 1) {
      coef = c.to_string();
    } else {
      coef = "(" + c.to_string() + ")";
    }
    std::string piece = coef + "|" + l + "⟩";
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out;
}

std::map<std::string, cplx> phase_normalized(const std::map<std::string, cplx>& v) {
  double n2 = 0.0;
  for (const auto& [l, c] : v) n2 += std::norm(c);
  if (n2 <= 0.0) return v;
  const double n = std::sqrt(n2);
  // the first component whose magnitude is within tolerance of the largest carries the phase
  double big = 0.0;
  for (const auto& [l, c] : v) big = std::max(big, std::abs(c));
  cplx phase = 1.0;
  for (const auto& [l, c] : v)
    if (std::abs(c) >= big - 1e-9) {
      phase = std::conj(c) / std::abs(c);
      break;
    }
  std::map<std::string, cplx> out;
  for (const auto& [l, c] : v) {
    const cplx x = c * phase / n;
    if (std::abs(x) > 1e-15) out[l] = x;
  }
  return out;
}

bool ket_equal_up_to_phase(const KetExpr& a, const KetExpr& b, const ParamTable& params, double tol) {
  const auto va = a.numeric(params);
  const auto vb = b.numeric(params);
  if (a.is_scalar() && b.is_scalar()) return std::abs(a.scalar_value().evaluate(params) - b.scalar_value().evaluate(params)) <= tol;
  double na = 0.0, nb = 0.0;
  for (const auto& [l, c] : va) na += std::norm(c);
  for (const auto& [l, c] : vb) nb += std::norm(c);
  if (na <= tol * tol || nb <= tol * tol) return na <= tol * tol && nb <= tol * tol;
  // |<a|b>| = |a||b| exactly when the rays coincide
  cplx ip = 0.0;
  for (const auto& [l, c] : va) {
    const auto it = vb.find(l);
    if (it != vb.end()) ip += std::conj(c) * it->second;
  }
  const double overlap = std::abs(ip) / std::sqrt(na * nb);
  return 1.0 - overlap <= tol;
}

std::vector<std::string> coefficient_equations(const KetExpr& lhs, const KetExpr& rhs) {
  std::vector<std::string> eqs;
  std::vector<std::string> labels;
  for (const auto& [l, c] : lhs.terms()) labels.push_back(l);
  for (const auto& [l, c] : rhs.terms()) labels.push_back(l);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (const auto& l : labels) {
    const auto a = lhs.terms().count(l) ? lhs.terms().at(l) : Poly();
    const auto b = rhs.terms().count(l) ? rhs.terms().at(l) : Poly();
    if (a == b) continue;
    std::string eq = a.to_string() + " = " + b.to_string();
    if (std::find(eqs.begin(), eqs.end(), eq) == eqs.end()) eqs.push_back(eq);
  }
  return eqs;
}

}  // namespace qhorn::horn
