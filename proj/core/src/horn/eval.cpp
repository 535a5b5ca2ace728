#include "qhorn/horn/eval.hpp"

#include <cmath>

#include "qhorn/errors.hpp"

namespace qhorn::horn {

Value Value::of_ket(KetExpr k) {
  Value v;
  v.kind = Kind::Ket;
  v.ket = std::move(k);
  return v;
}

Value Value::of_matrix(ComplexMatrix m, std::string name, bool antiunitary) {
  Value v;
  v.kind = Kind::Matrix;
  v.matrix = std::move(m);
  v.name = std::move(name);
  v.antiunitary = antiunitary;
  return v;
}

Value Value::of_atom(std::string name) {
  Value v;
  v.kind = Kind::Atom;
  v.name = std::move(name);
  return v;
}

std::string Value::to_string() const {
  switch (kind) {
    case Kind::Ket:
      return ket.to_string();
    case Kind::Atom:
      return name;
    case Kind::Matrix:
      break;
  }
  if (!name.empty()) return name;
  std::string s = "[";
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < matrix.cols(); ++j) s += (j ? ", " : "") + format_number(matrix(i, j));
    s += "]";
  }
  return s + "]";
}

namespace {

[[noreturn]] void type_error(const std::string& op, const Value& a, const Value& b) {
  throw PreconditionError("cannot apply '" + op + "' to " + a.to_string() + " and " + b.to_string());
}

cplx numeric_scalar(const Value& v, const ParamTable& params, const std::string& where) {
  if (!v.is_scalar()) throw PreconditionError(where + " expects a number, got " + v.to_string());
  return v.ket.scalar_value().evaluate(params);
}

std::size_t digit_base(std::size_t dim, std::size_t len) {
  if (len == 0) return dim;
  const auto b = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(dim), 1.0 / static_cast<double>(len))));
  std::size_t p = 1;
  for (std::size_t i = 0; i < len; ++i) p *= b;
  if (p != dim) throw DimensionError("ket labels of length " + std::to_string(len) + " do not fit dimension " + std::to_string(dim));
  return b;
}

Value add(const Value& a, const Value& b, double sign, const ParamTable& params) {
  if (a.kind == Value::Kind::Ket && b.kind == Value::Kind::Ket)
    return Value::of_ket(sign > 0 ? a.ket + b.ket : a.ket - b.ket);
  if (a.kind == Value::Kind::Matrix && b.kind == Value::Kind::Matrix) {
    if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols())
      throw DimensionError("matrix sum shape mismatch");
    return Value::of_matrix(sign > 0 ? a.matrix + b.matrix : a.matrix - b.matrix);
  }
  // scalar plus matrix: scalar times identity
  if (a.is_scalar() && b.kind == Value::Kind::Matrix && b.matrix.square())
    return Value::of_matrix(ComplexMatrix::identity(b.matrix.rows()) * numeric_scalar(a, params, "+") +
                            b.matrix * cplx(sign, 0.0));
  if (b.is_scalar() && a.kind == Value::Kind::Matrix && a.matrix.square())
    return Value::of_matrix(a.matrix + ComplexMatrix::identity(a.matrix.rows()) * (sign * numeric_scalar(b, params, "+")));
  type_error(sign > 0 ? "+" : "-", a, b);
}

Value multiply(const Value& a, const Value& b, const ParamTable& params) {
  if (a.is_scalar() && b.kind == Value::Kind::Ket) return Value::of_ket(b.ket.scaled(a.ket.scalar_value()));
  if (b.is_scalar() && a.kind == Value::Kind::Ket) return Value::of_ket(a.ket.scaled(b.ket.scalar_value()));
  if (a.is_scalar() && b.kind == Value::Kind::Matrix) return Value::of_matrix(b.matrix * numeric_scalar(a, params, "*"));
  if (b.is_scalar() && a.kind == Value::Kind::Matrix) return Value::of_matrix(a.matrix * numeric_scalar(b, params, "*"));
  if (a.kind == Value::Kind::Matrix && b.kind == Value::Kind::Matrix) {
    if (a.matrix.cols() != b.matrix.rows()) throw DimensionError("matrix product shape mismatch");
    return Value::of_matrix(a.matrix * b.matrix);
  }
  if (a.kind == Value::Kind::Matrix && b.kind == Value::Kind::Ket) {
    const auto len = b.ket.label_length();
    if (!len) throw PreconditionError("ket labels have mixed lengths");
    const ComplexVector v = ket_vector(b.ket, a.matrix.cols(), params);
    const ComplexVector w = a.matrix * v;
    const std::size_t base = digit_base(a.matrix.rows(), *len);
    KetExpr out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (std::abs(w[i]) < 1e-15) continue;
      std::string label(*len, '0');
      std::size_t rem = i;
      for (std::size_t k = *len; k-- > 0;) {
        label[k] = static_cast<char>('0' + rem % base);
        rem /= base;
      }
      out += KetExpr::basis(label, Poly(w[i]));
    }
    return Value::of_ket(out);
  }
  type_error("*", a, b);
}

Value tensor(const Value& a, const Value& b, const ParamTable& params) {
  if (a.kind == Value::Kind::Ket && b.kind == Value::Kind::Ket) return Value::of_ket(a.ket.tensor(b.ket));
  if (a.kind == Value::Kind::Matrix && b.kind == Value::Kind::Matrix)
    return Value::of_matrix(linalg::kron(a.matrix, b.matrix));
  if (a.is_scalar() || b.is_scalar()) return multiply(a, b, params);
  type_error("⊗", a, b);
}

}  // namespace

bool mentions_state(const TermPtr& t0, const Substitution& s) {
  const TermPtr t = deref(t0, s);
  if (t->kind != TermKind::Compound) return false;
  if (t->name == "state") return true;
  for (const auto& a : t->args)
    if (mentions_state(a, s)) return true;
  return false;
}

std::optional<Value> evaluate(const TermPtr& t0, const Substitution& s, const Registry& reg, const Runtime* rt) {
  const TermPtr t = deref(t0, s);
  switch (t->kind) {
    case TermKind::Var:
      return std::nullopt;
    case TermKind::Ket:
      return Value::of_ket(t->ket);
    case TermKind::OpRef:
    case TermKind::Atom: {
      if (t->kind == TermKind::Atom) {
        if (reg.params.count(t->name)) return Value::of_ket(KetExpr::scalar(Poly::symbol(t->name)));
        if (t->name == "pi") return Value::of_ket(KetExpr::scalar(Poly(cplx(M_PI, 0.0))));
        if (const auto it = reg.states.find(t->name); it != reg.states.end()) return Value::of_ket(it->second);
      }
      if (const OpEntry* op = reg.find_op(t->name)) return Value::of_matrix(op->matrix, t->name, op->antiunitary);
      if (rt) {
        if (const auto it = rt->generated.find(t->name); it != rt->generated.end())
          return Value::of_matrix(it->second.matrix, t->name, it->second.antiunitary);
      }
      if (t->kind == TermKind::OpRef) throw PreconditionError("unknown operator " + t->name);
      return Value::of_atom(t->name);
    }
    case TermKind::Compound:
      break;
  }
  const std::string& f = t->name;
  if (f == "state") {
    if (!rt) return std::nullopt;
    std::vector<std::string> names;
    for (const auto& a : t->args) {
      const TermPtr d = deref(a, s);
      if (d->kind == TermKind::Var) return std::nullopt;
      if (d->kind == TermKind::Atom && rt->index_of(d->name) >= 0) {
        names.push_back(d->name);
        continue;
      }
      // state of a ket or density is itself
      if (t->args.size() == 1) return evaluate(d, s, reg, rt);
      throw PreconditionError("state(...) expects system names, got " + to_string(d));
    }
    if (names.empty()) throw PreconditionError("state() needs at least one system");
    std::vector<std::size_t> dims;
    for (const auto i : rt->indices_of(names)) dims.push_back(rt->dims[i]);
    return state_value(rt->reduced(names), dims);
  }
  if (!is_arithmetic_functor(f)) return std::nullopt;
  std::vector<Value> v;
  for (const auto& a : t->args) {
    auto x = evaluate(a, s, reg, rt);
    if (!x) return std::nullopt;
    v.push_back(std::move(*x));
  }
  const auto arity = [&](std::size_t n) {
    if (v.size() != n) throw PreconditionError(f + " expects " + std::to_string(n) + " argument(s)");
  };
  if (f == "+" || f == "-") {
    arity(2);
    return add(v[0], v[1], f == "+" ? 1.0 : -1.0, reg.params);
  }
  if (f == "neg") {
    arity(1);
    return multiply(Value::of_ket(KetExpr::scalar(Poly(cplx(-1.0, 0.0)))), v[0], reg.params);
  }
  if (f == "*") {
    arity(2);
    return multiply(v[0], v[1], reg.params);
  }
  if (f == "/") {
    arity(2);
    const cplx d = numeric_scalar(v[1], reg.params, "/");
    if (std::abs(d) == 0.0) throw PreconditionError("division by zero");
    return multiply(Value::of_ket(KetExpr::scalar(Poly(1.0 / d))), v[0], reg.params);
  }
  if (f == "⊗" || f == "kron") {
    if (v.empty()) throw PreconditionError("kron needs arguments");
    Value acc = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) acc = tensor(acc, v[i], reg.params);
    return acc;
  }
  if (f == "sqrt" || f == "exp") {
    arity(1);
    const cplx x = numeric_scalar(v[0], reg.params, f);
    return Value::of_ket(KetExpr::scalar(Poly(f == "sqrt" ? std::sqrt(x) : std::exp(x))));
  }
  if (f == "dag") {
    arity(1);
    if (v[0].kind != Value::Kind::Matrix) throw PreconditionError("dag expects an operator");
    return Value::of_matrix(v[0].matrix.dagger(), {}, v[0].antiunitary);
  }
  if (f == "eye") {
    arity(1);
    const cplx n = numeric_scalar(v[0], reg.params, "eye");
    if (n.real() < 1.0 || n.real() != std::floor(n.real())) throw PreconditionError("eye expects a positive integer");
    return Value::of_matrix(ComplexMatrix::identity(static_cast<std::size_t>(n.real())));
  }
  if (f == "row" || f == "matrix") {
    // a row on its own is a 1 x n matrix; nested rows stack
    std::vector<std::vector<cplx>> rows;
    if (f == "row") {
      rows.emplace_back();
      for (const auto& x : v) rows.back().push_back(numeric_scalar(x, reg.params, "matrix entry"));
    } else {
      for (const auto& r : v) {
        if (r.matrix.rows() != 1) throw PreconditionError("matrix rows must be flat");
        rows.emplace_back(r.matrix.data().begin(), r.matrix.data().end());
      }
    }
    const std::size_t cols = rows.front().size();
    ComplexMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("ragged matrix literal");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return Value::of_matrix(m);
  }
  return std::nullopt;
}

ComplexVector ket_vector(const KetExpr& k, std::size_t dim, const ParamTable& params) {
  ComplexVector v(dim, 0.0);
  if (k.is_zero()) return v;
  const auto len = k.label_length();
  if (!len || *len == 0) throw PreconditionError("ket " + k.to_string() + " has no uniform label length");
  const std::size_t base = digit_base(dim, *len);
  for (const auto& [label, c] : k.terms()) {
    std::size_t idx = 0;
    for (const char ch : label) {
      if (ch < '0' || ch > '9' || static_cast<std::size_t>(ch - '0') >= base)
        throw PreconditionError("label '" + label + "' has no vector in base " + std::to_string(base));
      idx = idx * base + static_cast<std::size_t>(ch - '0');
    }
    v[idx] += c.evaluate(params);
  }
  return v;
}

KetExpr ket_from_vector(const ComplexVector& v, const std::vector<std::size_t>& dims) {
  std::map<std::string, cplx> raw;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) < 1e-14) continue;
    std::string label(dims.size(), '0');
    std::size_t rem = i;
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (dims[k] > 10) throw DimensionError("factor dimension above 10 has no digit labels");
      label[k] = static_cast<char>('0' + rem % dims[k]);
      rem /= dims[k];
    }
    raw[label] = v[i];
  }
  KetExpr out;
  for (const auto& [label, c] : phase_normalized(raw)) out += KetExpr::basis(label, Poly(c));
  return out;
}

Value state_value(const ComplexMatrix& rho, const std::vector<std::size_t>& dims) {
  const double tr = rho.trace().real();
  const double purity = (rho * rho).trace().real() / (tr * tr);
  if (purity > 1.0 - 1e-9) {
    const auto eig = linalg::hermitian_eigen(rho);
    return Value::of_ket(ket_from_vector(linalg::column(eig.eigenvectors, eig.eigenvalues.size() - 1), dims));
  }
  return Value::of_matrix(rho * cplx(1.0 / tr, 0.0));
}

bool values_equal(const Value& a, const Value& b, const ParamTable& params, double tol) {
  using K = Value::Kind;
  if (a.kind == K::Atom || b.kind == K::Atom) return a.kind == b.kind && a.name == b.name;
  if (a.kind == K::Ket && b.kind == K::Ket) return ket_equal_up_to_phase(a.ket, b.ket, params, tol);
  if (a.kind == K::Matrix && b.kind == K::Matrix) {
    if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) return false;
    return linalg::max_abs_diff(a.matrix, b.matrix) <= tol && a.antiunitary == b.antiunitary;
  }
  // a ket against a density: compare projectors
  const Value& k = a.kind == K::Ket ? a : b;
  const Value& m = a.kind == K::Ket ? b : a;
  if (k.ket.is_scalar() || !m.matrix.square()) return false;
  ComplexVector psi;
  try {
    psi = ket_vector(k.ket, m.matrix.rows(), params);
  } catch (const QhornError&) {
    return false;
  }
  if (linalg::norm(psi) == 0.0) return false;
  psi = linalg::normalized(psi);
  return linalg::max_abs_diff(linalg::outer(psi, psi), m.matrix) <= tol;
}

TermPtr value_to_term(const Value& v, Runtime& rt) {
  switch (v.kind) {
    case Value::Kind::Ket:
      return Term::ket_term(v.ket);
    case Value::Kind::Atom:
      return Term::atom(v.name);
    case Value::Kind::Matrix:
      break;
  }
  if (!v.name.empty()) return Term::opref(v.name);
  const std::string name = rt.fresh_name("_op");
  rt.generated[name] = OpEntry{v.matrix, v.antiunitary};
  return Term::opref(name);
}

}  // namespace qhorn::horn
