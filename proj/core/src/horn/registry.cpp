#include "qhorn/horn/registry.hpp"

#include <cmath>

#include "qhorn/errors.hpp"
#include "qhorn/horn/eval.hpp"

namespace qhorn::horn {

int Runtime::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::size_t> Runtime::indices_of(const std::vector<std::string>& ns) const {
  std::vector<std::size_t> out;
  for (const auto& n : ns) {
    const int i = index_of(n);
    if (i < 0) throw PreconditionError("unknown system " + n);
    out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

void Runtime::add_system(const std::string& name, const ComplexMatrix& local_state) {
  if (index_of(name) >= 0) throw PreconditionError("system " + name + " already exists");
  names.push_back(name);
  dims.push_back(local_state.rows());
  rho = linalg::kron(rho, local_state);
}

ComplexMatrix Runtime::reduced(const std::vector<std::string>& ns) const {
  return linalg::reduced_state(rho, dims, indices_of(ns));
}

std::string Runtime::fresh_name(const std::string& stem) {
  for (;;) {
    std::string n = stem + std::to_string(++gensym);
    if (index_of(n) < 0 && !generated.count(n)) return n;
  }
}

namespace {

void check_names(const TermPtr& t, const Registry& reg, std::size_t line, std::size_t col) {
  if (t->kind == TermKind::Atom) {
    if (t->name == "pi" || reg.params.count(t->name) || reg.ops.count(t->name) || reg.states.count(t->name)) return;
    throw ParseError("unbound operator name '" + t->name + "'", line, col);
  }
  if (t->kind == TermKind::Var) throw ParseError("variable " + t->name + " in directive", line, col);
  if (t->kind == TermKind::Compound) {
    if (!is_arithmetic_functor(t->name)) throw ParseError("unknown function '" + t->name + "'", line, col);
    for (const auto& a : t->args) check_names(a, reg, line, col);
  }
}

}  // namespace

Registry Registry::load(const Program& prog) {
  Registry reg;
  for (const auto& p : prog.params) {
    if (reg.params.count(p.name)) throw PreconditionError("duplicate parameter " + p.name);
    reg.params[p.name] = p.value;
  }
  for (const auto& s : prog.systems) {
    for (const auto& o : reg.systems)
      if (o.name == s.name) throw PreconditionError("duplicate system " + s.name);
    reg.systems.push_back(s);
  }
  const Substitution none;
  for (const auto& d : prog.ops) {
    if (reg.ops.count(d.name)) throw ParseError("duplicate operator " + d.name, d.line, d.column);
    check_names(d.expr, reg, d.line, d.column);
    std::optional<Value> v;
    try {
      v = evaluate(d.expr, none, reg, nullptr);
    } catch (const QhornError& e) {
      throw ParseError(std::string("operator ") + d.name + ": " + e.what(), d.line, d.column);
    }
    if (!v || v->kind != Value::Kind::Matrix || !v->matrix.square())
      throw ParseError("operator " + d.name + " is not a square matrix", d.line, d.column);
    reg.ops[d.name] = OpEntry{v->matrix, d.antiunitary || v->antiunitary};
  }
  for (const auto& d : prog.states) {
    check_names(d.expr, reg, d.line, d.column);
    std::optional<Value> v;
    try {
      v = evaluate(d.expr, none, reg, nullptr);
    } catch (const QhornError& e) {
      throw ParseError(std::string("state ") + d.name + ": " + e.what(), d.line, d.column);
    }
    if (!v || v->kind == Value::Kind::Atom) throw ParseError("state " + d.name + " is not a ket or density", d.line, d.column);
    if (reg.is_system(d.name)) {
      std::size_t dim = 0;
      for (const auto& s : reg.systems)
        if (s.name == d.name) dim = s.dim;
      ComplexMatrix rho;
      if (v->kind == Value::Kind::Ket) {
        const ComplexVector psi = linalg::normalized(ket_vector(v->ket, dim, reg.params));
        rho = linalg::outer(psi, psi);
      } else {
        rho = v->matrix;
      }
      if (rho.rows() != dim) throw ParseError("state for " + d.name + " has the wrong dimension", d.line, d.column);
      reg.initial[d.name] = rho;
    } else {
      if (v->kind != Value::Kind::Ket) throw ParseError("named state " + d.name + " must be a ket", d.line, d.column);
      reg.states[d.name] = v->ket;
    }
  }
  for (const auto& f : prog.fock) reg.fock[f.name] = f;
  return reg;
}

const OpEntry* Registry::find_op(const std::string& name) const {
  const auto it = ops.find(name);
  return it == ops.end() ? nullptr : &it->second;
}

bool Registry::is_system(const std::string& name) const {
  for (const auto& s : systems)
    if (s.name == name) return true;
  return false;
}

Runtime Registry::initial_runtime(std::uint64_t seed) const {
  Runtime rt;
  rt.rng.seed(seed);
  for (const auto& s : systems) {
    const auto it = initial.find(s.name);
    if (it != initial.end()) {
      rt.add_system(s.name, it->second);
    } else {
      ComplexMatrix ground(s.dim, s.dim);
      ground(0, 0) = 1.0;
      rt.add_system(s.name, ground);
    }
  }
  for (const auto& [name, f] : fock)
    rt.fock[name] = fockweyl::ExponentialVectorSum::single(fockweyl::TestFunction::constant(f.horizon, f.cells, f.value));
  return rt;
}

}  // namespace qhorn::horn
