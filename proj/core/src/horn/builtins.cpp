#include "builtins.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qhorn/errors.hpp"
#include "qhorn/horn/eval.hpp"
#include "qhorn/horn/solver.hpp"
#include "qhorn/qprob.hpp"

namespace qhorn::horn::detail {

namespace {

const char* const kReserved[] = {"unitary_apply", "state_eq",  "commutes",  "measure",   "cond_expect",
                                 "probe_unitary", "same_stats", "walk_step", "walk_prob", "succ",
                                 "superpose",     "martingale", "weyl",      "fock_norm2"};

bool reserved(const std::string& f) {
  return std::find(std::begin(kReserved), std::end(kReserved), f) != std::end(kReserved);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(x) < 1e-13 ? 0.0 : x);
  return buf;
}

bool ground(const TermPtr& t, const Env& e) { return is_ground(t, e.subst); }
bool bound(const TermPtr& t, const Env& e) { return deref(t, e.subst)->kind != TermKind::Var; }

bool all_ground(const std::vector<TermPtr>& ts, std::size_t from, std::size_t to, const Env& e) {
  for (std::size_t i = from; i < to && i < ts.size(); ++i)
    if (!ground(ts[i], e)) return false;
  return true;
}

bool arithmetic(const TermPtr& t, const Env& e) {
  const TermPtr d = deref(t, e.subst);
  return d->kind == TermKind::Ket || (d->kind == TermKind::Compound && (is_arithmetic_functor(d->name) || d->name == "state"));
}

Value need_value(const TermPtr& t, const Env& e, const Registry& reg, const std::string& what) {
  auto v = evaluate(t, e.subst, reg, &e.rt);
  if (!v) throw PreconditionError(what + ": cannot evaluate " + to_string(resolve(t, e.subst)));
  return *v;
}

ComplexMatrix need_matrix(const TermPtr& t, const Env& e, const Registry& reg, const std::string& what) {
  Value v = need_value(t, e, reg, what);
  if (v.kind != Value::Kind::Matrix) throw PreconditionError(what + ": " + v.to_string() + " is not an operator");
  return v.matrix;
}

std::string need_system(const TermPtr& t, const Env& e, const std::string& what) {
  const TermPtr d = deref(t, e.subst);
  if (d->kind != TermKind::Atom || e.rt.index_of(d->name) < 0)
    throw PreconditionError(what + ": " + to_string(d) + " is not a system");
  return d->name;
}

long need_integer(const TermPtr& t, const Env& e, const Registry& reg, const std::string& what) {
  const Value v = need_value(t, e, reg, what);
  if (!v.is_scalar()) throw PreconditionError(what + ": expected an integer");
  const cplx c = v.ket.scalar_value().evaluate(reg.params);
  if (c.imag() != 0.0 || c.real() != std::floor(c.real())) throw PreconditionError(what + ": expected an integer");
  return static_cast<long>(c.real());
}

// Binds t to v when t is an unbound variable, otherwise compares.
bool bind_or_check(const TermPtr& t, const Value& v, Env& e, const Registry& reg) {
  const TermPtr d = deref(t, e.subst);
  if (d->kind == TermKind::Var) {
    e.subst[d->var_id] = value_to_term(v, e.rt);
    return true;
  }
  const auto cur = evaluate(d, e.subst, reg, &e.rt);
  if (cur) return values_equal(*cur, v, reg.params);
  return unify(d, value_to_term(v, e.rt), e.subst, reg);
}

BuiltinResult success(Env e, std::string note = {}) {
  BuiltinResult r;
  r.status = Status::Proved;
  r.envs.push_back(std::move(e));
  r.note = std::move(note);
  return r;
}

BuiltinResult failure(std::string note) {
  BuiltinResult r;
  r.note = std::move(note);
  return r;
}

std::vector<std::string> system_args(const Predicate& p, std::size_t count, const Env& e) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(need_system(p.args[i], e, p.functor));
  return names;
}

// Factors of the operator's support on which it acts as the identity.
std::vector<std::size_t> spectator_factors(const ComplexMatrix& op, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    std::vector<std::size_t> others;
    std::vector<std::size_t> other_dims;
    for (std::size_t k = 0; k < dims.size(); ++k)
      if (k != f) others.push_back(k);
    ComplexMatrix rest = linalg::reduced_state(op, dims, others) * cplx(1.0 / static_cast<double>(dims[f]), 0.0);
    if (linalg::max_abs_diff(linalg::embed_operator(rest, dims, others), op) < 1e-10) out.push_back(f);
  }
  return out;
}

BuiltinResult apply_operator(const Predicate& p, const std::string& name, const OpEntry& op,
                             const std::vector<std::string>& systems, const Env& env) {
  Env e = env;
  const auto idx = e.rt.indices_of(systems);
  const ComplexMatrix full = linalg::embed_operator(op.matrix, e.rt.dims, idx);
  const ComplexMatrix src = op.antiunitary ? e.rt.rho.conj() : e.rt.rho;
  ComplexMatrix next = full * src * full.dagger();
  const double tr = next.trace().real();
  if (tr < 1e-12) return failure(name + " annihilates the state");
  if (p.decoration != 2) next *= cplx(1.0 / tr, 0.0);
  e.rt.rho = next;
  std::string on;
  for (const auto& s : systems) on += (on.empty() ? "" : ",") + s;
  return success(std::move(e), "applied " + name + (op.antiunitary ? " (antiunitary)" : "") + " on " + on);
}

BuiltinResult operator_application(const Predicate& p, const Env& env, const Registry& reg) {
  const std::string& name = p.functor;
  OpEntry op;
  std::vector<std::string> systems;
  if (name == "unitary_apply") {
    if (p.args.size() < 2) throw PreconditionError("unitary_apply(Op, System...) needs an operator and systems");
    if (p.decoration >= 0 && p.decoration != 2)
      throw DecorationError("unitary_apply carries decoration " + std::to_string(p.decoration));
    const Value v = need_value(p.args[0], env, reg, name);
    if (v.kind != Value::Kind::Matrix) throw PreconditionError("unitary_apply: first argument is not an operator");
    op = OpEntry{v.matrix, v.antiunitary};
    for (std::size_t i = 1; i < p.args.size(); ++i) systems.push_back(need_system(p.args[i], env, name));
    if (!linalg::is_unitary(op.matrix))
      throw DecorationError("unitary_apply bound to non-unitary " + v.to_string());
    Predicate q = p;
    q.decoration = 2;
    return apply_operator(q, v.name.empty() ? "operator" : v.name, op, systems, env);
  }
  op = *reg.find_op(name);
  if (p.decoration == 0) throw DecorationError("@0 " + name + " names an operator; classical predicates cannot act");
  if (p.decoration == 3) throw DecorationError("@3 " + name + " is not a Weyl-layer operation");
  if (p.star) {
    if (p.args.empty()) throw PreconditionError(name + "* needs an output argument");
    systems = system_args(p, p.args.size() - 1, env);
    if (!linalg::is_projector(op.matrix)) throw PreconditionError(name + "* is a measurement but not a projector");
    Env e = env;
    const auto idx = e.rt.indices_of(systems);
    const ComplexMatrix full = linalg::embed_operator(op.matrix, e.rt.dims, idx);
    ComplexMatrix next = full * e.rt.rho * full;
    const double prob = next.trace().real();
    if (prob < 1e-12) return failure("outcome of " + name + " has probability 0");
    e.rt.rho = next * cplx(1.0 / prob, 0.0);
    std::vector<std::size_t> sub_dims;
    for (auto i : idx) sub_dims.push_back(e.rt.dims[i]);
    std::vector<std::string> kept;
    for (auto f : spectator_factors(op.matrix, sub_dims)) kept.push_back(systems[f]);
    if (kept.empty()) kept = systems;
    std::vector<std::size_t> kept_dims;
    for (auto i : e.rt.indices_of(kept)) kept_dims.push_back(e.rt.dims[i]);
    const Value out = state_value(e.rt.reduced(kept), kept_dims);
    if (!bind_or_check(p.args.back(), out, e, reg)) return failure("post-measurement state differs");
    e.rt.records.push_back(name + "* -> " + out.to_string() + " (probability " + fmt(prob) + ")");
    return success(std::move(e), "measured " + name + " with probability " + fmt(prob));
  }
  systems = system_args(p, p.args.size(), env);
  if (p.decoration == 2 && !linalg::is_unitary(op.matrix))
    throw DecorationError("@2 " + name + " is bound to a non-" + (op.antiunitary ? "antiunitary" : "unitary") + " operator");
  return apply_operator(p, name, op, systems, env);
}

BuiltinResult equality(const Predicate& p, const Env& env, const Registry& reg) {
  Env e = env;
  const TermPtr a = deref(p.args[0], e.subst), b = deref(p.args[1], e.subst);
  const auto va = evaluate(a, e.subst, reg, &e.rt);
  const auto vb = evaluate(b, e.subst, reg, &e.rt);
  if (va && vb) {
    if (values_equal(*va, *vb, reg.params)) return success(std::move(e));
    return failure(va->to_string() + " differs from " + vb->to_string());
  }
  if (a->kind == TermKind::Var && vb) {
    e.subst[a->var_id] = value_to_term(*vb, e.rt);
    return success(std::move(e));
  }
  if (b->kind == TermKind::Var && va) {
    e.subst[b->var_id] = value_to_term(*va, e.rt);
    return success(std::move(e));
  }
  if (unify(a, b, e.subst, reg)) return success(std::move(e));
  return failure("terms do not unify");
}

BuiltinResult commutes(const Predicate& p, const Env& env, const Registry& reg) {
  const ComplexMatrix x = need_matrix(p.args[0], env, reg, "commutes");
  const ComplexMatrix y = need_matrix(p.args[1], env, reg, "commutes");
  if (x.rows() != y.rows() || !x.square() || !y.square()) throw DimensionError("commutes: operator shapes differ");
  const double r = linalg::commutator(x, y).max_abs();
  if (r < 1e-9) return success(env, "commutator norm " + fmt(r));
  return failure("commutator norm " + fmt(r));
}

BuiltinResult succ(const Predicate& p, const Env& env, const Registry& reg) {
  Env e = env;
  if (bound(p.args[0], e)) {
    const long m = need_integer(p.args[0], e, reg, "succ");
    if (m < 0) return failure("succ of a negative number");
    if (bind_or_check(p.args[1], Value::of_ket(KetExpr::scalar(Poly(cplx(m + 1.0, 0.0)))), e, reg)) return success(std::move(e));
    return failure("successor mismatch");
  }
  const long n = need_integer(p.args[1], e, reg, "succ");
  if (n < 1) return failure(std::to_string(n) + " has no predecessor");
  bind_or_check(p.args[0], Value::of_ket(KetExpr::scalar(Poly(cplx(n - 1.0, 0.0)))), e, reg);
  return success(std::move(e));
}

BuiltinResult superpose(const Predicate& p, const Env& env, const Registry& reg) {
  const Value k = need_value(p.args[0], env, reg, "superpose");
  if (k.kind != Value::Kind::Ket || k.ket.is_scalar() || k.ket.terms().size() < 2)
    return failure("not a superposition");
  auto it = k.ket.terms().begin();
  const auto [l0, c0] = *it;
  KetExpr rest;
  for (++it; it != k.ket.terms().end(); ++it) rest += KetExpr::basis(it->first, it->second);
  Poly b(cplx(1.0, 0.0));
  if (rest.terms().size() == 1) {
    b = rest.terms().begin()->second;
    rest = KetExpr::basis(rest.terms().begin()->first);
  }
  Env e = env;
  const bool ok = bind_or_check(p.args[1], Value::of_ket(KetExpr::scalar(c0)), e, reg) &&
                  bind_or_check(p.args[2], Value::of_ket(KetExpr::basis(l0)), e, reg) &&
                  bind_or_check(p.args[3], Value::of_ket(KetExpr::scalar(b)), e, reg) &&
                  bind_or_check(p.args[4], Value::of_ket(rest), e, reg);
  if (!ok) return failure("decomposition does not match");
  return success(std::move(e));
}

BuiltinResult measure(const Predicate& p, const Env& env, const Registry& reg) {
  const ComplexMatrix obs = need_matrix(p.args[0], env, reg, "measure");
  const std::string sys = need_system(p.args[1], env, "measure");
  const auto sd = qprob::SpectralDecomposition::of(obs);
  Env e = env;
  const auto idx = e.rt.indices_of({sys});
  const ComplexMatrix local = e.rt.reduced({sys});
  std::vector<double> probs;
  std::string note = "probabilities";
  for (std::size_t i = 0; i < sd.projectors.size(); ++i) {
    probs.push_back(std::max(0.0, (local * sd.projectors[i].matrix()).trace().real()));
    note += " " + fmt(sd.eigenvalues[i]) + ":" + fmt(probs.back());
  }
  std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
  const std::size_t k = pick(e.rt.rng);
  const ComplexMatrix full = linalg::embed_operator(sd.projectors[k].matrix(), e.rt.dims, idx);
  e.rt.rho = full * e.rt.rho * full * cplx(1.0 / probs[k], 0.0);
  if (!bind_or_check(p.args[2], Value::of_ket(KetExpr::scalar(Poly(cplx(sd.eigenvalues[k], 0.0)))), e, reg))
    return failure(note + "; outcome " + fmt(sd.eigenvalues[k]) + " rejected");
  e.rt.records.push_back("measure " + sys + " -> " + fmt(sd.eigenvalues[k]) + " (" + note + ")");
  return success(std::move(e), note + "; outcome " + fmt(sd.eigenvalues[k]));
}

BuiltinResult cond_expect(const Predicate& p, const Env& env, const Registry& reg) {
  const ComplexMatrix d = need_matrix(p.args[0], env, reg, "cond_expect");
  const ComplexMatrix a = need_matrix(p.args[1], env, reg, "cond_expect");
  const std::string sys = need_system(p.args[2], env, "cond_expect");
  ComplexMatrix out;
  try {
    out = qprob::conditional_expectation(d, qprob::SpectralDecomposition::of(a), qprob::QuantumState(env.rt.reduced({sys})));
  } catch (const PreconditionError& err) {
    return failure(err.what());
  }
  Env e = env;
  if (!bind_or_check(p.args[3], Value::of_matrix(out), e, reg)) return failure("conditional expectation differs");
  return success(std::move(e));
}

BuiltinResult probe_unitary(const Predicate& p, const Env& env, const Registry& reg) {
  if (p.decoration >= 0 && p.decoration != 2)
    throw DecorationError("probe_unitary carries decoration " + std::to_string(p.decoration));
  const ComplexMatrix obs = need_matrix(p.args[0], env, reg, "probe_unitary");
  const std::string sys = need_system(p.args[1], env, "probe_unitary");
  const auto probe = qprob::build_probe_unitary(qprob::SpectralDecomposition::of(obs), 0);
  Env e = env;
  std::string reg_name;
  const TermPtr r = deref(p.args[2], e.subst);
  if (r->kind == TermKind::Var) {
    reg_name = e.rt.fresh_name("probe");
    e.subst[r->var_id] = Term::atom(reg_name);
  } else if (r->kind == TermKind::Atom) {
    reg_name = r->name;
    if (e.rt.index_of(reg_name) >= 0) return failure("register " + reg_name + " is already in use");
  } else {
    throw PreconditionError("probe_unitary: register must be a name");
  }
  const std::size_t m = probe.system_dim;
  ComplexMatrix pointer(m, m);
  pointer(0, 0) = 1.0;
  e.rt.add_system(reg_name, pointer);
  const ComplexMatrix full = linalg::embed_operator(probe.unitary, e.rt.dims, e.rt.indices_of({sys, reg_name}));
  e.rt.rho = full * e.rt.rho * full.dagger();
  e.rt.probes[reg_name] = ProbeRecord{sys, obs};
  return success(std::move(e), "probe register " + reg_name + " copies " + sys);
}

BuiltinResult same_stats(const Predicate& p, const Env& env, const Registry& reg) {
  const ComplexMatrix obs = need_matrix(p.args[0], env, reg, "same_stats");
  const std::string sys = need_system(p.args[1], env, "same_stats");
  const std::string probe = need_system(p.args[2], env, "same_stats");
  const auto sd = qprob::SpectralDecomposition::of(obs);
  const ComplexMatrix ls = env.rt.reduced({sys});
  const ComplexMatrix lp = env.rt.reduced({probe});
  if (lp.rows() != sd.projectors.size()) throw DimensionError("same_stats: register does not match the observable");
  double worst = 0.0;
  for (std::size_t a = 0; a < sd.projectors.size(); ++a)
    worst = std::max(worst, std::abs((ls * sd.projectors[a].matrix()).trace().real() - lp(a, a).real()));
  if (worst <= 1e-9) return success(env, "statistics agree");
  return failure("statistics differ by " + fmt(worst));
}

BuiltinResult walk_step(const Predicate& p, const Env& env, const Registry& reg) {
  const long m = need_integer(p.args[0], env, reg, "walk_step");
  if (m < 0 || static_cast<std::size_t>(m) != env.rt.walk.n)
    return failure("walk is at step " + std::to_string(env.rt.walk.n) + ", not " + std::to_string(m));
  Env e = env;
  if (!bind_or_check(p.args[1], Value::of_ket(KetExpr::scalar(Poly(cplx(m + 1.0, 0.0)))), e, reg))
    return failure("walk_step advances by one");
  e.rt.walk = qwalk::hadamard_step(e.rt.walk);
  return success(std::move(e), "walk step " + std::to_string(m) + " -> " + std::to_string(m + 1));
}

BuiltinResult walk_prob(const Predicate& p, const Env& env, const Registry& reg) {
  const long x = need_integer(p.args[0], env, reg, "walk_prob");
  const auto dist = qwalk::position_distribution(env.rt.walk);
  const long n = static_cast<long>(env.rt.walk.n);
  const double prob = (x < -n || x > n) ? 0.0 : dist[static_cast<std::size_t>(x + n)];
  Env e = env;
  if (!bind_or_check(p.args[1], Value::of_ket(KetExpr::scalar(Poly(cplx(prob, 0.0)))), e, reg))
    return failure("probability " + fmt(prob));
  return success(std::move(e));
}

BuiltinResult martingale(const Predicate& p, const Env& env, const Registry&) {
  const TermPtr name = deref(p.args[0], env.subst);
  if (name->kind != TermKind::Atom || (name->name != "a" && name->name != "adag" && name->name != "lambda"))
    return failure("martingale name must be a, adag or lambda");
  return success(env, "annotation");
}

std::string fock_register(const TermPtr& t, const Env& e) {
  const TermPtr d = deref(t, e.subst);
  if (d->kind != TermKind::Atom || !e.rt.fock.count(d->name)) throw PreconditionError(to_string(d) + " is not a Fock register");
  return d->name;
}

BuiltinResult weyl(const Predicate& p, const Env& env, const Registry& reg) {
  if (p.decoration >= 0 && p.decoration != 3)
    throw DecorationError("weyl is a Weyl-layer operation but carries decoration " + std::to_string(p.decoration));
  const Value amp = need_value(p.args[0], env, reg, "weyl");
  if (!amp.is_scalar()) throw PreconditionError("weyl: amplitude must be a number");
  const std::string name = fock_register(p.args[1], env);
  const FockDecl& decl = reg.fock.at(name);
  Env e = env;
  const auto f = fockweyl::TestFunction::constant(decl.horizon, decl.cells, amp.ket.scalar_value().evaluate(reg.params));
  e.rt.fock[name] = fockweyl::weyl_apply(f, e.rt.fock[name]);
  return success(std::move(e), "W(" + amp.to_string() + ") on " + name);
}

BuiltinResult fock_norm2(const Predicate& p, const Env& env, const Registry& reg) {
  const std::string name = fock_register(p.args[0], env);
  const double n2 = fockweyl::exp_inner(env.rt.fock.at(name), env.rt.fock.at(name)).real();
  Env e = env;
  if (!bind_or_check(p.args[1], Value::of_ket(KetExpr::scalar(Poly(cplx(n2, 0.0)))), e, reg)) return failure("norm " + fmt(n2));
  return success(std::move(e));
}

void check_arity(const Predicate& p, std::size_t n) {
  if (p.args.size() != n)
    throw PreconditionError(p.functor + " expects " + std::to_string(n) + " arguments, got " + std::to_string(p.args.size()));
}

}  // namespace

bool is_builtin(const Predicate& p, const Registry& reg, bool user_defined) {
  if (p.kind != PredKind::Call) return true;
  if (reserved(p.functor)) return true;
  return !user_defined && reg.find_op(p.functor) != nullptr;
}

Schedule schedule_builtin(const Predicate& p, const Env& e) {
  const auto& a = p.args;
  if (p.kind == PredKind::Equal || p.functor == "state_eq") {
    const bool ga = ground(a[0], e), gb = ground(a[1], e);
    if (ga && gb) {
      const bool reads = mentions_state(a[0], e.subst) || mentions_state(a[1], e.subst);
      return reads ? Schedule{true, 3, 3} : Schedule{true, 1, 0};
    }
    const bool va = deref(a[0], e.subst)->kind == TermKind::Var, vb = deref(a[1], e.subst)->kind == TermKind::Var;
    if ((va && gb) || (vb && ga)) return {true, 4, 0};
    if (!arithmetic(a[0], e) && !arithmetic(a[1], e)) return {true, 4, 1};
    return {};
  }
  if (p.kind == PredKind::Commutator || p.functor == "commutes")
    return {all_ground(a, 0, 2, e), 1, 0};
  const std::string& f = p.functor;
  if (f == "succ") return {a.size() == 2 && (bound(a[0], e) || bound(a[1], e)), 1, 0};
  if (f == "superpose") return {!a.empty() && ground(a[0], e), 1, 0};
  if (f == "martingale") return {true, 1, 0};
  if (f == "unitary_apply") return {all_ground(a, 0, a.size(), e), 3, 0};
  if (f == "probe_unitary") return {all_ground(a, 0, 2, e), 3, 1};
  if (f == "walk_step") return {!a.empty() && ground(a[0], e), 3, 1};
  if (f == "weyl") return {all_ground(a, 0, 2, e), 3, 1};
  if (f == "measure") return {all_ground(a, 0, 2, e), 3, 2};
  if (f == "same_stats") return {all_ground(a, 0, 3, e), 3, 3};
  if (f == "walk_prob") return {!a.empty() && ground(a[0], e), 3, 3};
  if (f == "cond_expect") return {all_ground(a, 0, 3, e), 3, 3};
  if (f == "fock_norm2") return {!a.empty() && ground(a[0], e), 3, 3};
  // registered operator applied to systems
  if (p.star) return {!a.empty() && all_ground(a, 0, a.size() - 1, e), 3, 2};
  return {all_ground(a, 0, a.size(), e), 3, 0};
}

BuiltinResult run_builtin(const Predicate& p, const Env& env, const Registry& reg) {
  if (p.kind == PredKind::Equal) return equality(p, env, reg);
  if (p.kind == PredKind::Commutator) return commutes(p, env, reg);
  const std::string& f = p.functor;
  if (f == "state_eq") {
    check_arity(p, 2);
    const Value x = need_value(p.args[0], env, reg, f), y = need_value(p.args[1], env, reg, f);
    if (values_equal(x, y, reg.params)) return success(env);
    return failure(x.to_string() + " differs from " + y.to_string());
  }
  if (f == "commutes") {
    check_arity(p, 2);
    return commutes(p, env, reg);
  }
  if (f == "succ") {
    check_arity(p, 2);
    return succ(p, env, reg);
  }
  if (f == "superpose") {
    check_arity(p, 5);
    return superpose(p, env, reg);
  }
  if (f == "martingale") {
    check_arity(p, 2);
    return martingale(p, env, reg);
  }
  if (f == "measure") {
    check_arity(p, 3);
    return measure(p, env, reg);
  }
  if (f == "cond_expect") {
    check_arity(p, 4);
    return cond_expect(p, env, reg);
  }
  if (f == "probe_unitary") {
    check_arity(p, 3);
    return probe_unitary(p, env, reg);
  }
  if (f == "same_stats") {
    check_arity(p, 3);
    return same_stats(p, env, reg);
  }
  if (f == "walk_step") {
    check_arity(p, 2);
    return walk_step(p, env, reg);
  }
  if (f == "walk_prob") {
    check_arity(p, 2);
    return walk_prob(p, env, reg);
  }
  if (f == "weyl") {
    check_arity(p, 2);
    return weyl(p, env, reg);
  }
  if (f == "fock_norm2") {
    check_arity(p, 2);
    return fock_norm2(p, env, reg);
  }
  return operator_application(p, env, reg);
}

}  // namespace qhorn::horn::detail
