#include "qhorn/horn/term.hpp"

#include <algorithm>

#include "qhorn/errors.hpp"

namespace qhorn::horn {

TermPtr Term::var(const std::string& name, int id) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = name;
  t->var_id = id;
  return t;
}

TermPtr Term::atom(const std::string& name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Atom;
  t->name = name;
  return t;
}

TermPtr Term::ket_term(const KetExpr& k) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Ket;
  t->ket = k;
  return t;
}

TermPtr Term::number(cplx c) { return ket_term(KetExpr::scalar(Poly(c))); }

TermPtr Term::opref(const std::string& name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::OpRef;
  t->name = name;
  return t;
}

TermPtr Term::compound(const std::string& functor, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Compound;
  t->name = functor;
  t->args = std::move(args);
  return t;
}

bool is_arithmetic_functor(const std::string& f) {
  static const char* const names[] = {"+", "-", "*", "/", "neg", "⊗", "sqrt", "exp", "dag", "kron", "eye", "matrix", "row"};
  return std::find(std::begin(names), std::end(names), f) != std::end(names);
}

TermPtr deref(TermPtr t, const Substitution& s) {
  while (t->kind == TermKind::Var) {
    const auto it = s.find(t->var_id);
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

TermPtr resolve(const TermPtr& t0, const Substitution& s) {
  const TermPtr t = deref(t0, s);
  if (t->kind != TermKind::Compound) return t;
  std::vector<TermPtr> args;
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(resolve(a, s));
    changed = changed || args.back() != a;
  }
  return changed ? Term::compound(t->name, std::move(args)) : t;
}

bool occurs(int var_id, const TermPtr& t0, const Substitution& s) {
  const TermPtr t = deref(t0, s);
  if (t->kind == TermKind::Var) return t->var_id == var_id;
  if (t->kind != TermKind::Compound) return false;
  return std::any_of(t->args.begin(), t->args.end(), [&](const TermPtr& a) { return occurs(var_id, a, s); });
}

bool is_ground(const TermPtr& t0, const Substitution& s) {
  const TermPtr t = deref(t0, s);
  if (t->kind == TermKind::Var) return false;
  if (t->kind != TermKind::Compound) return true;
  return std::all_of(t->args.begin(), t->args.end(), [&](const TermPtr& a) { return is_ground(a, s); });
}

void collect_vars(const TermPtr& t, std::vector<int>& ids) {
  if (t->kind == TermKind::Var) {
    if (std::find(ids.begin(), ids.end(), t->var_id) == ids.end()) ids.push_back(t->var_id);
  } else if (t->kind == TermKind::Compound) {
    for (const auto& a : t->args) collect_vars(a, ids);
  }
}

TermPtr offset_vars(const TermPtr& t, int offset) {
  if (t->kind == TermKind::Var) return Term::var(t->name, t->var_id + offset);
  if (t->kind != TermKind::Compound) return t;
  std::vector<TermPtr> args;
  for (const auto& a : t->args) args.push_back(offset_vars(a, offset));
  return Term::compound(t->name, std::move(args));
}

namespace {

int precedence(const std::string& f) {
  if (f == "+" || f == "-") return 1;
  if (f == "*" || f == "/") return 2;
  if (f == "⊗") return 3;
  if (f == "neg") return 4;
  return 5;
}

std::string wrap(const TermPtr& t, int outer) {
  std::string s = to_string(t);
  int inner = 5;
  if (t->kind == TermKind::Compound) inner = precedence(t->name);
  if (t->kind == TermKind::Ket && !t->ket.is_scalar() && t->ket.terms().size() > 1) inner = 1;
  if (t->kind == TermKind::Ket && t->ket.is_scalar() && s.find(' ') != std::string::npos) inner = 1;
  return inner < outer ? "(" + s + ")" : s;
}

std::string join_args(const std::vector<TermPtr>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += to_string(args[i]);
  }
  return s;
}

}  // namespace

std::string to_string(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Atom:
    case TermKind::OpRef:
      return t->name;
    case TermKind::Ket:
      return t->ket.to_string();
    case TermKind::Compound:
      break;
  }
  const std::string& f = t->name;
  if (f == "neg") return "-" + wrap(t->args[0], 4);
  if ((f == "+" || f == "-" || f == "*" || f == "/" || f == "⊗") && t->args.size() == 2) {
    const int p = precedence(f);
    // right operand of a non-associative operator needs a tighter bound
    const int right = (f == "-" || f == "/") ? p + 1 : p;
    return wrap(t->args[0], p) + " " + f + " " + wrap(t->args[1], right);
  }
  if (f == "matrix" || f == "row") return "[" + join_args(t->args) + "]";
  return f + "(" + join_args(t->args) + ")";
}

Predicate resolve(const Predicate& p, const Substitution& s) {
  Predicate out = p;
  for (auto& a : out.args) a = resolve(a, s);
  return out;
}

Predicate offset_vars(const Predicate& p, int offset) {
  Predicate out = p;
  for (auto& a : out.args) a = offset_vars(a, offset);
  return out;
}

std::string to_string(const Predicate& p) {
  std::string s;
  if (p.negated) s += "~";
  if (p.decoration >= 0) s += "@" + std::to_string(p.decoration) + " ";
  switch (p.kind) {
    case PredKind::Equal:
      s += to_string(p.args[0]) + " = " + to_string(p.args[1]);
      break;
    case PredKind::Commutator:
      s += "[" + to_string(p.args[0]) + ", " + to_string(p.args[1]) + "] = 0";
      break;
    case PredKind::Call:
      s += p.functor;
      if (!p.args.empty()) s += "(" + join_args(p.args) + ")";
      break;
  }
  if (p.dagger) s += "†";
  if (p.star) s += "*";
  return s;
}

std::string to_string(const Clause& c) {
  std::string s = c.head ? to_string(*c.head) : std::string();
  if (!c.body.empty()) {
    s += c.head ? " :- " : ":- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) s += ", ";
      s += to_string(c.body[i]);
    }
  }
  return s + ".";
}

Clause normalize_clause(const Clause& c) {
  Clause out = c;
  std::stable_sort(out.body.begin(), out.body.end(),
                   [](const Predicate& a, const Predicate& b) { return to_string(a) < to_string(b); });
  return out;
}

Clause compact(const Clause& c) {
  if (!c.head) throw PreconditionError("compact: clause has no head");
  if (c.head->decoration < 1)
    throw PreconditionError("compact: dagger undefined for decoration-0 head " + to_string(*c.head));
  Clause out = c;
  Predicate moved = *c.head;
  moved.dagger = !moved.dagger;
  out.head.reset();
  out.body.insert(out.body.begin(), moved);
  return out;
}

Clause uncompact(const Clause& c) {
  if (c.head) throw PreconditionError("uncompact: clause already has a head");
  const auto it = std::find_if(c.body.begin(), c.body.end(), [](const Predicate& p) { return p.dagger; });
  if (it == c.body.end()) throw PreconditionError("uncompact: no daggered predicate in body");
  Clause out = c;
  Predicate head = *it;
  head.dagger = false;
  out.body.erase(out.body.begin() + (it - c.body.begin()));
  out.head = head;
  return out;
}

}  // namespace qhorn::horn
