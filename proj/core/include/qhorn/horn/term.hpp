#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhorn/horn/poly.hpp"

namespace qhorn::horn {

enum class TermKind { Var, Atom, Ket, OpRef, Compound };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind = TermKind::Atom;
  std::string name;  // variable name, atom, operator name or functor
  int var_id = -1;
  KetExpr ket;  // also plain numbers, under the empty label
  std::vector<TermPtr> args;

  static TermPtr var(const std::string& name, int id);
  static TermPtr atom(const std::string& name);
  static TermPtr ket_term(const KetExpr& k);
  static TermPtr number(cplx c);
  static TermPtr opref(const std::string& name);
  static TermPtr compound(const std::string& functor, std::vector<TermPtr> args);

  bool is_number() const { return kind == TermKind::Ket && ket.is_scalar(); }
};

// Arithmetic and tensor functors the evaluator understands.
bool is_arithmetic_functor(const std::string& f);

using Substitution = std::map<int, TermPtr>;

TermPtr deref(TermPtr t, const Substitution& s);
// Fully substituted copy of t.
TermPtr resolve(const TermPtr& t, const Substitution& s);
bool occurs(int var_id, const TermPtr& t, const Substitution& s);
bool is_ground(const TermPtr& t, const Substitution& s);
void collect_vars(const TermPtr& t, std::vector<int>& ids);
TermPtr offset_vars(const TermPtr& t, int offset);

std::string to_string(const TermPtr& t);

enum class PredKind { Call, Equal, Commutator };

struct Predicate {
  PredKind kind = PredKind::Call;
  int decoration = -1;  // -1: undecorated
  std::string functor;
  std::vector<TermPtr> args;
  bool star = false;     // measurement step
  bool dagger = false;   // compactness-moved head
  bool negated = false;
  std::size_t line = 0;
  std::size_t column = 0;
};

Predicate resolve(const Predicate& p, const Substitution& s);
Predicate offset_vars(const Predicate& p, int offset);
std::string to_string(const Predicate& p);

struct Clause {
  std::optional<Predicate> head;  // empty after a compactness rewrite
  std::vector<Predicate> body;
  int num_vars = 0;
  std::size_t line = 0;
};

std::string to_string(const Clause& c);

// Body sorted by canonical text; the head is untouched.
Clause normalize_clause(const Clause& c);
// (p :- body) -> (:- p^dag, body); undefined for decoration-0 or undecorated heads.
Clause compact(const Clause& c);
// Inverse of compact.
Clause uncompact(const Clause& c);

struct SystemDecl {
  std::string name;
  std::size_t dim = 2;
};
struct OpDecl {
  std::string name;
  TermPtr expr;
  bool antiunitary = false;
  std::size_t line = 0, column = 0;
};
struct StateDecl {
  std::string name;
  TermPtr expr;
  std::size_t line = 0, column = 0;
};
struct ParamDecl {
  std::string name;
  double value = 0.0;
};
struct FockDecl {
  std::string name;
  double horizon = 1.0;
  std::size_t cells = 1;
  cplx value = 0.0;
};

struct Program {
  std::vector<SystemDecl> systems;
  std::vector<OpDecl> ops;
  std::vector<StateDecl> states;
  std::vector<ParamDecl> params;
  std::vector<FockDecl> fock;
  std::vector<Clause> clauses;
};

// Goals of a query share one variable numbering; names index the answer bindings.
struct Query {
  std::vector<Predicate> goals;
  std::vector<std::pair<std::string, int>> variables;
  int num_vars = 0;
};

}  // namespace qhorn::horn
