#pragma once

#include <optional>
#include <string>

#include "qhorn/horn/registry.hpp"

namespace qhorn::horn {

struct Value {
  enum class Kind { Ket, Matrix, Atom };
  Kind kind = Kind::Atom;
  KetExpr ket;  // scalars live under the empty label
  ComplexMatrix matrix;
  bool antiunitary = false;
  std::string name;  // atom text, or the operator name when the matrix came from one

  static Value of_ket(KetExpr k);
  static Value of_matrix(ComplexMatrix m, std::string name = {}, bool antiunitary = false);
  static Value of_atom(std::string name);
  bool is_scalar() const { return kind == Kind::Ket && ket.is_scalar(); }
  std::string to_string() const;
};

// nullopt when t contains an unbound variable or a non-arithmetic compound.
// state(...) needs a runtime; without one it is treated as non-evaluable.
std::optional<Value> evaluate(const TermPtr& t, const Substitution& s, const Registry& reg, const Runtime* rt);
bool mentions_state(const TermPtr& t, const Substitution& s);

bool values_equal(const Value& a, const Value& b, const ParamTable& params, double tol = KET_TOL);

// Term carrying v; unnamed matrices are registered in rt under a fresh name.
TermPtr value_to_term(const Value& v, Runtime& rt);

// Column vector for a ket over labels of equal length, each digit < base.
ComplexVector ket_vector(const KetExpr& k, std::size_t dim, const ParamTable& params);
// Phase-normalized ket with one digit per factor.
KetExpr ket_from_vector(const ComplexVector& v, const std::vector<std::size_t>& dims);
// A pure density becomes a ket, anything else stays a matrix.
Value state_value(const ComplexMatrix& rho, const std::vector<std::size_t>& dims);

}  // namespace qhorn::horn
