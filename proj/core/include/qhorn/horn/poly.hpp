#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qhorn::horn {

using cplx = std::complex<double>;
using ParamTable = std::map<std::string, double>;

// Product of named symbols with positive powers, sorted by name.
using Monomial = std::vector<std::pair<std::string, int>>;

// Polynomial in the program's #param symbols with complex coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(cplx c);  // NOLINT: numeric constants promote implicitly
  static Poly symbol(const std::string& name);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return a * Poly(cplx(-1.0, 0.0)); }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly conj() const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  cplx constant() const;  // value of the empty monomial
  cplx evaluate(const ParamTable& params) const;
  const std::map<Monomial, cplx>& terms() const { return terms_; }
  std::string to_string() const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

 private:
  void add(const Monomial& m, cplx c);
  std::map<Monomial, cplx> terms_;
};

std::string format_number(cplx c);

// Finite superposition sum_l c_l |l>; the empty label "" holds plain scalars.
class KetExpr {
 public:
  KetExpr() = default;
  static KetExpr scalar(const Poly& c);
  static KetExpr basis(const std::string& label, const Poly& c = Poly(cplx(1.0, 0.0)));

  KetExpr& operator+=(const KetExpr& o);
  KetExpr& operator-=(const KetExpr& o);
  friend KetExpr operator+(KetExpr a, const KetExpr& b) { return a += b; }
  friend KetExpr operator-(KetExpr a, const KetExpr& b) { return a -= b; }
  KetExpr scaled(const Poly& c) const;
  KetExpr tensor(const KetExpr& o) const;

  const std::map<std::string, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const;
  Poly scalar_value() const;
  // Length of every label; nullopt if labels disagree or the expression is empty.
  std::optional<std::size_t> label_length() const;

  std::map<std::string, cplx> numeric(const ParamTable& params) const;
  std::string to_string() const;
  bool operator==(const KetExpr& o) const { return terms_ == o.terms_; }

 private:
  std::map<std::string, Poly> terms_;
};

inline constexpr double KET_TOL = 1e-9;

// Equality of the normalized vectors up to a global phase (plain scalars compare exactly).
bool ket_equal_up_to_phase(const KetExpr& a, const KetExpr& b, const ParamTable& params, double tol = KET_TOL);

// Deterministic representative: unit norm, largest component real positive.
std::map<std::string, cplx> phase_normalized(const std::map<std::string, cplx>& v);

// Coefficient equations a_l = b_l for every label where the two sides differ symbolically.
std::vector<std::string> coefficient_equations(const KetExpr& lhs, const KetExpr& rhs);

}  // namespace qhorn::horn
