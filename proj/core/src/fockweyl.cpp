#include "qhorn/fockweyl.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qhorn/errors.hpp"

namespace qhorn::fockweyl {

namespace {

void require_grid(const TestFunction& a, const TestFunction& b, const char* op) {
  if (!a.same_grid(b)) throw DimensionError(std::string(op) + ": test functions live on different grids");
}

void require_time(double t, double horizon, const char* op) {
  if (!(t >= 0.0 && t <= horizon)) throw PreconditionError(std::string(op) + ": t outside [0, T]");
}

// Length of [0, t] covered by cell k.
double covered(const TestFunction& f, std::size_t k, double t) {
  const double dt = f.dt();
  const double lo = static_cast<double>(k) * dt;
  return std::clamp(t - lo, 0.0, dt);
}

}  // namespace

TestFunction::TestFunction(double horizon, std::vector<cplx> values) : horizon_(horizon), values_(std::move(values)) {
  if (!(horizon_ > 0.0)) throw PreconditionError("TestFunction: horizon must be positive");
  if (values_.empty()) throw PreconditionError("TestFunction: at least one cell required");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw PreconditionError("TestFunction: non-finite value");
}

TestFunction TestFunction::constant(double horizon, std::size_t cells, cplx c) {
  return TestFunction(horizon, std::vector<cplx>(cells, c));
}

TestFunction TestFunction::window(double horizon, std::size_t cells, double t0, double t1, cplx c) {
  std::vector<cplx> v(cells, 0.0);
  const double dt = horizon / static_cast<double>(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dt;
    if (mid >= t0 && mid < t1) v[k] = c;
  }
  return TestFunction(horizon, std::move(v));
}

TestFunction TestFunction::refined(std::size_t factor) const {
  std::vector<cplx> v;
  v.reserve(values_.size() * factor);
  for (const auto& x : values_)
    for (std::size_t i = 0; i < factor; ++i) v.push_back(x);
  return TestFunction(horizon_, std::move(v));
}

cplx TestFunction::integral(double t) const {
  cplx s = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) s += values_[k] * covered(*this, k, t);
  return s;
}

double TestFunction::norm2() const { return l2_inner(*this, *this).real(); }

bool TestFunction::same_grid(const TestFunction& o) const {
  return values_.size() == o.values_.size() && std::abs(horizon_ - o.horizon_) <= 1e-12 * horizon_;
}

TestFunction TestFunction::operator+(const TestFunction& o) const {
  require_grid(*this, o, "TestFunction::operator+");
  std::vector<cplx> v(values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k] + o.values_[k];
  return TestFunction(horizon_, std::move(v));
}

TestFunction TestFunction::operator*(cplx s) const {
  std::vector<cplx> v(values_);
  for (auto& x : v) x *= s;
  return TestFunction(horizon_, std::move(v));
}

cplx l2_inner(const TestFunction& f, const TestFunction& g, double t) {
  require_grid(f, g, "l2_inner");
  cplx s = 0.0;
  for (std::size_t k = 0; k < f.cells(); ++k) s += std::conj(f.values()[k]) * g.values()[k] * covered(f, k, t);
  return s;
}

cplx kernel(const TestFunction& f, const TestFunction& g) { return std::exp(l2_inner(f, g) - f.horizon()); }

ExponentialVectorSum::ExponentialVectorSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 1; i < terms_.size(); ++i) require_grid(terms_[0].f, terms_[i].f, "ExponentialVectorSum");
}

ExponentialVectorSum ExponentialVectorSum::single(const TestFunction& f, cplx coef) {
  return ExponentialVectorSum({ExpTerm{coef, f}});
}

ExponentialVectorSum ExponentialVectorSum::operator+(const ExponentialVectorSum& o) const {
  std::vector<ExpTerm> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return ExponentialVectorSum(std::move(t));
}

ExponentialVectorSum ExponentialVectorSum::operator*(cplx s) const {
  std::vector<ExpTerm> t = terms_;
  for (auto& x : t) x.coef *= s;
  return ExponentialVectorSum(std::move(t));
}

cplx exp_inner(const ExponentialVectorSum& u, const ExponentialVectorSum& v) {
  cplx s = 0.0;
  for (const auto& a : u.terms())
    for (const auto& b : v.terms()) s += std::conj(a.coef) * b.coef * kernel(a.f, b.f);
  return s;
}

ExponentialVectorSum weyl_apply(const TestFunction& f, const ExponentialVectorSum& v) {
  std::vector<ExpTerm> out;
  out.reserve(v.terms().size());
  const double half = 0.5 * f.norm2();
  for (const auto& t : v.terms()) {
    require_grid(f, t.f, "weyl_apply");
    out.push_back(ExpTerm{t.coef * std::exp(-l2_inner(f, t.f) - half), f + t.f});
  }
  return ExponentialVectorSum(std::move(out));
}

cplx weyl_compose_check(const TestFunction& f, const TestFunction& g, const std::vector<TestFunction>& probes) {
  require_grid(f, g, "weyl_compose_check");
  if (probes.empty()) throw PreconditionError("weyl_compose_check: at least one probe required");
  cplx c = 0.0;
  bool first = true;
  for (const auto& p : probes) {
    const auto lhs = weyl_apply(f, weyl_apply(g, ExponentialVectorSum::single(p)));
    const auto rhs = weyl_apply(f + g, ExponentialVectorSum::single(p));
    // both sides are single terms on the same function f + g + p
    const cplx ratio = lhs.terms()[0].coef / rhs.terms()[0].coef;
    if (first) {
      c = ratio;
      first = false;
    } else if (std::abs(ratio - c) > 1e-10 * std::max(1.0, std::abs(c))) {
      throw QhornError("weyl_compose_check: composition phase differs across probes");
    }
  }
  return c;
}

cplx gauge_elem(double t, const TestFunction& u, const TestFunction& v) {
  require_time(t, u.horizon(), "gauge_elem");
  return l2_inner(u, v, t) * kernel(u, v);
}

cplx annihilation_elem(double t, const TestFunction& u, const TestFunction& v) {
  require_time(t, u.horizon(), "annihilation_elem");
  require_grid(u, v, "annihilation_elem");
  return v.integral(t) * kernel(u, v);
}

cplx creation_elem(double t, const TestFunction& u, const TestFunction& v) {
  require_time(t, u.horizon(), "creation_elem");
  require_grid(u, v, "creation_elem");
  return std::conj(u.integral(t)) * kernel(u, v);
}

MatrixElement gauge_at(double t) {
  return [t](const TestFunction& u, const TestFunction& v) { return gauge_elem(t, u, v); };
}
MatrixElement annihilation_at(double t) {
  return [t](const TestFunction& u, const TestFunction& v) { return annihilation_elem(t, u, v); };
}
MatrixElement creation_at(double t) {
  return [t](const TestFunction& u, const TestFunction& v) { return creation_elem(t, u, v); };
}
MatrixElement identity_elem() {
  return [](const TestFunction& u, const TestFunction& v) { return kernel(u, v); };
}

cplx matrix_element(const MatrixElement& x, const ExponentialVectorSum& u, const ExponentialVectorSum& v) {
  cplx s = 0.0;
  for (const auto& a : u.terms())
    for (const auto& b : v.terms()) s += std::conj(a.coef) * b.coef * x(a.f, b.f);
  return s;
}

cplx coherent_expectation(const MatrixElement& x, const TestFunction& f) {
  return x(f, f) * std::exp(f.horizon() - f.norm2());
}

double poisson_mc_oracle(double t, const TestFunction& f, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw PreconditionError("poisson_mc_oracle: samples must be positive");
  require_time(t, f.horizon(), "poisson_mc_oracle");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double dt = f.dt();
  std::vector<double> means;
  std::vector<std::poisson_distribution<long>> cells;
  for (const auto& v : f.values()) {
    means.push_back(std::norm(v) * dt);
    cells.emplace_back(means.back() > 0.0 ? means.back() : 1.0);
  }
  double total = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    long count = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (means[k] == 0.0) continue;
      const long jumps = cells[k](rng);
      const double lo = static_cast<double>(k) * dt;
      for (long j = 0; j < jumps; ++j)
        if (lo + unit(rng) * dt <= t) ++count;
    }
    total += static_cast<double>(count);
  }
  return total / static_cast<double>(samples);
}

}  // namespace qhorn::fockweyl
