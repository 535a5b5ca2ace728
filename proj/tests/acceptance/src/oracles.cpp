#include "qhorn_acceptance/oracles.hpp"

#include <cmath>

namespace qhorn::oracle {

namespace {

const cplx I(0.0, 1.0);

ComplexMatrix lower2() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;  // |g><e|, g = 0
  return m;
}

ComplexMatrix lower(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return m;
}

ComplexMatrix perm_021() {
  ComplexMatrix s(3, 3);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  return s;
}

}  // namespace

ComplexMatrix hadamard_walk_unitary(std::size_t reach) {
  const std::size_t w = 2 * reach + 1;
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix coin{{h, h}, {h, -h}};
  ComplexMatrix shift(2 * w, 2 * w);
  for (std::size_t x = 0; x < w; ++x) {
    shift(0 * w + (x + 1) % w, 0 * w + x) = 1.0;
    shift(1 * w + (x + w - 1) % w, 1 * w + x) = 1.0;
  }
  return shift * linalg::kron(coin, ComplexMatrix::identity(w));
}

std::vector<std::vector<double>> brute_force_walk(std::size_t max_steps) {
  const std::size_t w = 2 * max_steps + 1;
  const ComplexMatrix u = hadamard_walk_unitary(max_steps);
  linalg::ComplexVector psi(2 * w, 0.0);
  psi[max_steps] = 1.0;
  std::vector<std::vector<double>> out;
  for (std::size_t n = 0; n <= max_steps; ++n) {
    if (n > 0) psi = u * psi;
    std::vector<double> p(2 * n + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::size_t x = max_steps - n + i;
      p[i] = std::norm(psi[x]) + std::norm(psi[w + x]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> classical_walk(std::size_t n) {
  std::vector<double> p{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> q(p.size() + 2, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] += 0.5 * p[i];
      q[i + 2] += 0.5 * p[i];
    }
    p = std::move(q);
  }
  return p;
}

double stddev_centered(const std::vector<double>& prob) {
  const double c = (static_cast<double>(prob.size()) - 1.0) / 2.0;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const double x = static_cast<double>(i) - c;
    m1 += prob[i] * x;
    m2 += prob[i] * x * x;
  }
  return std::sqrt(m2 - m1 * m1);
}

std::vector<double> chain_expectation(const std::vector<std::vector<double>>& t, const std::vector<double>& f,
                                      std::size_t n) {
  std::vector<double> g = f;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> next(g.size(), 0.0);
    for (std::size_t s = 0; s < g.size(); ++s)
      for (std::size_t r = 0; r < g.size(); ++r) next[s] += t[s][r] * g[r];
    g = std::move(next);
  }
  return g;
}

double x_state_concurrence(const ComplexMatrix& rho) {
  const double a = std::abs(rho(0, 3)) - std::sqrt(rho(1, 1).real() * rho(2, 2).real());
  const double b = std::abs(rho(1, 2)) - std::sqrt(rho(0, 0).real() * rho(3, 3).real());
  return 2.0 * std::max({0.0, a, b});
}

NumericTriple printed_cascade(const slh::JCParams& p, std::size_t cutoff) {
  using linalg::kron_all;
  const std::size_t n = cutoff;
  const ComplexMatrix i2 = ComplexMatrix::identity(2), in = ComplexMatrix::identity(n);
  const ComplexMatrix s = lower2(), a = lower(n);
  const ComplexMatrix s1 = kron_all({s, in, i2, in}), s2 = kron_all({i2, in, s, in});
  const ComplexMatrix a1 = kron_all({i2, a, i2, in}), a2 = kron_all({i2, in, i2, a});
  const ComplexMatrix pe1 = s1.dagger() * s1, pe2 = s2.dagger() * s2;
  const ComplexMatrix id = ComplexMatrix::identity(4 * n * n);
  const cplx al = p.alpha, alb = std::conj(p.alpha);
  const double rk = std::sqrt(p.kappa), rg = std::sqrt(p.gamma);

  NumericTriple t;
  t.S = perm_021();
  t.L = {al * id + rk * a1 + rk * a2, rg * s2, rg * s1};
  t.H = p.Delta * pe1 + p.Delta * pe2 + (I * p.g) * (a1.dagger() * s1 - a1 * s1.dagger()) +
        (I * p.g) * (a2.dagger() * s2 - a2 * s2.dagger()) +
        (I / 2.0) * (-al * rk * a1.dagger() + rk * alb * a1) +
        (I / 2.0) * (-rk * (al * id + rk * a1) * a2.dagger() + rk * (alb * id + rk * a1.dagger()) * a2) +
        p.Theta * (a1.dagger() * a1) + p.Theta * (a2.dagger() * a2);
  return t;
}

NumericTriple printed_adiabatic(const slh::JCParams& p) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2), s = lower2();
  const ComplexMatrix s1 = linalg::kron(s, i2), s2 = linalg::kron(i2, s);
  const ComplexMatrix id = ComplexMatrix::identity(4);
  const cplx al = p.alpha, alb = std::conj(p.alpha);
  const double rk = std::sqrt(p.kappa), rg = std::sqrt(p.gamma), g = p.g, k = p.kappa;

  NumericTriple t;
  t.S = perm_021();
  t.L = {al * id - (2.0 * g / rk) * s1 + (2.0 * g / rk) * s2, rg * s2, rg * s1};
  t.H = p.Delta * (s1.dagger() * s1) + (I * al / rk * g) * s1.dagger() - (I * g / rk * alb) * s1 +
        p.Delta * (s2.dagger() * s2) - (I * al / rk * g) * s2.dagger() + (I * g / rk * alb) * s2 -
        (2.0 * I / k * g * g) * (s1.dagger() * s2) + (2.0 * I / k * g * g) * (s1 * s2.dagger());
  return t;
}

}  // namespace qhorn::oracle
