#include "qhorn/slh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qhorn/errors.hpp"

namespace qhorn::slh {

namespace {

const cplx I{0.0, 1.0};

std::vector<std::vector<OpExpr>> identity_s(std::size_t n) {
  std::vector<std::vector<OpExpr>> s(n, std::vector<OpExpr>(n));
  for (std::size_t i = 0; i < n; ++i) s[i][i] = OpExpr(1.0);
  return s;
}

double op_norm_max(const ComplexMatrix& m) { return m.max_abs(); }

}  // namespace

std::vector<Factor> SLHTriple::factors() const {
  std::vector<Factor> fs = H.factors();
  for (const auto& l : L) {
    const auto f = l.factors();
    fs.insert(fs.end(), f.begin(), f.end());
  }
  for (const auto& row : S)
    for (const auto& e : row) {
      const auto f = e.factors();
      fs.insert(fs.end(), f.begin(), f.end());
    }
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

NumericSLH evaluate(const SLHTriple& g, const Space& space) {
  NumericSLH out{space, {}, {}, g.H.evaluate(space)};
  for (const auto& row : g.S) {
    std::vector<ComplexMatrix> r;
    for (const auto& e : row) r.push_back(e.evaluate(space));
    out.S.push_back(std::move(r));
  }
  for (const auto& l : g.L) out.L.push_back(l.evaluate(space));
  return out;
}

NumericSLH evaluate(const SLHTriple& g, std::size_t fock_cutoff) {
  return evaluate(g, canonical_space(g.factors(), fock_cutoff));
}

double scattering_unitarity_residual(const NumericSLH& g) {
  const std::size_t n = g.S.size();
  const std::size_t d = g.space.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix rows(d, d), cols(d, d);
      for (std::size_t l = 0; l < n; ++l) {
        rows += g.S[i][l] * g.S[j][l].dagger();
        cols += g.S[l][i].dagger() * g.S[l][j];
      }
      if (i == j) {
        rows -= ComplexMatrix::identity(d);
        cols -= ComplexMatrix::identity(d);
      }
      worst = std::max({worst, rows.max_abs(), cols.max_abs()});
    }
  return worst;
}

double hamiltonian_hermiticity_residual(const NumericSLH& g) { return linalg::max_abs_diff(g.H, g.H.dagger()); }

SLHTriple passthrough(std::size_t n_channels) {
  return SLHTriple{identity_s(n_channels), std::vector<OpExpr>(n_channels), OpExpr()};
}

SLHTriple permutation_triple(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw PreconditionError("permutation_triple: invalid permutation");
    seen[p] = true;
  }
  std::vector<std::vector<OpExpr>> s(n, std::vector<OpExpr>(n));
  for (std::size_t i = 0; i < n; ++i) s[i][perm[i]] = OpExpr(1.0);
  return SLHTriple{std::move(s), std::vector<OpExpr>(n), OpExpr()};
}

SLHTriple laser_triple(cplx alpha, std::size_t n_channels) {
  if (n_channels == 0) throw PreconditionError("laser_triple: at least one channel");
  SLHTriple g = passthrough(n_channels);
  g.L[0] = OpExpr(alpha);
  return g;
}

SLHTriple concatenate(const SLHTriple& g1, const SLHTriple& g2, const std::vector<Factor>& shared) {
  const auto f1 = g1.factors();
  const auto f2 = g2.factors();
  for (const auto& f : f1)
    if (std::find(f2.begin(), f2.end(), f) != f2.end() && std::find(shared.begin(), shared.end(), f) == shared.end())
      throw PreconditionError("concatenate: factor " + f.label() + " appears in both components");
  const std::size_t n1 = g1.n_channels(), n2 = g2.n_channels();
  SLHTriple out;
  out.S.assign(n1 + n2, std::vector<OpExpr>(n1 + n2));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) out.S[i][j] = g1.S[i][j];
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) out.S[n1 + i][n1 + j] = g2.S[i][j];
  out.L = g1.L;
  out.L.insert(out.L.end(), g2.L.begin(), g2.L.end());
  out.H = g1.H + g2.H;
  return out;
}

SLHTriple series(const SLHTriple& g2, const SLHTriple& g1) {
  const std::size_t n = g1.n_channels();
  if (g2.n_channels() != n) throw DimensionError("series: channel counts differ");
  SLHTriple out;
  out.S.assign(n, std::vector<OpExpr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out.S[i][j] += g2.S[i][k] * g1.S[k][j];
  out.L = g2.L;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) out.L[i] += g2.S[i][k] * g1.L[k];
  OpExpr cross;  // L2^dag S2 L1
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) cross += g2.L[i].dagger() * g2.S[i][k] * g1.L[k];
  out.H = g1.H + g2.H + (cross - cross.dagger()) * OpExpr(1.0 / (2.0 * I));
  return out;
}

SLHTriple permute_channels(const SLHTriple& g, const std::vector<std::size_t>& perm) {
  if (perm.size() != g.n_channels()) throw PreconditionError("permute_channels: permutation size differs from channel count");
  return series(permutation_triple(perm), g);
}

SLHTriple jc_triple(const JCParams& p, const std::string& component) {
  const OpExpr a = OpExpr::a(component), ad = OpExpr::a_dag(component);
  const OpExpr s = OpExpr::sigma(component), sd = OpExpr::sigma_dag(component);
  SLHTriple g = passthrough(2);
  g.L[0] = OpExpr(std::sqrt(p.kappa)) * a;
  g.L[1] = OpExpr(std::sqrt(p.gamma)) * s;
  g.H = OpExpr(p.Delta) * sd * s + OpExpr(p.Theta) * ad * a + OpExpr(I * p.g) * (s * ad - sd * a);
  return g;
}

SLHTriple jc_cascade(const JCParams& p) {
  const SLHTriple jc1 = concatenate(jc_triple(p, "jc1"), passthrough(1));
  const SLHTriple jc2 = concatenate(jc_triple(p, "jc2"), passthrough(1));
  const SLHTriple driven = series(jc1, laser_triple(p.alpha, 3));
  return series(jc2, permute_channels(driven, {0, 2, 1}));
}

SLHTriple adiabatic_jc_cascade(const JCParams& p) {
  if (p.kappa <= 0.0) throw PreconditionError("adiabatic_jc_cascade: kappa must be positive");
  const double rk = std::sqrt(p.kappa);
  const cplx al = p.alpha, alb = std::conj(p.alpha);
  const OpExpr s1 = OpExpr::sigma("jc1"), s1d = OpExpr::sigma_dag("jc1");
  const OpExpr s2 = OpExpr::sigma("jc2"), s2d = OpExpr::sigma_dag("jc2");
  SLHTriple g = permutation_triple({0, 2, 1});
  g.L[0] = OpExpr(al) - OpExpr(2.0 * p.g / rk) * s1 + OpExpr(2.0 * p.g / rk) * s2;
  g.L[1] = OpExpr(std::sqrt(p.gamma)) * s2;
  g.L[2] = OpExpr(std::sqrt(p.gamma)) * s1;
  g.H = OpExpr(p.Delta) * OpExpr::pi_e("jc1") + OpExpr(p.Delta) * OpExpr::pi_e("jc2") +
        OpExpr(I * al * p.g / rk) * s1d - OpExpr(I * p.g * alb / rk) * s1 - OpExpr(I * al * p.g / rk) * s2d +
        OpExpr(I * p.g * alb / rk) * s2 - OpExpr(2.0 * I * p.g * p.g / p.kappa) * s1d * s2 +
        OpExpr(2.0 * I * p.g * p.g / p.kappa) * s1 * s2d;
  return g;
}

double AssumptionReport::get(const std::string& name) const {
  for (const auto& [n, v] : residuals)
    if (n == name) return v;
  throw PreconditionError("AssumptionReport: no residual named " + name);
}

double AssumptionReport::max_for(const std::string& prefix) const {
  double m = 0.0;
  for (const auto& [n, v] : residuals)
    if (n.rfind(prefix, 0) == 0) m = std::max(m, v);
  return m;
}

AssumptionReport check_adiabatic_assumptions(const AdiabaticData& d, double k) {
  const std::size_t n = d.P0.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  if (d.F.size() != d.G.size()) throw DimensionError("check_adiabatic_assumptions: F and G lengths differ");
  const ComplexMatrix K = d.Y * cplx(k * k, 0.0) + d.A * cplx(k, 0.0) + d.B;
  ComplexMatrix ldl(n, n), ff(n, n), fg(n, n), gg(n, n);
  std::vector<ComplexMatrix> L;
  for (std::size_t i = 0; i < d.F.size(); ++i) {
    L.push_back(d.F[i] * cplx(k, 0.0) + d.G[i]);
    ldl += L.back().dagger() * L.back();
    ff += d.F[i].dagger() * d.F[i];
    fg += d.F[i].dagger() * d.G[i] + d.G[i].dagger() * d.F[i];
    gg += d.G[i].dagger() * d.G[i];
  }
  AssumptionReport r;
  const ComplexMatrix kk = K + K.dagger();
  r.residuals.emplace_back("A1.generator(-)", op_norm_max(kk + ldl));
  r.residuals.emplace_back("A1.generator(+)", op_norm_max(kk - ldl));

  const std::size_t m = d.W.size();
  double rows = 0.0, cols = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      ComplexMatrix sr(n, n), sc(n, n);
      for (std::size_t l = 0; l < m; ++l) {
        sr += d.W[i][l] * d.W[j][l].dagger();
        sc += d.W[l][i].dagger() * d.W[l][j];
      }
      if (i == j) {
        sr -= id;
        sc -= id;
      }
      rows = std::max(rows, sr.max_abs());
      cols = std::max(cols, sc.max_abs());
    }
  r.residuals.emplace_back("A1.S_rows", rows);
  r.residuals.emplace_back("A1.S_cols", cols);

  r.residuals.emplace_back("A2.Y(-)", op_norm_max(d.Y + d.Y.dagger() + ff));
  r.residuals.emplace_back("A2.Y(+)", op_norm_max(d.Y + d.Y.dagger() - ff));
  r.residuals.emplace_back("A2.A(-)", op_norm_max(d.A + d.A.dagger() + fg));
  r.residuals.emplace_back("A2.A(+)", op_norm_max(d.A + d.A.dagger() - fg));
  r.residuals.emplace_back("A2.B(-)", op_norm_max(d.B + d.B.dagger() + gg));
  r.residuals.emplace_back("A2.B(+)", op_norm_max(d.B + d.B.dagger() - gg));

  r.residuals.emplace_back("A3.P0Y", op_norm_max(d.P0 * d.Y));
  r.residuals.emplace_back("A3.YP0", op_norm_max(d.Y * d.P0));
  // Y times the inverse of Y compressed to range(P1) should give P1
  const auto e1 = linalg::hermitian_eigen((d.P1 + d.P1.dagger()) * cplx(0.5, 0.0));
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (e1.eigenvalues[i] > 0.5) keep.push_back(i);
  ComplexMatrix pinv(n, n);
  if (!keep.empty()) {
    ComplexMatrix q(n, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
      for (std::size_t i = 0; i < n; ++i) q(i, c) = e1.eigenvectors(i, keep[c]);
    try {
      pinv = q * linalg::inverse(q.dagger() * d.Y * q) * q.dagger();
    } catch (const PreconditionError&) {
      pinv = ComplexMatrix(n, n);
    }
  }
  r.residuals.emplace_back("A3.inverse", op_norm_max(d.Y * pinv - d.P1));
  r.residuals.emplace_back("A3.complement", op_norm_max(d.P0 + d.P1 - id));

  double p1l = 0.0, p1s = 0.0;
  for (const auto& li : L) p1l = std::max(p1l, op_norm_max(d.P1 * li));
  for (const auto& row : d.W)
    for (const auto& w : row) p1s = std::max(p1s, op_norm_max(d.P1 * w));
  r.residuals.emplace_back("A4.P1L", p1l);
  r.residuals.emplace_back("A4.P1S", p1s);
  return r;
}

std::string describe(const SLHTriple& g) {
  std::ostringstream os;
  const std::size_t n = g.n_channels();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) os << "S[" << i << "][" << j << "] = " << g.S[i][j].to_string() << "\n";
  for (std::size_t i = 0; i < n; ++i) os << "L[" << i << "] = " << g.L[i].to_string() << "\n";
  os << "H = " << g.H.to_string() << "\n";
  return os.str();
}

std::string describe_numeric(const NumericSLH& g) {
  std::ostringstream os;
  os << "space:";
  for (const auto& f : g.space.factors) os << " " << f.label();
  os << " (dim " << g.space.dim() << ", fock cutoff " << g.space.fock_cutoff << ")\n";
  const auto dump = [&](const std::string& name, const ComplexMatrix& m) {
    os << name << " =\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      os << " ";
      for (std::size_t j = 0; j < m.cols(); ++j) os << " " << format_complex(m(i, j));
      os << "\n";
    }
  };
  for (std::size_t i = 0; i < g.S.size(); ++i)
    for (std::size_t j = 0; j < g.S.size(); ++j) {
      // scalar multiples of the identity print as scalars
      const ComplexMatrix& m = g.S[i][j];
      const cplx c = m.rows() ? m(0, 0) : cplx{};
      if (linalg::max_abs_diff(m, ComplexMatrix::identity(m.rows()) * c) < 1e-15)
        os << "S[" << i << "][" << j << "] = " << format_complex(c) << "\n";
      else
        dump("S[" + std::to_string(i) + "][" + std::to_string(j) + "]", m);
    }
  for (std::size_t i = 0; i < g.L.size(); ++i) dump("L[" + std::to_string(i) + "]", g.L[i]);
  dump("H", g.H);
  return os.str();
}

}  // namespace qhorn::slh
