#include "qhorn/qwalk.hpp"

#include <algorithm>
#include <cmath>

#include "qhorn/errors.hpp"

namespace qhorn::qwalk {

using linalg::cplx;

namespace {

ComplexMatrix ring_shift(std::size_t w, int shift) {
  ComplexMatrix s(w, w);
  const long wl = static_cast<long>(w);
  for (long x = 0; x < wl; ++x) {
    const long y = ((x + shift) % wl + wl) % wl;
    s(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = 1.0;
  }
  return s;
}

ComplexVector vec(const ComplexMatrix& x) { return x.data(); }

ComplexMatrix unvec(const ComplexVector& v, std::size_t w) {
  ComplexMatrix m(w, w);
  m.data() = v;
  return m;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

CoinSpec CoinSpec::hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return CoinSpec{2, ComplexMatrix{{h, h}, {h, -h}}, {+1, -1}};
}

CoinSpec CoinSpec::trivial(std::size_t d) { return CoinSpec{d, ComplexMatrix::identity(d), std::vector<int>(d, 0)}; }

StructureMaps::StructureMaps(std::size_t d, std::size_t walker_dim, std::vector<ComplexMatrix> supers)
    : d_(d), w_(walker_dim), supers_(std::move(supers)) {
  if (supers_.size() != d_ * d_) throw DimensionError("StructureMaps: expected d*d superoperators");
  for (const auto& s : supers_)
    if (s.rows() != w_ * w_ || s.cols() != w_ * w_) throw DimensionError("StructureMaps: superoperator size");
}

ComplexMatrix StructureMaps::apply(std::size_t i, std::size_t j, const ComplexMatrix& x) const {
  if (i >= d_ || j >= d_) throw DimensionError("StructureMaps::apply: coin index out of range");
  if (x.rows() != w_ || x.cols() != w_) throw DimensionError("StructureMaps::apply: walker operator size");
  return unvec(supers_[i * d_ + j] * vec(x), w_);
}

ComplexMatrix StructureMaps::theta(const ComplexMatrix& x) const {
  ComplexMatrix out(w_ * d_, w_ * d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) {
      const ComplexMatrix b = apply(i, j, x);
      for (std::size_t r = 0; r < w_; ++r)
        for (std::size_t c = 0; c < w_; ++c) out(r * d_ + i, c * d_ + j) = b(r, c);
    }
  return out;
}

namespace {

// theta_i^j = sum_k conj(V[k,i]) V[k,j] pi_k for per-level superoperators pi_k.
StructureMaps combine_levels(const ComplexMatrix& v, const std::vector<ComplexMatrix>& pis, std::size_t w) {
  const std::size_t d = v.rows();
  std::vector<ComplexMatrix> supers;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix s(w * w, w * w);
      for (std::size_t k = 0; k < d; ++k) {
        const cplx coef = std::conj(v(k, i)) * v(k, j);
        if (std::abs(coef) == 0.0) continue;
        s += pis[k] * coef;
      }
      supers.push_back(std::move(s));
    }
  return StructureMaps(d, w, std::move(supers));
}

}  // namespace

StructureMaps structure_maps_from(const ComplexMatrix& v, const std::vector<ComplexMatrix>& carriers) {
  const std::size_t d = v.rows();
  if (!v.square() || carriers.size() != d) throw DimensionError("structure_maps_from: need one carrier per coin level");
  const std::size_t w = carriers.front().rows();
  std::vector<ComplexMatrix> pis;
  for (const auto& c : carriers) {
    if (c.rows() != w || c.cols() != w) throw DimensionError("structure_maps_from: carrier size");
    // vec_row(C^dag X C) = (C^dag (x) C^T) vec_row(X)
    pis.push_back(linalg::kron(c.dagger(), c.transpose()));
  }
  return combine_levels(v, pis, w);
}

StructureMaps build_structure_maps(const CoinSpec& coin, std::size_t walker_dim) {
  if (walker_dim < 2) throw PreconditionError("build_structure_maps: walker_dim must be at least 2");
  if (coin.coin.rows() != coin.d || coin.shifts.size() != coin.d)
    throw DimensionError("build_structure_maps: coin spec sizes disagree");
  if (!linalg::is_unitary(coin.coin)) throw PreconditionError("build_structure_maps: coin is not unitary");
  std::vector<ComplexMatrix> carriers;
  for (int s : coin.shifts) carriers.push_back(ring_shift(walker_dim, s));
  return structure_maps_from(coin.coin, carriers);
}

QuantumFlow::QuantumFlow(StructureMaps maps, std::size_t n) : maps_(std::move(maps)), n_(n) {
  if (n_ > MAX_CHAIN || maps_.walker_dim() * ipow(maps_.d(), n_) > MAX_FLOW_DIM)
    throw PreconditionError("truncation exceeded");
}

ComplexMatrix QuantumFlow::recurse(const ComplexMatrix& x, std::size_t n) const {
  if (n == 0) return x;
  const std::size_t d = maps_.d();
  const std::size_t inner = maps_.walker_dim() * ipow(d, n - 1);
  ComplexMatrix out(inner * d, inner * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const ComplexMatrix t = maps_.apply(i, j, x);
      if (t.max_abs() == 0.0) continue;
      const ComplexMatrix b = recurse(t, n - 1);
      for (std::size_t r = 0; r < inner; ++r)
        for (std::size_t c = 0; c < inner; ++c) out(r * d + i, c * d + j) = b(r, c);
    }
  return out;
}

FlowOperator QuantumFlow::apply(const ComplexMatrix& x) const {
  if (x.rows() != maps_.walker_dim() || x.cols() != maps_.walker_dim())
    throw DimensionError("QuantumFlow::apply: walker operator size");
  return FlowOperator{n_, maps_.walker_dim(), maps_.d(), recurse(x, n_)};
}

FlowOperator flow_step(const QuantumFlow& prev, const ComplexMatrix& x) { return prev.step().apply(x); }

ComplexMatrix condition_on_past(const FlowOperator& op, const ComplexVector& vacuum, std::size_t keep) {
  if (keep > op.n) throw DimensionError("condition_on_past: keep exceeds flow length");
  if (vacuum.size() != op.d) throw DimensionError("condition_on_past: vacuum dimension");
  const std::size_t future = op.n - keep;
  const std::size_t fd = ipow(op.d, future);
  const std::size_t pd = op.walker_dim * ipow(op.d, keep);
  // amplitude of the product vacuum on each future basis index
  ComplexVector amp(fd, 1.0);
  for (std::size_t f = 0; f < fd; ++f) {
    std::size_t rem = f;
    for (std::size_t s = 0; s < future; ++s) {
      amp[f] *= vacuum[rem % op.d];
      rem /= op.d;
    }
  }
  ComplexMatrix out(pd, pd);
  for (std::size_t a = 0; a < pd; ++a)
    for (std::size_t b = 0; b < pd; ++b) {
      cplx s = 0.0;
      for (std::size_t f = 0; f < fd; ++f) {
        if (amp[f] == cplx{0.0, 0.0}) continue;
        for (std::size_t g = 0; g < fd; ++g) {
          if (amp[g] == cplx{0.0, 0.0}) continue;
          s += std::conj(amp[f]) * op.matrix(a * fd + f, b * fd + g) * amp[g];
        }
      }
      out(a, b) = s;
    }
  return out;
}

WalkState WalkState::localized(cplx right, cplx left) {
  WalkState s;
  s.psi_r = {right};
  s.psi_l = {left};
  return s;
}

double WalkState::norm2() const {
  double t = 0.0;
  for (std::size_t i = 0; i < psi_r.size(); ++i) t += std::norm(psi_r[i]) + std::norm(psi_l[i]);
  return t;
}

WalkState hadamard_step(const WalkState& s) {
  const double h = 1.0 / std::sqrt(2.0);
  WalkState out;
  out.n = s.n + 1;
  const std::size_t size = 2 * out.n + 1;
  out.psi_r.assign(size, 0.0);
  out.psi_l.assign(size, 0.0);
  // old index i holds x = i - n; new index holds x + n + 1
  for (std::size_t i = 0; i < s.psi_r.size(); ++i) {
    const cplx r = s.psi_r[i], l = s.psi_l[i];
    out.psi_r[i + 2] += h * (r + l);  // x -> x+1
    out.psi_l[i] += h * (r - l);      // x -> x-1
  }
  return out;
}

WalkState hadamard_walk(std::size_t steps, const WalkState& start) {
  WalkState s = start;
  for (std::size_t k = 0; k < steps; ++k) s = hadamard_step(s);
  return s;
}

std::vector<double> position_distribution(const WalkState& s) {
  std::vector<double> p(s.psi_r.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(s.psi_r[i]) + std::norm(s.psi_l[i]);
  return p;
}

double distribution_stddev(const std::vector<double>& prob) {
  const double c = (static_cast<double>(prob.size()) - 1.0) / 2.0;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const double x = static_cast<double>(i) - c;
    m1 += prob[i] * x;
    m2 += prob[i] * x * x;
  }
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

ComplexMatrix walk_unitary(const CoinSpec& coin, std::size_t ring) {
  ComplexMatrix s(coin.d * ring, coin.d * ring);
  for (std::size_t k = 0; k < coin.d; ++k) {
    ComplexMatrix ck(coin.d, coin.d);
    ck(k, k) = 1.0;
    s += linalg::kron(ck, ring_shift(ring, coin.shifts[k]));
  }
  return s * linalg::kron(coin.coin, ComplexMatrix::identity(ring));
}

ComplexMatrix slot_annihilator(std::size_t k, std::size_t chain_len) {
  if (chain_len > MAX_CHAIN) throw PreconditionError("truncation exceeded");
  if (k < 1 || k > chain_len) throw DimensionError("slot_annihilator: slot out of range");
  const ComplexMatrix a{{0.0, 1.0}, {0.0, 0.0}};
  std::vector<ComplexMatrix> f(chain_len, ComplexMatrix::identity(2));
  f[k - 1] = a;
  return linalg::kron_all(f);
}

NoiseOps discrete_noise_ops(std::size_t n, std::size_t chain_len) {
  if (chain_len > MAX_CHAIN) throw PreconditionError("truncation exceeded");
  if (n > chain_len) throw DimensionError("discrete_noise_ops: n exceeds chain length");
  const std::size_t dim = ipow(2, chain_len);
  NoiseOps ops{ComplexMatrix(dim, dim), ComplexMatrix(dim, dim), ComplexMatrix(dim, dim)};
  for (std::size_t k = 1; k <= n; ++k) {
    const ComplexMatrix a = slot_annihilator(k, chain_len);
    const ComplexMatrix ad = a.dagger();
    ops.a += a;
    ops.a_dag += ad;
    ops.lambda += ad * a;
  }
  return ops;
}

ComplexMatrix printed_lambda(std::size_t n, std::size_t chain_len) {
  if (chain_len > MAX_CHAIN) throw PreconditionError("truncation exceeded");
  const std::size_t dim = ipow(2, chain_len);
  ComplexMatrix m(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    long excited = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if ((idx >> (chain_len - k)) & 1U) ++excited;
    m(idx, idx) = static_cast<double>(static_cast<long>(n) - 2 * excited);
  }
  return m;
}

ComplexMatrix markov_chain_unitary(const std::vector<double>& p_row, std::size_t d) {
  if (p_row.size() != d || d == 0) throw DimensionError("markov_chain_unitary: row length must equal d");
  double total = 0.0;
  for (double p : p_row) {
    if (p < 0.0) throw PreconditionError("markov_chain_unitary: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("markov_chain_unitary: probabilities must sum to 1");
  if (p_row[0] <= 0.0) throw PreconditionError("pivot degenerate");
  const double s = std::sqrt(p_row[0]);
  ComplexMatrix u(d, d);
  u(0, 0) = s;
  for (std::size_t i = 1; i < d; ++i) {
    const double vi = std::sqrt(p_row[i]);
    u(0, i) = vi;
    u(i, 0) = -vi;
    for (std::size_t j = 1; j < d; ++j)
      u(i, j) = (i == j ? 1.0 : 0.0) - vi * std::sqrt(p_row[j]) / (1.0 + s);
  }
  return u;
}

FunctionalDecomposition functional_decomposition(const std::vector<std::vector<double>>& t) {
  const std::size_t n = t.size();
  if (n == 0 || n > 8) throw PreconditionError("functional_decomposition: state count must be in [1, 8]");
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& row : t) {
    if (row.size() != n) throw DimensionError("functional_decomposition: matrix not square");
    double c = 0.0;
    for (double x : row) {
      if (x < 0.0) throw PreconditionError("functional_decomposition: negative entry");
      c += x;
      cuts.push_back(std::min(c, 1.0));
    }
    if (std::abs(c - 1.0) > 1e-12) throw PreconditionError("functional_decomposition: row does not sum to 1");
  }
  std::sort(cuts.begin(), cuts.end());
  FunctionalDecomposition out;
  std::vector<std::pair<double, std::vector<std::size_t>>> parts;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    if (hi - lo <= 1e-15) continue;
    const double mid = 0.5 * (lo + hi);
    std::vector<std::size_t> phi(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      double c = 0.0;
      std::size_t target = n - 1;
      for (std::size_t j = 0; j < n; ++j) {
        c += t[s][j];
        if (mid < c) {
          target = j;
          break;
        }
      }
      phi[s] = target;
    }
    // merge intervals with identical maps
    auto it = std::find_if(parts.begin(), parts.end(), [&](const auto& pr) { return pr.second == phi; });
    if (it != parts.end())
      it->first += hi - lo;
    else
      parts.emplace_back(hi - lo, std::move(phi));
  }
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto& pr : parts) {
    out.p.push_back(pr.first);
    out.maps.push_back(std::move(pr.second));
  }
  return out;
}

StructureMaps embed_markov_chain(const std::vector<double>& p, const std::vector<std::vector<std::size_t>>& maps) {
  const std::size_t d = p.size();
  if (d == 0 || maps.size() != d) throw PreconditionError("embed_markov_chain: inconsistent map table");
  const std::size_t n = maps.front().size();
  if (n == 0 || n > 8) throw PreconditionError("embed_markov_chain: state count must be in [1, 8]");
  // pullback f -> f o phi_k on the diagonal algebra; off-diagonal parts of X are dropped,
  // since C^dag X C is not multiplicative once phi_k merges states
  std::vector<ComplexMatrix> pis;
  for (const auto& phi : maps) {
    if (phi.size() != n) throw PreconditionError("embed_markov_chain: inconsistent map table");
    ComplexMatrix pull(n * n, n * n);
    for (std::size_t s = 0; s < n; ++s) {
      if (phi[s] >= n) throw PreconditionError("embed_markov_chain: map leaves the state set");
      pull(s * n + s, phi[s] * n + phi[s]) = 1.0;
    }
    pis.push_back(std::move(pull));
  }
  // Theta(f) = U diag(f o phi_k) U^dag, i.e. V = U^dag
  const ComplexMatrix u = markov_chain_unitary(p, d);
  return combine_levels(u.dagger(), pis, n);
}

StructureMaps embed_markov_chain(const std::vector<std::vector<double>>& t) {
  const auto fd = functional_decomposition(t);
  return embed_markov_chain(fd.p, fd.maps);
}

}  // namespace qhorn::qwalk
