#include <benchmark/benchmark.h>

#include <random>

#include "qhorn/dynamics.hpp"
#include "qhorn/fockweyl.hpp"
#include "qhorn/horn/parser.hpp"
#include "qhorn/horn/solver.hpp"
#include "qhorn/linalg.hpp"
#include "qhorn/qprob.hpp"
#include "qhorn/qwalk.hpp"
#include "qhorn/slh.hpp"

using namespace qhorn;

static void BM_HermitianEigen(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = linalg::random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::hermitian_eigen(a));
}
BENCHMARK(BM_HermitianEigen)->Arg(4)->Arg(16)->Arg(36);

static void BM_ProbeUnitary(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto sd = qprob::SpectralDecomposition::of(linalg::random_hermitian(m, rng));
  for (auto _ : state) benchmark::DoNotOptimize(qprob::build_probe_unitary(sd, 0));
}
BENCHMARK(BM_ProbeUnitary)->DenseRange(2, 5);

static void BM_HadamardWalk(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::hadamard_walk(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_HadamardWalk)->Arg(50)->Arg(200)->Arg(1000);

static void BM_QuantumFlow(benchmark::State& state) {
  const auto maps = qwalk::build_structure_maps(qwalk::CoinSpec::hadamard(), 3);
  const auto x = linalg::pauli_x();
  const auto n = static_cast<std::size_t>(state.range(0));
  const qwalk::QuantumFlow flow(maps, n);
  const auto obs = linalg::ComplexMatrix::diag_real({1.0, 2.0, 3.0});
  for (auto _ : state) benchmark::DoNotOptimize(flow.apply(obs));
}
BENCHMARK(BM_QuantumFlow)->DenseRange(1, 4);

static void BM_WeylApply(benchmark::State& state) {
  const auto f = fockweyl::TestFunction::constant(1.0, 64, {0.3, 0.1});
  const auto v = fockweyl::ExponentialVectorSum::single(fockweyl::TestFunction::window(1.0, 64, 0.25, 0.5, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(fockweyl::exp_inner(fockweyl::weyl_apply(f, v), v));
}
BENCHMARK(BM_WeylApply);

static void BM_CascadeEvaluate(benchmark::State& state) {
  const auto g = slh::jc_cascade(slh::JCParams::reference());
  for (auto _ : state) benchmark::DoNotOptimize(slh::evaluate(g, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CascadeEvaluate)->Arg(2)->Arg(3);

static void BM_AdiabaticCascade(benchmark::State& state) {
  const auto p = slh::JCParams::reference();
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::run_jc_cascade(p, "ee", 1.0, 0.01));
}
BENCHMARK(BM_AdiabaticCascade);

static void BM_NoCloningRefutation(benchmark::State& state) {
  const horn::Engine engine(horn::parse_program(R"(
#param alpha 0.6.
#param beta 0.8.
@2 u(Phi ⊗ |_⟩, S) :- S = Phi ⊗ Phi.
@2 clone(Psi, Psi) :- @2 u(Psi ⊗ |_⟩, S), S = Psi ⊗ Psi.
)"));
  for (auto _ : state) benchmark::DoNotOptimize(engine.solve("~clone(alpha|0⟩ + beta|1⟩, alpha|0⟩ + beta|1⟩)"));
}
BENCHMARK(BM_NoCloningRefutation);

BENCHMARK_MAIN();
