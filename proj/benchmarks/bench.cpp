#include <benchmark/benchmark.h>

#include "mforge/eaa.hpp"
#include "mforge/identities.hpp"
#include "mforge/iolib.hpp"
#include "mforge/loop.hpp"
#include "mforge/prng.hpp"
#include "mforge/toral.hpp"

namespace {

using namespace mforge;

Elem random_elem(size_t dim, SplitMix64& rng) {
  Elem e;
  for (size_t i = 0; i < dim; ++i) {
    const long c = rng.range(-5, 5);
    if (c != 0) e[i] = Rat(c);
  }
  return e;
}

void BM_Multiply(benchmark::State& state) {
  const StructureAlgebra alg = builtin("m7");
  SplitMix64 rng(7);
  const Elem a = random_elem(alg.dim(), rng);
  const Elem b = random_elem(alg.dim(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(mul(alg, a, b));
}
BENCHMARK(BM_Multiply);

void BM_SagleExhaustive(benchmark::State& state) {
  const StructureAlgebra alg = builtin("m7");
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        check_identity(alg, IdentityName::Sagle, CheckMode::Exhaustive, {}, threads));
}
BENCHMARK(BM_SagleExhaustive)->Arg(1)->Arg(4);

void BM_FormChecks(benchmark::State& state) {
  const StructureAlgebra alg = builtin("m7");
  for (auto _ : state) benchmark::DoNotOptimize(check_form(alg, 1));
}
BENCHMARK(BM_FormChecks);

void BM_Decompose(benchmark::State& state) {
  const StructureAlgebra alg = builtin("m7");
  std::vector<Elem> h;
  for (const auto& row : alg.toral_rows) h.push_back(from_vec(row));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(make_toral_pair(alg, h)));
}
BENCHMARK(BM_Decompose);

void BM_RationalEigenvalues(benchmark::State& state) {
  const StructureAlgebra alg = builtin("m7");
  std::vector<Elem> h;
  for (const auto& row : alg.toral_rows) h.push_back(from_vec(row));
  Mat ad = zero_mat(7, 7);
  for (size_t j = 0; j < 7; ++j) {
    const Elem col = mul(alg, h[0], basis_elem(j));
    for (const auto& [r, c] : col) ad[r][j] = c;
  }
  for (auto _ : state) benchmark::DoNotOptimize(rational_eigenvalues(ad));
}
BENCHMARK(BM_RationalEigenvalues);

void BM_LoopMultiply(benchmark::State& state) {
  const LoopAlgebra la = make_loop(builtin("m7"), ones_cocycle(1), LoopFlavor::Hat);
  const auto atoms = truncated_basis(la, 1);
  LoopElem a, b;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i % 2 == 0) a = l_add(std::move(a), atoms[i].elem);
    if (i % 3 == 0) b = l_add(std::move(b), atoms[i].elem);
  }
  for (auto _ : state) benchmark::DoNotOptimize(loop_mul(la, a, b));
}
BENCHMARK(BM_LoopMultiply);

void BM_LoopJacobiSl2Hat(benchmark::State& state) {
  const LoopAlgebra la = make_loop(builtin("sl2"), ones_cocycle(1), LoopFlavor::Hat);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_loop_identity(la, IdentityName::Jacobi, 1, 1));
}
BENCHMARK(BM_LoopJacobiSl2Hat);

}  // namespace

BENCHMARK_MAIN();
