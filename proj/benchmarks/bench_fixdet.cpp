#include <random>

#include <benchmark/benchmark.h>

#include "fixdet/enumerate.hpp"
#include "fixdet/residue.hpp"
#include "fixdet/tangent.hpp"

using namespace fixdet;

namespace {

// Args: r, delta, k, q.
void BM_StrataCells(benchmark::State& state) {
  const auto f = FiniteField::of_order(static_cast<std::uint64_t>(state.range(3)));
  const auto form = AlternatingForm<FiniteField>::standard(f, state.range(0), state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(strata_counts(form, state.range(2), {default_ceiling, 1, StrataEngine::cells}).total);
}
BENCHMARK(BM_StrataCells)->Args({4, 2, 2, 3})->Args({5, 2, 2, 3})->Args({6, 3, 3, 3})->Args({6, 2, 3, 7});

void BM_StrataBrute(benchmark::State& state) {
  const auto f = FiniteField::of_order(static_cast<std::uint64_t>(state.range(3)));
  const auto form = AlternatingForm<FiniteField>::standard(f, state.range(0), state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(strata_counts(form, state.range(2), {default_ceiling, 1, StrataEngine::brute}).total);
}
BENCHMARK(BM_StrataBrute)->Args({4, 2, 2, 3})->Args({5, 2, 2, 3})->Args({6, 3, 3, 3});

void BM_RrefFinite(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto f = FiniteField::of_order(7);
  const auto m = random_matrix(f, state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m).rank);
}
BENCHMARK(BM_RrefFinite)->Arg(8)->Arg(32)->Arg(128);

void BM_RrefRational(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const RationalField Q;
  const auto m = random_matrix(Q, state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m).rank);
}
BENCHMARK(BM_RrefRational)->Arg(8)->Arg(16)->Arg(32);

template <class F>
FormPencil<F> bench_pencil(const F& f, std::size_t k, std::size_t n) {
  std::mt19937_64 rng(k * 31 + n);
  for (;;) {
    FormPencil<F> p(random_matrix(f, k, n, rng), random_matrix(f, k, n, rng));
    if (p.surjective1 && p.surjective2) return p;
  }
}

void BM_PencilRankDropF7(benchmark::State& state) {
  const auto p = bench_pencil(FiniteField::of_order(7), state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pencil_rank_drop(p).dependent);
}
BENCHMARK(BM_PencilRankDropF7)->Args({2, 4})->Args({3, 5})->Args({4, 7});

void BM_DependenceSpaceF7(benchmark::State& state) {
  const auto p = bench_pencil(FiniteField::of_order(7), state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dependence_space(p).size());
}
BENCHMARK(BM_DependenceSpaceF7)->Args({2, 4})->Args({3, 5})->Args({4, 7});

void BM_PencilRankDropQ(benchmark::State& state) {
  const auto p = bench_pencil(RationalField{}, state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pencil_rank_drop(p).dependent);
}
BENCHMARK(BM_PencilRankDropQ)->Args({2, 4})->Args({3, 5})->Args({4, 7});

void BM_ResidueModelQ(benchmark::State& state) {
  const RationalField Q;
  std::vector<mpq_class> D;
  for (long i = 1; i <= state.range(0); ++i) D.push_back(mpq_class(i));
  const RationalFunction<RationalField> one(Polynomial<RationalField>::constant(Q, 1));
  for (auto _ : state) {
    const auto model = build_residue_model(Q, -1, -1, D, {}, one);
    benchmark::DoNotOptimize(check_residue_model(model).ok);
  }
}
BENCHMARK(BM_ResidueModelQ)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
