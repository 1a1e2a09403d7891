#include <benchmark/benchmark.h>

#include "meinardus/exact_oracle.hpp"
#include "meinardus/expansion.hpp"
#include "meinardus/saddle.hpp"
#include "meinardus/special_functions.hpp"
#include "meinardus/weights.hpp"

using namespace meinardus;

static void BM_Zeta(benchmark::State& state)
{
    ScopedDigits digits(static_cast<unsigned>(state.range(0)));
    const Real x("-1.5");
    for (auto _ : state)
        benchmark::DoNotOptimize(zeta(x));
}
BENCHMARK(BM_Zeta)->Arg(30)->Arg(60)->Arg(120);

static void BM_ZetaPrime(benchmark::State& state)
{
    const Real x(-1);
    for (auto _ : state)
        benchmark::DoNotOptimize(zeta_prime(x));
}
BENCHMARK(BM_ZetaPrime);

static void BM_ExactCounts(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(1));
    const Kind kind = kind_from_int(static_cast<int>(state.range(0)));
    const auto w = eval_weights(Binomial{1}, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_counts(kind, w, n));
}
BENCHMARK(BM_ExactCounts)->Args({1, 500})->Args({1, 2000})->Args({3, 500})->Unit(benchmark::kMillisecond);

static void BM_SolveDelta(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto b = eval_weights_real(Binomial{1}, n);
    const auto dd = dirichlet_data(Binomial{1});
    const auto de = delta_expansion(Kind::Partition, dd);
    SolveOptions opt;
    opt.initial_guess = evaluate_delta(de, Real(n));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_delta(Kind::Partition, b, n, opt));
}
BENCHMARK(BM_SolveDelta)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_AsymptoticFormula(benchmark::State& state)
{
    const auto dd = dirichlet_data(Binomial{static_cast<int>(state.range(0))});
    for (auto _ : state)
        benchmark::DoNotOptimize(asymptotic_formula(Kind::Partition, dd));
}
BENCHMARK(BM_AsymptoticFormula)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_UpsilonSets(benchmark::State& state)
{
    const std::vector<Rational> poles = {Rational(1, 3), Rational(3, 4), Rational(5, 4), Rational(2)};
    for (auto _ : state)
        benchmark::DoNotOptimize(upsilon_sets(poles));
}
BENCHMARK(BM_UpsilonSets);
BENCHMARK_MAIN();
