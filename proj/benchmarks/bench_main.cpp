#include <benchmark/benchmark.h>

#include "frwmono/frwmodel.hpp"
#include "frwmono/jetflow.hpp"
#include "frwmono/linmono.hpp"

using namespace frwmono;

namespace {

SymMap random_map(int n, int in_deg, int out_deg, unsigned seed) {
    std::srand(seed);
    SymMap f{n, in_deg, out_deg,
             Eigen::MatrixXcd::Random(sym_dim(n, out_deg), sym_dim(n, in_deg))};
    return f;
}

void BM_sym_map_product(benchmark::State& state) {
    const int a = static_cast<int>(state.range(0));
    const SymMap F = random_map(4, a, 1, 1);
    const SymMap G = random_map(4, 5 - a, 1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(sym_map_product(F, G));
}
BENCHMARK(BM_sym_map_product)->Arg(1)->Arg(2);

void BM_ve_rhs(benchmark::State& state) {
    const FrwParams prm{1, cplx(-1.0 / 6, 0), cplx(-1.0 / 6, 0), 1.0};
    const PolyVectorField X = frw_field(prm);
    const ParticularSolution sol = sol1(prm.Lambda);
    JetState jet = identity_jet(sol.ivp, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ve_rhs(X, jet));
}
BENCHMARK(BM_ve_rhs)->Arg(3)->Arg(5);

void BM_first_order_loop(benchmark::State& state) {
    const FrwParams prm{1, cplx(-1.0 / 6, 0), cplx(-1.0 / 6, 0), 1.0};
    const PolyVectorField X = frw_field(prm);
    const ParticularSolution sol = sol1(prm.Lambda);
    IntegratorConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            monodromy(X, sol.ivp, hexagon_path(+1), 1, cfg, sol.singularities));
}
BENCHMARK(BM_first_order_loop)->Unit(benchmark::kMillisecond);

void BM_classify(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(classify_k0(-w, w, -w, w));
}
BENCHMARK(BM_classify)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_table_membership(benchmark::State& state) {
    const Rat alpha(35, 8);
    for (auto _ : state) benchmark::DoNotOptimize(table_membership(alpha));
}
BENCHMARK(BM_table_membership);

} // namespace

BENCHMARK_MAIN();
