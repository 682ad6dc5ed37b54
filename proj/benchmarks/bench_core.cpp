#include "qtheta/circsum.hpp"
#include "qtheta/etapower.hpp"
#include "qtheta/theta.hpp"

#include <benchmark/benchmark.h>

using qtheta::ArgSpec;
using qtheta::CycloNum;
using qtheta::QxSeries;
using qtheta::Rat;
using qtheta::ThetaKind;
using qtheta::YSpec;

namespace {

void BM_theta_series(benchmark::State& state) {
    const Rat O(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(qtheta::theta(ThetaKind::theta3, ArgSpec{{1}, {}, Rat(1)}, O));
}
BENCHMARK(BM_theta_series)->Arg(20)->Arg(50)->Arg(100);

void BM_series_product(benchmark::State& state) {
    const Rat O(state.range(0));
    const QxSeries t = qtheta::theta(ThetaKind::theta3, ArgSpec{{1}, {}, Rat(1)}, O);
    for (auto _ : state) benchmark::DoNotOptimize(t * t);
}
BENCHMARK(BM_series_product)->Arg(10)->Arg(20)->Arg(30);

void BM_cyclo_product(benchmark::State& state) {
    const CycloNum a = CycloNum::pi_phase(Rat(1, 12)) + CycloNum::pi_phase(Rat(5, 12));
    const CycloNum b = CycloNum::pi_phase(Rat(1, 16)) + CycloNum(Rat(2, 3));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_cyclo_product);

void BM_euler_product(benchmark::State& state) {
    const Rat O(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(qtheta::pochhammer({1, Rat(1), {}}, Rat(1), O));
}
BENCHMARK(BM_euler_product)->Arg(100)->Arg(200);

void BM_h_coeff(benchmark::State& state) {
    const qtheta::LatticeSumSpec spec{1, 2, {YSpec{{}, {}}, YSpec{{}, {}}},
                                      Rat(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(qtheta::h_coeff(spec));
}
BENCHMARK(BM_h_coeff)->Arg(20)->Arg(40);

void BM_verify_fund(benchmark::State& state) {
    const qtheta::LatticeSumSpec spec{2, 2, {YSpec{{}, {}}, YSpec{{}, {}}}, Rat(20)};
    for (auto _ : state) benchmark::DoNotOptimize(qtheta::verify_fund(spec));
}
BENCHMARK(BM_verify_fund);

void BM_etapow_lattice(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qtheta::cor_q1(1, Rat(30)));
}
BENCHMARK(BM_etapow_lattice);

} // namespace

BENCHMARK_MAIN();
