#include "wellspec/model.hpp"
#include "wellspec/oracle.hpp"
#include "wellspec/resolvent.hpp"
#include "wellspec/specfun.hpp"
#include "wellspec/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace wellspec;
namespace sf = wellspec::specfun;
namespace sp = wellspec::spectrum;

namespace {

void BM_pcf_d_kummer(benchmark::State& state) {
    double z = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::pcf_d(1.7, z));
        z = z > 3.0 ? -3.0 : z + 0.01;
    }
}
BENCHMARK(BM_pcf_d_kummer);

void BM_pcf_d_large_z(benchmark::State& state) {
    double z = 6.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::pcf_d(-3.3, z));
        z = z > 10.0 ? 6.0 : z + 0.01;
    }
}
BENCHMARK(BM_pcf_d_large_z);

void BM_airy(benchmark::State& state) {
    double x = -12.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::airy(x));
        x = x > 12.0 ? -12.0 : x + 0.013;
    }
}
BENCHMARK(BM_airy);

void BM_chi(benchmark::State& state) {
    const auto tag = all_tags()[static_cast<std::size_t>(state.range(0))];
    const auto chi = sp::characteristic(default_family(tag));
    const auto [lo, hi] = chi.default_window;
    double v = lo;
    const double step = (hi - lo) / 997.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chi(v));
        v = v + step > hi ? lo : v + step;
    }
    state.SetLabel(std::string(tag_name(tag)));
}
BENCHMARK(BM_chi)->DenseRange(0, static_cast<int>(all_tags().size()) - 1);

void BM_find_roots(benchmark::State& state) {
    const auto chi = sp::characteristic(default_family(FamilyTag::half_ho_half_linear));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sp::find_roots(chi, chi.default_window, 0.005, 10));
    }
}
BENCHMARK(BM_find_roots)->Unit(benchmark::kMillisecond);

void BM_sweep(benchmark::State& state) {
    const auto f = default_family(FamilyTag::ho_asym);
    sp::SweepOptions options;
    options.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sp::sweep(f, "lambda", 0.2, 2.0, 0.05, options));
    }
}
BENCHMARK(BM_sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_green(benchmark::State& state) {
    const auto f = default_family(FamilyTag::ho_plus_abs);
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(resolvent::green(f, x, 0.3, 2.3));
        x = x > 2.0 ? -2.0 : x + 0.01;
    }
}
BENCHMARK(BM_green);

void BM_oracle_levels(benchmark::State& state) {
    const auto f = default_family(FamilyTag::ho);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::reference_levels(f, 5, n, 6.0));
    }
}
BENCHMARK(BM_oracle_levels)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_oracle_resolvent(benchmark::State& state) {
    const auto f = default_family(FamilyTag::ho);
    const auto grid = oracle::auto_grid(f, 2.3, 8000);
    const auto op = oracle::discretize(f, grid);
    const auto source = grid.nearest(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::resolvent_solve(op, 2.3, source));
    }
}
BENCHMARK(BM_oracle_resolvent)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
