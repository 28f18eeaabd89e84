#include <benchmark/benchmark.h>

#include "cubicff/census.hpp"
#include "cubicff/fourier.hpp"
#include "cubicff/onelevel.hpp"
#include "cubicff/zeta.hpp"

using namespace cubicff;

namespace {

struct FourierSetup {
    Fq F{7};
    Poly P{0, 1};
    fourier::ResidueSpace S{F, P};
    std::vector<double> w = fourier::tabulate(S, [this](const Form& x) { return fourier::omega(F, x, P); });
};

FourierSetup& fourier_setup() {
    static FourierSetup s;
    return s;
}

void BM_brute_fourier(benchmark::State& st) {
    auto& s = fourier_setup();
    std::uint64_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(fourier::brute_fourier(s.S, s.w, s.S.form(i++ % s.S.size())));
}

void BM_brute_fourier_serial(benchmark::State& st) {
    auto& s = fourier_setup();
    std::uint64_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(fourier::brute_fourier_serial(s.S, s.w, s.S.form(i++ % s.S.size())));
}

void BM_tabulate(benchmark::State& st) {
    auto& s = fourier_setup();
    for (auto _ : st)
        benchmark::DoNotOptimize(fourier::tabulate(s.S, [&](const Form& x) { return fourier::omega(s.F, x, s.P); }));
}

void BM_tabulate_serial(benchmark::State& st) {
    auto& s = fourier_setup();
    for (auto _ : st) {
        std::vector<double> v(s.S.size());
        for (std::uint64_t i = 0; i < s.S.size(); ++i) v[i] = fourier::omega(s.F, s.S.form(i), s.P);
        benchmark::DoNotOptimize(v);
    }
}

void BM_count_maximal(benchmark::State& st) {
    Fq F(5);
    for (auto _ : st) benchmark::DoNotOptimize(fourier::count_maximal_mod_P2(F));
}

void BM_count_maximal_serial(benchmark::State& st) {
    Fq F(5);
    for (auto _ : st) benchmark::DoNotOptimize(fourier::count_maximal_mod_P2_serial(F, Poly{0, 1}));
}

void BM_census(benchmark::State& st) {
    Fq F(5);
    for (auto _ : st) benchmark::DoNotOptimize(census::enumerate_fields(F, static_cast<int>(st.range(0))));
}

void BM_census_serial(benchmark::State& st) {
    Fq F(5);
    for (auto _ : st) benchmark::DoNotOptimize(census::enumerate_fields_serial(F, static_cast<int>(st.range(0))));
}

void BM_census_zeta(benchmark::State& st) {
    Fq F(5);
    Census c = census::enumerate_fields(F, 6);
    bool par = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(zeta::census_zeta(F, c, nullptr, par));
}

void BM_family_average(benchmark::State& st) {
    Fq F(5);
    Census c = census::enumerate_fields(F, 6);
    std::vector<zeta::FieldZeta> zs;
    zeta::census_zeta(F, c, &zs);
    auto t = onelevel::fejer_pair(1.0);
    bool par = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(onelevel::family_average(F, c, zs, t, par));
}

}  // namespace

BENCHMARK(BM_brute_fourier);
BENCHMARK(BM_brute_fourier_serial);
BENCHMARK(BM_tabulate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tabulate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_maximal)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_maximal_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_zeta)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_family_average)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
