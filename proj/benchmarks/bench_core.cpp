#include <benchmark/benchmark.h>

#include <random>

#include "hyperdecay/decay.hpp"
#include "hyperdecay/grad.hpp"
#include "hyperdecay/linalg.hpp"
#include "hyperdecay/models.hpp"
#include "hyperdecay/multiplier.hpp"
#include "hyperdecay/polyroots.hpp"
#include "hyperdecay/roots.hpp"

using namespace hyperdecay;

namespace {

std::vector<cplx> random_monic(int m, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> r(static_cast<std::size_t>(m));
    for (auto& z : r) z = {g(rng), g(rng)};
    return poly_from_roots(r);
}

void BM_Aberth(benchmark::State& st) {
    auto c = random_monic(static_cast<int>(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(roots_at(c));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Aberth)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_GradRoots(benchmark::State& st) {
    auto sys = grad_system(1, static_cast<int>(st.range(0)));
    std::vector<double> xi{1.3};
    for (auto _ : st) benchmark::DoNotOptimize(grad_dispersion_roots(sys, xi));
}
BENCHMARK(BM_GradRoots)->Arg(4)->Arg(15)->Arg(40);

void BM_Expm(benchmark::State& st) {
    CMatrix C = companion_matrix(random_monic(static_cast<int>(st.range(0)), 2));
    for (auto _ : st) benchmark::DoNotOptimize(expm(3.0 * C));
}
BENCHMARK(BM_Expm)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Evaluator(benchmark::State& st) {
    auto sym = wave_family_symbol({1, 1, 0}, 1);
    std::vector<double> xi{st.range(0) ? 0.5 : 2.0};
    MultiplierEvaluator ev(sym, xi);
    std::vector<cplx> out(2);
    double t = 0;
    for (auto _ : st) {
        ev.evaluate(t, 1, out);
        t += 0.01;
        benchmark::DoNotOptimize(out.data());
    }
    st.SetLabel(ev.fast() ? "vandermonde" : "expm");
}
BENCHMARK(BM_Evaluator)->Arg(0)->Arg(1);

void BM_TrackBranches(benchmark::State& st) {
    auto sym = wave_family_symbol({1, 1, 0}, 2);
    FrequencyGrid g(2, 6, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(track_branches(sym, g));
    st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * g.size()));
}
BENCHMARK(BM_TrackBranches)->Arg(61)->Arg(121)->Unit(benchmark::kMillisecond);

void BM_Quadrature(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    auto sym = wave_family_symbol({1, 1, 0}, n);
    FrequencyGrid g(n, 7, n == 1 ? 2049 : 257);
    auto data = CauchyData::single(1, DataProfile::gaussian(1.0));
    auto times = log_spaced(100, 200, 25);
    for (auto _ : st) benchmark::DoNotOptimize(norm_series(sym, data, {}, g, times, NormKind::linf_upper));
    st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * g.size() * times.size()));
}
BENCHMARK(BM_Quadrature)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
