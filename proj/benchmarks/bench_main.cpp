#include <laxscatter/conserved.hpp>
#include <laxscatter/evolve.hpp>
#include <laxscatter/fredholm.hpp>
#include <laxscatter/greens.hpp>
#include <laxscatter/jost.hpp>
#include <laxscatter/scattering.hpp>

#include <benchmark/benchmark.h>

using namespace laxscatter;

namespace {

SampledField potential(int n) {
    const GridSpec g = make_grid(16, n);
    return standard_potential(PotentialKind::bump, cplx(0.04, 0.02), 2.0, 0.0, g);
}

LaxSpec qdnls(int n, double k) {
    const SampledField q = potential(n);
    return build_qdnls_spec(q, q.conj(), k);
}

void BM_jost_march(benchmark::State& state, MarchScheme scheme) {
    const LaxSpec spec = qdnls(static_cast<int>(state.range(0)), 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_jost_march(spec, Side::left, 0, scheme).phi.data());
    state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_jost_march, exponential_am, MarchScheme::exponential_am)->RangeMultiplier(2)->Range(512, 4096)->Complexity();
BENCHMARK_CAPTURE(BM_jost_march, lawson_rk4, MarchScheme::lawson_rk4)->RangeMultiplier(2)->Range(512, 4096)->Complexity();

void BM_jost_volterra(benchmark::State& state) {
    const LaxSpec spec = qdnls(static_cast<int>(state.range(0)), 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_left_jost_volterra(spec).phi.data());
}
BENCHMARK(BM_jost_volterra)->RangeMultiplier(2)->Range(512, 2048);

void BM_log_T_inv(benchmark::State& state) {
    const LaxSpec spec = qdnls(static_cast<int>(state.range(0)), 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(log_inverse_transmission(spec));
}
BENCHMARK(BM_log_T_inv)->RangeMultiplier(2)->Range(512, 4096);

void BM_det2_matrix(benchmark::State& state) {
    const OperatorKernel K = assemble_lambda(qdnls(static_cast<int>(state.range(0)), 2.0));
    for (auto _ : state) benchmark::DoNotOptimize(det2_matrix(K).log_det2);
}
BENCHMARK(BM_det2_matrix)->RangeMultiplier(2)->Range(512, 2048)->Unit(benchmark::kMillisecond);

void BM_det2_series(benchmark::State& state) {
    const OperatorKernel K = assemble_lambda(qdnls(static_cast<int>(state.range(0)), 2.0));
    for (auto _ : state) benchmark::DoNotOptimize(logdet2_series(K).log_det2);
}
BENCHMARK(BM_det2_series)->RangeMultiplier(2)->Range(512, 2048)->Unit(benchmark::kMillisecond);

void BM_trace2_fourier(benchmark::State& state) {
    const OperatorKernel K = assemble_lambda(qdnls(static_cast<int>(state.range(0)), 2.0), true);
    for (auto _ : state) benchmark::DoNotOptimize(trace2_fourier(K));
}
BENCHMARK(BM_trace2_fourier)->RangeMultiplier(2)->Range(512, 4096)->Unit(benchmark::kMillisecond);

void BM_trace34_closed_form(benchmark::State& state) {
    const SampledField q = potential(static_cast<int>(state.range(0)));
    const SampledField r = q.conj();
    for (auto _ : state) benchmark::DoNotOptimize(trace34_closed_form(q, r, 2.0));
}
BENCHMARK(BM_trace34_closed_form)->RangeMultiplier(2)->Range(512, 4096);

void BM_greens_diagonal(benchmark::State& state) {
    const LaxSpec spec = qdnls(1024, 2.0);
    auto [lo, hi] = spec.support();
    const DiagonalPath path = state.range(0) == 0 ? DiagonalPath::dense : DiagonalPath::neumann;
    for (auto _ : state) benchmark::DoNotOptimize(greens_diagonal_renormalized(spec, lo, hi, path).values.data());
}
BENCHMARK(BM_greens_diagonal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_energy(benchmark::State& state) {
    const GridSpec g = make_grid(16, 1024);
    const SampledField q = mollify(standard_potential(PotentialKind::gaussian, 0.05, 0.7, 0.0, g), 2, 3);
    const int n_k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(energy_Es(q, -0.25, 1.0, 0, n_k).Es);
}
BENCHMARK(BM_energy)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_evolve(benchmark::State& state) {
    const GridSpec g = make_grid(16, static_cast<int>(state.range(0)));
    const SampledField q = mollify(standard_potential(PotentialKind::gaussian, cplx(0.3, 0.1), 0.7, 0.0, g), 2, 3);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.stride = 1000;
    for (auto _ : state) benchmark::DoNotOptimize(evolve_qdnls(q, cfg).steps);
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_evolve)->RangeMultiplier(2)->Range(512, 2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
