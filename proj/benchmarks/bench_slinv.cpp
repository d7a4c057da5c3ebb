#include <benchmark/benchmark.h>

#include "slinv/slinv.hpp"

using namespace slinv;

namespace {

const BoundaryPolyPair kP1{{1.0}, {0.5}};
const BoundaryPolyPair kP3{{0.3, 1.0}, {0.5, 0.2}};

SigmaFunction smooth(int cells) {
    return SigmaFunction::sampled(cells, pi, [](double t) { return 0.5 * std::sin(2 * t) + 0.3 * std::cos(t); });
}

void BM_Transfer(benchmark::State& state) {
    const SigmaFunction s = smooth(static_cast<int>(state.range(0)));
    const cplx lambda(static_cast<double>(state.range(1)), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(transfer(s, lambda));
    state.counters["substeps"] = substeps(s, lambda, {});
}
BENCHMARK(BM_Transfer)->ArgsProduct({{128, 512, 2048}, {1, 100, 2500}})->Unit(benchmark::kMicrosecond);

void BM_TransferWithDerivative(benchmark::State& state) {
    const SigmaFunction s = smooth(512);
    for (auto _ : state) benchmark::DoNotOptimize(transfer(s, cplx(100.0, 0.5), true));
}
BENCHMARK(BM_TransferWithDerivative)->Unit(benchmark::kMicrosecond);

void BM_ExtractCauchy(benchmark::State& state) {
    const SigmaFunction s = smooth(512);
    ExtractOptions o;
    o.K = static_cast<int>(state.range(0));
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(extract_cauchy(s, kP3, o));
}
BENCHMARK(BM_ExtractCauchy)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SolveMoment(benchmark::State& state) {
    const CorpusProblem& c = corpus_problem("step-p1-r1");
    static const Subspectrum spec = hl_spectrum(c.problem, 64);
    const int n = static_cast<int>(state.range(0));
    const EntirePair f = hl_entire_pair(c.problem.sigma_right(), c.problem.right);
    const MomentSystem sys = build_moment_system(spec.slice(0, n), f, 1, Grid(128, pi));
    for (auto _ : state) benchmark::DoNotOptimize(solve_moment(sys));
}
BENCHMARK(BM_SolveMoment)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_BuildMomentSystem(benchmark::State& state) {
    const CorpusProblem& c = corpus_problem("step-p1-r1");
    static const Subspectrum spec = hl_spectrum(c.problem, 42);
    const EntirePair f = hl_entire_pair(c.problem.sigma_right(), c.problem.right);
    for (auto _ : state) benchmark::DoNotOptimize(build_moment_system(spec.slice(0, 40), f, 1, Grid(128, pi)));
}
BENCHMARK(BM_BuildMomentSystem)->Unit(benchmark::kMillisecond);

void BM_FindEigenvaluesReal(benchmark::State& state) {
    const SigmaFunction s = smooth(512);
    const EntirePair f = EntirePair::constant(0.0, 1.0);
    const DeltaFn d = [&](cplx l) { return char_delta(s, kP1, f, l); };
    for (auto _ : state) benchmark::DoNotOptimize(find_eigenvalues(d, -10.0, 900.0, 0.0, 0));
}
BENCHMARK(BM_FindEigenvaluesReal)->Unit(benchmark::kMillisecond);

void BM_HlSpectrum(benchmark::State& state) {
    const CorpusProblem& c = corpus_problem(state.range(0) ? "step-p3-r5" : "step-p1-r1");
    for (auto _ : state) benchmark::DoNotOptimize(hl_spectrum(c.problem, 40));
}
BENCHMARK(BM_HlSpectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
