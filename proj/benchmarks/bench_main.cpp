#include "mfp/experiment.hpp"
#include "mfp/linsolve.hpp"
#include "mfp/stencils.hpp"
#include "mfp/time_grid.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace mfp;

namespace {

struct Setup {
    ScaledProblem problem;
    NodeLayout layout;

    explicit Setup(std::size_t target) : problem(scale_problem(ProblemSpec::basket_call())) {
        layout = build_layout(problem, LayoutOptions{}, target);
    }
};

void BM_SmoothLayout(benchmark::State& state) {
    const ScaledProblem problem = scale_problem(ProblemSpec::basket_call());
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_layout(problem, LayoutOptions{}, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_SmoothLayout)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Stencils(benchmark::State& state) {
    const Setup s(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(make_stencils(s.layout, 75));
    state.counters["N"] = static_cast<double>(s.layout.size());
}
BENCHMARK(BM_Stencils)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Weights(benchmark::State& state) {
    const Setup s(static_cast<std::size_t>(state.range(0)));
    const auto stencils = make_stencils(s.layout, 75);
    AssemblyOptions o;
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(compute_weights(s.layout, stencils, s.problem.coeffs, o));
    state.counters["stencils/s"] =
        benchmark::Counter(static_cast<double>(stencils.size()), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Weights)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
    const Setup s(static_cast<std::size_t>(state.range(0)));
    const auto stencils = make_stencils(s.layout, 75);
    const auto weights = compute_weights(s.layout, stencils, s.problem.coeffs);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_weights(s.layout, stencils, weights));
}
BENCHMARK(BM_Assemble)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_GmresStep(benchmark::State& state) {
    const Setup s(static_cast<std::size_t>(state.range(0)));
    const DiscreteOperator op = discretize(s.problem, s.layout, PricingOptions{});
    const TimeGrid grid = build_time_grid(1.0, 100);
    const SparseMatrix C = step_matrix(op.L, grid.beta0, s.layout.roles);
    const Ilu0 ilu(C);
    std::vector<double> b(s.layout.size());
    for (std::size_t j = 0; j < b.size(); ++j) b[j] = s.problem.payoff(s.layout.nodes[j]);
    std::vector<double> x(b.size());
    std::size_t iterations = 0;
    for (auto _ : state) {
        x = b;
        iterations = gmres(C, ilu, b, x, GmresOptions{}).iterations;
        benchmark::DoNotOptimize(x.data());
    }
    state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_GmresStep)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Ilu0(benchmark::State& state) {
    const Setup s(static_cast<std::size_t>(state.range(0)));
    const DiscreteOperator op = discretize(s.problem, s.layout, PricingOptions{});
    const SparseMatrix C = step_matrix(op.L, build_time_grid(1.0, 100).beta0, s.layout.roles);
    for (auto _ : state) benchmark::DoNotOptimize(Ilu0(C));
}
BENCHMARK(BM_Ilu0)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
