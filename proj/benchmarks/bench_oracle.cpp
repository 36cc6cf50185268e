#include <benchmark/benchmark.h>

#include <cmath>

#include "quadbound/oracle.hpp"
#include "quadbound/piecewise_linear.hpp"

namespace {

void BM_IntegrateExp(benchmark::State& state) {
    const quadbound::Interval iv{0.0, 1.0};
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto r = quadbound::integrate([](double t) { return std::exp(t); }, iv, tol);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_IntegrateExp)->Arg(6)->Arg(10)->Arg(12);

void BM_IntegratePiecewiseWithSplits(benchmark::State& state) {
    const quadbound::Interval iv{0.0, 1.0};
    std::vector<double> xs{0.0, 0.2, 0.45, 0.7, 1.0};
    std::vector<double> ys{0.1, 0.9, 0.3, 0.8, 0.2};
    quadbound::PiecewiseLinear profile(xs, ys);
    auto g = [profile](double t) { return profile.integral_from_start(t); };
    const std::vector<double> kinks = profile.interior_nodes();
    for (auto _ : state) {
        auto r = quadbound::integrate(g, iv, 1e-10, kinks);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_IntegratePiecewiseWithSplits);

}  // namespace
