#include <benchmark/benchmark.h>

#include <cmath>

#include "quadbound/certquad.hpp"

namespace {

void BM_CertifyExp(benchmark::State& state) {
    quadbound::FunctionModel g;
    g.eval = [](double t) { return std::exp(t); };
    g.deriv = [](double t) { return std::exp(t); };
    g.domain = {0.0, 1.0};
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto r = quadbound::certify(g, g.domain, tol);
        benchmark::DoNotOptimize(r.radius);
    }
}
BENCHMARK(BM_CertifyExp)->Arg(4)->Arg(6);

}  // namespace
