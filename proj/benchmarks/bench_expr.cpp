#include <benchmark/benchmark.h>

#include "quadbound/expr.hpp"

namespace {

const char* kText = "sin(x)*exp(-x/2) + x^3/(1+x^2) - ln(x+2)";

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) {
        auto ast = quadbound::expr::parse(kText);
        benchmark::DoNotOptimize(ast.root());
    }
}
BENCHMARK(BM_Parse);

void BM_Evaluate(benchmark::State& state) {
    auto ast = quadbound::expr::parse(kText);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(quadbound::expr::evaluate(ast, x));
        x += 1e-6;
    }
}
BENCHMARK(BM_Evaluate);

void BM_Differentiate(benchmark::State& state) {
    auto ast = quadbound::expr::parse(kText);
    for (auto _ : state) {
        auto d = quadbound::expr::differentiate(ast);
        benchmark::DoNotOptimize(d.root());
    }
}
BENCHMARK(BM_Differentiate);

}  // namespace
