#include <benchmark/benchmark.h>

#include <random>

#include "lca/fgab.hpp"

using namespace lca;

namespace {

// small entries: exact row reduction grows coefficients fast, and the
// library refuses to silently wrap once they leave 64 bits
Mat random_mat(std::mt19937_64& rng, int rows, int cols) {
    std::uniform_int_distribution<long long> d(-3, 3);
    Mat a(rows, std::vector<long long>(cols));
    for (auto& row : a)
        for (auto& x : row) x = d(rng);
    return a;
}

void bm_hnf(benchmark::State& state) {
    std::mt19937_64 rng(1);
    int n = static_cast<int>(state.range(0));
    Mat a = random_mat(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(hnf(a));
}

void bm_snf(benchmark::State& state) {
    std::mt19937_64 rng(2);
    int n = static_cast<int>(state.range(0));
    Mat a = random_mat(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(snf(a));
}

void bm_sub_meet(benchmark::State& state) {
    std::mt19937_64 rng(3);
    auto g = FgAbGroup::from_orders(2, {4, 8, 9, 27});
    Mat gx = random_mat(rng, 3, static_cast<int>(g.dim()));
    Mat gy = random_mat(rng, 3, static_cast<int>(g.dim()));
    Subgroup x = sub_from_generators(g, gx);
    Subgroup y = sub_from_generators(g, gy);
    for (auto _ : state) benchmark::DoNotOptimize(sub_meet(x, y));
}

}  // namespace

BENCHMARK(bm_hnf)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(bm_snf)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(bm_sub_meet);

BENCHMARK_MAIN();
