#include <benchmark/benchmark.h>

#include "lca/fgab.hpp"
#include "lca/lattice.hpp"

using namespace lca;

namespace {

// elementary abelian 2-groups: the worst case for subgroup counting
void bm_lattice_build(benchmark::State& state) {
    auto k = static_cast<std::size_t>(state.range(0));
    auto g = FgAbGroup::from_orders(0, std::vector<long long>(k, 2));
    for (auto _ : state) benchmark::DoNotOptimize(subgroup_lattice(g));
}

void bm_modular_scan(benchmark::State& state) {
    auto k = static_cast<std::size_t>(state.range(0));
    auto g = FgAbGroup::from_orders(0, std::vector<long long>(k, 2));
    Lattice l = subgroup_lattice(g);
    for (auto _ : state) benchmark::DoNotOptimize(check_modular_law(l));
}

}  // namespace

BENCHMARK(bm_lattice_build)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK(bm_modular_scan)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
