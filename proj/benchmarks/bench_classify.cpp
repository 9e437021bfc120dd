#include <benchmark/benchmark.h>

#include "lca/classify.hpp"
#include "lca/corpus.hpp"
#include "lca/invariants.hpp"
#include "lca/parse.hpp"

using namespace lca;

namespace {

void bm_parse_corpus(benchmark::State& state) {
    for (auto _ : state)
        for (const auto& entry : corpus()) benchmark::DoNotOptimize(parse(entry.text));
}

void bm_classify_corpus(benchmark::State& state) {
    std::vector<GroupExpr> exprs;
    for (const auto& entry : corpus()) exprs.push_back(parse(entry.text));
    for (auto _ : state)
        for (const auto& e : exprs) benchmark::DoNotOptimize(classify(e));
}

void bm_invariants(benchmark::State& state) {
    GroupExpr e = parse("let P = primes distinct in locprod[inf](Qp(P), Zp(P))");
    for (auto _ : state) benchmark::DoNotOptimize(invariants(e));
}

}  // namespace

BENCHMARK(bm_parse_corpus);
BENCHMARK(bm_classify_corpus);
BENCHMARK(bm_invariants);

BENCHMARK_MAIN();
