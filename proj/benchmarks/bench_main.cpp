#include <benchmark/benchmark.h>

#include <random>

#include "aberrant/complementary.hpp"
#include "aberrant/search.hpp"
#include "aberrant/wlp.hpp"

using namespace aberrant;

namespace {

std::vector<Column> first_columns(int k, std::size_t m) {
    auto all = saturated_columns(k);
    std::mt19937_64 rng(1);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(m);
    return all;
}

void BM_SubsetXorTable(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto cols = first_columns(k, static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(SubsetXorTable(cols, k));
}
BENCHMARK(BM_SubsetXorTable)->Args({5, 20})->Args({7, 60})->Args({9, 200});

void BM_ColumnWlp(benchmark::State& state) {
    const auto cols = first_columns(6, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(column_wlp(cols, 6));
}
BENCHMARK(BM_ColumnWlp)->Arg(20)->Arg(40)->Arg(60);

void BM_EProfile(benchmark::State& state) {
    const int k = 6;
    const std::size_t rest = static_cast<std::size_t>(state.range(0));
    auto all = saturated_columns(k);
    const std::vector<Column> d1(all.begin(), all.end() - static_cast<std::ptrdiff_t>(rest));
    const std::vector<Column> d2(all.end() - static_cast<std::ptrdiff_t>(rest), all.end() - static_cast<std::ptrdiff_t>(rest / 2));
    const SplitTriple split = SplitTriple::from_d1_d2(k, d1, d2);
    for (auto _ : state) benchmark::DoNotOptimize(e_profile(split));
}
BENCHMARK(BM_EProfile)->Arg(8)->Arg(16)->Arg(22);

void BM_Theorem2(benchmark::State& state) {
    const int k = 6;
    auto all = saturated_columns(k);
    const std::vector<Column> d1(all.begin(), all.end() - 10);
    const std::vector<Column> d2(all.end() - 10, all.end() - 6);
    const SplitTriple split = SplitTriple::from_d1_d2(k, d1, d2);
    const EProfile profile = e_profile(split);
    const Theorem2Evaluator eval(split.m(), split.s(), k);
    for (auto _ : state) benchmark::DoNotOptimize(eval.evaluate_all(profile));
}
BENCHMARK(BM_Theorem2);

void BM_DirectSearch(benchmark::State& state) {
    const SearchSpec spec{4, static_cast<std::size_t>(state.range(0)), PlainVariant{}, Criterion::sequential, {}};
    for (auto _ : state) benchmark::DoNotOptimize(direct_search(spec));
}
BENCHMARK(BM_DirectSearch)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ComplementSearch(benchmark::State& state) {
    const SearchSpec spec{4, static_cast<std::size_t>(state.range(0)), GeneralVariant{2}, Criterion::sequential, {}};
    for (auto _ : state) benchmark::DoNotOptimize(complement_search(spec));
}
BENCHMARK(BM_ComplementSearch)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
