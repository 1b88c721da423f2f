#include <benchmark/benchmark.h>

#include <random>

#include "dlim/dlim.hpp"

namespace {

dlim::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> entry(-bound, bound);
  dlim::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  }
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto m = random_matrix(rng, static_cast<std::size_t>(state.range(0)), 20);
  for (auto _ : state) benchmark::DoNotOptimize(dlim::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->DenseRange(2, 10, 2);

void BM_HermiteRowBasis(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto m = random_matrix(rng, static_cast<std::size_t>(state.range(0)), 50);
  for (auto _ : state) benchmark::DoNotOptimize(dlim::hermite_row_basis(m));
}
BENCHMARK(BM_HermiteRowBasis)->DenseRange(2, 10, 2);

void BM_WalkerNormalize(benchmark::State& state) {
  const dlim::WalkerContext ctx(2, dlim::Ordinal::parse("w*2+3"));
  std::vector<dlim::Ordinal> entries;
  for (long k = 0; k < state.range(0); ++k) entries.push_back(dlim::Ordinal::finite(static_cast<std::uint64_t>(k)));
  // 2^n e_(0..n-1) carries all the way down to zero.
  dlim::Integer c = 1;
  for (long k = 0; k < state.range(0); ++k) c *= 2;
  const auto x = dlim::WalkerElement::basis(ctx, dlim::DegLexIndex(entries), c * 7 + 5);
  for (auto _ : state) benchmark::DoNotOptimize(dlim::normalize(x));
}
BENCHMARK(BM_WalkerNormalize)->Range(2, 64);

void BM_AnalyzeFiniteTower(benchmark::State& state) {
  const dlim::FgAbGroup a(0, {2, 4, 8});
  std::vector<dlim::FgAbGroup> prefix(static_cast<std::size_t>(state.range(0)), a);
  std::vector<dlim::GroupMap> maps(prefix.empty() ? 0 : prefix.size() - 1,
                                   dlim::GroupMap::multiplication(a, 2));
  std::optional<dlim::GroupMap> connection;
  if (!prefix.empty()) connection = dlim::GroupMap::identity(a);
  const dlim::Tower t(prefix, maps, dlim::ConstantEndoTail{a, dlim::GroupMap::multiplication(a, 3)}, connection);
  for (auto _ : state) benchmark::DoNotOptimize(dlim::analyze(t));
}
BENCHMARK(BM_AnalyzeFiniteTower)->DenseRange(0, 8, 2);

void BM_AnalyzeClosedForm(benchmark::State& state) {
  const dlim::FgAbGroup a(static_cast<std::size_t>(state.range(0)), {4, 12});
  const auto t = dlim::Tower::s_of_a(a, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dlim::analyze(t));
}
BENCHMARK(BM_AnalyzeClosedForm)->DenseRange(1, 4);

}  // namespace
BENCHMARK_MAIN();
