#include <benchmark/benchmark.h>

#include <random>

#include "advreg/advice.hpp"
#include "advreg/compile.hpp"
#include "advreg/formula.hpp"
#include "advreg/morphic.hpp"
#include "advreg/nerode.hpp"
#include "advreg/one_scan.hpp"

using namespace advreg;

namespace {

const Alphabet ab = Alphabet::of_chars("ab");

// random nondeterministic tables, 4 states, lengths 0..n_max
AdviceAutomaton random_tables(std::uint32_t seed, std::size_t n_max) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(0.35), acc(0.4);
  std::vector<AdviceSlice> slices;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<bool> accepting(4);
    for (std::size_t q = 0; q < 4; ++q) accepting[q] = acc(rng);
    slices.push_back(AdviceSlice::build(
        n, 4, 2,
        [&](std::size_t, State, Letter, std::vector<State>& out) {
          for (State r = 0; r < 4; ++r)
            if (coin(rng)) out.push_back(r);
        },
        accepting));
  }
  return AdviceAutomaton::from_tables(ab, 4, {0}, AdviceAutomaton::Mode::kNondeterministic, std::move(slices));
}

void BM_CompileAlternation(benchmark::State& state) {
  auto f = parse_formula(
      "forall x. exists y. (x <= y & (a(y) <-> ~P(y)) & forall z. (y < z -> exists Z. (in(z, Z) & b(z))))");
  for (auto _ : state) benchmark::DoNotOptimize(compile(f, ab).dfa.num_states());
}
BENCHMARK(BM_CompileAlternation)->Unit(benchmark::kMillisecond);

void BM_CompileRunFormula(benchmark::State& state) {
  auto rf = to_formula(random_tables(5, 8));
  for (auto _ : state) benchmark::DoNotOptimize(compile(rf.formula, ab).dfa.num_states());
}
BENCHMARK(BM_CompileRunFormula)->Unit(benchmark::kMillisecond);

void BM_Determinize(benchmark::State& state) {
  auto a = random_tables(11, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto d = determinize(a);
    benchmark::DoNotOptimize(d.slice(static_cast<std::size_t>(state.range(0))).num_states());
  }
}
BENCHMARK(BM_Determinize)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_NerodeSlices(benchmark::State& state) {
  auto l = builtin_language("prime_abc");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(slice_structure(l, n).max_count());
}
BENCHMARK(BM_NerodeSlices)->Arg(12)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_NerodeBruteforce(benchmark::State& state) {
  auto l = builtin_language("ab_star_ba_star_b");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nerode_slices_bruteforce(l, n).max_count());
}
BENCHMARK(BM_NerodeBruteforce)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_MonoidClosure(benchmark::State& state) {
  auto det = determinize(random_tables(20240601, 8));
  ToProgramOptions opts;
  opts.n_max = 8;
  opts.monoid_cap = std::size_t{1} << 17;
  for (auto _ : state) benchmark::DoNotOptimize(automaton_to_program(det, opts).monoid().size());
}
BENCHMARK(BM_MonoidClosure)->Unit(benchmark::kMillisecond);

void BM_GeneratePrefix(benchmark::State& state) {
  auto s = Hd0lSystem::thue_morse();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_prefix(s, n).size());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_GeneratePrefix)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMicrosecond);

void BM_RegularityProbe(benchmark::State& state) {
  auto l = builtin_language("prime_abc");
  for (auto _ : state) benchmark::DoNotOptimize(synpred_regularity_probe(l, 60, 12).found);
}
BENCHMARK(BM_RegularityProbe)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
