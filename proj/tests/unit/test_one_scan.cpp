#include <gtest/gtest.h>

#include <random>

#include "advreg/error.hpp"
#include "advreg/one_scan.hpp"
#include "support/random.hpp"

using namespace advreg;

namespace {

const Alphabet ab = Alphabet::of_chars("ab");
const Alphabet abc = Alphabet::of_chars("abc");

Word w(const Alphabet& a, std::span<const Letter> s) { return Word(a, Symbols(s.begin(), s.end())); }

AdviceAutomaton parity_of_a() {
  auto d = Dfa::from_table(ab, 0, {{1, 0}, {0, 1}}, {true, false});
  return AdviceAutomaton::from_base(d, {});
}

}  // namespace

TEST(Monoid, U1) {
  auto m = FiniteMonoid::u1();
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.identity(), 1u);
  EXPECT_EQ(m.mul(0, 1), 0u);
  EXPECT_TRUE(m.verify());
}

TEST(Monoid, RejectsBadTables) {
  // (1·1)·2 != 1·(1·2)
  std::vector<std::vector<Element>> t{{0, 1, 2}, {1, 2, 2}, {2, 1, 1}};
  EXPECT_THROW(FiniteMonoid::from_table(t, 0), Error);
  EXPECT_THROW(FiniteMonoid::from_table({{0, 0}, {0, 0}}, 1), Error);
  EXPECT_THROW(FiniteMonoid::from_table({{0, 1}, {1}}, 0), Error);
  EXPECT_THROW(FiniteMonoid::transformations(2, {{1, 0}}), Error);
  EXPECT_THROW(FiniteMonoid::transformations(2, {{0, 1}, {1, 0}, {0, 0}}), Error);
}

TEST(Monoid, TransformationTable) {
  auto m = FiniteMonoid::transformations(2, {{0, 1}, {1, 0}});
  EXPECT_EQ(m.identity(), 0u);
  EXPECT_EQ(m.mul(1, 1), 0u);
  auto t = m.table();
  EXPECT_EQ(t, (std::vector<std::vector<Element>>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(m.verify());
}

TEST(Program, U1PrimeExamples) {
  auto p = builtin_u1_prime_program();
  EXPECT_TRUE(run_program(p, Word::parse(ab, "bbbbb")));
  EXPECT_FALSE(run_program(p, Word::parse(ab, "bbbb")));
  EXPECT_FALSE(run_program(p, Word::parse(ab, "ababa")));
  EXPECT_FALSE(run_program(p, Word::parse(ab, "")));
  EXPECT_TRUE(run_program(p, Word::parse(ab, "aab")));  // positions 0,1 are not prime
  EXPECT_FALSE(run_program(p, Word::parse(ab, "aba")));
}

TEST(Program, Errors) {
  auto p = OneScanProgram::from_tables(FiniteMonoid::u1(), ab, {{}, {1, 1}}, {false, true}, true);
  EXPECT_TRUE(run_program(p, Word::parse(ab, "a")));
  try {
    run_program(p, Word::parse(ab, "aa"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBoundExceeded);
  }
  EXPECT_THROW(run_program(p, Word::parse(abc, "a")), Error);
  EXPECT_THROW(OneScanProgram::from_tables(FiniteMonoid::u1(), ab, {{}, {1}}, {false, true}, true), Error);
  EXPECT_THROW(OneScanProgram::from_tables(FiniteMonoid::u1(), ab, {{}, {1, 2}}, {false, true}, true), Error);
}

TEST(Program, BasePresentationMatchesTables) {
  // U1 with a predicate: a at a P-position kills the product.
  auto even = MonadicPredicate::regular("P", RegularCombo::pos_mod(0, 2));
  TrackedAlphabet ta(ab, 1);
  std::vector<Element> table(ta.size());
  for (std::size_t l = 0; l < ta.size(); ++l) table[l] = (ta.base_of(l) == 0 && ta.bits_of(l)[0]) ? 0 : 1;
  auto p = OneScanProgram::from_base(FiniteMonoid::u1(), ab, table, {even}, {false, true}, true);
  auto t = p.to_tables(7);
  for (std::size_t n = 0; n <= 7; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) {
      bool want = true;
      for (std::size_t i = 0; i < n; ++i) want = want && !(s[i] == 0 && i % 2 == 0);
      EXPECT_EQ(run_program(p, w(ab, s)), want);
      EXPECT_EQ(run_program(t, w(ab, s)), want);
    });
}

TEST(Conversion, PrimeAutomatonToProgram) {
  auto a = builtin_prime_example();
  ToProgramOptions opts;
  opts.n_max = 9;
  auto p = automaton_to_program(a, opts);
  EXPECT_TRUE(p.monoid().verify());
  for (std::size_t n = 0; n <= 9; ++n)
    for_each_word(3, n, [&](std::span<const Letter> s) { EXPECT_EQ(run_program(p, w(abc, s)), a.run(w(abc, s))); });
}

TEST(Conversion, SingleAcceptingState) {
  auto d = Dfa::from_table(ab, 0, {{0, 0}}, {true});
  auto a = AdviceAutomaton::from_base(d, {});
  ToProgramOptions opts;
  opts.n_max = 6;
  auto p = automaton_to_program(a, opts);
  for (Element e : p.instructions(1)) EXPECT_TRUE(p.accepting(e));
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_TRUE(run_program(p, w(ab, s))); });
}

TEST(Conversion, ParityMonoidHasFourElements) {
  ToProgramOptions opts;
  opts.n_max = 8;
  auto a = parity_of_a();
  auto p = automaton_to_program(a, opts);
  EXPECT_EQ(p.monoid().size(), 4u);
  EXPECT_TRUE(p.monoid().verify());
  for (std::size_t n = 0; n <= 8; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_EQ(run_program(p, w(ab, s)), a.run(w(ab, s))); });
}

TEST(Conversion, ProgramToAutomaton) {
  auto p = builtin_u1_prime_program();
  auto a = program_to_automaton(p);
  EXPECT_EQ(a.num_states(), 2u);
  for (std::size_t n = 0; n <= 9; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_EQ(a.run(w(ab, s)), run_program(p, w(ab, s))); });
}

TEST(Conversion, IdentityPrograms) {
  auto trivial = FiniteMonoid::from_table({{0}}, 0);
  auto one = [](std::size_t, std::size_t, Letter) -> Element { return 0; };
  auto all = program_to_automaton(OneScanProgram::from_function(trivial, ab, one, {true}, true));
  auto none = program_to_automaton(OneScanProgram::from_function(trivial, ab, one, {false}, false));
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) {
      EXPECT_TRUE(all.run(w(ab, s)));
      EXPECT_FALSE(none.run(w(ab, s)));
    });
}

TEST(Conversion, RoundTripRandom) {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto a = determinize(advreg::testing::random_advice(rng, ab, 3, 8, true));
    ToProgramOptions opts;
    opts.monoid_cap = 1u << 16;
    auto p = automaton_to_program(a, opts);
    for (std::size_t n = 0; n <= 8; ++n)
      for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_EQ(run_program(p, w(ab, s)), a.run(w(ab, s))); });
    auto back = bounded_equivalent(program_to_automaton(p), a, 8);
    EXPECT_TRUE(back.equal) << (back.counterexample ? back.counterexample->str() : "");
  }
}

TEST(Conversion, CapExceeded) {
  std::mt19937 rng(9);
  auto a = determinize(advreg::testing::random_advice(rng, ab, 4, 8, true));
  ToProgramOptions opts;
  opts.monoid_cap = 3;
  try {
    automaton_to_program(a, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapExceeded);
  }
  EXPECT_THROW(automaton_to_program(builtin_prime_example()), Error);  // unbounded without n_max
}
