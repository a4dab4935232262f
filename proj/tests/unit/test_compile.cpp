#include <gtest/gtest.h>

#include <random>

#include "advreg/advice.hpp"
#include "advreg/compile.hpp"
#include "advreg/error.hpp"
#include "support/corpus.hpp"

using namespace advreg;

namespace {

const Alphabet ab = Alphabet::of_chars("ab");

// All bit vectors of length n for `tracks` tracks.
template <class Fn>
void for_each_tracks(std::size_t tracks, std::size_t n, Fn&& fn) {
  const std::size_t total = tracks * n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << total); ++mask) {
    std::vector<TrackBits> t(tracks, TrackBits(n));
    for (std::size_t j = 0; j < tracks; ++j)
      for (std::size_t i = 0; i < n; ++i) t[j][i] = (mask >> (j * n + i)) & 1u;
    fn(t);
  }
}

}  // namespace

TEST(Compile, AllA) {
  auto c = compile(parse_formula("forall x. a(x)"), ab);
  EXPECT_EQ(c.dfa.num_states(), 2u);
  EXPECT_EQ(c.dfa.alphabet().tracks(), 0u);
  EXPECT_TRUE(c.dfa.accepts(Word::parse(ab, "")));
  EXPECT_TRUE(c.dfa.accepts(Word::parse(ab, "aaa")));
  EXPECT_FALSE(c.dfa.accepts(Word::parse(ab, "aba")));
}

TEST(Compile, LetterIffPredicate) {
  auto c = compile(parse_formula("forall x. (a(x) <-> P(x))"), ab);
  ASSERT_EQ(c.tracks, std::vector<std::string>{"P"});
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) {
      for_each_tracks(1, n, [&](const std::vector<TrackBits>& t) {
        bool want = true;
        for (std::size_t i = 0; i < n; ++i) want = want && ((s[i] == 0) == (t[0][i] == 1));
        EXPECT_EQ(c.dfa.accepts(attach_tracks(Word(ab, Symbols(s.begin(), s.end())), t)), want);
      });
    });
}

TEST(Compile, SomePredicatePosition) {
  auto c = compile(parse_formula("exists x. P(x)"), Alphabet::of_chars("a"));
  EXPECT_EQ(c.dfa.num_states(), 2u);
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_tracks(1, n, [&](const std::vector<TrackBits>& t) {
      bool want = std::find(t[0].begin(), t[0].end(), 1) != t[0].end();
      EXPECT_EQ(c.dfa.accepts(attach_tracks(Word(Alphabet::of_chars("a"), Symbols(n, 0)), t)), want);
    });
}

TEST(Compile, Errors) {
  ParseOptions opts;
  opts.free_fo = {"x"};
  try {
    compile(parse_formula("a(x)", opts), ab);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFreeVariables);
  }
  try {
    compile(parse_formula("exists x. c(x)"), ab);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlphabetMismatch);
  }
}

TEST(Compile, EquivalentFormulasGiveIsomorphicAutomata) {
  auto a = compile(parse_formula("~exists x. ~a(x)"), ab).dfa;
  auto b = compile(parse_formula("forall x. a(x)"), ab).dfa;
  EXPECT_TRUE(equivalent(a, b).equal);
  EXPECT_TRUE(isomorphic(a, b));
  auto c = compile(parse_formula("exists x. forall y. x <= y"), ab).dfa;
  auto d = compile(parse_formula("exists x. true"), ab).dfa;
  EXPECT_TRUE(isomorphic(c, d));
}

TEST(Compile, ResultIsMinimal) {
  for (const auto& e : advreg::testing::load_corpus()) {
    auto c = compile(parse_formula(e.text), ab);
    EXPECT_EQ(minimize(c.dfa).num_states(), c.dfa.num_states()) << e.name;
    EXPECT_TRUE(isomorphic(minimize(c.dfa), c.dfa)) << e.name;
  }
}

TEST(Compile, OracleAgreementOnCorpus) {
  std::mt19937 rng(11);
  for (const auto& e : advreg::testing::load_corpus()) {
    auto f = parse_formula(e.text);
    auto c = compile(f, ab);
    const int valuations = f.predicates().empty() ? 1 : 3;
    for (int v = 0; v < valuations; ++v) {
      auto interp = advreg::testing::random_interpretation(rng, f.predicates(), 6);
      auto adv = specialize(c.dfa, c.tracks, interp);
      for (std::size_t n = 0; n <= 6; ++n)
        for_each_word(2, n, [&](std::span<const Letter> s) {
          Word u(ab, Symbols(s.begin(), s.end()));
          EXPECT_EQ(adv.run(u), eval_direct(f, interp, u)) << e.name << " on '" << u.str() << "'";
        });
    }
  }
}

TEST(Compile, FreeVariableTrack) {
  auto f = parse_formula("free: x\na(x) & exists y. (x < y & b(y))");
  auto c = compile_with_free(f, ab);
  ASSERT_EQ(c.tracks, std::vector<std::string>{"x"});
  for (std::size_t n = 0; n <= 5; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) {
      Word u(ab, Symbols(s.begin(), s.end()));
      for_each_tracks(1, n, [&](const std::vector<TrackBits>& t) {
        std::size_t ones = std::count(t[0].begin(), t[0].end(), 1);
        bool want = false;
        if (ones == 1) {
          std::size_t x = std::find(t[0].begin(), t[0].end(), 1) - t[0].begin();
          want = eval_direct(f, {}, u, {{"x", x}});
        }
        EXPECT_EQ(c.dfa.accepts(attach_tracks(u, t)), want);
      });
    });
}

TEST(Compile, ComplementSwapsVerdicts) {
  auto d = compile(parse_formula("forall x. forall y. (succ(x, y) -> ~(a(x) & a(y)))"), ab).dfa;
  auto nd = complement(d);
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_NE(d.accepts(Word(ab, Symbols(s.begin(), s.end()))), nd.accepts(Word(ab, Symbols(s.begin(), s.end())))); });
  EXPECT_TRUE(isomorphic(complement(nd), d));
}

TEST(Specialize, EvenPositions) {
  auto c = compile(parse_formula("forall x. (a(x) <-> P(x))"), ab);
  Interpretation even{{"P", MonadicPredicate::regular("P", RegularCombo::pos_mod(0, 2))}};
  auto adv = specialize(c.dfa, c.tracks, even);
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) {
      bool want = true;
      for (std::size_t i = 0; i < n; ++i) want = want && ((s[i] == 0) == (i % 2 == 0));
      EXPECT_EQ(adv.run(Word(ab, Symbols(s.begin(), s.end()))), want);
    });
}

TEST(Specialize, NoPredicatesIgnoresAdvice) {
  auto c = compile(parse_formula("exists x. (a(x) & exists y. (x < y & b(y)))"), ab);
  auto adv = specialize(c.dfa, c.tracks, {});
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_EQ(adv.run(Word(ab, Symbols(s.begin(), s.end()))), c.dfa.accepts(Word(ab, Symbols(s.begin(), s.end())))); });
}

TEST(Specialize, AllZeroPredicateRejects) {
  auto c = compile(parse_formula("exists x. P(x)"), ab);
  std::map<std::size_t, TrackBits> table;
  for (std::size_t n = 0; n <= 5; ++n) table[n] = TrackBits(n, 0);
  auto adv = specialize(c.dfa, c.tracks, {{"P", MonadicPredicate::explicit_table("P", table)}});
  EXPECT_EQ(adv.bound(), 5u);
  for (std::size_t n = 0; n <= 5; ++n) for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_FALSE(adv.run(Word(ab, Symbols(s.begin(), s.end())))); });
  try {
    adv.run(Word::parse(ab, "aaaaaa"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBoundExceeded);
  }
}

TEST(Specialize, MissingPredicate) {
  auto c = compile(parse_formula("exists x. P(x)"), ab);
  try {
    specialize(c.dfa, c.tracks, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingInterpretation);
  }
}
