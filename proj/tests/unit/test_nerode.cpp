#include <gtest/gtest.h>

#include <random>

#include "advreg/error.hpp"
#include "advreg/nerode.hpp"
#include "support/random.hpp"

using namespace advreg;

namespace {

const Alphabet ab = Alphabet::of_chars("ab");

Word w(const Alphabet& a, std::span<const Letter> s) { return Word(a, Symbols(s.begin(), s.end())); }

std::vector<std::string> strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& u : ws) out.push_back(u.str());
  return out;
}

Language regex_dfa(const std::vector<std::vector<State>>& delta, std::vector<bool> acc, const Alphabet& a = ab) {
  return Language::dfa(Dfa::from_table(a, 0, delta, std::move(acc)));
}

// Regular fixtures over {a, b}.
std::vector<Language> regular_fixtures() {
  return {
      builtin_language("ab_star_ba_star_b"),
      regex_dfa({{0, 1}, {1, 1}}, {true, false}),                  // a*
      regex_dfa({{1, 0}, {1, 2}, {2, 2}}, {false, false, true}),   // contains ab
      regex_dfa({{1, 1}, {2, 2}, {0, 0}}, {true, false, false}),   // length ≡ 0 mod 3
      regex_dfa({{1, 0}, {2, 0}, {2, 2}}, {true, true, false}),    // no aa
      regex_dfa({{0, 0}}, {true}),                                 // A*
      regex_dfa({{0, 0}}, {false}),                                // ∅
  };
}

}  // namespace

TEST(Bruteforce, AbStarExample) {
  auto l = builtin_language("ab_star_ba_star_b");
  auto part = nerode_classes_bruteforce(l, 2, 2);
  EXPECT_EQ(strs(part.reps), (std::vector<std::string>{"aa", "ab"}));
  EXPECT_EQ(part.class_of, (std::vector<std::uint32_t>{0, 1, 0, 0}));
  auto eps = nerode_classes_bruteforce(l, 0, 3);
  EXPECT_EQ(eps.reps.size(), 1u);
  EXPECT_TRUE(eps.reps[0].empty());
}

TEST(Bruteforce, PrimeSeparatesAa) {
  auto l = builtin_language("prime_abc");
  auto part = nerode_classes_bruteforce(l, 2, 4);
  ASSERT_EQ(part.class_of.size(), 9u);
  // aa is alone in its class
  for (std::size_t x = 1; x < 9; ++x) EXPECT_NE(part.class_of[x], part.class_of[0]);
  EXPECT_EQ(part.reps.size(), 2u);
}

TEST(Bruteforce, WorkCap) {
  auto l = builtin_language("ab_star_ba_star_b");
  try {
    nerode_classes_bruteforce(l, 12, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapExceeded);
  }
}

TEST(Slices, AbStarStructure) {
  auto l = builtin_language("ab_star_ba_star_b");
  auto s = slice_structure(l, 4);
  EXPECT_EQ(s.counts, (std::vector<std::size_t>{1, 2, 2, 2, 2}));
  ASSERT_EQ(s.tau.size(), 4u);
  EXPECT_EQ(s.tau[0], (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(s.tau[1], (std::vector<std::uint32_t>{0, 1, 0, 0}));
  EXPECT_EQ(s.tau[2], (std::vector<std::uint32_t>{0, 0, 1, 0}));
  EXPECT_EQ(s.tau[3], (std::vector<std::uint32_t>{0, 0, 0, 1}));
  EXPECT_EQ(s.acc, (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(strs(s.reps[4]), (std::vector<std::string>{"aaaa", "abab"}));
  EXPECT_EQ(s, nerode_slices_bruteforce(l, 4));
}

TEST(Slices, AutomatonMatchesBruteforce) {
  auto fixtures = regular_fixtures();
  fixtures.push_back(builtin_language("even_a"));
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) fixtures.push_back(Language::automaton(advreg::testing::random_advice(rng, ab, 3, 6, true)));
  for (const auto& l : fixtures)
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(slice_structure(l, n), nerode_slices_bruteforce(l, n)) << n;
}

TEST(Slices, PrimeBoundedByStates) {
  auto l = builtin_language("prime_abc");
  for (std::size_t n = 0; n <= 9; ++n) {
    auto s = slice_structure(l, n);
    EXPECT_EQ(s.counts[0], 1u);
    EXPECT_LE(s.max_count(), 5u);
    if (n <= 6) EXPECT_EQ(s, nerode_slices_bruteforce(l, n));
  }
}

TEST(Slices, Trivial) {
  auto all = regex_dfa({{0, 0}}, {true});
  auto s = slice_structure(all, 5);
  EXPECT_EQ(s.counts, std::vector<std::size_t>(6, 1));
  EXPECT_EQ(s.acc, (std::vector<std::uint32_t>{0}));
  auto none = slice_structure(regex_dfa({{0, 0}}, {false}), 5);
  EXPECT_EQ(none.counts, std::vector<std::size_t>(6, 1));
  EXPECT_TRUE(none.acc.empty());
}

TEST(Slices, RepresentativesAreLexLeast) {
  auto l = builtin_language("ab_star_ba_star_b");
  for (std::size_t n = 0; n <= 6; ++n) {
    auto s = slice_structure(l, n);
    for (std::size_t i = 0; i <= n; ++i) {
      auto part = nerode_classes_bruteforce(l, i, n - i);
      // first word of each class in lex order is its representative
      std::vector<bool> seen(part.reps.size(), false);
      std::size_t x = 0;
      for_each_word(2, i, [&](std::span<const Letter> u) {
        auto c = part.class_of[x++];
        if (!seen[c]) {
          seen[c] = true;
          EXPECT_EQ(s.reps[i][c].str(), w(ab, u).str());
        }
      });
      for (std::size_t r = 1; r < s.reps[i].size(); ++r) EXPECT_TRUE(lex_compare(s.reps[i][r - 1], s.reps[i][r]) < 0);
    }
  }
}

TEST(Slices, MonotoneRefinement) {
  for (const auto& l : regular_fixtures())
    for (std::size_t i = 0; i <= 4; ++i) {
      std::size_t prev = 0;
      for (std::size_t p = 0; p <= 5; ++p) {
        auto count = nerode_classes_unsliced(l, i, p).reps.size();
        EXPECT_GE(count, prev);
        prev = count;
      }
    }
}

TEST(Slices, UnslicedAbStarShowsThreeClasses) {
  auto l = builtin_language("ab_star_ba_star_b");
  EXPECT_EQ(strs(nerode_classes_unsliced(l, 2, 4).reps), (std::vector<std::string>{"aa", "ab", "ba"}));
  EXPECT_EQ(nerode_classes_bruteforce(l, 2, 2).reps.size(), 2u);
}

TEST(ClassAutomaton, AgreesWithLanguage) {
  auto l = builtin_language("ab_star_ba_star_b");
  auto a = class_automaton(l, 6);
  for (std::size_t n = 0; n <= 6; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) { EXPECT_EQ(a.run(w(ab, s)), l.member(w(ab, s))); });
  auto empty = class_automaton(regex_dfa({{0, 0}}, {false}), 5);
  EXPECT_EQ(empty.num_states(), 1u);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_FALSE(empty.slice(n).accepting(0));
}

TEST(ClassAutomaton, Prime) {
  auto l = builtin_language("prime_abc");
  auto a = class_automaton(l, 9);
  EXPECT_LE(a.num_states(), 5u);
  const Alphabet abc = Alphabet::of_chars("abc");
  for (std::size_t n = 0; n <= 9; ++n)
    for_each_word(3, n, [&](std::span<const Letter> s) { EXPECT_EQ(a.run(w(abc, s)), l.member(w(abc, s))); });
}

TEST(SyntacticPredicate, AbStarMembership) {
  auto l = builtin_language("ab_star_ba_star_b");
  auto p = syntactic_predicate(l, 4);
  EXPECT_EQ(p.letters.size(), 4u);
  EXPECT_TRUE(p.letters[3].acc.has_value());
  EXPECT_FALSE(p.letters[2].acc.has_value());
  EXPECT_TRUE(membership_via_synpred(p, Word::parse(ab, "abab")));
  EXPECT_FALSE(membership_via_synpred(p, Word::parse(ab, "aaaa")));
  try {
    membership_via_synpred(p, Word::parse(ab, "aba"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLengthMismatch);
  }
  auto broken = p;
  broken.letters[1].tau[0] = 7;
  try {
    membership_via_synpred(broken, Word::parse(ab, "aaaa"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIntegrity);
  }
}

TEST(SyntacticPredicate, ReconstructionIdentity) {
  auto fixtures = regular_fixtures();
  fixtures.push_back(builtin_language("prime_abc"));
  fixtures.push_back(builtin_language("even_a"));
  std::mt19937 rng(8);
  for (int t = 0; t < 10; ++t) fixtures.push_back(Language::automaton(advreg::testing::random_advice(rng, ab, 4, 6, true)));
  for (const auto& l : fixtures)
    for (std::size_t n = 0; n <= 6; ++n) {
      auto p = syntactic_predicate(l, n);
      for_each_word(l.alphabet().size(), n, [&](std::span<const Letter> s) {
        EXPECT_EQ(membership_via_synpred(p, w(l.alphabet(), s)), l.member(w(l.alphabet(), s)));
      });
    }
}

TEST(SyntacticPredicate, TrivialLanguages) {
  for (std::size_t n = 0; n <= 4; ++n) {
    auto all = syntactic_predicate(regex_dfa({{0, 0}}, {true}), n);
    auto none = syntactic_predicate(regex_dfa({{0, 0}}, {false}), n);
    EXPECT_EQ(all.k, 1u);
    EXPECT_EQ(none.k, 1u);
    if (n == 0) {
      EXPECT_TRUE(all.epsilon_accept);
      EXPECT_FALSE(none.epsilon_accept);
    } else {
      EXPECT_EQ(*all.letters.back().acc, (std::vector<std::uint32_t>{0}));
      EXPECT_TRUE(none.letters.back().acc->empty());
    }
  }
}

TEST(Probe, RegularFixturesGiveEquivalentAutomata) {
  for (const auto& l : regular_fixtures()) {
    auto r = synpred_regularity_probe(l, 24, 6);
    ASSERT_TRUE(r.found) << r.message;
    EXPECT_TRUE(equivalent(*r.dfa, l.dfa()).equal);
  }
}

TEST(Probe, UniversalLanguage) {
  auto r = synpred_regularity_probe(regex_dfa({{0, 0}}, {true}), 12, 4);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.n0, 0u);
  EXPECT_EQ(r.period, 1u);
  EXPECT_EQ(r.dfa->num_states(), 1u);
}

TEST(Probe, PrimeHasNoPeriod) {
  auto r = synpred_regularity_probe(builtin_language("prime_abc"), 60, 12);
  EXPECT_FALSE(r.found);
  EXPECT_NE(r.message.find("no period"), std::string::npos);
}

TEST(Lp, Encodings) {
  auto even = RelationPredicate::from_monadic(MonadicPredicate::regular("P", RegularCombo::pos_mod(0, 2)));
  EXPECT_EQ(format_bits(predicate_to_lp(even, 4).tracks()[0]), "1010");
  auto dbl = predicate_to_lp(RelationPredicate::doubling(), 4);
  EXPECT_EQ(format_bits(dbl.tracks()[0]), "1100");
  EXPECT_EQ(format_bits(dbl.tracks()[1]), "1010");
  auto none = RelationPredicate::explicit_table("E", 2, {{3, {}}});
  auto z = predicate_to_lp(none, 3);
  EXPECT_EQ(format_bits(z.tracks()[0]), "000");
  EXPECT_EQ(format_bits(z.tracks()[1]), "000");
  EXPECT_THROW(predicate_to_lp(none, 4), Error);
  EXPECT_TRUE(lp_member(even, predicate_to_lp(even, 5)));
}

TEST(Lp, DoublingWitness) {
  const std::size_t expect[] = {2, 4, 6};
  const std::size_t ks[] = {5, 9, 13};
  for (int j = 0; j < 3; ++j) {
    auto wit = doubling_not_advice_regular_witness(ks[j]);
    EXPECT_TRUE(wit.verified);
    EXPECT_EQ(wit.prefixes.size(), expect[j]);
    for (const auto& u : wit.prefixes) EXPECT_EQ(u.size(), 3 * ks[j]);
    for (const auto& v : wit.suffixes) EXPECT_EQ(v.size(), ks[j]);
  }
  EXPECT_THROW(doubling_not_advice_regular_witness(2), Error);
}

TEST(Lp, PrintedOffsetsNeverMatch) {
  // marks exactly as printed: x = 2K-1-i, y = 3K + K-1-2j
  const std::size_t k = 9;
  for (std::size_t i = 0; i <= (k - 1) / 2; ++i)
    for (std::size_t j = 0; j <= (k - 1) / 2; ++j) EXPECT_NE(3 * k + k - 1 - 2 * j, 2 * (2 * k - 1 - i));
}
