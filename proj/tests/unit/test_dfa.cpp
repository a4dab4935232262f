#include <gtest/gtest.h>

#include <random>

#include "../support/random.hpp"
#include "advreg/dfa.hpp"
#include "advreg/error.hpp"

using namespace advreg;
using advreg::testing::random_dfa;
using advreg::testing::run_indices;

namespace {

const Alphabet kAB = Alphabet::of_chars("ab");
const Alphabet kBits = Alphabet::of_chars("01");

Dfa a_star() { return Dfa::from_table(kAB, 0, {{0, 1}, {1, 1}}, {true, false}); }

// Distinguishability oracle: two states are equivalent iff no word of length
// < number of states separates them.
bool states_equivalent(const Dfa& d, State p, State q) {
  bool same = true;
  for_each_word_up_to(d.alphabet().size(), d.num_states(), [&](std::span<const Letter> w) {
    State x = p, y = q;
    for (Letter l : w) {
      x = d.step_index(x, l);
      y = d.step_index(y, l);
    }
    if (d.accepting(x) != d.accepting(y)) same = false;
  });
  return same;
}

}  // namespace

TEST(Dfa, TableRoundTrip) {
  std::mt19937 rng(7);
  TrackedAlphabet ta(kAB, 2);
  for (int it = 0; it < 10; ++it) {
    auto d = random_dfa(rng, ta, 5);
    auto t = d.table();
    auto again = Dfa::from_table(ta, d.initial(), t, d.accepting_states());
    EXPECT_EQ(again.table(), t);
  }
}

TEST(Dfa, ComplementInvolution) {
  std::mt19937 rng(11);
  TrackedAlphabet ta(kAB, 1);
  for (int it = 0; it < 10; ++it) {
    auto d = random_dfa(rng, ta, 6);
    EXPECT_TRUE(isomorphic(minimize(complement(complement(d))), minimize(d)));
    auto c = complement(d);
    for_each_word_up_to(ta.size(), 4, [&](std::span<const Letter> w) {
      EXPECT_NE(run_indices(c, w), run_indices(d, w));
    });
  }
}

TEST(Dfa, MinimizeRedundantAStar) {
  // five states, all reachable, collapsing to a* over {a,b}
  auto d = Dfa::from_table(kAB, 0, {{1, 4}, {2, 4}, {3, 4}, {0, 4}, {4, 4}}, {true, true, true, true, false});
  auto m = minimize(d);
  EXPECT_EQ(m.num_states(), 2u);
  EXPECT_TRUE(equivalent(m, a_star()).equal);
}

TEST(Dfa, MinimizeMatchesDistinguishability) {
  std::mt19937 rng(3);
  TrackedAlphabet ta(kAB, 1);
  for (int it = 0; it < 20; ++it) {
    auto d = trim(random_dfa(rng, ta, 6));
    std::size_t classes = 0;
    std::vector<int> cls(d.num_states(), -1);
    for (State p = 0; p < d.num_states(); ++p) {
      if (cls[p] >= 0) continue;
      cls[p] = static_cast<int>(classes);
      for (State q = p + 1; q < d.num_states(); ++q)
        if (cls[q] < 0 && states_equivalent(d, p, q)) cls[q] = cls[p];
      ++classes;
    }
    auto m = minimize(d);
    EXPECT_EQ(m.num_states(), classes);
    EXPECT_TRUE(isomorphic(minimize(m), m));
    EXPECT_TRUE(equivalent(m, d).equal);
  }
}

TEST(Dfa, ProductAgreesWithBooleanOps) {
  std::mt19937 rng(5);
  TrackedAlphabet ta(kAB, 1);
  for (auto op : {BoolOp::kAnd, BoolOp::kOr, BoolOp::kXor, BoolOp::kImplies, BoolOp::kIff, BoolOp::kAndNot}) {
    auto x = random_dfa(rng, ta, 4);
    auto y = random_dfa(rng, ta, 3);
    auto p = product(x, y, op);
    for_each_word_up_to(ta.size(), 4, [&](std::span<const Letter> w) {
      EXPECT_EQ(run_indices(p, w), apply(op, run_indices(x, w), run_indices(y, w)));
    });
  }
}

TEST(Dfa, ProductAlphabetMismatch) {
  auto x = a_star();
  auto y = Dfa::universal(TrackedAlphabet(kAB, 1));
  EXPECT_THROW(product(x, y, BoolOp::kAnd), Error);
}

TEST(Dfa, ProjectAllOnesTrackIsUniversal) {
  TrackedAlphabet ta(Alphabet::of_chars("a"), 1);
  auto ones = Dfa::from_table(ta, 0, {{1, 0}, {1, 1}}, {true, false});
  std::uint32_t track = 0;
  auto p = minimize(project_tracks(ones, std::span<const std::uint32_t>(&track, 1)));
  EXPECT_EQ(p.num_states(), 1u);
  EXPECT_TRUE(p.accepting(0));
}

TEST(Dfa, ProjectionAgreesWithExistentialOracle) {
  std::mt19937 rng(9);
  TrackedAlphabet ta(kAB, 2);
  for (int it = 0; it < 15; ++it) {
    auto d = random_dfa(rng, ta, 4, 0.25);
    std::uint32_t track = it % 2;
    auto p = project_tracks(d, std::span<const std::uint32_t>(&track, 1));
    for_each_word_up_to(ta.size(), 3, [&](std::span<const Letter> w) {
      bool any = false;
      for_each_word(2, w.size(), [&](std::span<const Letter> flip) {
        Symbols v(w.begin(), w.end());
        for (std::size_t i = 0; i < v.size(); ++i) {
          auto bits = ta.bits_of(v[i]);
          bits[track] = static_cast<std::uint8_t>(flip[i]);
          v[i] = static_cast<Letter>(ta.letter_index(ta.base_of(v[i]), bits));
        }
        any = any || run_indices(d, v);
      });
      EXPECT_EQ(run_indices(p, w), any);
    });
  }
}

TEST(Dfa, ProjectBaseAndLift) {
  // words over {a,b} x {0,1} whose track is 1 exactly where the letter is a
  TrackedAlphabet ta(kAB, 1);
  auto d = Dfa::from_table(ta, 0, {{1, 0, 0, 1}, {1, 1, 1, 1}}, {true, false});
  auto p = minimize(project_base(d));
  EXPECT_EQ(p.alphabet().base().size(), 1u);
  EXPECT_EQ(p.num_states(), 1u);
  auto lifted = lift_base(p, kAB);
  EXPECT_EQ(lifted.alphabet(), ta);
}

TEST(Dfa, EquivalentCounterexampleIsShortest) {
  auto b_after = Dfa::from_table(kAB, 0, {{0, 1}, {2, 2}, {2, 2}}, {false, true, false});
  auto eq = equivalent(a_star(), b_after);
  ASSERT_FALSE(eq.equal);
  ASSERT_TRUE(eq.counterexample);
  EXPECT_EQ(eq.counterexample->size(), 0u);
  EXPECT_TRUE(equivalent(a_star(), minimize(a_star())).equal);
}

TEST(Dfa, ShortestAcceptedIsMinimal) {
  std::mt19937 rng(21);
  TrackedAlphabet ta(kAB, 1);
  for (int it = 0; it < 20; ++it) {
    auto d = random_dfa(rng, ta, 5, 0.15);
    auto w = shortest_accepted(d);
    std::optional<std::size_t> brute;
    for_each_word_up_to(ta.size(), 5, [&](std::span<const Letter> x) {
      if (!brute && run_indices(d, x)) brute = x.size();
    });
    if (w) {
      EXPECT_TRUE(d.accepts(*w));
      ASSERT_TRUE(brute);
      EXPECT_EQ(w->size(), *brute);
    } else {
      EXPECT_FALSE(brute);
    }
  }
}

TEST(Dfa, FirstMissingLength) {
  auto one_zeros = Dfa::from_table(kBits, 0, {{2, 1}, {1, 2}, {2, 2}}, {false, true, false});
  EXPECT_EQ(first_missing_length(one_zeros), std::optional<std::size_t>(0));
  auto all = Dfa::universal(TrackedAlphabet(kBits, 0));
  EXPECT_FALSE(first_missing_length(all));
  // even lengths only
  auto even = Dfa::from_table(kBits, 0, {{1, 1}, {0, 0}}, {true, false});
  EXPECT_EQ(first_missing_length(even), std::optional<std::size_t>(1));
}

namespace {

// Brute force: lex-min accepted word per length.
void expect_lexmin(const Dfa& m, std::size_t max_len) {
  auto mp = lexmin_per_length(m);
  for (std::size_t n = 0; n <= max_len; ++n) {
    std::optional<Symbols> least;
    for_each_word(m.alphabet().size(), n, [&](std::span<const Letter> w) {
      if (!least && run_indices(m, w)) least = Symbols(w.begin(), w.end());
    });
    ASSERT_TRUE(least);
    for_each_word(m.alphabet().size(), n, [&](std::span<const Letter> w) {
      EXPECT_EQ(run_indices(mp, w), Symbols(w.begin(), w.end()) == *least);
    });
  }
}

}  // namespace

TEST(LexMin, Examples) {
  auto all = Dfa::universal(TrackedAlphabet(kBits, 0));
  auto zeros = Dfa::from_table(kBits, 0, {{0, 1}, {1, 1}}, {true, false});
  EXPECT_TRUE(equivalent(lexmin_per_length(all), zeros).equal);

  // 1(0+1)* + eps  ->  eps + 1 0*
  auto m2 = Dfa::from_table(kBits, 0, {{2, 1}, {1, 1}, {2, 2}}, {true, true, false});
  auto want2 = Dfa::from_table(kBits, 0, {{2, 1}, {1, 2}, {2, 2}}, {true, true, false});
  EXPECT_TRUE(equivalent(lexmin_per_length(m2), want2).equal);
  expect_lexmin(m2, 5);

  // words with at least one 1, plus eps  ->  eps + 0*1
  auto m3 = Dfa::from_table(kBits, 0, {{1, 2}, {1, 2}, {2, 2}}, {true, false, true});
  auto want3 = Dfa::from_table(kBits, 0, {{1, 2}, {1, 2}, {3, 3}, {3, 3}}, {true, false, true, false});
  EXPECT_TRUE(equivalent(lexmin_per_length(m3), want3).equal);
  expect_lexmin(m3, 5);
}

TEST(LexMin, RandomAgainstBruteForce) {
  std::mt19937 rng(17);
  TrackedAlphabet ta(kBits, 1);
  int tested = 0;
  while (tested < 10) {
    auto d = random_dfa(rng, ta, 4, 0.6);
    if (first_missing_length(d)) continue;
    expect_lexmin(d, 4);
    ++tested;
  }
}

TEST(LexMin, PreconditionNamesLength) {
  auto even = Dfa::from_table(kBits, 0, {{1, 1}, {0, 0}}, {true, false});
  try {
    lexmin_per_length(even);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
    EXPECT_NE(std::string(e.what()).find("length 1"), std::string::npos);
  }
}

TEST(Dfa, RenameTracksAndDot) {
  TrackedAlphabet ta(kAB, 1);
  auto d = Dfa::from_table(ta, 0, {{1, 0, 0, 1}, {1, 1, 1, 1}}, {true, false});
  std::vector<std::uint32_t> map{2};
  auto r = rename_tracks(d, map, 3);
  EXPECT_EQ(support(r), std::vector<std::uint32_t>{2});
  auto w = attach_tracks(Word::parse(kAB, "ab"), std::vector<std::string>{"00", "11", "10"});
  EXPECT_TRUE(r.accepts(w));
  auto dot = to_dot(d);
  EXPECT_NE(dot.find("doublecircle"), std::string::npos);
}
