#include <gtest/gtest.h>

#include <bit>

#include "advreg/error.hpp"
#include "advreg/morphic.hpp"

using namespace advreg;

namespace {

const Alphabet ab = Alphabet::of_chars("ab");

std::string tm_oracle(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += std::popcount(i) % 2 ? '1' : '0';
  return s;
}

std::string fibonacci_oracle(std::size_t n) {
  std::string prev = "0", cur = "01";
  while (cur.size() < n) {
    std::string next = cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur.substr(0, n);
}

Formula unary(const std::string& text) {
  ParseOptions o;
  o.free_fo = {"x"};
  return parse_formula(text, o);
}

}  // namespace

TEST(Hd0l, ThueMorsePrefix) {
  EXPECT_EQ(generate_prefix(Hd0lSystem::thue_morse(), 16).str(), "0110100110010110");
  EXPECT_EQ(generate_prefix(Hd0lSystem::thue_morse(), 1000).str(), tm_oracle(1000));
}

TEST(Hd0l, OtherPrefixes) {
  EXPECT_EQ(generate_prefix(Hd0lSystem::a_b_omega(), 5).str(), "10000");
  EXPECT_EQ(generate_prefix(Hd0lSystem::constant(), 4).str(), "aaaa");
  EXPECT_EQ(generate_prefix(Hd0lSystem::fibonacci(), 300).str(), fibonacci_oracle(300));
  EXPECT_TRUE(generate_prefix(Hd0lSystem::thue_morse(), 0).empty());
}

TEST(Hd0l, NonUniformCoding) {
  // a→aab, b→b coded a↦xy, b↦z: x y x y z x y x y z z ...
  auto s = Hd0lSystem::create(ab, {{0, 0, 1}, {1}}, 0, Alphabet::of_chars("xyz"), {{0, 1}, {2}});
  EXPECT_EQ(generate_prefix(s, 11).str(), "xyxyzxyxyzz");
}

TEST(Hd0l, PrefixCoherence) {
  for (const auto& name : Hd0lSystem::builtin_names()) {
    auto s = Hd0lSystem::builtin(name);
    auto longest = generate_prefix(s, 257).symbols();
    for (std::size_t n = 0; n <= 256; ++n) {
      auto w = generate_prefix(s, n).symbols();
      ASSERT_TRUE(std::equal(w.begin(), w.end(), longest.begin())) << name << " " << n;
    }
  }
}

TEST(Hd0l, ThueMorseIsCubeFree) {
  auto w = generate_prefix(Hd0lSystem::thue_morse(), 256).symbols();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t p = 1; i + 3 * p <= w.size(); ++p) {
      bool cube = true;
      for (std::size_t j = 0; cube && j < 2 * p; ++j) cube = w[i + j] == w[i + j + p];
      EXPECT_FALSE(cube) << i << " " << p;
    }
}

TEST(Hd0l, RejectsBadSystems) {
  auto bits = Alphabet::of_chars("01");
  EXPECT_THROW(Hd0lSystem::create(ab, {{0}, {1}}, 0, bits, {{0}, {1}}), Error);        // σ(a) = a
  EXPECT_THROW(Hd0lSystem::create(ab, {{1, 0}, {1}}, 0, bits, {{0}, {1}}), Error);     // does not start with a
  EXPECT_THROW(Hd0lSystem::create(ab, {{0, 1}, {}}, 0, bits, {{0}, {1}}), Error);      // erasing σ
  EXPECT_THROW(Hd0lSystem::create(ab, {{0, 1}, {1}}, 0, bits, {{0}, {}}), Error);      // erasing coding
  EXPECT_THROW(Hd0lSystem::create(ab, {{0, 1}, {1}}, 0, bits, {{0}, {2}}), Error);     // outside B
  EXPECT_THROW(Hd0lSystem::create(ab, {{0, 1}}, 0, bits, {{0}}), Error);
  EXPECT_THROW(Hd0lSystem::builtin("nope"), Error);
}

TEST(MorphicPredicate, Positions) {
  auto tm = morphic_predicate(Hd0lSystem::thue_morse(), 1);
  EXPECT_TRUE(tm.is_uniform());
  EXPECT_EQ(tm.source(), "morphic");
  EXPECT_EQ(tm.positions(8), (std::vector<std::size_t>{1, 2, 4, 7}));
  auto none = morphic_predicate(Hd0lSystem::constant(), 1);
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_TRUE(none.positions(n).empty());
  EXPECT_EQ(morphic_predicate(Hd0lSystem::a_b_omega(), 1).positions(5), std::vector<std::size_t>{0});
  EXPECT_THROW(morphic_predicate(Hd0lSystem::constant(), 2), Error);
}

TEST(Periodicity, Certificates) {
  auto c = bounded_periodicity(Hd0lSystem::a_b_omega(), 8, 4, 64);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->threshold, 1u);
  EXPECT_EQ(c->period, 1u);
  auto k = bounded_periodicity(Hd0lSystem::constant(), 8, 4, 64);
  ASSERT_TRUE(k);
  EXPECT_EQ(k->threshold, 0u);
  EXPECT_EQ(k->period, 1u);
  EXPECT_FALSE(bounded_periodicity(Hd0lSystem::thue_morse(), 64, 32, 4096));
  EXPECT_FALSE(bounded_periodicity(Hd0lSystem::fibonacci(), 32, 16, 1024));
}

TEST(Periodicity, CertificatesReverify) {
  for (const auto& name : Hd0lSystem::builtin_names()) {
    auto s = Hd0lSystem::builtin(name);
    auto c = bounded_periodicity(s, 16, 8, 128);
    if (!c) continue;
    auto w = generate_prefix(s, c->threshold + 2 * std::max(c->period, c->window)).symbols();
    for (std::size_t i = c->threshold; i + c->period < w.size(); ++i) EXPECT_EQ(w[i], w[i + c->period]) << name;
  }
}

TEST(Periodicity, Stream) {
  std::vector<std::uint64_t> s{5, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3};
  auto c = stream_periodicity(s, 4, 4, 8);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->threshold, 1u);
  EXPECT_EQ(c->period, 3u);
  EXPECT_THROW(stream_periodicity(s, 10, 4, 8), Error);
}

TEST(MorphicRegularity, UltimatelyConstantAdvice) {
  auto f = parse_formula("forall x. (a(x) <-> P(x))");
  Interpretation interp{{"P", morphic_predicate(Hd0lSystem::a_b_omega(), 1)}};
  auto r = morphic_regularity(f, ab, interp, 12, 4);
  EXPECT_EQ(r.verdict, MorphicRegularity::Verdict::kRegular) << r.message;
  ASSERT_TRUE(r.dfa);
  ASSERT_TRUE(r.stream_certificate);
  EXPECT_EQ(r.stream_certificate->period, 1u);
  for (std::size_t n = 0; n <= 8; ++n)
    for_each_word(2, n, [&](std::span<const Letter> s) {
      Word u(ab, Symbols(s.begin(), s.end()));
      bool want = n == 0 || u.str() == "a" + std::string(n - 1, 'b');
      EXPECT_EQ(r.dfa->accepts(u), want) << u.str();
      EXPECT_EQ(eval_direct(f, interp, u), want) << u.str();
    });
}

TEST(MorphicRegularity, ThueMorseHasNoPeriod) {
  auto f = parse_formula("forall x. (a(x) <-> P(x))");
  Interpretation interp{{"P", morphic_predicate(Hd0lSystem::thue_morse(), 1)}};
  auto r = morphic_regularity(f, ab, interp, 64, 16);
  EXPECT_EQ(r.verdict, MorphicRegularity::Verdict::kNoPeriodFound) << r.message;
  EXPECT_FALSE(r.dfa);
  ASSERT_TRUE(r.probe);
  EXPECT_FALSE(r.probe->found);
  EXPECT_NE(r.message.find("within bounds"), std::string::npos);
}

TEST(MorphicRegularity, NoPredicates) {
  auto r = morphic_regularity(parse_formula("exists x. b(x)"), ab, {}, 12, 4);
  EXPECT_EQ(r.verdict, MorphicRegularity::Verdict::kRegular);
  ASSERT_TRUE(r.stream_certificate);
  EXPECT_EQ(r.stream_certificate->threshold, 0u);
  EXPECT_EQ(r.stream_certificate->period, 1u);
  EXPECT_TRUE(r.dfa->accepts(Word::parse(ab, "ab")));
  EXPECT_FALSE(r.dfa->accepts(Word::parse(ab, "aa")));
}

TEST(MorphicRegularity, RejectsNonUniform) {
  auto f = parse_formula("exists x. P(x)");
  Interpretation interp{{"P", MonadicPredicate::explicit_table("P", {{1, {1}}})}};
  EXPECT_THROW(morphic_regularity(f, ab, interp, 12, 4), Error);
  EXPECT_THROW(morphic_regularity(f, ab, {}, 12, 4), Error);
}

TEST(Closure, Interpretations) {
  Interpretation tm{{"P", morphic_predicate(Hd0lSystem::thue_morse(), 1)}};
  auto id = mso_interpretation_closure_check(unary("P(x)"), tm, 64);
  EXPECT_TRUE(id.consistent) << id.report;
  std::string bits;
  for (auto b : id.bits) bits += b ? '1' : '0';
  EXPECT_EQ(bits, tm_oracle(64));

  auto neg = mso_interpretation_closure_check(unary("~P(x)"), tm, 64);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(neg.bits[i], bits[i] == '0');

  Interpretation abw{{"P", morphic_predicate(Hd0lSystem::a_b_omega(), 1)}};
  auto some = mso_interpretation_closure_check(unary("exists y. (y <= x & P(y))"), abw, 40);
  EXPECT_TRUE(some.consistent);
  EXPECT_EQ(some.bits, TrackBits(40, 1));
  EXPECT_EQ(some.checked, 10u);
}

TEST(Closure, RequiresOneFreeVariable) {
  Interpretation tm{{"P", morphic_predicate(Hd0lSystem::thue_morse(), 1)}};
  EXPECT_THROW(mso_interpretation_closure_check(parse_formula("exists x. P(x)"), tm, 8), Error);
}
