#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "advreg/error.hpp"
#include "advreg/predicate.hpp"

using namespace advreg;

namespace {

using PosSet = std::set<std::size_t>;

PosSet as_set(const TrackBits& bits) {
  PosSet s;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s.insert(i);
  return s;
}

std::string as_string(const TrackBits& bits) { return format_bits(bits); }

bool accepts_bits(const Dfa& d, const std::string& w) { return d.accepts(Word::parse(bit_alphabet(), w)); }

// Reference semantics written out independently of the library.
struct Ref {
  RegularCombo combo;
  std::function<bool(std::size_t i, std::size_t n)> holds;
};

std::vector<Ref> reference_combos() {
  auto pos_const = [](std::size_t c) { return [c](std::size_t i, std::size_t) { return i == c; }; };
  auto last_minus = [](std::size_t c) { return [c](std::size_t i, std::size_t n) { return i + c + 1 == n; }; };
  auto pos_mod = [](std::size_t r, std::size_t q) { return [r, q](std::size_t i, std::size_t) { return i % q == r; }; };
  auto last_mod = [](std::size_t r, std::size_t q) {
    return [r, q](std::size_t, std::size_t n) { return (n - 1) % q == r; };
  };
  std::vector<Ref> out;
  out.push_back({RegularCombo::position_const(0), pos_const(0)});
  out.push_back({RegularCombo::position_const(3), pos_const(3)});
  out.push_back({RegularCombo::last_minus(0), last_minus(0)});
  out.push_back({RegularCombo::last_minus(2), last_minus(2)});
  out.push_back({RegularCombo::pos_mod(0, 2), pos_mod(0, 2)});
  out.push_back({RegularCombo::pos_mod(2, 3), pos_mod(2, 3)});
  out.push_back({RegularCombo::last_mod(0, 1), last_mod(0, 1)});
  out.push_back({RegularCombo::last_mod(1, 3), last_mod(1, 3)});
  out.push_back({RegularCombo::pos_mod(0, 2) & RegularCombo::last_mod(0, 2),
                 [=](std::size_t i, std::size_t n) { return pos_mod(0, 2)(i, n) && last_mod(0, 2)(i, n); }});
  out.push_back({RegularCombo::position_const(1) | RegularCombo::last_minus(1),
                 [=](std::size_t i, std::size_t n) { return pos_const(1)(i, n) || last_minus(1)(i, n); }});
  out.push_back({~RegularCombo::pos_mod(1, 3), [=](std::size_t i, std::size_t n) { return !pos_mod(1, 3)(i, n); }});
  out.push_back({~(RegularCombo::pos_mod(0, 2) | RegularCombo::position_const(3)) & RegularCombo::last_mod(1, 2),
                 [=](std::size_t i, std::size_t n) {
                   return !(pos_mod(0, 2)(i, n) || pos_const(3)(i, n)) && last_mod(1, 2)(i, n);
                 }});
  return out;
}

}  // namespace

TEST(Predicate, AtomExamples) {
  EXPECT_TRUE(MonadicPredicate::regular("P", RegularCombo::position_const(2)).positions(2).empty());
  EXPECT_EQ(MonadicPredicate::regular("P", RegularCombo::pos_mod(0, 2)).positions(5),
            (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(MonadicPredicate::regular("P", RegularCombo::last_minus(0)).positions(4), (std::vector<std::size_t>{3}));
  for (const auto& ref : reference_combos()) EXPECT_TRUE(ref.combo.eval(0).empty());
}

TEST(Predicate, CharacteristicLanguage) {
  auto words = predicate_to_characteristic_language(MonadicPredicate::regular("P", RegularCombo::pos_mod(0, 2)), 3);
  std::vector<std::string> got;
  for (auto& w : words) got.push_back(as_string(w));
  EXPECT_EQ(got, (std::vector<std::string>{"", "1", "10", "101"}));
  auto c0 = predicate_to_characteristic_language(MonadicPredicate::regular("P", RegularCombo::position_const(0)), 2);
  EXPECT_EQ(as_string(c0[1]), "1");
  EXPECT_EQ(as_string(c0[2]), "10");
  auto ex = MonadicPredicate::explicit_table("P", {{2, parse_bits("01")}});
  EXPECT_EQ(as_string(ex.eval(2)), "01");
}

TEST(Predicate, ExplicitBound) {
  auto ex = MonadicPredicate::explicit_table("P", {{0, {}}, {1, parse_bits("1")}, {2, parse_bits("10")}});
  try {
    ex.eval(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBoundExceeded);
    EXPECT_NE(std::string(e.what()).find("N_max=2"), std::string::npos);
  }
  EXPECT_THROW(MonadicPredicate::explicit_table("P", {{2, parse_bits("1")}}), Error);
}

TEST(Predicate, CombosMatchReference) {
  for (const auto& ref : reference_combos())
    for (std::size_t n = 0; n <= 9; ++n) {
      PosSet want;
      for (std::size_t i = 0; i < n; ++i)
        if (ref.holds(i, n)) want.insert(i);
      EXPECT_EQ(as_set(ref.combo.eval(n)), want) << "n=" << n;
    }
}

TEST(Predicate, ComboDfaAcceptsExactlyCharacteristicWords) {
  for (const auto& ref : reference_combos()) {
    auto d = regular_combo_to_dfa(ref.combo);
    EXPECT_TRUE(verify_unique_per_length(d).ok);
    for_each_word_up_to(2, 6, [&](std::span<const Letter> w) {
      std::size_t n = w.size();
      bool is_char = true;
      for (std::size_t i = 0; i < n; ++i) is_char = is_char && ((w[i] == 1) == ref.holds(i, n));
      EXPECT_EQ(d.accepts(w), is_char);
    });
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(dfa_backend_eval(d, n), ref.combo.eval(n));
  }
}

TEST(Predicate, ComboDfaShapes) {
  // (10)* + (10)*1
  auto even = regular_combo_to_dfa(RegularCombo::pos_mod(0, 2));
  for (const char* w : {"", "1", "10", "101", "1010"}) EXPECT_TRUE(accepts_bits(even, w));
  for (const char* w : {"0", "11", "100"}) EXPECT_FALSE(accepts_bits(even, w));
  auto all = regular_combo_to_dfa(RegularCombo::last_mod(0, 1));
  for (const char* w : {"", "1", "11", "111"}) EXPECT_TRUE(accepts_bits(all, w));
  EXPECT_FALSE(accepts_bits(all, "10"));
}

TEST(Predicate, VerifyUniqueExamples) {
  const auto& bits = bit_alphabet();
  auto zeros = Dfa::from_table(bits, 0, {{0, 1}, {1, 1}}, {true, false});
  EXPECT_TRUE(verify_unique_per_length(zeros).ok);
  auto all = Dfa::from_table(bits, 0, {{0, 0}}, {true});
  auto r = verify_unique_per_length(all);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.duplicate);
  EXPECT_EQ(r.duplicate->first, "0");
  EXPECT_EQ(r.duplicate->second, "1");
  auto one_zeros = Dfa::from_table(bits, 0, {{2, 1}, {1, 2}, {2, 2}}, {false, true, false});
  auto r2 = verify_unique_per_length(one_zeros);
  EXPECT_FALSE(r2.ok);
  EXPECT_EQ(r2.missing_length, std::optional<std::size_t>(0));
}

TEST(Predicate, DfaBackend) {
  const auto& bits = bit_alphabet();
  auto zeros = Dfa::from_table(bits, 0, {{0, 1}, {1, 1}}, {true, false});
  EXPECT_TRUE(as_set(dfa_backend_eval(zeros, 3)).empty());
  // 1 0* patched to accept eps
  auto patched = Dfa::from_table(bits, 0, {{2, 1}, {1, 2}, {2, 2}}, {true, true, false});
  EXPECT_EQ(as_set(dfa_backend_eval(patched, 1)), PosSet{0});
  auto p = MonadicPredicate::from_dfa("Q", regular_combo_to_dfa(RegularCombo::pos_mod(0, 2)));
  EXPECT_EQ(p.positions(4), (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(MonadicPredicate::from_dfa("Q", Dfa::from_table(bits, 0, {{0, 0}}, {true})), Error);
}

TEST(Predicate, UniformConsistency) {
  auto squares = MonadicPredicate::uniform("S", [](std::size_t n) {
    TrackBits b(n, 0);
    for (std::size_t k = 0; k * k < n; ++k) b[k * k] = 1;
    return b;
  });
  for (std::size_t m = 1; m <= 20; ++m)
    for (std::size_t n = 1; n <= m; ++n)
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(squares.holds(i, n), squares.holds(i, m));
}

TEST(Predicate, BooleanOpsArePointwise) {
  auto p = RegularCombo::pos_mod(0, 3), q = RegularCombo::last_minus(1);
  for (std::size_t n = 0; n <= 8; ++n) {
    auto a = p.eval(n), b = q.eval(n), x = (p & q).eval(n), y = (p | q).eval(n), z = (~p).eval(n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(x[i], a[i] & b[i]);
      EXPECT_EQ(y[i], a[i] | b[i]);
      EXPECT_EQ(z[i], !a[i]);
    }
  }
}
