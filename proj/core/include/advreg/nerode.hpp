#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "advreg/advice.hpp"
#include "advreg/dfa.hpp"
#include "advreg/formula.hpp"
#include "advreg/word.hpp"

namespace advreg {

/// Uniform membership interface over the different ways a language can be
/// given. Copies share state (including the lazily built automaton).
class Language {
 public:
  enum class Kind { kFormula, kAutomaton, kDfa, kOracle };

  Language() = default;
  static Language formula(Formula f, Interpretation interp, Alphabet alphabet);
  static Language automaton(AdviceAutomaton a);
  /// Classical automaton without tracks.
  static Language dfa(Dfa d);
  static Language oracle(Alphabet alphabet, std::function<bool(const Word&)> member,
                         std::optional<std::size_t> bound = std::nullopt, std::string name = {});

  Kind kind() const;
  const Alphabet& alphabet() const;
  const std::string& name() const;
  std::optional<std::size_t> bound() const;
  Language named(std::string name) const;

  /// Throws kBoundExceeded beyond the bound.
  bool member(const Word& u) const;
  /// Deterministic advice automaton for the language; none for oracles.
  std::optional<AdviceAutomaton> deterministic_automaton() const;
  /// The classical automaton of a kDfa handle.
  const Dfa& dfa() const;

 private:
  struct Data;
  std::shared_ptr<Data> data_;
};

/// Built-in fixture languages: "prime_abc" ({a^n b^n c^n | n prime}),
/// "even_a" (even number of a over {a, e}), "ab_star_ba_star_b"
/// ((ab)* + (ba)*b over {a, b}).
Language builtin_language(const std::string& name);
std::vector<std::string> builtin_language_names();

/// Partition of A^length under ∼_{L,suffix}; classes numbered by the rank of
/// their lexicographically least member.
struct NerodePartition {
  std::size_t length = 0;
  std::size_t suffix = 0;
  std::vector<Word> reps;
  /// class of each word of A^length, indexed by its lexicographic index
  std::vector<std::uint32_t> class_of;
};

/// Exhaustive computation from membership. Refuses when |A|^i · |A|^p
/// exceeds `work_cap` (kCapExceeded).
NerodePartition nerode_classes_bruteforce(const Language& l, std::size_t i, std::size_t p,
                                          std::size_t work_cap = std::size_t{1} << 20);

/// Same relation restricted to words of length i, but with u ∼ v iff uw ∈ L
/// ⟺ vw ∈ L for every w of length ≤ p_max. Approximates the unsliced ∼_L.
NerodePartition nerode_classes_unsliced(const Language& l, std::size_t i, std::size_t p_max,
                                        std::size_t work_cap = std::size_t{1} << 20);

/// Class structure of all prefixes of length-n words: for each i ≤ n the
/// classes of ∼_{L,n-i} on A^i, their lex-least representatives, the
/// class transition maps and the accepting classes at length n.
struct SliceStructure {
  Alphabet alphabet;
  std::size_t n = 0;
  std::vector<std::size_t> counts;
  std::vector<std::vector<Word>> reps;
  /// tau[i][q * |A| + a] for i < n
  std::vector<std::vector<std::uint32_t>> tau;
  std::vector<std::uint32_t> acc;

  std::size_t max_count() const;
  friend bool operator==(const SliceStructure&, const SliceStructure&) = default;
};

SliceStructure nerode_classes_automaton(const AdviceAutomaton& det, std::size_t n);
SliceStructure nerode_slices_bruteforce(const Language& l, std::size_t n,
                                        std::size_t work_cap = std::size_t{1} << 20);
/// Uses the deterministic automaton when the handle has one.
SliceStructure slice_structure(const Language& l, std::size_t n);

/// Deterministic automaton on states 0..K-1 (K the largest class count over
/// n ≤ n_max) with explicit tables, δ(i, n) = τ_i of slice n.
AdviceAutomaton class_automaton(const Language& l, std::size_t n_max);

struct SynPredLetter {
  std::size_t sources = 0;  // classes at length i
  std::size_t targets = 0;  // classes at length i + 1
  std::vector<std::uint32_t> tau;
  /// present on the last letter only
  std::optional<std::vector<std::uint32_t>> acc;
  friend bool operator==(const SynPredLetter&, const SynPredLetter&) = default;
};

/// P_{L,n}: letter i maps length-i ranks to length-(i+1) ranks; the last
/// letter also carries the accepting ranks. For n = 0 only the ε bit is set.
struct SyntacticPredicate {
  Alphabet alphabet;
  std::size_t n = 0;
  std::size_t k = 1;  // largest class count
  std::vector<SynPredLetter> letters;
  bool epsilon_accept = false;
};

SyntacticPredicate syntactic_predicate(const SliceStructure& s);
SyntacticPredicate syntactic_predicate(const Language& l, std::size_t n);
/// kLengthMismatch if |u| ≠ n; kIntegrity if a rank leaves its domain.
bool membership_via_synpred(const SyntacticPredicate& p, const Word& u);

struct RegularityProbe {
  bool found = false;
  std::size_t n0 = 0;
  std::size_t period = 0;
  std::optional<Dfa> dfa;
  std::size_t n_max = 0;
  std::size_t period_max = 0;
  /// Candidates whose reconstructed automaton failed the bounded check.
  std::size_t refuted = 0;
  std::string message;
};

/// Looks for (n0, p) with n0 + p ≤ n_max / 2 and p ≤ period_max such that the
/// class-transition letter for prefix length i and remaining length r is
/// periodic with period p in i for i ≥ n0 and in r for r ≥ max(n0, 1),
/// throughout the window i + r ≤ n_max. A candidate yields a classical
/// automaton that is checked against L on all lengths ≤ n_max; the least
/// (n0, p) that survives is returned.
RegularityProbe synpred_regularity_probe(const Language& l, std::size_t n_max, std::size_t period_max);

/// First word (shortest, then lex-least) of length ≤ n_max on which `d`
/// and `l` disagree.
std::optional<Word> first_disagreement(const Language& l, const Dfa& d, std::size_t n_max);

/// k-ary numerical predicate given per length as a set of tuples.
class RelationPredicate {
 public:
  using Tuple = std::vector<std::size_t>;

  RelationPredicate() = default;
  static RelationPredicate explicit_table(std::string name, std::size_t arity,
                                          std::map<std::size_t, std::set<Tuple>> table);
  static RelationPredicate from_function(std::string name, std::size_t arity,
                                         std::function<std::set<Tuple>(std::size_t)> fn,
                                         std::optional<std::size_t> bound = std::nullopt);
  static RelationPredicate from_monadic(const MonadicPredicate& p);
  /// {(x, y) | y = 2x}
  static RelationPredicate doubling();

  const std::string& name() const { return data_->name; }
  std::size_t arity() const { return data_->arity; }
  std::optional<std::size_t> bound() const { return data_->bound; }
  std::set<Tuple> tuples(std::size_t n) const;
  bool holds(const Tuple& t, std::size_t n) const;

 private:
  struct Data {
    std::string name;
    std::size_t arity = 1;
    std::optional<std::size_t> bound;
    std::function<std::set<Tuple>(std::size_t)> fn;
  };
  std::shared_ptr<const Data> data_;
};

/// Base alphabet of L_P words: the single letter "#"; the k tracks carry the
/// content.
const Alphabet& lp_base();

/// k-track word of length n whose track j marks every position occurring as
/// j-th coordinate of a tuple of P_n.
TrackedWord predicate_to_lp(const RelationPredicate& p, std::size_t n);

/// Membership in L_P: monadic P accepts exactly the characteristic word;
/// for k ≥ 2 each track carries exactly one mark and the marked tuple lies
/// in P_n.
bool lp_member(const RelationPredicate& p, const TrackedWord& u);

struct DoublingWitness {
  std::size_t k = 0;
  std::vector<TrackedWord> prefixes;  // u^i, length 3K
  std::vector<TrackedWord> suffixes;  // v^j, length K
  /// member[i][j] = u^i v^j ∈ L_P
  std::vector<std::vector<bool>> member;
  /// member is the identity matrix
  bool verified = false;
};

/// Pairwise ∼_{L_P,K}-inequivalent words for y = 2x. Requires K ≥ 3.
DoublingWitness doubling_not_advice_regular_witness(std::size_t k);

}  // namespace advreg
