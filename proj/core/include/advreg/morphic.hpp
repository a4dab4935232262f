#pragma once

#include <optional>
#include <string>
#include <vector>

#include "advreg/dfa.hpp"
#include "advreg/formula.hpp"
#include "advreg/nerode.hpp"
#include "advreg/predicate.hpp"
#include "advreg/word.hpp"

namespace advreg {

/// HD0L system: σ on the internal alphabet, prolongable on the seed
/// (σ(seed) = seed·u, u nonempty), followed by the coding φ into the output
/// alphabet. Both morphisms are non-erasing.
class Hd0lSystem {
 public:
  Hd0lSystem() = default;
  /// sigma[c] and coding[c] for every internal letter c. Throws kPrecondition
  /// on erasing images, a non-prolongable seed or unstable prefixes.
  static Hd0lSystem create(Alphabet internal, std::vector<Symbols> sigma, Letter seed, Alphabet output,
                           std::vector<Symbols> coding);

  /// 0→01, 1→10, identity coding.
  static Hd0lSystem thue_morse();
  /// a→ab, b→b with a↦1, b↦0: the word 10^ω.
  static Hd0lSystem a_b_omega();
  /// a→aa over {a}, output alphabet {a, b}.
  static Hd0lSystem constant();
  /// a→ab, b→a with a↦0, b↦1.
  static Hd0lSystem fibonacci();
  /// "thue_morse", "ab_omega", "constant", "fibonacci".
  static Hd0lSystem builtin(const std::string& name);
  static std::vector<std::string> builtin_names();

  const Alphabet& internal() const { return internal_; }
  const Alphabet& output() const { return output_; }
  const std::vector<Symbols>& sigma() const { return sigma_; }
  const std::vector<Symbols>& coding() const { return coding_; }
  Letter seed() const { return seed_; }

 private:
  Alphabet internal_;
  Alphabet output_;
  std::vector<Symbols> sigma_;
  std::vector<Symbols> coding_;
  Letter seed_ = 0;
};

/// First n letters of φ(σ^ω(seed)).
Word generate_prefix(const Hd0lSystem& s, std::size_t n);

/// Uniform predicate: i ∈ P_n iff the limit word carries `one_letter` at i.
MonadicPredicate morphic_predicate(const Hd0lSystem& s, Letter one_letter, std::string name = "P");

struct PeriodicityCertificate {
  std::size_t threshold = 0;
  std::size_t period = 1;
  /// w[i] = w[i + period] was checked for threshold ≤ i < threshold + window - period
  std::size_t window = 0;
};

/// Least (t, p) in lexicographic order with t ≤ t_max, 1 ≤ p ≤ p_max such
/// that the generated prefix satisfies w[i] = w[i+p] on the window
/// max(2p, w_len) starting at t. None means no period found within bounds.
std::optional<PeriodicityCertificate> bounded_periodicity(const Hd0lSystem& s, std::size_t t_max, std::size_t p_max,
                                                          std::size_t w_len);
/// Same search on an explicit stream (symbols compared for equality).
std::optional<PeriodicityCertificate> stream_periodicity(const std::vector<std::uint64_t>& stream, std::size_t t_max,
                                                         std::size_t p_max, std::size_t w_len);

struct MorphicRegularity {
  enum class Verdict { kRegular, kNoPeriodFound, kInconclusive };
  Verdict verdict = Verdict::kInconclusive;
  std::optional<Dfa> dfa;
  /// certificate on the advice-letter stream (q, a) ↦ δ(q, a, bits(i))
  std::optional<PeriodicityCertificate> stream_certificate;
  std::optional<RegularityProbe> probe;
  std::size_t n_max = 0;
  std::size_t period_max = 0;
  std::string message;
};

std::string to_string(MorphicRegularity::Verdict v);

/// Requires every predicate symbol of φ to be bound to a uniform predicate.
/// The resulting automaton (if any) is checked against L_{φ,I} on every
/// length ≤ n_max.
MorphicRegularity morphic_regularity(const Formula& f, const Alphabet& alphabet, const Interpretation& interp,
                                     std::size_t n_max, std::size_t period_max);

struct InterpretedWord {
  /// bits[i] = [a^n, i ⊨ φ(x)]
  TrackBits bits;
  std::size_t checked = 0;
  bool consistent = true;
  std::string report;
};

/// Evaluates a unary formula φ(x) over the one-letter alphabet at every
/// position of a^n via its compiled automaton; positions below min(n, 10) are
/// re-evaluated directly.
InterpretedWord mso_interpretation_closure_check(const Formula& unary, const Interpretation& interp, std::size_t n);

}  // namespace advreg
