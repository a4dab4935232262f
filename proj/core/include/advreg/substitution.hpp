#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advreg/dfa.hpp"
#include "advreg/formula.hpp"
#include "advreg/nerode.hpp"
#include "advreg/predicate.hpp"

namespace advreg {

struct AgreementLanguage {
  /// predicate symbols in track order
  std::vector<std::string> tracks;
  /// over {#} × {0,1}^ℓ: the advice words X̄ with L_{φ,X̄} = target
  Dfa dfa;
};

/// Complement of the track projection of {(v, X̄) | v ∈ target xor (v, X̄) ⊨ φ}.
AgreementLanguage agreement_language(const Formula& f, const Dfa& target);

struct SubstitutionResult {
  std::vector<std::string> names;
  /// regular replacements, dfa backend, one per predicate symbol
  std::vector<MonadicPredicate> predicates;
  AgreementLanguage agreement;
  /// one advice word per length (lex-least element of the agreement language)
  Dfa choice;
  Dfa target;
  /// the target came from the regularity probe rather than the caller
  bool target_synthesized = false;
  std::size_t n_check = 0;
  /// L_{φ,Q̄} = target, decided exactly
  bool verified = false;
  std::string report;
};

/// Replaces the predicates of φ by regular ones defining the same language.
/// With `target`, its agreement with L_{φ,I} is checked on all words of
/// length ≤ n_check and trusted beyond; without, a target is synthesized by
/// synpred_regularity_probe(L_{φ,I}, n_check, period_max). Failures throw
/// kPrecondition with the offending word or length in the message.
SubstitutionResult substitute(const Formula& f, const Alphabet& alphabet, const Interpretation& interp,
                              std::size_t n_check,
                              const std::optional<Dfa>& target = std::nullopt, std::size_t period_max = 8);

struct StraubingReport {
  FragmentTags tags;
  bool ok = false;
  std::optional<SubstitutionResult> result;
  /// evidence when no regular target was found
  std::optional<RegularityProbe> probe;
  std::string message;
};

/// Fragment tags of φ plus the substitution outcome. Never throws on a
/// failed substitution; the failure is described in the report.
StraubingReport straubing_check(const Formula& f, const Alphabet& alphabet, const Interpretation& interp,
                                std::size_t n_check,
                                const std::optional<Dfa>& target = std::nullopt, std::size_t period_max = 8);

struct CraneBeachResult {
  bool neutral = false;
  /// (u, v) with uv and uev on different sides of L
  std::optional<std::pair<Word, Word>> counterexample;
  std::optional<Dfa> dfa;
  bool verified = false;
  bool inconclusive = false;
  std::optional<Word> offending;
  std::string message;
};

/// Checks that e is neutral for all |uv| ≤ n_check, then learns classes of
/// ∼_L from words of length ≤ n_check / 2 distinguished by suffixes up to
/// the remaining budget, and verifies the hypothesis on all words of length
/// ≤ n_check.
CraneBeachResult crane_beach(const Language& l, Letter e, std::size_t n_check);

}  // namespace advreg
