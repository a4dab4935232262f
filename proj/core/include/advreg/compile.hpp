#pragma once

#include <string>
#include <vector>

#include "advreg/dfa.hpp"
#include "advreg/formula.hpp"
#include "advreg/word.hpp"

namespace advreg {

struct CompiledFormula {
  Dfa dfa;
  /// Track names in order: free variables first (compile_with_free only),
  /// then the predicate symbols.
  std::vector<std::string> tracks;
};

/// Minimal DFA over A × {0,1}^ℓ for a sentence with predicates P1..Pℓ
/// (track j carries P_{j+1}).
CompiledFormula compile(const Formula& f, const Alphabet& alphabet);

/// Same for a formula with free variables. Each free variable gets a track
/// (FO tracks are restricted to exactly one 1), followed by the predicates.
CompiledFormula compile_with_free(const Formula& f, const Alphabet& alphabet);

/// Automaton for "track t carries exactly one 1".
Dfa singleton_track(const TrackedAlphabet& alphabet, std::uint32_t t);

}  // namespace advreg
