#pragma once

#include <functional>
#include <random>

#include "advreg/dfa.hpp"

namespace advreg::testing {

inline Dfa random_dfa(std::mt19937& rng, const TrackedAlphabet& alphabet, std::size_t states,
                      double accept_prob = 0.4) {
  std::uniform_int_distribution<State> pick(0, static_cast<State>(states - 1));
  std::bernoulli_distribution acc(accept_prob);
  std::vector<std::vector<State>> delta(states, std::vector<State>(alphabet.size()));
  std::vector<bool> accepting(states);
  for (std::size_t q = 0; q < states; ++q) {
    accepting[q] = acc(rng);
    for (auto& t : delta[q]) t = pick(rng);
  }
  return Dfa::from_table(alphabet, 0, delta, accepting);
}

// Runs on letter indices of the tracked alphabet.
inline bool run_indices(const Dfa& d, std::span<const Letter> letters) {
  State q = d.initial();
  for (Letter l : letters) q = d.step_index(q, l);
  return d.accepting(q);
}

}  // namespace advreg::testing

#include "advreg/advice.hpp"

namespace advreg::testing {

// Explicit per-length tables up to n_max. Nondeterministic tables pick each
// target with probability `density`.
inline AdviceAutomaton random_advice(std::mt19937& rng, const Alphabet& alphabet, std::size_t states,
                                     std::size_t n_max, bool nondet, double density = 0.35) {
  std::bernoulli_distribution coin(density), acc(0.4);
  std::uniform_int_distribution<State> pick(0, static_cast<State>(states - 1));
  std::vector<AdviceSlice> slices;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<bool> accepting(states);
    for (std::size_t q = 0; q < states; ++q) accepting[q] = acc(rng);
    slices.push_back(AdviceSlice::build(
        n, states, alphabet.size(),
        [&](std::size_t, State, Letter, std::vector<State>& out) {
          if (!nondet) {
            out.push_back(pick(rng));
            return;
          }
          for (State r = 0; r < states; ++r)
            if (coin(rng)) out.push_back(r);
        },
        accepting));
  }
  std::vector<State> initial{0};
  if (nondet && states > 1 && coin(rng)) initial.push_back(1);
  return AdviceAutomaton::from_tables(
      alphabet, states, initial,
      nondet ? AdviceAutomaton::Mode::kNondeterministic : AdviceAutomaton::Mode::kDeterministic, std::move(slices));
}

// Accepting-run search by depth-first enumeration of all runs.
inline bool has_accepting_run(const AdviceAutomaton& a, const Word& u) {
  auto s = a.slice(u.size());
  std::function<bool(std::size_t, State)> go = [&](std::size_t i, State q) -> bool {
    if (i == u.size()) return s.accepting(q);
    for (State r : s.next(i, q, u[i]))
      if (go(i + 1, r)) return true;
    return false;
  };
  for (State q : a.initial())
    if (go(0, q)) return true;
  return false;
}

}  // namespace advreg::testing
