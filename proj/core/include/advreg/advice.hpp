#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "advreg/dfa.hpp"
#include "advreg/formula.hpp"
#include "advreg/predicate.hpp"
#include "advreg/word.hpp"

namespace advreg {

/// Transition structure of an advice automaton for one fixed length n:
/// δ(i, n, q, a) for all i < n, plus F(n, ·).
class AdviceSlice {
 public:
  AdviceSlice() = default;
  AdviceSlice(std::size_t n, std::size_t states, std::size_t letters);

  /// Builds from successor lists: fn(i, q, a, out) appends targets to out.
  template <class Fn>
  static AdviceSlice build(std::size_t n, std::size_t states, std::size_t letters, Fn&& fn,
                           std::vector<bool> accepting) {
    AdviceSlice s(n, states, letters);
    s.offset_.reserve(n * states * letters + 1);
    s.offset_.push_back(0);
    for (std::size_t i = 0; i < n; ++i)
      for (State q = 0; q < states; ++q)
        for (Letter a = 0; a < letters; ++a) {
          fn(i, q, a, s.target_);
          s.offset_.push_back(static_cast<std::uint32_t>(s.target_.size()));
        }
    s.accepting_ = std::move(accepting);
    s.check();
    return s;
  }

  std::size_t length() const { return n_; }
  std::size_t num_states() const { return states_; }
  std::size_t num_letters() const { return letters_; }
  std::span<const State> next(std::size_t i, State q, Letter a) const {
    std::size_t k = (i * states_ + q) * letters_ + a;
    return {target_.data() + offset_[k], target_.data() + offset_[k + 1]};
  }
  bool accepting(State q) const { return accepting_[q]; }
  const std::vector<bool>& accepting_states() const { return accepting_; }
  bool deterministic() const;

 private:
  void check() const;
  std::size_t n_ = 0, states_ = 0, letters_ = 0;
  std::vector<std::uint32_t> offset_;
  std::vector<State> target_;
  std::vector<bool> accepting_;
};

/// Automaton with advice (Q, q0, δ(i, n, q, a), F ⊆ ℕ × Q). Transitions may
/// depend on the position i and the total length n. The automaton is
/// immutable; all algorithms work slice by slice.
class AdviceAutomaton {
 public:
  enum class Mode { kDeterministic, kNondeterministic };
  enum class Presentation { kBase, kBaseNfa, kTables, kFunction };

  AdviceAutomaton() = default;

  /// Base automaton over A × {0,1}^ℓ read with the advice bits of ℓ
  /// predicates: δ(i, n, q, a) = base.step(q, (a, bits(i, n))).
  static AdviceAutomaton from_base(Dfa base, std::vector<MonadicPredicate> predicates);
  /// Nondeterministic variant with an explicit Nfa over A × {0,1}^ℓ.
  static AdviceAutomaton from_base_nfa(Nfa base, std::vector<MonadicPredicate> predicates);
  /// Explicit per-length slices for n = 0..slices.size()-1. In deterministic
  /// mode missing transitions are sent to an added rejecting sink.
  static AdviceAutomaton from_tables(Alphabet alphabet, std::size_t states, std::vector<State> initial, Mode mode,
                                     std::vector<AdviceSlice> slices);
  /// Slices computed on demand.
  static AdviceAutomaton from_function(Alphabet alphabet, std::size_t states, std::vector<State> initial, Mode mode,
                                       std::function<AdviceSlice(std::size_t)> slice,
                                       std::optional<std::size_t> bound = std::nullopt);
  using StepFn = std::function<State(std::size_t i, std::size_t n, State q, Letter a)>;
  using AcceptFn = std::function<bool(std::size_t n, State q)>;
  /// Deterministic automaton given pointwise. Runs follow a single path
  /// instead of building whole slices, which matters for large state sets.
  static AdviceAutomaton from_step(Alphabet alphabet, std::size_t states, State initial, StepFn step,
                                   AcceptFn accept, std::optional<std::size_t> bound = std::nullopt);

  const Alphabet& alphabet() const { return data_->alphabet; }
  std::size_t num_states() const { return data_->states; }
  const std::vector<State>& initial() const { return data_->initial; }
  Mode mode() const { return data_->mode; }
  bool deterministic() const { return data_->mode == Mode::kDeterministic; }
  Presentation presentation() const { return data_->presentation; }
  /// Largest length the presentation supports, if bounded.
  std::optional<std::size_t> bound() const { return data_->bound; }
  const std::vector<std::string>& state_names() const { return data_->names; }
  AdviceAutomaton with_state_names(std::vector<std::string> names) const;

  /// Base presentation only.
  const Dfa& base_dfa() const;
  const Nfa& base_nfa() const;
  const std::vector<MonadicPredicate>& predicates() const { return data_->predicates; }

  AdviceSlice slice(std::size_t n) const;

  bool run(const Word& u) const;
  /// Deterministic mode: states q_0 … q_n.
  std::vector<State> trace(const Word& u) const;

 private:
  struct Data {
    Alphabet alphabet;
    std::size_t states = 0;
    std::vector<State> initial;
    Mode mode = Mode::kDeterministic;
    Presentation presentation = Presentation::kFunction;
    std::optional<std::size_t> bound;
    std::vector<std::string> names;
    std::optional<Dfa> base;
    std::optional<Nfa> base_nfa;
    std::vector<MonadicPredicate> predicates;
    std::vector<AdviceSlice> tables;
    std::function<AdviceSlice(std::size_t)> fn;
    StepFn step;
    AcceptFn accept;
  };
  std::shared_ptr<const Data> data_;
};

/// The five-state automaton for {a^n b^n c^n | n prime} over {a,b,c}
/// (states q_a, q_b, q_c, q_F, ⊥).
AdviceAutomaton builtin_prime_example();
bool is_prime(std::size_t n);

/// D over A × {0,1}^ℓ read with the advice of I (predicates in D's track order).
AdviceAutomaton specialize(const Dfa& d, const std::vector<std::string>& predicate_names, const Interpretation& interp);

/// Subset construction. States are the subsets reachable for some length
/// ≤ n_max (default: the automaton's bound); without any bound the full
/// powerset is used (|Q| ≤ 16).
AdviceAutomaton determinize(const AdviceAutomaton& a, std::optional<std::size_t> n_max = std::nullopt);
AdviceAutomaton advice_union(const AdviceAutomaton& a, const AdviceAutomaton& b);
AdviceAutomaton advice_intersection(const AdviceAutomaton& a, const AdviceAutomaton& b);
/// Requires a deterministic automaton.
AdviceAutomaton advice_complement(const AdviceAutomaton& a);

struct RunFormula {
  Formula formula;
  Interpretation interpretation;
};
/// Sentence with predicates T_q_a_r (δ(i,n,q,a) ∋ r) and F_q ((n,q) ∈ F)
/// asserting the existence of an accepting run.
RunFormula to_formula(const AdviceAutomaton& a);

struct BoundedEquivalence {
  bool equal = false;
  std::size_t checked_up_to = 0;
  std::optional<Word> counterexample;  // shortest, then lexicographically least
};
BoundedEquivalence bounded_equivalent(const AdviceAutomaton& a, const AdviceAutomaton& b, std::size_t n_max);

/// Base automaton rendered with a legend of its predicates.
std::string to_dot(const AdviceAutomaton& a, const std::string& name = "advice");

}  // namespace advreg
