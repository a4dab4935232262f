#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "advreg/advice.hpp"
#include "advreg/predicate.hpp"
#include "advreg/word.hpp"

namespace advreg {

using Element = std::uint32_t;

/// Finite monoid on elements 0..size()-1. Two backings: an explicit Cayley
/// table, or a set of transformations closed under composition (x·y applies
/// x first, then y), multiplied on demand.
class FiniteMonoid {
 public:
  FiniteMonoid() = default;

  /// Checks shape, closure, identity laws and (for size ≤ 64) associativity
  /// on all triples; throws kIntegrity on failure.
  static FiniteMonoid from_table(std::vector<std::vector<Element>> table, Element identity);
  /// `elements` must contain the identity of {0..points-1} and be closed
  /// under composition.
  static FiniteMonoid transformations(std::size_t points, std::vector<std::vector<std::uint32_t>> elements);

  /// {0, 1} under multiplication; identity 1.
  static FiniteMonoid u1();

  std::size_t size() const { return data_->size; }
  Element identity() const { return data_->identity; }
  Element mul(Element x, Element y) const;
  /// Explicit Cayley table (materialized for transformation monoids).
  std::vector<std::vector<Element>> table() const;

  bool is_transformation() const { return data_->points > 0; }
  std::size_t points() const { return data_->points; }
  const std::vector<std::uint32_t>& transformation(Element x) const { return data_->maps.at(x); }
  std::optional<Element> find(const std::vector<std::uint32_t>& map) const;

  /// Exhaustive associativity and identity check.
  bool verify() const;

 private:
  struct MapHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
  };
  struct Data {
    std::size_t size = 0;
    Element identity = 0;
    std::vector<std::vector<Element>> table;
    std::size_t points = 0;
    std::vector<std::vector<std::uint32_t>> maps;
    std::unordered_map<std::vector<std::uint32_t>, Element, MapHash> index;
  };
  std::shared_ptr<const Data> data_;
};

/// (M, f_{i,n}: A → M, S) plus an explicit verdict for the empty word.
class OneScanProgram {
 public:
  enum class Presentation { kBase, kTables, kFunction };
  using Instruction = std::function<Element(std::size_t i, std::size_t n, Letter a)>;

  OneScanProgram() = default;

  /// f(i, n, a) = table[letter index of (a, advice bits at i)] where the
  /// letter index follows TrackedAlphabet(alphabet, predicates.size()).
  static OneScanProgram from_base(FiniteMonoid m, Alphabet alphabet, std::vector<Element> table,
                                  std::vector<MonadicPredicate> predicates, std::vector<bool> accepting,
                                  bool epsilon_accept);
  /// tables[n][i * |A| + a] for n = 0..tables.size()-1.
  static OneScanProgram from_tables(FiniteMonoid m, Alphabet alphabet, std::vector<std::vector<Element>> tables,
                                    std::vector<bool> accepting, bool epsilon_accept);
  static OneScanProgram from_function(FiniteMonoid m, Alphabet alphabet, Instruction f, std::vector<bool> accepting,
                                      bool epsilon_accept, std::optional<std::size_t> bound = std::nullopt,
                                      std::string name = {});

  const FiniteMonoid& monoid() const { return data_->monoid; }
  const Alphabet& alphabet() const { return data_->alphabet; }
  Presentation presentation() const { return data_->presentation; }
  const std::string& name() const { return data_->name; }
  std::optional<std::size_t> bound() const { return data_->bound; }
  const std::vector<bool>& accepting() const { return data_->accepting; }
  bool accepting(Element x) const { return data_->accepting[x]; }
  bool epsilon_accept() const { return data_->epsilon_accept; }
  const std::vector<MonadicPredicate>& predicates() const { return data_->predicates; }
  /// Base presentation: element per letter of TrackedAlphabet(alphabet, ℓ).
  const std::vector<Element>& base_table() const { return data_->base; }

  /// Throws kBoundExceeded beyond the bound.
  Element instruction(std::size_t i, std::size_t n, Letter a) const;
  /// All instructions for length n, indexed i * |A| + a.
  std::vector<Element> instructions(std::size_t n) const;
  /// Same program re-presented by explicit tables for n ≤ n_max.
  OneScanProgram to_tables(std::size_t n_max) const;

 private:
  struct Data {
    FiniteMonoid monoid;
    Alphabet alphabet;
    Presentation presentation = Presentation::kFunction;
    std::string name;
    std::optional<std::size_t> bound;
    std::vector<bool> accepting;
    bool epsilon_accept = false;
    std::vector<Element> base;
    std::vector<MonadicPredicate> predicates;
    std::vector<std::vector<Element>> tables;
    Instruction fn;
  };
  std::shared_ptr<const Data> data_;
};

bool run_program(const OneScanProgram& p, const Word& u);

/// U₁ over {a, b}: for prime n, f(i, n, a) = 0 at prime positions i
/// (0-indexed) and 1 elsewhere, f(i, n, b) = 1; f ≡ 0 for other n. S = {1}.
OneScanProgram builtin_u1_prime_program();

struct ToProgramOptions {
  /// Lengths whose instructions are tabulated; defaults to the automaton's
  /// bound.
  std::optional<std::size_t> n_max;
  std::size_t monoid_cap = 4096;
};

/// Transformation monoid over Q ⊎ {⊤, ⊥} generated by the instructions for
/// n ≤ n_max. The last instruction of each length sends q to ⊤ or ⊥
/// according to F(n, δ(n-1, n, q, a)); S = {φ | φ(q0) = ⊤}.
OneScanProgram automaton_to_program(const AdviceAutomaton& a, const ToProgramOptions& options = {});

/// States = M, initial = identity, δ(i, n, m, a) = m · f(i, n, a),
/// F(n) = S for n ≥ 1 and {identity} or ∅ at n = 0 per epsilon_accept.
AdviceAutomaton program_to_automaton(const OneScanProgram& p);

}  // namespace advreg
