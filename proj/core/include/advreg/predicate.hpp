#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advreg/dfa.hpp"
#include "advreg/word.hpp"

namespace advreg {

/// Alphabet {0,1} used by characteristic words.
const Alphabet& bit_alphabet();

struct LocalAtom {
  enum class Kind { kPositionConst, kLastMinus };
  Kind kind = Kind::kPositionConst;
  std::size_t c = 0;
};

struct ModularAtom {
  enum class Kind { kPos, kLast };
  Kind kind = Kind::kPos;
  std::size_t r = 0;
  std::size_t q = 1;
};

/// Boolean combination of local and modular atoms, evaluated pointwise per
/// length.
class RegularCombo {
 public:
  enum class Op { kLocal, kModular, kAnd, kOr, kNot };

  static RegularCombo local(LocalAtom a);
  static RegularCombo modular(ModularAtom a);
  static RegularCombo position_const(std::size_t c) { return local({LocalAtom::Kind::kPositionConst, c}); }
  static RegularCombo last_minus(std::size_t c) { return local({LocalAtom::Kind::kLastMinus, c}); }
  static RegularCombo pos_mod(std::size_t r, std::size_t q) { return modular({ModularAtom::Kind::kPos, r, q}); }
  static RegularCombo last_mod(std::size_t r, std::size_t q) { return modular({ModularAtom::Kind::kLast, r, q}); }
  friend RegularCombo operator&(const RegularCombo& a, const RegularCombo& b);
  friend RegularCombo operator|(const RegularCombo& a, const RegularCombo& b);
  friend RegularCombo operator~(const RegularCombo& a);

  Op op() const { return node_->op; }
  const LocalAtom& local_atom() const { return node_->local; }
  const ModularAtom& modular_atom() const { return node_->modular; }
  const std::vector<RegularCombo>& args() const { return node_->args; }

  /// Characteristic word of length n.
  TrackBits eval(std::size_t n) const;

 private:
  struct Node {
    Op op;
    LocalAtom local;
    ModularAtom modular;
    std::vector<RegularCombo> args;
  };
  explicit RegularCombo(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A monadic predicate (P_n)_n. eval(n) returns the characteristic word of
/// P_n (bit i set iff i ∈ P_n).
class MonadicPredicate {
 public:
  enum class Kind { kExplicit, kRegularCombo, kRegularDfa, kUniform, kDerived };

  MonadicPredicate() = default;

  /// Table n -> characteristic word. Lengths not in the table are out of
  /// bound; the bound reported is the largest tabulated length.
  static MonadicPredicate explicit_table(std::string name, std::map<std::size_t, TrackBits> table);
  static MonadicPredicate regular(std::string name, RegularCombo combo);
  /// Throws kPrecondition unless `d` accepts exactly one word per length.
  static MonadicPredicate from_dfa(std::string name, Dfa d);
  /// Uniform predicate given by a prefix generator: prefix(n) must return the
  /// first n bits of one fixed infinite sequence. `source` is a free-form tag
  /// ("bits", "morphic", ...).
  static MonadicPredicate uniform(std::string name, std::function<TrackBits(std::size_t)> prefix,
                                  std::string source = "bits");
  /// Arbitrary per-length family computed on demand; `bound` limits n.
  static MonadicPredicate derived(std::string name, std::function<TrackBits(std::size_t)> fn,
                                  std::optional<std::size_t> bound = std::nullopt);

  const std::string& name() const { return data_->name; }
  Kind kind() const { return data_->kind; }
  bool is_uniform() const { return data_->kind == Kind::kUniform; }
  /// Largest supported length, if bounded.
  std::optional<std::size_t> bound() const;

  TrackBits eval(std::size_t n) const;
  std::vector<std::size_t> positions(std::size_t n) const;
  bool holds(std::size_t i, std::size_t n) const;

  const std::map<std::size_t, TrackBits>& table() const;
  const RegularCombo& combo() const;
  const Dfa& dfa() const;
  const std::string& source() const { return data_->source; }

  MonadicPredicate renamed(std::string name) const;

 private:
  struct Data {
    std::string name;
    Kind kind = Kind::kExplicit;
    std::map<std::size_t, TrackBits> table;
    std::optional<RegularCombo> combo;
    std::optional<Dfa> dfa;
    std::function<TrackBits(std::size_t)> fn;
    std::optional<std::size_t> bound;
    std::string source;
  };
  std::shared_ptr<const Data> data_;
};

/// Characteristic words of P for n = 0..n_max.
std::vector<TrackBits> predicate_to_characteristic_language(const MonadicPredicate& p, std::size_t n_max);

/// DFA over {0,1} accepting exactly the characteristic words of `combo`.
Dfa regular_combo_to_dfa(const RegularCombo& combo);

struct UniquenessReport {
  bool ok = false;
  /// Some length with no accepted word.
  std::optional<std::size_t> missing_length;
  /// Two distinct accepted words of equal length.
  std::optional<std::pair<std::string, std::string>> duplicate;
  std::string message;
};

/// Exact check that `d` (over {0,1}, no tracks) accepts exactly one word of
/// every length. `n_max` only limits how far witnesses are reported.
UniquenessReport verify_unique_per_length(const Dfa& d, std::size_t n_max = 64);

/// The unique accepted word of length n decoded greedily.
TrackBits dfa_backend_eval(const Dfa& d, std::size_t n);

}  // namespace advreg
