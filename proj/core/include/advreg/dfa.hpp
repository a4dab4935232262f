#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "advreg/word.hpp"

namespace advreg {

using State = std::uint32_t;
using NodeId = std::uint32_t;

/// Reduced, hash-consed decision diagram over track variables with integer
/// leaves. Variable j is tested before variable k whenever j < k. Leaves hold
/// whatever the owner decides (target states, state-set ids, block ids).
class TrackBdd {
 public:
  static constexpr std::uint32_t kLeafVar = 0xffffffffu;

  NodeId leaf(std::uint32_t value);
  NodeId node(std::uint32_t var, NodeId lo, NodeId hi);

  bool is_leaf(NodeId n) const { return nodes_[n].var == kLeafVar; }
  std::uint32_t value(NodeId n) const { return nodes_[n].lo; }
  std::uint32_t var(NodeId n) const { return nodes_[n].var; }
  NodeId lo(NodeId n) const { return nodes_[n].lo; }
  NodeId hi(NodeId n) const { return nodes_[n].hi; }
  std::size_t size() const { return nodes_.size(); }

  std::uint32_t eval(NodeId n, std::span<const std::uint8_t> bits) const {
    while (!is_leaf(n)) n = bits[var(n)] ? hi(n) : lo(n);
    return value(n);
  }

 private:
  struct Node {
    std::uint32_t var;
    NodeId lo;
    NodeId hi;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept {
      std::uint64_t h = n.var;
      h = h * 0x9E3779B97F4A7C15ull ^ n.lo;
      h = h * 0x9E3779B97F4A7C15ull ^ n.hi;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };
  std::vector<Node> nodes_;
  std::unordered_map<Node, NodeId, NodeHash> unique_;
};

/// Complete deterministic automaton over base × {0,1}^tracks. Base letters are
/// explicit; for every (state, base letter) the track dependency is a
/// TrackBdd whose leaves are target states, so automata carrying many
/// predicate or variable tracks stay small when most tracks are irrelevant.
class Dfa {
 public:
  Dfa() = default;
  Dfa(TrackedAlphabet alphabet, std::shared_ptr<const TrackBdd> store,
      std::vector<NodeId> roots, std::vector<bool> accepting, State initial);

  /// Builds from an explicit table delta[q][letter index] (see
  /// TrackedAlphabet for the letter numbering).
  static Dfa from_table(TrackedAlphabet alphabet, State initial,
                        const std::vector<std::vector<State>>& delta,
                        std::vector<bool> accepting);
  /// Plain automaton (no tracks) over `alphabet`.
  static Dfa from_table(const Alphabet& alphabet, State initial,
                        const std::vector<std::vector<State>>& delta,
                        std::vector<bool> accepting);
  static Dfa universal(TrackedAlphabet alphabet);
  static Dfa empty(TrackedAlphabet alphabet);

  const TrackedAlphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return accepting_.size(); }
  State initial() const { return initial_; }
  bool accepting(State q) const { return accepting_[q]; }
  const std::vector<bool>& accepting_states() const { return accepting_; }

  NodeId root(State q, Letter base) const { return roots_[q * alphabet_.base().size() + base]; }
  const TrackBdd& store() const { return *store_; }
  std::shared_ptr<const TrackBdd> shared_store() const { return store_; }
  const std::vector<NodeId>& roots() const { return roots_; }

  State step(State q, Letter base, std::span<const std::uint8_t> bits) const {
    return store_->eval(root(q, base), bits);
  }
  State step_index(State q, std::size_t letter) const;

  bool accepts(const TrackedWord& w) const;
  /// Only for automata without tracks.
  bool accepts(std::span<const Letter> word) const;
  bool accepts(const Word& w) const { return accepts(std::span<const Letter>(w.symbols())); }

  /// Explicit transition table delta[q][letter index].
  std::vector<std::vector<State>> table() const;

 private:
  TrackedAlphabet alphabet_;
  std::shared_ptr<const TrackBdd> store_;
  std::vector<NodeId> roots_;
  std::vector<bool> accepting_;
  State initial_ = 0;
};

/// Nondeterministic automaton with explicitly enumerated letters.
struct Nfa {
  TrackedAlphabet alphabet;
  std::vector<State> initial;
  std::vector<bool> accepting;
  /// delta[q][letter] -> successor list
  std::vector<std::vector<std::vector<State>>> delta;

  Nfa() = default;
  Nfa(TrackedAlphabet alphabet, std::size_t states);
  std::size_t num_states() const { return accepting.size(); }
  void add(State from, std::size_t letter, State to) { delta[from][letter].push_back(to); }
  bool accepts(std::span<const std::size_t> letters) const;
};

enum class BoolOp { kAnd, kOr, kXor, kImplies, kIff, kAndNot };

bool apply(BoolOp op, bool a, bool b);

Dfa determinize(const Nfa& nfa);
Dfa product(const Dfa& a, const Dfa& b, BoolOp op);
Dfa complement(const Dfa& d);
/// Unique minimal complete automaton (unreachable states removed, states
/// numbered in breadth-first order from the initial state).
Dfa minimize(const Dfa& d);
Dfa trim(const Dfa& d);
/// Subset construction on the reversal of `d`: a deterministic automaton for
/// the mirror language. Applied to a reachable automaton the result is
/// minimal up to unreachable states.
Dfa reverse_determinize(const Dfa& d);

/// Existential projection of the given tracks followed by subset
/// construction. The track count is unchanged; projected tracks become
/// irrelevant.
Dfa project_tracks(const Dfa& d, std::span<const std::uint32_t> tracks);
/// Projects the base letter away; the result has a one-letter base "#".
Dfa project_base(const Dfa& d);
/// Inverse of project_base: makes a one-letter-base automaton ignore the base
/// letter of `base`.
Dfa lift_base(const Dfa& d, const Alphabet& base);
/// Changes the declared track count; new tracks are ignored.
Dfa with_tracks(const Dfa& d, std::uint32_t tracks);
/// Renames track variables. `map[old]` gives the new index; the map must be
/// strictly increasing on the tracks the automaton depends on.
Dfa rename_tracks(const Dfa& d, std::span<const std::uint32_t> map, std::uint32_t new_tracks);
/// Replaces the base alphabet by another one of the same size (letters are
/// matched by index).
Dfa relabel_base(const Dfa& d, const Alphabet& base);
/// Tracks the automaton actually depends on.
std::vector<std::uint32_t> support(const Dfa& d);

std::optional<TrackedWord> shortest_accepted(const Dfa& d);
bool is_empty(const Dfa& d);

struct Equivalence {
  bool equal = false;
  std::optional<TrackedWord> counterexample;  // shortest distinguishing word
};
Equivalence equivalent(const Dfa& a, const Dfa& b);
bool isomorphic(const Dfa& a, const Dfa& b);

/// Smallest n such that no accepted word has length n, if any.
std::optional<std::size_t> first_missing_length(const Dfa& d);

/// Keeps, for each length, only the lexicographically least accepted word.
/// Requires an accepted word at every length.
Dfa lexmin_per_length(const Dfa& m);

std::string to_dot(const Dfa& d, const std::string& name = "dfa");

}  // namespace advreg
