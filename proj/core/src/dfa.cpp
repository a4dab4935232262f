#include "advreg/dfa.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "advreg/error.hpp"

namespace advreg {

namespace {

constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
constexpr std::uint32_t kNoVar = std::numeric_limits<std::uint32_t>::max();

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::uint32_t top_var(const TrackBdd& s, NodeId n) {
  return s.is_leaf(n) ? kNoVar : s.var(n);
}

// Copies the sub-diagram rooted at `n` into `dst`, mapping leaf values.
template <class LeafMap>
NodeId relabel(const TrackBdd& src, NodeId n, TrackBdd& dst, LeafMap&& leaf_map,
               std::vector<NodeId>& memo) {
  if (memo[n] != kNoNode) return memo[n];
  NodeId out;
  if (src.is_leaf(n)) {
    out = dst.leaf(leaf_map(src.value(n)));
  } else {
    NodeId lo = relabel(src, src.lo(n), dst, leaf_map, memo);
    NodeId hi = relabel(src, src.hi(n), dst, leaf_map, memo);
    out = dst.node(src.var(n), lo, hi);
  }
  memo[n] = out;
  return out;
}

template <class Fn>
void for_each_leaf(const TrackBdd& s, NodeId n, std::vector<char>& seen, Fn&& fn) {
  if (seen[n]) return;
  seen[n] = 1;
  if (s.is_leaf(n)) {
    fn(s.value(n));
    return;
  }
  for_each_leaf(s, s.lo(n), seen, fn);
  for_each_leaf(s, s.hi(n), seen, fn);
}

void check_same_alphabet(const Dfa& a, const Dfa& b, const char* op) {
  if (!(a.alphabet() == b.alphabet()))
    throw Error(ErrorKind::kAlphabetMismatch, std::string(op) + ": automata over different alphabets");
}

// Interns sorted state sets.
class SetTable {
 public:
  std::uint32_t intern(std::vector<State> set) {
    auto [it, inserted] = ids_.emplace(set, static_cast<std::uint32_t>(sets_.size()));
    if (inserted) sets_.push_back(std::move(set));
    return it->second;
  }
  const std::vector<State>& get(std::uint32_t id) const { return sets_[id]; }

 private:
  std::map<std::vector<State>, std::uint32_t> ids_;
  std::vector<std::vector<State>> sets_;
};

// Diagrams whose leaves are state sets, with union and existential
// abstraction. Used by every subset construction over tracked letters.
class SetBdd {
 public:
  explicit SetBdd(const Dfa& d) : d_(d), lift_memo_(d.store().size(), kNoNode) {}

  NodeId lift(NodeId n) {
    const auto& src = d_.store();
    return relabel(src, n, store_, [&](std::uint32_t v) { return sets_.intern({v}); }, lift_memo_);
  }

  NodeId unite(NodeId f, NodeId g) {
    if (f == g) return f;
    if (f > g) std::swap(f, g);
    auto key = pair_key(f, g);
    if (auto it = union_memo_.find(key); it != union_memo_.end()) return it->second;
    NodeId out;
    if (store_.is_leaf(f) && store_.is_leaf(g)) {
      const auto& a = sets_.get(store_.value(f));
      const auto& b = sets_.get(store_.value(g));
      std::vector<State> merged;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
      out = store_.leaf(sets_.intern(std::move(merged)));
    } else {
      std::uint32_t v = std::min(top_var(store_, f), top_var(store_, g));
      NodeId f0 = top_var(store_, f) == v ? store_.lo(f) : f;
      NodeId f1 = top_var(store_, f) == v ? store_.hi(f) : f;
      NodeId g0 = top_var(store_, g) == v ? store_.lo(g) : g;
      NodeId g1 = top_var(store_, g) == v ? store_.hi(g) : g;
      NodeId lo = unite(f0, g0);
      NodeId hi = unite(f1, g1);
      out = store_.node(v, lo, hi);
    }
    union_memo_.emplace(key, out);
    return out;
  }

  NodeId exists(NodeId n, const std::vector<char>& quantified) {
    if (store_.is_leaf(n)) return n;
    if (auto it = exists_memo_.find(n); it != exists_memo_.end()) return it->second;
    NodeId lo = exists(store_.lo(n), quantified);
    NodeId hi = exists(store_.hi(n), quantified);
    std::uint32_t v = store_.var(n);
    NodeId out = (v < quantified.size() && quantified[v]) ? unite(lo, hi) : store_.node(v, lo, hi);
    exists_memo_.emplace(n, out);
    return out;
  }

  NodeId empty_leaf() { return store_.leaf(sets_.intern({})); }

  // Copy of d's diagram at `n` whose leaf t becomes the set to_set(t).
  template <class Fn>
  NodeId lift_mapped(NodeId n, Fn&& to_set) {
    std::unordered_map<NodeId, NodeId> memo;
    const auto& src = d_.store();
    std::function<NodeId(NodeId)> go = [&](NodeId x) -> NodeId {
      if (auto it = memo.find(x); it != memo.end()) return it->second;
      NodeId r = src.is_leaf(x) ? store_.leaf(sets_.intern(to_set(src.value(x))))
                                : store_.node(src.var(x), go(src.lo(x)), go(src.hi(x)));
      memo.emplace(x, r);
      return r;
    };
    return go(n);
  }

  const TrackBdd& store() const { return store_; }
  const SetTable& sets() const { return sets_; }

 private:
  const Dfa& d_;
  TrackBdd store_;
  SetTable sets_;
  std::vector<NodeId> lift_memo_;
  std::unordered_map<std::uint64_t, NodeId> union_memo_;
  std::unordered_map<NodeId, NodeId> exists_memo_;
};

// Subset construction after quantifying `tracks` (and optionally the base
// letter) existentially.
Dfa subset_construct(const Dfa& d, std::span<const std::uint32_t> tracks, bool collapse_base) {
  const std::size_t k = d.alphabet().base().size();
  std::vector<char> quantified(d.alphabet().tracks(), 0);
  for (auto t : tracks) {
    if (t >= quantified.size()) throw Error(ErrorKind::kPrecondition, "projected track out of range");
    quantified[t] = 1;
  }
  SetBdd sb(d);
  std::vector<NodeId> per_state(d.num_states() * k, kNoNode);
  auto image = [&](State q, Letter a) {
    NodeId& slot = per_state[q * k + a];
    if (slot == kNoNode) slot = sb.exists(sb.lift(d.root(q, a)), quantified);
    return slot;
  };

  const std::size_t out_letters = collapse_base ? 1 : k;
  TrackBdd out;
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  auto id_of = [&](const std::vector<State>& set) {
    auto [it, inserted] = ids.emplace(set, static_cast<State>(subsets.size()));
    if (inserted) subsets.push_back(set);
    return it->second;
  };
  std::unordered_map<NodeId, NodeId> convert_memo;
  std::function<NodeId(NodeId)> convert = [&](NodeId n) -> NodeId {
    if (auto it = convert_memo.find(n); it != convert_memo.end()) return it->second;
    const auto& s = sb.store();
    NodeId r;
    if (s.is_leaf(n)) {
      r = out.leaf(id_of(sb.sets().get(s.value(n))));
    } else {
      NodeId lo = convert(s.lo(n));
      NodeId hi = convert(s.hi(n));
      r = out.node(s.var(n), lo, hi);
    }
    convert_memo.emplace(n, r);
    return r;
  };

  id_of({d.initial()});
  std::vector<NodeId> roots;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const std::vector<State> set = subsets[i];
    bool acc = false;
    for (State q : set) acc = acc || d.accepting(q);
    accepting.push_back(acc);
    for (std::size_t b = 0; b < out_letters; ++b) {
      NodeId u = sb.empty_leaf();
      for (State q : set) {
        if (collapse_base) {
          for (Letter a = 0; a < k; ++a) u = sb.unite(u, image(q, a));
        } else {
          u = sb.unite(u, image(q, static_cast<Letter>(b)));
        }
      }
      roots.push_back(convert(u));
    }
  }
  TrackedAlphabet alphabet = collapse_base
                                 ? TrackedAlphabet(Alphabet(std::vector<std::string>{"#"}), d.alphabet().tracks())
                                 : d.alphabet();
  return Dfa(alphabet, std::make_shared<TrackBdd>(std::move(out)), std::move(roots), std::move(accepting), 0);
}

}  // namespace

Dfa reverse_determinize(const Dfa& d) {
  const std::size_t k = d.alphabet().base().size();
  const std::size_t m = d.num_states();
  SetBdd sb(d);
  TrackBdd out;
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  auto id_of = [&](const std::vector<State>& set) {
    auto [it, inserted] = ids.emplace(set, static_cast<State>(subsets.size()));
    if (inserted) subsets.push_back(set);
    return it->second;
  };
  std::vector<State> start;
  for (State q = 0; q < m; ++q)
    if (d.accepting(q)) start.push_back(q);
  id_of(start);
  std::vector<NodeId> roots;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const std::vector<State> set = subsets[i];
    std::vector<char> in(m, 0);
    for (State q : set) in[q] = 1;
    accepting.push_back(in[d.initial()] != 0);
    std::unordered_map<NodeId, NodeId> convert_memo;
    std::function<NodeId(NodeId)> convert = [&](NodeId n) -> NodeId {
      if (auto it = convert_memo.find(n); it != convert_memo.end()) return it->second;
      const auto& s = sb.store();
      NodeId r = s.is_leaf(n) ? out.leaf(id_of(sb.sets().get(s.value(n))))
                              : out.node(s.var(n), convert(s.lo(n)), convert(s.hi(n)));
      convert_memo.emplace(n, r);
      return r;
    };
    for (Letter a = 0; a < k; ++a) {
      NodeId u = sb.empty_leaf();
      for (State p = 0; p < m; ++p) {
        NodeId pre = sb.lift_mapped(d.root(p, a), [&](std::uint32_t t) {
          return in[t] ? std::vector<State>{p} : std::vector<State>{};
        });
        u = sb.unite(u, pre);
      }
      roots.push_back(convert(u));
    }
  }
  return Dfa(d.alphabet(), std::make_shared<TrackBdd>(std::move(out)), std::move(roots), std::move(accepting), 0);
}

NodeId TrackBdd::leaf(std::uint32_t value) {
  Node n{kLeafVar, value, 0};
  auto [it, inserted] = unique_.emplace(n, static_cast<NodeId>(nodes_.size()));
  if (inserted) nodes_.push_back(n);
  return it->second;
}

NodeId TrackBdd::node(std::uint32_t var, NodeId lo, NodeId hi) {
  if (lo == hi) return lo;
  Node n{var, lo, hi};
  auto [it, inserted] = unique_.emplace(n, static_cast<NodeId>(nodes_.size()));
  if (inserted) nodes_.push_back(n);
  return it->second;
}

Dfa::Dfa(TrackedAlphabet alphabet, std::shared_ptr<const TrackBdd> store, std::vector<NodeId> roots,
         std::vector<bool> accepting, State initial)
    : alphabet_(std::move(alphabet)),
      store_(std::move(store)),
      roots_(std::move(roots)),
      accepting_(std::move(accepting)),
      initial_(initial) {
  if (roots_.size() != accepting_.size() * alphabet_.base().size())
    throw Error(ErrorKind::kIntegrity, "Dfa: transition roots do not match states x letters");
  if (accepting_.empty() || initial_ >= accepting_.size())
    throw Error(ErrorKind::kIntegrity, "Dfa: bad initial state");
}

Dfa Dfa::from_table(TrackedAlphabet alphabet, State initial, const std::vector<std::vector<State>>& delta,
                    std::vector<bool> accepting) {
  const std::size_t k = alphabet.base().size();
  const std::uint32_t tracks = alphabet.tracks();
  const std::size_t letters = alphabet.size();
  if (delta.size() != accepting.size())
    throw Error(ErrorKind::kFormat, "Dfa table: delta and accepting sizes differ");
  TrackBdd store;
  std::vector<NodeId> roots;
  for (const auto& row : delta) {
    if (row.size() != letters) throw Error(ErrorKind::kFormat, "Dfa table: row has wrong width");
    for (State t : row)
      if (t >= delta.size()) throw Error(ErrorKind::kFormat, "Dfa table: target out of range");
    std::function<NodeId(Letter, std::uint32_t, std::size_t)> build = [&](Letter a, std::uint32_t depth,
                                                                           std::size_t prefix) -> NodeId {
      if (depth == tracks) return store.leaf(row[(static_cast<std::size_t>(a) << tracks) | prefix]);
      NodeId lo = build(a, depth + 1, prefix << 1);
      NodeId hi = build(a, depth + 1, (prefix << 1) | 1);
      return store.node(depth, lo, hi);
    };
    for (Letter a = 0; a < k; ++a) roots.push_back(build(a, 0, 0));
  }
  return Dfa(std::move(alphabet), std::make_shared<TrackBdd>(std::move(store)), std::move(roots),
             std::move(accepting), initial);
}

Dfa Dfa::from_table(const Alphabet& alphabet, State initial, const std::vector<std::vector<State>>& delta,
                    std::vector<bool> accepting) {
  return from_table(TrackedAlphabet(alphabet, 0), initial, delta, std::move(accepting));
}

Dfa Dfa::universal(TrackedAlphabet alphabet) {
  TrackBdd store;
  NodeId self = store.leaf(0);
  std::vector<NodeId> roots(alphabet.base().size(), self);
  return Dfa(std::move(alphabet), std::make_shared<TrackBdd>(std::move(store)), std::move(roots), {true}, 0);
}

Dfa Dfa::empty(TrackedAlphabet alphabet) { return complement(universal(std::move(alphabet))); }

State Dfa::step_index(State q, std::size_t letter) const {
  return step(q, alphabet_.base_of(letter), alphabet_.bits_of(letter));
}

bool Dfa::accepts(const TrackedWord& w) const {
  if (!(w.alphabet() == alphabet_)) throw Error(ErrorKind::kAlphabetMismatch, "Dfa::accepts: alphabet mismatch");
  State q = initial_;
  for (std::size_t i = 0; i < w.size(); ++i) q = step(q, w.base(i), w.bits(i));
  return accepting_[q];
}

bool Dfa::accepts(std::span<const Letter> word) const {
  if (alphabet_.tracks() != 0) throw Error(ErrorKind::kAlphabetMismatch, "Dfa::accepts: automaton has tracks");
  State q = initial_;
  for (Letter a : word) q = store_->eval(root(q, a), {});
  return accepting_[q];
}

std::vector<std::vector<State>> Dfa::table() const {
  const std::size_t letters = alphabet_.size();
  std::vector<std::vector<State>> t(num_states(), std::vector<State>(letters));
  for (State q = 0; q < num_states(); ++q)
    for (std::size_t l = 0; l < letters; ++l) t[q][l] = step_index(q, l);
  return t;
}

Nfa::Nfa(TrackedAlphabet alpha, std::size_t states)
    : alphabet(std::move(alpha)),
      accepting(states, false),
      delta(states, std::vector<std::vector<State>>(alphabet.size())) {}

bool Nfa::accepts(std::span<const std::size_t> letters) const {
  std::vector<char> cur(num_states(), 0);
  for (State q : initial) cur[q] = 1;
  for (std::size_t l : letters) {
    std::vector<char> next(num_states(), 0);
    for (State q = 0; q < num_states(); ++q)
      if (cur[q])
        for (State t : delta[q][l]) next[t] = 1;
    cur.swap(next);
  }
  for (State q = 0; q < num_states(); ++q)
    if (cur[q] && accepting[q]) return true;
  return false;
}

bool apply(BoolOp op, bool a, bool b) {
  switch (op) {
    case BoolOp::kAnd: return a && b;
    case BoolOp::kOr: return a || b;
    case BoolOp::kXor: return a != b;
    case BoolOp::kImplies: return !a || b;
    case BoolOp::kIff: return a == b;
    case BoolOp::kAndNot: return a && !b;
  }
  return false;
}

Dfa determinize(const Nfa& nfa) {
  const std::size_t letters = nfa.alphabet.size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  auto id_of = [&](std::vector<State> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto [it, inserted] = ids.emplace(s, static_cast<State>(subsets.size()));
    if (inserted) subsets.push_back(std::move(s));
    return it->second;
  };
  id_of(nfa.initial);
  std::vector<std::vector<State>> delta;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const auto set = subsets[i];
    bool acc = false;
    for (State q : set) acc = acc || nfa.accepting[q];
    accepting.push_back(acc);
    std::vector<State> row(letters);
    for (std::size_t l = 0; l < letters; ++l) {
      std::vector<State> next;
      for (State q : set) next.insert(next.end(), nfa.delta[q][l].begin(), nfa.delta[q][l].end());
      row[l] = id_of(std::move(next));
    }
    delta.push_back(std::move(row));
  }
  return Dfa::from_table(nfa.alphabet, 0, delta, std::move(accepting));
}

Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
  check_same_alphabet(a, b, "product");
  const std::size_t k = a.alphabet().base().size();
  const TrackBdd& sa = a.store();
  const TrackBdd& sb = b.store();
  TrackBdd out;
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto id_of = [&](State p, State q) {
    auto [it, inserted] = ids.emplace(pair_key(p, q), static_cast<State>(pairs.size()));
    if (inserted) pairs.emplace_back(p, q);
    return it->second;
  };
  std::unordered_map<std::uint64_t, NodeId> memo;
  std::function<NodeId(NodeId, NodeId)> meld = [&](NodeId f, NodeId g) -> NodeId {
    auto key = pair_key(f, g);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    NodeId r;
    if (sa.is_leaf(f) && sb.is_leaf(g)) {
      r = out.leaf(id_of(sa.value(f), sb.value(g)));
    } else {
      std::uint32_t vf = top_var(sa, f), vg = top_var(sb, g);
      std::uint32_t v = std::min(vf, vg);
      NodeId lo = meld(vf == v ? sa.lo(f) : f, vg == v ? sb.lo(g) : g);
      NodeId hi = meld(vf == v ? sa.hi(f) : f, vg == v ? sb.hi(g) : g);
      r = out.node(v, lo, hi);
    }
    memo.emplace(key, r);
    return r;
  };
  id_of(a.initial(), b.initial());
  std::vector<NodeId> roots;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    accepting.push_back(apply(op, a.accepting(p), b.accepting(q)));
    for (Letter l = 0; l < k; ++l) roots.push_back(meld(a.root(p, l), b.root(q, l)));
  }
  return Dfa(a.alphabet(), std::make_shared<TrackBdd>(std::move(out)), std::move(roots), std::move(accepting), 0);
}

Dfa complement(const Dfa& d) {
  std::vector<bool> acc = d.accepting_states();
  acc.flip();
  return Dfa(d.alphabet(), d.shared_store(), d.roots(), std::move(acc), d.initial());
}

Dfa trim(const Dfa& d) {
  const std::size_t k = d.alphabet().base().size();
  const TrackBdd& s = d.store();
  std::vector<State> order;
  std::vector<State> id(d.num_states(), kNoVar);
  auto visit = [&](State q) {
    if (id[q] == kNoVar) {
      id[q] = static_cast<State>(order.size());
      order.push_back(q);
    }
  };
  visit(d.initial());
  for (std::size_t i = 0; i < order.size(); ++i) {
    State q = order[i];
    for (Letter a = 0; a < k; ++a) {
      // deterministic traversal order (lo before hi) gives a canonical numbering
      std::function<void(NodeId)> walk = [&](NodeId n) {
        if (s.is_leaf(n)) {
          visit(s.value(n));
          return;
        }
        walk(s.lo(n));
        walk(s.hi(n));
      };
      walk(d.root(q, a));
    }
  }
  TrackBdd out;
  std::vector<NodeId> memo(s.size(), kNoNode);
  std::vector<NodeId> roots;
  std::vector<bool> accepting;
  for (State q : order) {
    accepting.push_back(d.accepting(q));
    for (Letter a = 0; a < k; ++a)
      roots.push_back(relabel(s, d.root(q, a), out, [&](std::uint32_t v) { return id[v]; }, memo));
  }
  return Dfa(d.alphabet(), std::make_shared<TrackBdd>(std::move(out)), std::move(roots), std::move(accepting), 0);
}

Dfa minimize(const Dfa& input) {
  Dfa d = trim(input);
  const std::size_t k = d.alphabet().base().size();
  const std::size_t m = d.num_states();
  const TrackBdd& s = d.store();
  std::vector<std::uint32_t> block(m);
  bool any_acc = false, any_rej = false;
  for (State q = 0; q < m; ++q) {
    any_acc = any_acc || d.accepting(q);
    any_rej = any_rej || !d.accepting(q);
  }
  for (State q = 0; q < m; ++q) block[q] = (any_acc && any_rej && d.accepting(q)) ? 1 : 0;
  std::size_t blocks = (any_acc && any_rej) ? 2 : 1;
  while (true) {
    TrackBdd scratch;
    std::vector<NodeId> memo(s.size(), kNoNode);
    std::map<std::vector<std::uint32_t>, std::uint32_t> sigs;
    std::vector<std::uint32_t> next(m);
    for (State q = 0; q < m; ++q) {
      std::vector<std::uint32_t> sig{block[q]};
      for (Letter a = 0; a < k; ++a)
        sig.push_back(relabel(s, d.root(q, a), scratch, [&](std::uint32_t v) { return block[v]; }, memo));
      next[q] = sigs.emplace(std::move(sig), static_cast<std::uint32_t>(sigs.size())).first->second;
    }
    block.swap(next);
    if (sigs.size() == blocks) break;
    blocks = sigs.size();
  }
  // Quotient: one representative per block.
  std::vector<State> rep(blocks, kNoVar);
  for (State q = 0; q < m; ++q)
    if (rep[block[q]] == kNoVar) rep[block[q]] = q;
  TrackBdd out;
  std::vector<NodeId> memo(s.size(), kNoNode);
  std::vector<NodeId> roots;
  std::vector<bool> accepting;
  for (std::size_t b = 0; b < blocks; ++b) {
    accepting.push_back(d.accepting(rep[b]));
    for (Letter a = 0; a < k; ++a)
      roots.push_back(relabel(s, d.root(rep[b], a), out, [&](std::uint32_t v) { return block[v]; }, memo));
  }
  Dfa quotient(d.alphabet(), std::make_shared<TrackBdd>(std::move(out)), std::move(roots), std::move(accepting),
               block[d.initial()]);
  return trim(quotient);
}

Dfa project_tracks(const Dfa& d, std::span<const std::uint32_t> tracks) {
  return subset_construct(d, tracks, false);
}

Dfa project_base(const Dfa& d) { return subset_construct(d, {}, true); }

Dfa lift_base(const Dfa& d, const Alphabet& base) {
  if (d.alphabet().base().size() != 1)
    throw Error(ErrorKind::kPrecondition, "lift_base: automaton must have a one-letter base");
  std::vector<NodeId> roots;
  for (State q = 0; q < d.num_states(); ++q)
    for (std::size_t a = 0; a < base.size(); ++a) roots.push_back(d.root(q, 0));
  return Dfa(TrackedAlphabet(base, d.alphabet().tracks()), d.shared_store(), std::move(roots),
             d.accepting_states(), d.initial());
}

std::vector<std::uint32_t> support(const Dfa& d) {
  const TrackBdd& s = d.store();
  std::vector<char> seen(s.size(), 0);
  std::vector<char> used(d.alphabet().tracks(), 0);
  std::function<void(NodeId)> walk = [&](NodeId n) {
    if (seen[n]) return;
    seen[n] = 1;
    if (s.is_leaf(n)) return;
    used[s.var(n)] = 1;
    walk(s.lo(n));
    walk(s.hi(n));
  };
  for (NodeId r : d.roots()) walk(r);
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < used.size(); ++t)
    if (used[t]) out.push_back(t);
  return out;
}

Dfa with_tracks(const Dfa& d, std::uint32_t tracks) {
  auto sup = support(d);
  if (!sup.empty() && sup.back() >= tracks)
    throw Error(ErrorKind::kPrecondition, "with_tracks: automaton depends on a dropped track");
  return Dfa(TrackedAlphabet(d.alphabet().base(), tracks), d.shared_store(), d.roots(), d.accepting_states(),
             d.initial());
}

Dfa rename_tracks(const Dfa& d, std::span<const std::uint32_t> map, std::uint32_t new_tracks) {
  auto sup = support(d);
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (sup[i] >= map.size() || map[sup[i]] >= new_tracks)
      throw Error(ErrorKind::kPrecondition, "rename_tracks: track map out of range");
    if (i > 0 && map[sup[i - 1]] >= map[sup[i]])
      throw Error(ErrorKind::kPrecondition, "rename_tracks: map must be increasing on the support");
  }
  const TrackBdd& s = d.store();
  TrackBdd out;
  std::vector<NodeId> memo(s.size(), kNoNode);
  std::function<NodeId(NodeId)> copy = [&](NodeId n) -> NodeId {
    if (memo[n] != kNoNode) return memo[n];
    NodeId r = s.is_leaf(n) ? out.leaf(s.value(n)) : out.node(map[s.var(n)], copy(s.lo(n)), copy(s.hi(n)));
    memo[n] = r;
    return r;
  };
  std::vector<NodeId> roots;
  for (NodeId r : d.roots()) roots.push_back(copy(r));
  return Dfa(TrackedAlphabet(d.alphabet().base(), new_tracks), std::make_shared<TrackBdd>(std::move(out)),
             std::move(roots), d.accepting_states(), d.initial());
}

Dfa relabel_base(const Dfa& d, const Alphabet& base) {
  if (base.size() != d.alphabet().base().size())
    throw Error(ErrorKind::kAlphabetMismatch, "relabel_base: alphabet sizes differ");
  return Dfa(TrackedAlphabet(base, d.alphabet().tracks()), d.shared_store(), d.roots(), d.accepting_states(),
             d.initial());
}

std::optional<TrackedWord> shortest_accepted(const Dfa& d) {
  const std::size_t k = d.alphabet().base().size();
  const std::uint32_t tracks = d.alphabet().tracks();
  const TrackBdd& s = d.store();
  struct Parent {
    State from;
    Letter base;
    TrackBits bits;
  };
  std::vector<std::optional<Parent>> parent(d.num_states());
  std::vector<char> seen(d.num_states(), 0);
  std::deque<State> queue{d.initial()};
  seen[d.initial()] = 1;
  std::optional<State> found;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (d.accepting(q)) {
      found = q;
      break;
    }
    for (Letter a = 0; a < k; ++a) {
      TrackBits bits(tracks, 0);
      std::function<void(NodeId)> walk = [&](NodeId n) {
        if (s.is_leaf(n)) {
          State t = s.value(n);
          if (!seen[t]) {
            seen[t] = 1;
            parent[t] = Parent{q, a, bits};
            queue.push_back(t);
          }
          return;
        }
        bits[s.var(n)] = 0;
        walk(s.lo(n));
        bits[s.var(n)] = 1;
        walk(s.hi(n));
        bits[s.var(n)] = 0;
      };
      walk(d.root(q, a));
    }
  }
  if (!found) return std::nullopt;
  Symbols base;
  std::vector<TrackBits> rows;
  for (State q = *found; parent[q]; q = parent[q]->from) {
    base.push_back(parent[q]->base);
    rows.push_back(parent[q]->bits);
  }
  std::reverse(base.begin(), base.end());
  std::reverse(rows.begin(), rows.end());
  std::vector<TrackBits> per_track(tracks, TrackBits(base.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::uint32_t t = 0; t < tracks; ++t) per_track[t][i] = rows[i][t];
  return TrackedWord(d.alphabet(), std::move(base), std::move(per_track));
}

bool is_empty(const Dfa& d) { return !shortest_accepted(d).has_value(); }

Equivalence equivalent(const Dfa& a, const Dfa& b) {
  check_same_alphabet(a, b, "equivalent");
  auto w = shortest_accepted(product(a, b, BoolOp::kXor));
  return Equivalence{!w.has_value(), std::move(w)};
}

bool isomorphic(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet() == b.alphabet())) return false;
  Dfa x = trim(a), y = trim(b);
  if (x.num_states() != y.num_states() || x.accepting_states() != y.accepting_states()) return false;
  const TrackBdd& sx = x.store();
  const TrackBdd& sy = y.store();
  std::function<bool(NodeId, NodeId)> same = [&](NodeId f, NodeId g) -> bool {
    if (sx.is_leaf(f) != sy.is_leaf(g)) return false;
    if (sx.is_leaf(f)) return sx.value(f) == sy.value(g);
    return sx.var(f) == sy.var(g) && same(sx.lo(f), sy.lo(g)) && same(sx.hi(f), sy.hi(g));
  };
  for (std::size_t i = 0; i < x.roots().size(); ++i)
    if (!same(x.roots()[i], y.roots()[i])) return false;
  return true;
}

std::optional<std::size_t> first_missing_length(const Dfa& d) {
  const TrackBdd& s = d.store();
  std::map<std::vector<State>, std::size_t> seen;
  std::vector<State> cur{d.initial()};
  for (std::size_t n = 0;; ++n) {
    bool acc = false;
    for (State q : cur) acc = acc || d.accepting(q);
    if (!acc) return n;
    if (!seen.emplace(cur, n).second) return std::nullopt;
    std::vector<char> mark(s.size(), 0);
    std::vector<char> in(d.num_states(), 0);
    for (State q : cur)
      for (Letter a = 0; a < d.alphabet().base().size(); ++a)
        for_each_leaf(s, d.root(q, a), mark, [&](std::uint32_t t) { in[t] = 1; });
    cur.clear();
    for (State q = 0; q < d.num_states(); ++q)
      if (in[q]) cur.push_back(q);
  }
}

Dfa lexmin_per_length(const Dfa& m) {
  if (auto gap = first_missing_length(m))
    throw Error(ErrorKind::kPrecondition,
                "lexmin_per_length: no accepted word of length " + std::to_string(*gap));
  const std::size_t letters = m.alphabet().size();
  const std::size_t states = m.num_states();
  auto table = m.table();
  // State (p, smaller): p tracks a guessed competitor w' on M, `smaller`
  // records that w' < w has already been decided.
  Nfa smaller(m.alphabet(), 2 * states);
  smaller.initial = {static_cast<State>(2 * m.initial())};
  for (State p = 0; p < states; ++p) {
    smaller.accepting[2 * p + 1] = m.accepting(p);
    for (std::size_t x = 0; x < letters; ++x) {
      for (std::size_t y = 0; y < letters; ++y) {
        State next = table[p][y];
        if (y < x) smaller.add(2 * p, x, 2 * next + 1);
        if (y == x) smaller.add(2 * p, x, 2 * next);
        smaller.add(2 * p + 1, x, 2 * next + 1);
      }
    }
  }
  Dfa has_smaller = minimize(determinize(smaller));
  return minimize(product(m, has_smaller, BoolOp::kAndNot));
}

std::string to_dot(const Dfa& d, const std::string& name) {
  const TrackBdd& s = d.store();
  const auto& alpha = d.alphabet();
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
  out << "  start -> q" << d.initial() << ";\n";
  for (State q = 0; q < d.num_states(); ++q)
    if (d.accepting(q)) out << "  q" << q << " [shape=doublecircle];\n";
  for (State q = 0; q < d.num_states(); ++q) {
    std::map<State, std::vector<std::string>> labels;
    for (Letter a = 0; a < alpha.base().size(); ++a) {
      std::string cube(alpha.tracks(), '-');
      std::function<void(NodeId)> walk = [&](NodeId n) {
        if (s.is_leaf(n)) {
          std::string label = alpha.base().letter(a);
          if (alpha.tracks() > 0) label += "/" + cube;
          labels[s.value(n)].push_back(label);
          return;
        }
        cube[s.var(n)] = '0';
        walk(s.lo(n));
        cube[s.var(n)] = '1';
        walk(s.hi(n));
        cube[s.var(n)] = '-';
      };
      walk(d.root(q, a));
    }
    for (const auto& [t, ls] : labels) {
      out << "  q" << q << " -> q" << t << " [label=\"";
      for (std::size_t i = 0; i < ls.size(); ++i) out << (i ? "," : "") << ls[i];
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace advreg
