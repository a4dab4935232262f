#include "advreg/advice.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "advreg/error.hpp"

namespace advreg {

AdviceSlice::AdviceSlice(std::size_t n, std::size_t states, std::size_t letters)
    : n_(n), states_(states), letters_(letters), accepting_(states, false) {}

void AdviceSlice::check() const {
  if (accepting_.size() != states_) throw Error(ErrorKind::kIntegrity, "slice: acceptance vector has wrong size");
  for (State t : target_)
    if (t >= states_) throw Error(ErrorKind::kIntegrity, "slice: transition target out of range");
}

bool AdviceSlice::deterministic() const {
  for (std::size_t k = 0; k + 1 < offset_.size(); ++k)
    if (offset_[k + 1] - offset_[k] != 1) return false;
  return true;
}

namespace {

void check_alphabets(const AdviceAutomaton& a, const AdviceAutomaton& b) {
  if (!(a.alphabet() == b.alphabet()))
    throw Error(ErrorKind::kAlphabetMismatch, "advice automata over different alphabets");
}

std::optional<std::size_t> min_bound(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::vector<std::string> default_names(std::size_t states) {
  std::vector<std::string> names;
  for (std::size_t q = 0; q < states; ++q) names.push_back(std::to_string(q));
  return names;
}

bool valid_identifier(const std::string& s) {
  static const char* reserved[] = {"in", "first", "last", "succ", "true", "false", "forall", "exists"};
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  for (const char* r : reserved)
    if (s == r) return false;
  return true;
}

}  // namespace

AdviceAutomaton AdviceAutomaton::from_base(Dfa base, std::vector<MonadicPredicate> predicates) {
  if (base.alphabet().tracks() != predicates.size())
    throw Error(ErrorKind::kAlphabetMismatch, "base automaton has " + std::to_string(base.alphabet().tracks()) +
                                                  " tracks but " + std::to_string(predicates.size()) +
                                                  " predicates were given");
  Data d;
  d.alphabet = base.alphabet().base();
  d.states = base.num_states();
  d.initial = {base.initial()};
  d.mode = Mode::kDeterministic;
  d.presentation = Presentation::kBase;
  for (const auto& p : predicates) d.bound = min_bound(d.bound, p.bound());
  d.names = default_names(d.states);
  d.base = std::move(base);
  d.predicates = std::move(predicates);
  AdviceAutomaton a;
  a.data_ = std::make_shared<const Data>(std::move(d));
  return a;
}

AdviceAutomaton AdviceAutomaton::from_base_nfa(Nfa base, std::vector<MonadicPredicate> predicates) {
  if (base.alphabet.tracks() != predicates.size())
    throw Error(ErrorKind::kAlphabetMismatch, "base automaton track count differs from the predicate count");
  Data d;
  d.alphabet = base.alphabet.base();
  d.states = base.num_states();
  d.initial = base.initial;
  d.mode = Mode::kNondeterministic;
  d.presentation = Presentation::kBaseNfa;
  for (const auto& p : predicates) d.bound = min_bound(d.bound, p.bound());
  d.names = default_names(d.states);
  d.base_nfa = std::move(base);
  d.predicates = std::move(predicates);
  AdviceAutomaton a;
  a.data_ = std::make_shared<const Data>(std::move(d));
  return a;
}

AdviceAutomaton AdviceAutomaton::from_tables(Alphabet alphabet, std::size_t states, std::vector<State> initial,
                                             Mode mode, std::vector<AdviceSlice> slices) {
  if (slices.empty()) throw Error(ErrorKind::kFormat, "advice tables need at least the slice for n=0");
  bool incomplete = false;
  for (std::size_t n = 0; n < slices.size(); ++n) {
    const auto& s = slices[n];
    if (s.length() != n || s.num_states() != states || s.num_letters() != alphabet.size())
      throw Error(ErrorKind::kFormat, "advice table for n=" + std::to_string(n) + " has the wrong shape");
    for (std::size_t i = 0; i < n; ++i)
      for (State q = 0; q < states; ++q)
        for (Letter a = 0; a < alphabet.size(); ++a) {
          auto t = s.next(i, q, a);
          if (t.empty()) incomplete = true;
          if (mode == Mode::kDeterministic && t.size() > 1)
            throw Error(ErrorKind::kMode, "deterministic table has several targets at (i=" + std::to_string(i) +
                                              ", n=" + std::to_string(n) + ", q=" + std::to_string(q) + ")");
        }
  }
  for (State q : initial)
    if (q >= states) throw Error(ErrorKind::kFormat, "initial state out of range");
  if (mode == Mode::kDeterministic && initial.size() != 1)
    throw Error(ErrorKind::kMode, "a deterministic automaton has exactly one initial state");
  std::vector<std::string> names = default_names(states);
  if (mode == Mode::kDeterministic && incomplete) {
    // complete with a rejecting sink
    const State sink = static_cast<State>(states);
    for (auto& s : slices) {
      const AdviceSlice old = s;
      auto acc = old.accepting_states();
      acc.push_back(false);
      s = AdviceSlice::build(
          old.length(), states + 1, alphabet.size(),
          [&](std::size_t i, State q, Letter a, std::vector<State>& out) {
            if (q == sink) {
              out.push_back(sink);
              return;
            }
            auto t = old.next(i, q, a);
            out.push_back(t.empty() ? sink : t[0]);
          },
          acc);
    }
    ++states;
    names.push_back("⊥");
  }
  Data d;
  d.alphabet = std::move(alphabet);
  d.states = states;
  d.initial = std::move(initial);
  d.mode = mode;
  d.presentation = Presentation::kTables;
  d.bound = slices.size() - 1;
  d.names = std::move(names);
  d.tables = std::move(slices);
  AdviceAutomaton a;
  a.data_ = std::make_shared<const Data>(std::move(d));
  return a;
}

AdviceAutomaton AdviceAutomaton::from_function(Alphabet alphabet, std::size_t states, std::vector<State> initial,
                                               Mode mode, std::function<AdviceSlice(std::size_t)> slice,
                                               std::optional<std::size_t> bound) {
  if (mode == Mode::kDeterministic && initial.size() != 1)
    throw Error(ErrorKind::kMode, "a deterministic automaton has exactly one initial state");
  Data d;
  d.alphabet = std::move(alphabet);
  d.states = states;
  d.initial = std::move(initial);
  d.mode = mode;
  d.presentation = Presentation::kFunction;
  d.bound = bound;
  d.names = default_names(states);
  d.fn = std::move(slice);
  AdviceAutomaton a;
  a.data_ = std::make_shared<const Data>(std::move(d));
  return a;
}

AdviceAutomaton AdviceAutomaton::from_step(Alphabet alphabet, std::size_t states, State initial, StepFn step,
                                           AcceptFn accept, std::optional<std::size_t> bound) {
  if (initial >= states) throw Error(ErrorKind::kPrecondition, "initial state out of range");
  const std::size_t k = alphabet.size();
  auto slice = [states, k, step, accept](std::size_t n) {
    std::vector<bool> acc(states);
    for (State q = 0; q < states; ++q) acc[q] = accept(n, q);
    return AdviceSlice::build(
        n, states, k, [&](std::size_t i, State q, Letter a, std::vector<State>& out) { out.push_back(step(i, n, q, a)); },
        std::move(acc));
  };
  auto a = from_function(std::move(alphabet), states, {initial}, Mode::kDeterministic, slice, bound);
  Data d = *a.data_;
  d.step = std::move(step);
  d.accept = std::move(accept);
  a.data_ = std::make_shared<const Data>(std::move(d));
  return a;
}

AdviceAutomaton AdviceAutomaton::with_state_names(std::vector<std::string> names) const {
  if (names.size() != num_states()) throw Error(ErrorKind::kFormat, "wrong number of state names");
  Data d = *data_;
  d.names = std::move(names);
  AdviceAutomaton a;
  a.data_ = std::make_shared<const Data>(std::move(d));
  return a;
}

const Dfa& AdviceAutomaton::base_dfa() const {
  if (!data_->base) throw Error(ErrorKind::kMode, "automaton has no deterministic base presentation");
  return *data_->base;
}

const Nfa& AdviceAutomaton::base_nfa() const {
  if (!data_->base_nfa) throw Error(ErrorKind::kMode, "automaton has no nondeterministic base presentation");
  return *data_->base_nfa;
}

AdviceSlice AdviceAutomaton::slice(std::size_t n) const {
  if (data_->bound && n > *data_->bound)
    throw Error(ErrorKind::kBoundExceeded, "advice automaton is only presented up to N_max=" +
                                               std::to_string(*data_->bound) + " (asked n=" + std::to_string(n) + ")");
  const std::size_t k = alphabet().size();
  switch (data_->presentation) {
    case Presentation::kBase: {
      const Dfa& base = *data_->base;
      std::vector<TrackBits> advice;
      for (const auto& p : data_->predicates) advice.push_back(p.eval(n));
      TrackBits bits(advice.size());
      std::size_t last_i = static_cast<std::size_t>(-1);
      return AdviceSlice::build(
          n, num_states(), k,
          [&](std::size_t i, State q, Letter a, std::vector<State>& out) {
            if (i != last_i) {
              for (std::size_t j = 0; j < advice.size(); ++j) bits[j] = advice[j][i];
              last_i = i;
            }
            out.push_back(base.step(q, a, bits));
          },
          base.accepting_states());
    }
    case Presentation::kBaseNfa: {
      const Nfa& base = *data_->base_nfa;
      std::vector<TrackBits> advice;
      for (const auto& p : data_->predicates) advice.push_back(p.eval(n));
      TrackBits bits(advice.size());
      return AdviceSlice::build(
          n, num_states(), k,
          [&](std::size_t i, State q, Letter a, std::vector<State>& out) {
            for (std::size_t j = 0; j < advice.size(); ++j) bits[j] = advice[j][i];
            const auto& t = base.delta[q][base.alphabet.letter_index(a, bits)];
            out.insert(out.end(), t.begin(), t.end());
          },
          base.accepting);
    }
    case Presentation::kTables:
      return data_->tables[n];
    case Presentation::kFunction: {
      AdviceSlice s = data_->fn(n);
      if (s.length() != n || s.num_states() != num_states() || s.num_letters() != k)
        throw Error(ErrorKind::kIntegrity, "slice provider returned a slice of the wrong shape");
      return s;
    }
  }
  throw Error(ErrorKind::kIntegrity, "unknown presentation");
}

bool AdviceAutomaton::run(const Word& u) const {
  if (!(u.alphabet() == alphabet())) throw Error(ErrorKind::kAlphabetMismatch, "word over a different alphabet");
  if (data_->step) {
    auto t = trace(u);
    return data_->accept(u.size(), t.back());
  }
  auto s = slice(u.size());
  std::vector<char> cur(num_states(), 0), next(num_states(), 0);
  for (State q : initial()) cur[q] = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::fill(next.begin(), next.end(), 0);
    for (State q = 0; q < num_states(); ++q)
      if (cur[q])
        for (State t : s.next(i, q, u[i])) next[t] = 1;
    cur.swap(next);
  }
  for (State q = 0; q < num_states(); ++q)
    if (cur[q] && s.accepting(q)) return true;
  return false;
}

std::vector<State> AdviceAutomaton::trace(const Word& u) const {
  if (!deterministic()) throw Error(ErrorKind::kMode, "trace needs a deterministic automaton");
  if (!(u.alphabet() == alphabet())) throw Error(ErrorKind::kAlphabetMismatch, "word over a different alphabet");
  std::vector<State> out{initial()[0]};
  if (data_->step) {
    if (data_->bound && u.size() > *data_->bound)
      throw Error(ErrorKind::kBoundExceeded, "advice automaton is only presented up to N_max=" +
                                                 std::to_string(*data_->bound) + " (asked n=" + std::to_string(u.size()) + ")");
    for (std::size_t i = 0; i < u.size(); ++i) {
      State t = data_->step(i, u.size(), out.back(), u[i]);
      if (t >= num_states()) throw Error(ErrorKind::kIntegrity, "step function left the state set");
      out.push_back(t);
    }
    return out;
  }
  auto s = slice(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(s.next(i, out.back(), u[i])[0]);
  return out;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

AdviceAutomaton builtin_prime_example() {
  enum : State { qa = 0, qb = 1, qc = 2, qf = 3, bot = 4 };
  auto slice = [](std::size_t n) {
    const std::size_t m = n / 3;
    const bool shaped = n > 0 && n % 3 == 0;
    std::vector<bool> acc(5, false);
    acc[qf] = shaped && is_prime(m);
    return AdviceSlice::build(
        n, 5, 3,
        [&](std::size_t i, State q, Letter a, std::vector<State>& out) {
          State t = bot;
          if (shaped) {
            if (q == qa && a == 0 && i < m - 1) t = qa;
            if (q == qa && a == 0 && i == m - 1) t = qb;
            if (q == qb && a == 1 && m <= i && i < 2 * m - 1) t = qb;
            if (q == qb && a == 1 && i == 2 * m - 1) t = qc;
            if (q == qc && a == 2 && 2 * m <= i && i < 3 * m - 1) t = qc;
            if (q == qc && a == 2 && i == 3 * m - 1) t = qf;
          }
          out.push_back(t);
        },
        acc);
  };
  return AdviceAutomaton::from_function(Alphabet::of_chars("abc"), 5, {qa}, AdviceAutomaton::Mode::kDeterministic,
                                        slice)
      .with_state_names({"q_a", "q_b", "q_c", "q_F", "⊥"});
}

AdviceAutomaton specialize(const Dfa& d, const std::vector<std::string>& predicate_names,
                           const Interpretation& interp) {
  std::vector<MonadicPredicate> preds;
  for (const auto& name : predicate_names) {
    auto it = interp.find(name);
    if (it == interp.end()) throw Error(ErrorKind::kMissingInterpretation, "interpretation missing " + name);
    preds.push_back(it->second);
  }
  return AdviceAutomaton::from_base(d, std::move(preds));
}

AdviceAutomaton determinize(const AdviceAutomaton& a, std::optional<std::size_t> n_max) {
  const std::size_t k = a.alphabet().size();
  const std::size_t m = a.num_states();
  auto step = [&](const AdviceSlice& s, std::size_t i, const std::vector<State>& set, Letter l) {
    std::vector<char> mark(m, 0);
    for (State q : set)
      for (State t : s.next(i, q, l)) mark[t] = 1;
    std::vector<State> out;
    for (State q = 0; q < m; ++q)
      if (mark[q]) out.push_back(q);
    return out;
  };
  auto name_of = [&](const std::vector<State>& set) {
    std::string s = "{";
    for (std::size_t j = 0; j < set.size(); ++j) s += (j ? "," : "") + a.state_names()[set[j]];
    return s + "}";
  };
  std::vector<State> init = a.initial();
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());

  std::optional<std::size_t> bound = n_max ? n_max : a.bound();
  if (bound) {
    std::vector<AdviceSlice> slices;
    for (std::size_t n = 0; n <= *bound; ++n) slices.push_back(a.slice(n));
    // close the subset family under every (i, n, a) step
    std::map<std::vector<State>, State> ids;
    std::vector<std::vector<State>> sets;
    auto intern = [&](const std::vector<State>& s) {
      auto [it, fresh] = ids.emplace(s, static_cast<State>(sets.size()));
      if (fresh) sets.push_back(s);
      return it->second;
    };
    intern(init);
    for (std::size_t done = 0; done < sets.size(); ++done) {
      const auto set = sets[done];
      for (const auto& s : slices)
        for (std::size_t i = 0; i < s.length(); ++i)
          for (Letter l = 0; l < k; ++l) intern(step(s, i, set, l));
      if (sets.size() > 65536) throw Error(ErrorKind::kCapExceeded, "subset construction exceeds 65536 states");
    }
    std::vector<AdviceSlice> out;
    for (const auto& s : slices) {
      std::vector<bool> acc(sets.size(), false);
      for (std::size_t j = 0; j < sets.size(); ++j)
        for (State q : sets[j]) acc[j] = acc[j] || s.accepting(q);
      out.push_back(AdviceSlice::build(
          s.length(), sets.size(), k,
          [&](std::size_t i, State q, Letter l, std::vector<State>& o) { o.push_back(ids.at(step(s, i, sets[q], l))); },
          acc));
    }
    std::vector<std::string> names;
    for (const auto& s : sets) names.push_back(name_of(s));
    auto det = AdviceAutomaton::from_tables(a.alphabet(), sets.size(), {0}, AdviceAutomaton::Mode::kDeterministic,
                                            std::move(out));
    return det.with_state_names(std::move(names));
  }
  if (m > 16) throw Error(ErrorKind::kCapExceeded, "unbounded subset construction is limited to 16 states");
  const std::size_t subsets = std::size_t{1} << m;
  State init_mask = 0;
  for (State q : init) init_mask |= State{1} << q;
  auto slice = [a, m, k, subsets](std::size_t n) {
    auto s = a.slice(n);
    std::vector<bool> acc(subsets, false);
    for (std::size_t mask = 0; mask < subsets; ++mask)
      for (State q = 0; q < m; ++q)
        if ((mask >> q) & 1u) acc[mask] = acc[mask] || s.accepting(q);
    return AdviceSlice::build(
        n, subsets, k,
        [&](std::size_t i, State mask, Letter l, std::vector<State>& out) {
          State t = 0;
          for (State q = 0; q < m; ++q)
            if ((mask >> q) & 1u)
              for (State r : s.next(i, q, l)) t |= State{1} << r;
          out.push_back(t);
        },
        acc);
  };
  std::vector<std::string> names;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<State> set;
    for (State q = 0; q < m; ++q)
      if ((mask >> q) & 1u) set.push_back(q);
    names.push_back(name_of(set));
  }
  return AdviceAutomaton::from_function(a.alphabet(), subsets, {init_mask}, AdviceAutomaton::Mode::kDeterministic,
                                        slice)
      .with_state_names(std::move(names));
}

namespace {

AdviceAutomaton product(const AdviceAutomaton& a, const AdviceAutomaton& b, BoolOp op) {
  check_alphabets(a, b);
  const std::size_t mb = b.num_states();
  const std::size_t states = a.num_states() * mb;
  const std::size_t k = a.alphabet().size();
  std::vector<State> init;
  for (State p : a.initial())
    for (State q : b.initial()) init.push_back(static_cast<State>(p * mb + q));
  auto slice = [a, b, mb, states, k, op](std::size_t n) {
    auto sa = a.slice(n), sb = b.slice(n);
    std::vector<bool> acc(states);
    for (State s = 0; s < states; ++s) acc[s] = apply(op, sa.accepting(s / mb), sb.accepting(s % mb));
    return AdviceSlice::build(
        n, states, k,
        [&](std::size_t i, State s, Letter l, std::vector<State>& out) {
          for (State p : sa.next(i, s / mb, l))
            for (State q : sb.next(i, s % mb, l)) out.push_back(static_cast<State>(p * mb + q));
        },
        acc);
  };
  bool det = a.deterministic() && b.deterministic();
  std::vector<std::string> names;
  for (State s = 0; s < states; ++s)
    names.push_back("(" + a.state_names()[s / mb] + "," + b.state_names()[s % mb] + ")");
  return AdviceAutomaton::from_function(a.alphabet(), states, init,
                                        det ? AdviceAutomaton::Mode::kDeterministic
                                            : AdviceAutomaton::Mode::kNondeterministic,
                                        slice, min_bound(a.bound(), b.bound()))
      .with_state_names(std::move(names));
}

}  // namespace

AdviceAutomaton advice_union(const AdviceAutomaton& a, const AdviceAutomaton& b) {
  check_alphabets(a, b);
  if (a.deterministic() && b.deterministic()) return product(a, b, BoolOp::kOr);
  // disjoint union with both initial sets
  const std::size_t ma = a.num_states();
  const std::size_t states = ma + b.num_states();
  const std::size_t k = a.alphabet().size();
  std::vector<State> init = a.initial();
  for (State q : b.initial()) init.push_back(static_cast<State>(q + ma));
  auto slice = [a, b, ma, states, k](std::size_t n) {
    auto sa = a.slice(n), sb = b.slice(n);
    std::vector<bool> acc(states);
    for (State q = 0; q < states; ++q) acc[q] = q < ma ? sa.accepting(q) : sb.accepting(q - static_cast<State>(ma));
    return AdviceSlice::build(
        n, states, k,
        [&](std::size_t i, State q, Letter l, std::vector<State>& out) {
          if (q < ma) {
            for (State t : sa.next(i, q, l)) out.push_back(t);
          } else {
            for (State t : sb.next(i, q - static_cast<State>(ma), l)) out.push_back(static_cast<State>(t + ma));
          }
        },
        acc);
  };
  return AdviceAutomaton::from_function(a.alphabet(), states, init, AdviceAutomaton::Mode::kNondeterministic, slice,
                                        min_bound(a.bound(), b.bound()));
}

AdviceAutomaton advice_intersection(const AdviceAutomaton& a, const AdviceAutomaton& b) {
  return product(a, b, BoolOp::kAnd);
}

AdviceAutomaton advice_complement(const AdviceAutomaton& a) {
  if (!a.deterministic()) throw Error(ErrorKind::kMode, "complement needs a deterministic automaton");
  if (a.presentation() == AdviceAutomaton::Presentation::kBase)
    return AdviceAutomaton::from_base(complement(a.base_dfa()), a.predicates()).with_state_names(a.state_names());
  auto slice = [a](std::size_t n) {
    auto s = a.slice(n);
    auto acc = s.accepting_states();
    acc.flip();
    return AdviceSlice::build(
        n, a.num_states(), a.alphabet().size(),
        [&](std::size_t i, State q, Letter l, std::vector<State>& out) {
          auto t = s.next(i, q, l);
          out.insert(out.end(), t.begin(), t.end());
        },
        acc);
  };
  return AdviceAutomaton::from_function(a.alphabet(), a.num_states(), a.initial(),
                                        AdviceAutomaton::Mode::kDeterministic, slice, a.bound())
      .with_state_names(a.state_names());
}

RunFormula to_formula(const AdviceAutomaton& a) {
  const std::size_t m = a.num_states();
  const auto& letters = a.alphabet().letters();
  for (const auto& l : letters)
    if (!valid_identifier(l))
      throw Error(ErrorKind::kFormat, "letter '" + l + "' cannot be used as a letter symbol in a formula");
  auto T = [&](std::size_t q, std::size_t l, std::size_t r) {
    return "T_" + std::to_string(q) + "_" + letters[l] + "_" + std::to_string(r);
  };
  auto F = [](std::size_t q) { return "F_" + std::to_string(q); };
  auto in = [](const char* var, std::size_t q) { return "in(" + std::string(var) + ", X" + std::to_string(q) + ")"; };
  auto join = [](const std::vector<std::string>& parts, const char* op, const char* empty) {
    if (parts.empty()) return std::string(empty);
    std::string out = "(";
    for (std::size_t j = 0; j < parts.size(); ++j) out += (j ? op : "") + parts[j];
    return out + ")";
  };

  std::ostringstream text;
  std::vector<std::string> pred_names;
  // grouped by target state so F_r sits next to the T_*_*_r it is paired with;
  // the compiled automaton stays small under this track order
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t l = 0; l < letters.size(); ++l) pred_names.push_back(T(q, l, r));
    pred_names.push_back(F(r));
  }
  text << "preds:";
  for (const auto& p : pred_names) text << " " << p;
  text << "\nexists";
  for (std::size_t q = 0; q < m; ++q) text << (q ? ", " : " ") << "X" << q;
  text << ". (";

  // partition of the positions
  std::vector<std::string> some, disjoint;
  for (std::size_t q = 0; q < m; ++q) {
    some.push_back(in("x", q));
    for (std::size_t r = q + 1; r < m; ++r) disjoint.push_back("~(" + in("x", q) + " & " + in("x", r) + ")");
  }
  text << "(forall x. (" << join(some, " | ", "false") << " & " << join(disjoint, " & ", "true") << "))";

  // initial state
  std::vector<std::string> init;
  for (State q : a.initial()) init.push_back(in("x", q));
  text << "\n & (forall x. (first(x) -> " << join(init, " | ", "false") << "))";

  // transitions between consecutive positions; with the partition in place
  // this disjunction picks the unique (q, a) at x
  std::vector<std::string> steps;
  for (std::size_t q = 0; q < m; ++q)
    for (std::size_t l = 0; l < letters.size(); ++l)
      for (std::size_t r = 0; r < m; ++r)
        steps.push_back("(" + in("x", q) + " & " + letters[l] + "(x) & " + T(q, l, r) + "(x) & " + in("y", r) + ")");
  text << "\n & (forall x. forall y. (succ(x, y) -> " << join(steps, " | ", "false") << "))";

  // the last letter leads to an accepting state
  std::vector<std::string> finals;
  for (std::size_t q = 0; q < m; ++q)
    for (std::size_t l = 0; l < letters.size(); ++l)
      for (std::size_t r = 0; r < m; ++r)
        finals.push_back("(" + in("x", q) + " & " + letters[l] + "(x) & " + T(q, l, r) + "(x) & " + F(r) + "(x))");
  text << "\n & (forall x. (last(x) -> " << join(finals, " | ", "false") << "))";

  auto s0 = a.slice(0);
  bool eps = false;
  for (State q : a.initial()) eps = eps || s0.accepting(q);
  if (!eps) text << "\n & (exists x. true)";
  text << ")\n";

  RunFormula out{parse_formula(text.str()), {}};
  auto bound = a.bound();
  for (std::size_t q = 0; q < m; ++q)
    for (std::size_t l = 0; l < letters.size(); ++l)
      for (std::size_t r = 0; r < m; ++r) {
        auto fn = [a, q, l, r](std::size_t n) {
          auto s = a.slice(n);
          TrackBits bits(n, 0);
          for (std::size_t i = 0; i < n; ++i) {
            auto t = s.next(i, static_cast<State>(q), static_cast<Letter>(l));
            bits[i] = std::find(t.begin(), t.end(), static_cast<State>(r)) != t.end();
          }
          return bits;
        };
        out.interpretation.emplace(T(q, l, r), MonadicPredicate::derived(T(q, l, r), fn, bound));
      }
  for (std::size_t q = 0; q < m; ++q) {
    auto fn = [a, q](std::size_t n) {
      bool acc = n > 0 && a.slice(n).accepting(static_cast<State>(q));
      return TrackBits(n, acc ? 1 : 0);
    };
    out.interpretation.emplace(F(q), MonadicPredicate::derived(F(q), fn, bound));
  }
  return out;
}

BoundedEquivalence bounded_equivalent(const AdviceAutomaton& a, const AdviceAutomaton& b, std::size_t n_max) {
  check_alphabets(a, b);
  const std::size_t k = a.alphabet().size();
  using Sets = std::pair<std::vector<State>, std::vector<State>>;
  auto advance = [k](const AdviceSlice& s, std::size_t i, const std::vector<State>& set, Letter l) {
    std::vector<char> mark(s.num_states(), 0);
    for (State q : set)
      for (State t : s.next(i, q, l)) mark[t] = 1;
    std::vector<State> out;
    for (State q = 0; q < s.num_states(); ++q)
      if (mark[q]) out.push_back(q);
    (void)k;
    return out;
  };
  auto accepts = [](const AdviceSlice& s, const std::vector<State>& set) {
    for (State q : set)
      if (s.accepting(q)) return true;
    return false;
  };
  auto sorted = [](std::vector<State> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  BoundedEquivalence result;
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto sa = a.slice(n), sb = b.slice(n);
    std::vector<std::vector<Sets>> layers(n + 1);
    std::vector<std::vector<std::vector<std::size_t>>> edges(n);
    layers[0].push_back({sorted(a.initial()), sorted(b.initial())});
    for (std::size_t i = 0; i < n; ++i) {
      std::map<Sets, std::size_t> ids;
      for (const auto& st : layers[i]) {
        std::vector<std::size_t> row;
        for (Letter l = 0; l < k; ++l) {
          Sets nxt{advance(sa, i, st.first, l), advance(sb, i, st.second, l)};
          auto [it, fresh] = ids.emplace(nxt, layers[i + 1].size());
          if (fresh) layers[i + 1].push_back(nxt);
          row.push_back(it->second);
        }
        edges[i].push_back(std::move(row));
      }
    }
    std::vector<char> bad(layers[n].size());
    for (std::size_t j = 0; j < layers[n].size(); ++j)
      bad[j] = accepts(sa, layers[n][j].first) != accepts(sb, layers[n][j].second);
    std::vector<std::vector<char>> bads(n + 1);
    bads[n] = bad;
    for (std::size_t i = n; i-- > 0;) {
      bads[i].assign(layers[i].size(), 0);
      for (std::size_t j = 0; j < layers[i].size(); ++j)
        for (Letter l = 0; l < k; ++l) bads[i][j] = bads[i][j] || bads[i + 1][edges[i][j][l]];
    }
    if (bads[0][0]) {
      Symbols w;
      std::size_t cur = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (Letter l = 0; l < k; ++l)
          if (bads[i + 1][edges[i][cur][l]]) {
            w.push_back(l);
            cur = edges[i][cur][l];
            break;
          }
      result.counterexample = Word(a.alphabet(), std::move(w));
      result.checked_up_to = n;
      return result;
    }
    result.checked_up_to = n;
  }
  result.equal = true;
  return result;
}

std::string to_dot(const AdviceAutomaton& a, const std::string& name) {
  if (a.presentation() == AdviceAutomaton::Presentation::kBase) {
    std::string dot = to_dot(a.base_dfa(), name);
    std::string legend = "  legend [shape=note, label=\"tracks:";
    for (std::size_t j = 0; j < a.predicates().size(); ++j)
      legend += "\\n" + std::to_string(j) + " = " + a.predicates()[j].name();
    legend += "\"];\n";
    dot.insert(dot.rfind('}'), legend);
    return dot;
  }
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t q = 0; q < a.num_states(); ++q) out << "  s" << q << " [label=\"" << a.state_names()[q] << "\"];\n";
  for (State q : a.initial()) out << "  start" << q << " [shape=point];\n  start" << q << " -> s" << q << ";\n";
  out << "  legend [shape=note, label=\"transitions depend on (i, n)\"];\n}\n";
  return out.str();
}

}  // namespace advreg
