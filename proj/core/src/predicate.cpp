#include "advreg/predicate.hpp"

#include <deque>

#include "advreg/error.hpp"

namespace advreg {

const Alphabet& bit_alphabet() {
  static const Alphabet bits = Alphabet::of_chars("01");
  return bits;
}

RegularCombo RegularCombo::local(LocalAtom a) {
  return RegularCombo(std::make_shared<const Node>(Node{Op::kLocal, a, {}, {}}));
}

RegularCombo RegularCombo::modular(ModularAtom a) {
  if (a.q == 0 || a.r >= a.q) throw Error(ErrorKind::kFormat, "modular atom needs 0 <= r < q");
  return RegularCombo(std::make_shared<const Node>(Node{Op::kModular, {}, a, {}}));
}

RegularCombo operator&(const RegularCombo& a, const RegularCombo& b) {
  return RegularCombo(std::make_shared<const RegularCombo::Node>(
      RegularCombo::Node{RegularCombo::Op::kAnd, {}, {}, {a, b}}));
}

RegularCombo operator|(const RegularCombo& a, const RegularCombo& b) {
  return RegularCombo(std::make_shared<const RegularCombo::Node>(
      RegularCombo::Node{RegularCombo::Op::kOr, {}, {}, {a, b}}));
}

RegularCombo operator~(const RegularCombo& a) {
  return RegularCombo(
      std::make_shared<const RegularCombo::Node>(RegularCombo::Node{RegularCombo::Op::kNot, {}, {}, {a}}));
}

TrackBits RegularCombo::eval(std::size_t n) const {
  TrackBits out(n, 0);
  switch (op()) {
    case Op::kLocal: {
      const auto& a = local_atom();
      if (a.c < n) out[a.kind == LocalAtom::Kind::kPositionConst ? a.c : n - 1 - a.c] = 1;
      break;
    }
    case Op::kModular: {
      const auto& a = modular_atom();
      if (a.kind == ModularAtom::Kind::kPos) {
        for (std::size_t i = 0; i < n; ++i) out[i] = (i % a.q) == a.r;
      } else if (n > 0 && (n - 1) % a.q == a.r) {
        std::fill(out.begin(), out.end(), 1);
      }
      break;
    }
    case Op::kAnd: {
      auto x = args()[0].eval(n), y = args()[1].eval(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = x[i] & y[i];
      break;
    }
    case Op::kOr: {
      auto x = args()[0].eval(n), y = args()[1].eval(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = x[i] | y[i];
      break;
    }
    case Op::kNot: {
      auto x = args()[0].eval(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = !x[i];
      break;
    }
  }
  return out;
}

MonadicPredicate MonadicPredicate::explicit_table(std::string name, std::map<std::size_t, TrackBits> table) {
  for (const auto& [n, bits] : table)
    if (bits.size() != n)
      throw Error(ErrorKind::kLengthMismatch, "explicit predicate " + name + ": entry for n=" + std::to_string(n) +
                                                  " has " + std::to_string(bits.size()) + " bits");
  Data d;
  d.name = std::move(name);
  d.kind = Kind::kExplicit;
  d.bound = table.empty() ? 0 : table.rbegin()->first;
  d.table = std::move(table);
  d.source = "explicit";
  MonadicPredicate p;
  p.data_ = std::make_shared<const Data>(std::move(d));
  return p;
}

MonadicPredicate MonadicPredicate::regular(std::string name, RegularCombo combo) {
  Data d;
  d.name = std::move(name);
  d.kind = Kind::kRegularCombo;
  d.combo = std::move(combo);
  d.source = "regular";
  MonadicPredicate p;
  p.data_ = std::make_shared<const Data>(std::move(d));
  return p;
}

MonadicPredicate MonadicPredicate::from_dfa(std::string name, Dfa dfa) {
  if (!(dfa.alphabet() == TrackedAlphabet(bit_alphabet(), 0)))
    throw Error(ErrorKind::kAlphabetMismatch, "predicate automaton must be over {0,1} without tracks");
  auto report = verify_unique_per_length(dfa);
  if (!report.ok) throw Error(ErrorKind::kPrecondition, "predicate " + name + ": " + report.message);
  Data d;
  d.name = std::move(name);
  d.kind = Kind::kRegularDfa;
  d.dfa = std::move(dfa);
  d.source = "dfa";
  MonadicPredicate p;
  p.data_ = std::make_shared<const Data>(std::move(d));
  return p;
}

MonadicPredicate MonadicPredicate::uniform(std::string name, std::function<TrackBits(std::size_t)> prefix,
                                           std::string source) {
  Data d;
  d.name = std::move(name);
  d.kind = Kind::kUniform;
  d.fn = std::move(prefix);
  d.source = std::move(source);
  MonadicPredicate p;
  p.data_ = std::make_shared<const Data>(std::move(d));
  return p;
}

MonadicPredicate MonadicPredicate::derived(std::string name, std::function<TrackBits(std::size_t)> fn,
                                           std::optional<std::size_t> bound) {
  Data d;
  d.name = std::move(name);
  d.kind = Kind::kDerived;
  d.fn = std::move(fn);
  d.bound = bound;
  d.source = "derived";
  MonadicPredicate p;
  p.data_ = std::make_shared<const Data>(std::move(d));
  return p;
}

std::optional<std::size_t> MonadicPredicate::bound() const { return data_->bound; }

TrackBits MonadicPredicate::eval(std::size_t n) const {
  if (!data_) throw Error(ErrorKind::kIntegrity, "empty predicate");
  if (data_->bound && n > *data_->bound)
    throw Error(ErrorKind::kBoundExceeded, "predicate " + name() + " is only defined up to N_max=" +
                                               std::to_string(*data_->bound) + " (asked n=" + std::to_string(n) + ")");
  switch (data_->kind) {
    case Kind::kExplicit: {
      auto it = data_->table.find(n);
      if (it == data_->table.end())
        throw Error(ErrorKind::kBoundExceeded, "predicate " + name() + " has no entry for n=" + std::to_string(n) +
                                                   " (N_max=" + std::to_string(*data_->bound) + ")");
      return it->second;
    }
    case Kind::kRegularCombo:
      return data_->combo->eval(n);
    case Kind::kRegularDfa:
      return dfa_backend_eval(*data_->dfa, n);
    case Kind::kUniform:
    case Kind::kDerived: {
      TrackBits bits = data_->fn(n);
      if (bits.size() != n)
        throw Error(ErrorKind::kIntegrity, "predicate " + name() + " produced a word of the wrong length");
      return bits;
    }
  }
  return {};
}

std::vector<std::size_t> MonadicPredicate::positions(std::size_t n) const {
  std::vector<std::size_t> out;
  auto bits = eval(n);
  for (std::size_t i = 0; i < n; ++i)
    if (bits[i]) out.push_back(i);
  return out;
}

bool MonadicPredicate::holds(std::size_t i, std::size_t n) const { return i < n && eval(n)[i]; }

const std::map<std::size_t, TrackBits>& MonadicPredicate::table() const {
  if (kind() != Kind::kExplicit) throw Error(ErrorKind::kMode, "predicate " + name() + " is not explicit");
  return data_->table;
}

const RegularCombo& MonadicPredicate::combo() const {
  if (kind() != Kind::kRegularCombo) throw Error(ErrorKind::kMode, "predicate " + name() + " is not a combination");
  return *data_->combo;
}

const Dfa& MonadicPredicate::dfa() const {
  if (kind() != Kind::kRegularDfa) throw Error(ErrorKind::kMode, "predicate " + name() + " is not automaton-backed");
  return *data_->dfa;
}

MonadicPredicate MonadicPredicate::renamed(std::string name) const {
  Data d = *data_;
  d.name = std::move(name);
  MonadicPredicate p;
  p.data_ = std::make_shared<const Data>(std::move(d));
  return p;
}

std::vector<TrackBits> predicate_to_characteristic_language(const MonadicPredicate& p, std::size_t n_max) {
  std::vector<TrackBits> out;
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(p.eval(n));
  return out;
}

namespace {

using Table = std::vector<std::vector<State>>;

Dfa bits_dfa(const Table& delta, std::vector<bool> accepting) {
  return minimize(Dfa::from_table(bit_alphabet(), 0, delta, std::move(accepting)));
}

Dfa atom_dfa(const LocalAtom& a) {
  const State c = static_cast<State>(a.c);
  if (a.kind == LocalAtom::Kind::kPositionConst) {
    // s_0..s_c, after = c+1, dead = c+2
    const State after = c + 1, dead = c + 2;
    Table delta(c + 3, std::vector<State>(2, dead));
    for (State i = 0; i < c; ++i) delta[i][0] = i + 1;
    delta[c][1] = after;
    delta[after][0] = after;
    std::vector<bool> acc(c + 3, true);
    acc[dead] = false;
    return bits_dfa(delta, acc);
  }
  // Z_0..Z_c, Z_big, O_0..O_c, dead
  const State zbig = c + 1, o0 = c + 2, dead = 2 * c + 3;
  Table delta(2 * c + 4, std::vector<State>(2, dead));
  for (State i = 0; i <= c; ++i) {
    delta[i][0] = i < c ? i + 1 : zbig;
    delta[i][1] = o0;
  }
  delta[zbig][0] = zbig;
  delta[zbig][1] = o0;
  for (State j = 0; j < c; ++j) delta[o0 + j][0] = o0 + j + 1;
  std::vector<bool> acc(2 * c + 4, false);
  for (State i = 0; i <= c; ++i) acc[i] = true;
  acc[o0 + c] = true;
  return bits_dfa(delta, acc);
}

Dfa atom_dfa(const ModularAtom& a) {
  const State q = static_cast<State>(a.q), r = static_cast<State>(a.r);
  if (a.kind == ModularAtom::Kind::kPos) {
    const State dead = q;
    Table delta(q + 1, std::vector<State>(2, dead));
    for (State x = 0; x < q; ++x) delta[x][x == r ? 1 : 0] = (x + 1) % q;
    std::vector<bool> acc(q + 1, true);
    acc[dead] = false;
    return bits_dfa(delta, acc);
  }
  // start, O_0..O_{q-1} (ones read mod q), Z_0..Z_{q-1}, dead
  const State start = 0, o = 1, z = 1 + q, dead = 1 + 2 * q;
  Table delta(2 + 2 * q, std::vector<State>(2, dead));
  delta[start][1] = o + (1 % q);
  delta[start][0] = z + (1 % q);
  for (State j = 0; j < q; ++j) {
    delta[o + j][1] = o + (j + 1) % q;
    delta[z + j][0] = z + (j + 1) % q;
  }
  std::vector<bool> acc(2 + 2 * q, false);
  acc[start] = true;
  const State hit = (r + 1) % q;  // k letters read with (k-1) = r mod q
  for (State j = 0; j < q; ++j) {
    acc[o + j] = j == hit;
    acc[z + j] = j != hit;
  }
  return bits_dfa(delta, acc);
}

// Pointwise combination of two unique-per-length automata: guess the two
// operand words letter by letter.
Dfa combine(const Dfa& x, const Dfa& y, bool is_and) {
  auto tx = x.table(), ty = y.table();
  const std::size_t m = y.num_states();
  Nfa nfa(TrackedAlphabet(bit_alphabet(), 0), x.num_states() * m);
  nfa.initial = {static_cast<State>(x.initial() * m + y.initial())};
  for (State p = 0; p < x.num_states(); ++p)
    for (State q = 0; q < m; ++q) {
      State s = static_cast<State>(p * m + q);
      nfa.accepting[s] = x.accepting(p) && y.accepting(q);
      for (int bx = 0; bx < 2; ++bx)
        for (int by = 0; by < 2; ++by) {
          int out = is_and ? (bx & by) : (bx | by);
          nfa.add(s, out, static_cast<State>(tx[p][bx] * m + ty[q][by]));
        }
    }
  return minimize(determinize(nfa));
}

}  // namespace

Dfa regular_combo_to_dfa(const RegularCombo& combo) {
  switch (combo.op()) {
    case RegularCombo::Op::kLocal:
      return atom_dfa(combo.local_atom());
    case RegularCombo::Op::kModular:
      return atom_dfa(combo.modular_atom());
    case RegularCombo::Op::kAnd:
    case RegularCombo::Op::kOr:
      return combine(regular_combo_to_dfa(combo.args()[0]), regular_combo_to_dfa(combo.args()[1]),
                     combo.op() == RegularCombo::Op::kAnd);
    case RegularCombo::Op::kNot: {
      auto inner = regular_combo_to_dfa(combo.args()[0]);
      auto t = inner.table();
      for (auto& row : t) std::swap(row[0], row[1]);
      return minimize(Dfa::from_table(bit_alphabet(), inner.initial(), t, inner.accepting_states()));
    }
  }
  throw Error(ErrorKind::kIntegrity, "unknown combination node");
}

UniquenessReport verify_unique_per_length(const Dfa& d, std::size_t n_max) {
  UniquenessReport report;
  if (d.alphabet().tracks() != 0 || d.alphabet().base().size() != 2)
    throw Error(ErrorKind::kAlphabetMismatch, "verify_unique_per_length expects an automaton over {0,1}");
  auto t = d.table();
  const std::size_t m = d.num_states();
  // BFS over (p, q, differs) for two runs on equal-length words.
  struct Parent {
    std::size_t from;
    int x, y;
  };
  const std::size_t total = m * m * 2;
  std::vector<std::optional<Parent>> parent(total);
  std::vector<char> seen(total, 0);
  auto id = [&](State p, State q, int diff) { return (static_cast<std::size_t>(p) * m + q) * 2 + diff; };
  std::size_t start = id(d.initial(), d.initial(), 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  std::optional<std::size_t> hit;
  while (!queue.empty() && !hit) {
    std::size_t s = queue.front();
    queue.pop_front();
    State p = static_cast<State>(s / 2 / m), q = static_cast<State>(s / 2 % m);
    int diff = static_cast<int>(s % 2);
    if (diff && d.accepting(p) && d.accepting(q)) {
      hit = s;
      break;
    }
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        // order the pair so the first word is the smaller one
        if (!diff && x > y) continue;
        std::size_t nxt = id(t[p][x], t[q][y], diff || x != y);
        if (!seen[nxt]) {
          seen[nxt] = 1;
          parent[nxt] = Parent{s, x, y};
          queue.push_back(nxt);
        }
      }
  }
  if (hit) {
    std::string u, v;
    for (std::size_t s = *hit; parent[s]; s = parent[s]->from) {
      u.insert(u.begin(), static_cast<char>('0' + parent[s]->x));
      v.insert(v.begin(), static_cast<char>('0' + parent[s]->y));
    }
    report.duplicate = std::make_pair(u, v);
  }
  report.missing_length = first_missing_length(d);
  report.ok = !report.duplicate && !report.missing_length;
  if (report.ok) {
    report.message = "exactly one word per length";
  } else if (report.missing_length) {
    report.message = "no accepted word of length " + std::to_string(*report.missing_length);
  } else {
    const auto& [u, v] = *report.duplicate;
    report.message = "two accepted words of length " + std::to_string(u.size()) + ": \"" + u + "\" and \"" + v + "\"";
    if (u.size() > n_max) report.message += " (beyond n_max=" + std::to_string(n_max) + ")";
  }
  return report;
}

TrackBits dfa_backend_eval(const Dfa& d, std::size_t n) {
  const std::size_t m = d.num_states();
  auto t = d.table();
  // reach[k][q]: some word of length k leads q to acceptance
  std::vector<std::vector<char>> reach(n + 1, std::vector<char>(m, 0));
  for (State q = 0; q < m; ++q) reach[0][q] = d.accepting(q);
  for (std::size_t k = 1; k <= n; ++k)
    for (State q = 0; q < m; ++q) reach[k][q] = reach[k - 1][t[q][0]] || reach[k - 1][t[q][1]];
  State q = d.initial();
  if (!reach[n][q]) throw Error(ErrorKind::kIntegrity, "no accepted word of length " + std::to_string(n));
  TrackBits out(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool zero = reach[n - i - 1][t[q][0]];
    bool one = reach[n - i - 1][t[q][1]];
    if (zero && one)
      throw Error(ErrorKind::kIntegrity, "two accepted words of length " + std::to_string(n));
    out[i] = one;
    q = t[q][one ? 1 : 0];
  }
  return out;
}

}  // namespace advreg
