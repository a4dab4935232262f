#include "advreg/nerode.hpp"

#include <algorithm>
#include <map>

#include "advreg/compile.hpp"
#include "advreg/error.hpp"

namespace advreg {

struct Language::Data {
  Kind kind = Kind::kOracle;
  Alphabet alphabet;
  std::string name;
  std::optional<Formula> formula;
  Interpretation interp;
  std::optional<AdviceAutomaton> automaton;
  std::optional<Dfa> dfa;
  std::function<bool(const Word&)> oracle;
  std::optional<std::size_t> oracle_bound;
  // built on first use
  std::optional<AdviceAutomaton> det;
};

Language Language::formula(Formula f, Interpretation interp, Alphabet alphabet) {
  Language l;
  l.data_ = std::make_shared<Data>();
  l.data_->kind = Kind::kFormula;
  l.data_->alphabet = std::move(alphabet);
  l.data_->formula = std::move(f);
  l.data_->interp = std::move(interp);
  return l;
}

Language Language::automaton(AdviceAutomaton a) {
  Language l;
  l.data_ = std::make_shared<Data>();
  l.data_->kind = Kind::kAutomaton;
  l.data_->alphabet = a.alphabet();
  l.data_->automaton = std::move(a);
  return l;
}

Language Language::dfa(Dfa d) {
  if (d.alphabet().tracks() != 0) throw Error(ErrorKind::kPrecondition, "a language automaton must not carry tracks");
  Language l;
  l.data_ = std::make_shared<Data>();
  l.data_->kind = Kind::kDfa;
  l.data_->alphabet = d.alphabet().base();
  l.data_->dfa = std::move(d);
  return l;
}

Language Language::oracle(Alphabet alphabet, std::function<bool(const Word&)> member,
                          std::optional<std::size_t> bound, std::string name) {
  Language l;
  l.data_ = std::make_shared<Data>();
  l.data_->kind = Kind::kOracle;
  l.data_->alphabet = std::move(alphabet);
  l.data_->oracle = std::move(member);
  l.data_->oracle_bound = bound;
  l.data_->name = std::move(name);
  return l;
}

Language::Kind Language::kind() const { return data_->kind; }
const Alphabet& Language::alphabet() const { return data_->alphabet; }
const std::string& Language::name() const { return data_->name; }

Language Language::named(std::string name) const {
  Language l;
  l.data_ = std::make_shared<Data>(*data_);
  l.data_->name = std::move(name);
  return l;
}

std::optional<std::size_t> Language::bound() const {
  switch (kind()) {
    case Kind::kOracle:
      return data_->oracle_bound;
    case Kind::kDfa:
      return std::nullopt;
    case Kind::kAutomaton:
      return data_->automaton->bound();
    case Kind::kFormula:
      return deterministic_automaton()->bound();
  }
  return std::nullopt;
}

bool Language::member(const Word& u) const {
  if (!(u.alphabet() == alphabet())) throw Error(ErrorKind::kAlphabetMismatch, "word over a different alphabet");
  switch (kind()) {
    case Kind::kOracle:
      if (data_->oracle_bound && u.size() > *data_->oracle_bound)
        throw Error(ErrorKind::kBoundExceeded, "length " + std::to_string(u.size()) + " exceeds the language bound");
      return data_->oracle(u);
    case Kind::kDfa:
      return data_->dfa->accepts(u);
    case Kind::kAutomaton:
      return data_->automaton->run(u);
    case Kind::kFormula:
      return deterministic_automaton()->run(u);
  }
  return false;
}

std::optional<AdviceAutomaton> Language::deterministic_automaton() const {
  if (data_->det) return data_->det;
  switch (kind()) {
    case Kind::kOracle:
      return std::nullopt;
    case Kind::kDfa:
      data_->det = AdviceAutomaton::from_base(*data_->dfa, {});
      break;
    case Kind::kAutomaton:
      data_->det = data_->automaton->deterministic() ? *data_->automaton : determinize(*data_->automaton);
      break;
    case Kind::kFormula: {
      auto c = compile(*data_->formula, alphabet());
      data_->det = specialize(c.dfa, c.tracks, data_->interp);
      break;
    }
  }
  return data_->det;
}

const Dfa& Language::dfa() const {
  if (kind() != Kind::kDfa) throw Error(ErrorKind::kMode, "not a classical automaton language");
  return *data_->dfa;
}

Language builtin_language(const std::string& name) {
  if (name == "prime_abc") return Language::automaton(builtin_prime_example()).named(name);
  if (name == "even_a") {
    auto d = Dfa::from_table(Alphabet(std::vector<std::string>{"a", "e"}), 0, {{1, 0}, {0, 1}}, {true, false});
    return Language::dfa(d).named(name);
  }
  if (name == "ab_star_ba_star_b") {
    // 0 start, 1 after (ab)*a, 2 in (ab)+, 3 in (ba)*b, 4 in (ba)+, 5 dead
    auto d = Dfa::from_table(Alphabet::of_chars("ab"), 0, {{1, 3}, {5, 2}, {1, 5}, {4, 5}, {5, 3}, {5, 5}},
                             {true, false, true, true, false, false});
    return Language::dfa(d).named(name);
  }
  throw Error(ErrorKind::kFormat, "unknown builtin language '" + name + "'");
}

std::vector<std::string> builtin_language_names() { return {"prime_abc", "even_a", "ab_star_ba_star_b"}; }

namespace {

std::size_t power(std::size_t base, std::size_t e, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t j = 0; j < e; ++j) {
    if (r > cap / std::max<std::size_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

Symbols word_at(std::size_t index, std::size_t length, std::size_t k) {
  Symbols s(length);
  for (std::size_t j = length; j-- > 0;) {
    s[j] = static_cast<Letter>(index % k);
    index /= k;
  }
  return s;
}

std::size_t index_of(std::span<const Letter> s, std::size_t k) {
  std::size_t x = 0;
  for (Letter a : s) x = x * k + a;
  return x;
}

// Classes of A^i by membership profiles over the given suffix lengths.
NerodePartition partition_by_profiles(const Language& l, std::size_t i, const std::vector<std::size_t>& suffixes,
                                      std::size_t work_cap) {
  const std::size_t k = l.alphabet().size();
  const std::size_t words = power(k, i, work_cap);
  std::size_t per_word = 0;
  for (std::size_t p : suffixes) per_word += power(k, p, work_cap);
  if (words > work_cap || per_word > work_cap || words * per_word > work_cap)
    throw Error(ErrorKind::kCapExceeded, "brute-force Nerode computation exceeds the work cap of " +
                                             std::to_string(work_cap) + " membership queries");
  NerodePartition out;
  out.length = i;
  out.suffix = suffixes.empty() ? 0 : suffixes.back();
  out.class_of.resize(words);
  std::map<std::vector<char>, std::uint32_t> ids;
  for (std::size_t x = 0; x < words; ++x) {
    Symbols u = word_at(x, i, k);
    std::vector<char> profile;
    profile.reserve(per_word);
    for (std::size_t p : suffixes) {
      const std::size_t count = power(k, p, work_cap);
      for (std::size_t y = 0; y < count; ++y) {
        Symbols uw = u;
        Symbols w = word_at(y, p, k);
        uw.insert(uw.end(), w.begin(), w.end());
        profile.push_back(l.member(Word(l.alphabet(), std::move(uw))) ? 1 : 0);
      }
    }
    auto [it, fresh] = ids.emplace(std::move(profile), static_cast<std::uint32_t>(out.reps.size()));
    if (fresh) out.reps.emplace_back(l.alphabet(), u);
    out.class_of[x] = it->second;
  }
  return out;
}

}  // namespace

NerodePartition nerode_classes_bruteforce(const Language& l, std::size_t i, std::size_t p, std::size_t work_cap) {
  return partition_by_profiles(l, i, {p}, work_cap);
}

NerodePartition nerode_classes_unsliced(const Language& l, std::size_t i, std::size_t p_max, std::size_t work_cap) {
  std::vector<std::size_t> lengths;
  for (std::size_t p = 0; p <= p_max; ++p) lengths.push_back(p);
  auto out = partition_by_profiles(l, i, lengths, work_cap);
  out.suffix = p_max;
  return out;
}

std::size_t SliceStructure::max_count() const {
  std::size_t m = 0;
  for (auto c : counts) m = std::max(m, c);
  return m;
}

SliceStructure nerode_classes_automaton(const AdviceAutomaton& det, std::size_t n) {
  if (!det.deterministic()) throw Error(ErrorKind::kMode, "nerode_classes_automaton needs a deterministic automaton");
  const auto s = det.slice(n);
  const std::size_t q = det.num_states();
  const std::size_t k = det.alphabet().size();

  std::vector<std::vector<char>> reach(n + 1, std::vector<char>(q, 0));
  reach[0][det.initial()[0]] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (State p = 0; p < q; ++p)
      if (reach[i][p])
        for (Letter a = 0; a < k; ++a) reach[i + 1][s.next(i, p, a)[0]] = 1;

  // block[i][p]: residual class of state p with n - i letters left
  std::vector<std::vector<std::uint32_t>> block(n + 1, std::vector<std::uint32_t>(q));
  for (State p = 0; p < q; ++p) block[n][p] = s.accepting(p) ? 1 : 0;
  for (std::size_t i = n; i-- > 0;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    for (State p = 0; p < q; ++p) {
      std::vector<std::uint32_t> sig(k);
      for (Letter a = 0; a < k; ++a) sig[a] = block[i + 1][s.next(i, p, a)[0]];
      block[i][p] = ids.emplace(std::move(sig), static_cast<std::uint32_t>(ids.size())).first->second;
    }
  }

  SliceStructure out;
  out.alphabet = det.alphabet();
  out.n = n;
  out.counts.resize(n + 1);
  out.reps.resize(n + 1);
  out.tau.resize(n);
  // rank_of[i]: block -> rank, plus one member state per rank
  std::vector<std::map<std::uint32_t, std::uint32_t>> rank_of(n + 1);
  std::vector<std::vector<State>> member(n + 1);
  const State q0 = det.initial()[0];
  rank_of[0][block[0][q0]] = 0;
  member[0].push_back(q0);
  out.reps[0].emplace_back(det.alphabet(), Symbols{});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ki = member[i].size();
    out.tau[i].resize(ki * k);
    for (std::uint32_t r = 0; r < ki; ++r)
      for (Letter a = 0; a < k; ++a) {
        State t = s.next(i, member[i][r], a)[0];
        auto [it, fresh] = rank_of[i + 1].emplace(block[i + 1][t], static_cast<std::uint32_t>(member[i + 1].size()));
        if (fresh) {
          // ranks at i are in lex order, so the first hit is the lex-least
          member[i + 1].push_back(t);
          Symbols u = out.reps[i][r].symbols();
          u.push_back(a);
          out.reps[i + 1].emplace_back(det.alphabet(), std::move(u));
        }
        out.tau[i][r * k + a] = it->second;
      }
  }
  for (std::size_t i = 0; i <= n; ++i) out.counts[i] = member[i].size();
  for (std::uint32_t r = 0; r < member[n].size(); ++r)
    if (s.accepting(member[n][r])) out.acc.push_back(r);
  return out;
}

SliceStructure nerode_slices_bruteforce(const Language& l, std::size_t n, std::size_t work_cap) {
  const std::size_t k = l.alphabet().size();
  SliceStructure out;
  out.alphabet = l.alphabet();
  out.n = n;
  std::vector<NerodePartition> parts;
  for (std::size_t i = 0; i <= n; ++i) {
    parts.push_back(nerode_classes_bruteforce(l, i, n - i, work_cap));
    out.counts.push_back(parts.back().reps.size());
    out.reps.push_back(parts.back().reps);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.tau.emplace_back(out.counts[i] * k);
    for (std::size_t r = 0; r < out.counts[i]; ++r)
      for (Letter a = 0; a < k; ++a) {
        Symbols u = out.reps[i][r].symbols();
        u.push_back(a);
        out.tau[i][r * k + a] = parts[i + 1].class_of[index_of(u, k)];
      }
  }
  for (std::uint32_t r = 0; r < out.counts[n]; ++r)
    if (l.member(out.reps[n][r])) out.acc.push_back(r);
  return out;
}

SliceStructure slice_structure(const Language& l, std::size_t n) {
  if (auto b = l.bound(); b && n > *b)
    throw Error(ErrorKind::kBoundExceeded, "length " + std::to_string(n) + " exceeds the language bound");
  if (auto det = l.deterministic_automaton()) return nerode_classes_automaton(*det, n);
  return nerode_slices_bruteforce(l, n);
}

AdviceAutomaton class_automaton(const Language& l, std::size_t n_max) {
  std::vector<SliceStructure> slices;
  std::size_t big_k = 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    slices.push_back(slice_structure(l, n));
    big_k = std::max(big_k, slices.back().max_count());
  }
  const std::size_t k = l.alphabet().size();
  std::vector<AdviceSlice> tables;
  for (const auto& s : slices) {
    std::vector<bool> acc(big_k, false);
    for (auto r : s.acc) acc[r] = true;
    tables.push_back(AdviceSlice::build(
        s.n, big_k, k,
        [&](std::size_t i, State q, Letter a, std::vector<State>& out) {
          // unused ranks are unreachable; send them to 0 to stay complete
          out.push_back(q < s.counts[i] ? s.tau[i][q * k + a] : 0);
        },
        std::move(acc)));
  }
  return AdviceAutomaton::from_tables(l.alphabet(), big_k, {0}, AdviceAutomaton::Mode::kDeterministic,
                                      std::move(tables));
}

SyntacticPredicate syntactic_predicate(const SliceStructure& s) {
  SyntacticPredicate p;
  p.alphabet = s.alphabet;
  p.n = s.n;
  p.k = s.max_count();
  for (std::size_t i = 0; i < s.n; ++i) {
    SynPredLetter letter;
    letter.sources = s.counts[i];
    letter.targets = s.counts[i + 1];
    letter.tau = s.tau[i];
    if (i + 1 == s.n) letter.acc = s.acc;
    p.letters.push_back(std::move(letter));
  }
  p.epsilon_accept = s.n == 0 && std::find(s.acc.begin(), s.acc.end(), 0u) != s.acc.end();
  return p;
}

SyntacticPredicate syntactic_predicate(const Language& l, std::size_t n) {
  return syntactic_predicate(slice_structure(l, n));
}

bool membership_via_synpred(const SyntacticPredicate& p, const Word& u) {
  if (u.size() != p.n)
    throw Error(ErrorKind::kLengthMismatch, "word of length " + std::to_string(u.size()) +
                                                " against a syntactic predicate of length " + std::to_string(p.n));
  if (!(u.alphabet() == p.alphabet)) throw Error(ErrorKind::kAlphabetMismatch, "word over a different alphabet");
  if (p.n == 0) return p.epsilon_accept;
  const std::size_t k = p.alphabet.size();
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < p.n; ++i) {
    const auto& letter = p.letters[i];
    if (rank >= letter.sources || letter.tau.size() != letter.sources * k)
      throw Error(ErrorKind::kIntegrity, "rank out of domain at position " + std::to_string(i));
    rank = letter.tau[rank * k + u[i]];
    if (rank >= letter.targets) throw Error(ErrorKind::kIntegrity, "rank out of range at position " + std::to_string(i));
  }
  const auto& acc = p.letters.back().acc;
  if (!acc) throw Error(ErrorKind::kIntegrity, "last letter carries no accepting set");
  return std::find(acc->begin(), acc->end(), rank) != acc->end();
}

std::optional<Word> first_disagreement(const Language& l, const Dfa& d, std::size_t n_max) {
  if (d.alphabet().tracks() != 0 || !(d.alphabet().base() == l.alphabet()))
    throw Error(ErrorKind::kAlphabetMismatch, "automaton and language use different alphabets");
  const std::size_t k = l.alphabet().size();
  auto det = l.deterministic_automaton();
  if (!det) {
    std::optional<Word> bad;
    for (std::size_t n = 0; n <= n_max && !bad; ++n) {
      if (power(k, n, std::size_t{1} << 22) > (std::size_t{1} << 22))
        throw Error(ErrorKind::kCapExceeded, "exhaustive comparison against an oracle exceeds the work cap");
      for_each_word(k, n, [&](std::span<const Letter> s) {
        if (bad) return;
        Word u(l.alphabet(), Symbols(s.begin(), s.end()));
        if (l.member(u) != d.accepts(u)) bad = u;
      });
    }
    return bad;
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto s = det->slice(n);
    using Pair = std::pair<State, State>;
    std::vector<std::vector<Pair>> layer(n + 1);
    std::vector<std::map<Pair, std::uint32_t>> id(n + 1);
    layer[0].push_back({d.initial(), det->initial()[0]});
    id[0][layer[0][0]] = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [x, y] : layer[i])
        for (Letter a = 0; a < k; ++a) {
          Pair t{d.step_index(x, a), s.next(i, y, a)[0]};
          if (id[i + 1].emplace(t, static_cast<std::uint32_t>(layer[i + 1].size())).second) layer[i + 1].push_back(t);
        }
    std::vector<std::vector<char>> bad(n + 1);
    bool any = false;
    bad[n].resize(layer[n].size());
    for (std::size_t j = 0; j < layer[n].size(); ++j) {
      bad[n][j] = d.accepting(layer[n][j].first) != s.accepting(layer[n][j].second);
      any = any || bad[n][j];
    }
    if (!any) continue;
    for (std::size_t i = n; i-- > 0;) {
      bad[i].assign(layer[i].size(), 0);
      for (std::size_t j = 0; j < layer[i].size(); ++j)
        for (Letter a = 0; a < k && !bad[i][j]; ++a) {
          Pair t{d.step_index(layer[i][j].first, a), s.next(i, layer[i][j].second, a)[0]};
          bad[i][j] = bad[i + 1][id[i + 1].at(t)];
        }
    }
    Symbols w;
    Pair cur = layer[0][0];
    for (std::size_t i = 0; i < n; ++i)
      for (Letter a = 0; a < k; ++a) {
        Pair t{d.step_index(cur.first, a), s.next(i, cur.second, a)[0]};
        if (bad[i + 1][id[i + 1].at(t)]) {
          w.push_back(a);
          cur = t;
          break;
        }
      }
    return Word(l.alphabet(), std::move(w));
  }
  return std::nullopt;
}

namespace {

using Key = std::vector<std::uint32_t>;

// g(i, 0): accepting ranks of slice i; g(i, r): τ_i of slice i + r.
std::vector<std::vector<Key>> letter_grid(const std::vector<SliceStructure>& slices) {
  const std::size_t n_max = slices.size() - 1;
  std::vector<std::vector<Key>> g(n_max + 1);
  for (std::size_t i = 0; i <= n_max; ++i) {
    g[i].resize(n_max - i + 1);
    const auto& own = slices[i];
    Key acc{0, static_cast<std::uint32_t>(own.counts[i])};
    acc.insert(acc.end(), own.acc.begin(), own.acc.end());
    g[i][0] = std::move(acc);
    for (std::size_t r = 1; i + r <= n_max; ++r) {
      const auto& s = slices[i + r];
      Key key{1, static_cast<std::uint32_t>(s.counts[i]), static_cast<std::uint32_t>(s.counts[i + 1])};
      key.insert(key.end(), s.tau[i].begin(), s.tau[i].end());
      g[i][r] = std::move(key);
    }
  }
  return g;
}

bool periodic(const std::vector<std::vector<Key>>& g, std::size_t n_max, std::size_t t, std::size_t p) {
  for (std::size_t i = 0; i <= n_max; ++i)
    for (std::size_t r = 0; i + r <= n_max; ++r) {
      if (i >= t && i + p + r <= n_max && g[i][r] != g[i + p][r]) return false;
      if (r >= std::max<std::size_t>(t, 1) && i + r + p <= n_max && g[i][r] != g[i][r + p]) return false;
    }
  return true;
}

Dfa reconstruct(const std::vector<std::vector<Key>>& g, const Alphabet& alphabet, std::size_t t, std::size_t p) {
  const std::size_t k = alphabet.size();
  const std::size_t span = t + p;
  using St = std::pair<std::size_t, std::vector<std::uint32_t>>;
  std::map<St, State> id;
  std::vector<St> states;
  std::vector<std::vector<State>> delta;
  std::vector<bool> accepting;
  auto intern = [&](St s) {
    auto [it, fresh] = id.emplace(s, static_cast<State>(states.size()));
    if (fresh) states.push_back(std::move(s));
    return it->second;
  };
  intern({0, std::vector<std::uint32_t>(span, 0)});
  for (std::size_t x = 0; x < states.size(); ++x) {
    const auto [i, c] = states[x];
    const Key& acc = g[i][0];
    accepting.push_back(std::find(acc.begin() + 2, acc.end(), c[0]) != acc.end());
    std::vector<State> row(k);
    const std::size_t next_i = i + 1 < span ? i + 1 : t;
    for (Letter a = 0; a < k; ++a) {
      std::vector<std::uint32_t> nc(span);
      for (std::size_t r = 0; r < span; ++r) {
        const std::uint32_t src = r + 1 < span ? c[r + 1] : c[t];
        const Key& letter = g[i][r + 1];
        if (src >= letter[1]) throw Error(ErrorKind::kIntegrity, "inconsistent class threading in probe");
        nc[r] = letter[3 + src * k + a];
      }
      row[a] = intern({next_i, std::move(nc)});
    }
    delta.push_back(std::move(row));
  }
  return minimize(Dfa::from_table(alphabet, 0, delta, accepting));
}

}  // namespace

RegularityProbe synpred_regularity_probe(const Language& l, std::size_t n_max, std::size_t period_max) {
  RegularityProbe out;
  out.n_max = n_max;
  out.period_max = period_max;
  std::vector<SliceStructure> slices;
  for (std::size_t n = 0; n <= n_max; ++n) slices.push_back(slice_structure(l, n));
  const auto g = letter_grid(slices);
  for (std::size_t t = 0; 2 * (t + 1) <= n_max; ++t)
    for (std::size_t p = 1; p <= period_max && 2 * (t + p) <= n_max; ++p) {
      if (!periodic(g, n_max, t, p)) continue;
      Dfa d = reconstruct(g, l.alphabet(), t, p);
      if (first_disagreement(l, d, n_max)) {
        ++out.refuted;
        continue;
      }
      out.found = true;
      out.n0 = t;
      out.period = p;
      out.dfa = std::move(d);
      out.message = "period " + std::to_string(p) + " from " + std::to_string(t) +
                    "; reconstructed automaton agrees on all lengths <= " + std::to_string(n_max);
      return out;
    }
  out.message = "no period <= " + std::to_string(period_max) + " found within n <= " + std::to_string(n_max);
  return out;
}

RelationPredicate RelationPredicate::explicit_table(std::string name, std::size_t arity,
                                                    std::map<std::size_t, std::set<Tuple>> table) {
  for (const auto& [n, tuples] : table)
    for (const auto& t : tuples) {
      if (t.size() != arity) throw Error(ErrorKind::kIntegrity, "tuple of the wrong arity");
      for (auto x : t)
        if (x >= n) throw Error(ErrorKind::kIntegrity, "tuple coordinate outside the word at n = " + std::to_string(n));
    }
  std::optional<std::size_t> bound;
  if (!table.empty()) bound = table.rbegin()->first;
  auto shared = std::make_shared<const std::map<std::size_t, std::set<Tuple>>>(std::move(table));
  auto fn = [shared](std::size_t n) {
    auto it = shared->find(n);
    if (it == shared->end()) throw Error(ErrorKind::kBoundExceeded, "no table for n = " + std::to_string(n));
    return it->second;
  };
  return from_function(std::move(name), arity, fn, bound);
}

RelationPredicate RelationPredicate::from_function(std::string name, std::size_t arity,
                                                   std::function<std::set<Tuple>(std::size_t)> fn,
                                                   std::optional<std::size_t> bound) {
  if (arity == 0) throw Error(ErrorKind::kPrecondition, "arity must be positive");
  RelationPredicate r;
  r.data_ = std::make_shared<const Data>(Data{std::move(name), arity, bound, std::move(fn)});
  return r;
}

RelationPredicate RelationPredicate::from_monadic(const MonadicPredicate& p) {
  return from_function(
      p.name(), 1,
      [p](std::size_t n) {
        std::set<Tuple> out;
        for (auto i : p.positions(n)) out.insert({i});
        return out;
      },
      p.bound());
}

RelationPredicate RelationPredicate::doubling() {
  return from_function("double", 2, [](std::size_t n) {
    std::set<Tuple> out;
    for (std::size_t x = 0; 2 * x < n; ++x) out.insert({x, 2 * x});
    return out;
  });
}

std::set<RelationPredicate::Tuple> RelationPredicate::tuples(std::size_t n) const {
  if (bound() && n > *bound())
    throw Error(ErrorKind::kBoundExceeded, "length " + std::to_string(n) + " exceeds the bound of " + name());
  return data_->fn(n);
}

bool RelationPredicate::holds(const Tuple& t, std::size_t n) const { return tuples(n).count(t) > 0; }

const Alphabet& lp_base() {
  static const Alphabet base(std::vector<std::string>{"#"});
  return base;
}

TrackedWord predicate_to_lp(const RelationPredicate& p, std::size_t n) {
  std::vector<TrackBits> tracks(p.arity(), TrackBits(n, 0));
  for (const auto& t : p.tuples(n))
    for (std::size_t j = 0; j < t.size(); ++j) tracks[j][t[j]] = 1;
  return TrackedWord(TrackedAlphabet(lp_base(), static_cast<std::uint32_t>(p.arity())), Symbols(n, 0),
                     std::move(tracks));
}

bool lp_member(const RelationPredicate& p, const TrackedWord& u) {
  if (u.alphabet().tracks() != p.arity()) throw Error(ErrorKind::kAlphabetMismatch, "track count differs from arity");
  const std::size_t n = u.size();
  if (p.arity() == 1) return u.tracks()[0] == predicate_to_lp(p, n).tracks()[0];
  RelationPredicate::Tuple t;
  for (const auto& track : u.tracks()) {
    if (std::count(track.begin(), track.end(), 1) != 1) return false;
    t.push_back(static_cast<std::size_t>(std::find(track.begin(), track.end(), 1) - track.begin()));
  }
  return p.holds(t, n);
}

DoublingWitness doubling_not_advice_regular_witness(std::size_t k) {
  if (k < 3) throw Error(ErrorKind::kPrecondition, "the witness needs K >= 3");
  const TrackedAlphabet alphabet(lp_base(), 2);
  auto marked = [&](std::size_t length, std::size_t track, std::size_t pos) {
    std::vector<TrackBits> tracks(2, TrackBits(length, 0));
    tracks[track][pos] = 1;
    return TrackedWord(alphabet, Symbols(length, 0), std::move(tracks));
  };
  auto concat = [&](const TrackedWord& u, const TrackedWord& v) {
    std::vector<TrackBits> tracks = u.tracks();
    for (std::size_t j = 0; j < 2; ++j) tracks[j].insert(tracks[j].end(), v.tracks()[j].begin(), v.tracks()[j].end());
    return TrackedWord(alphabet, Symbols(u.size() + v.size(), 0), std::move(tracks));
  };
  DoublingWitness w;
  w.k = k;
  const std::size_t count = (k - 2) / 2 + 1;
  for (std::size_t i = 0; i < count; ++i) {
    w.prefixes.push_back(marked(3 * k, 0, 2 * k - 1 - i));
    w.suffixes.push_back(marked(k, 1, k - 2 - 2 * i));
  }
  const auto p = RelationPredicate::doubling();
  w.verified = true;
  w.member.assign(count, std::vector<bool>(count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      w.member[i][j] = lp_member(p, concat(w.prefixes[i], w.suffixes[j]));
      w.verified = w.verified && (w.member[i][j] == (i == j));
    }
  return w;
}

}  // namespace advreg
