#include "advreg/json_io.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "advreg/error.hpp"

namespace advreg {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kFormat, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing \"") + key + "\"");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("\"") + key + "\": " + e.what());
  }
}

std::string bits_text(const TrackBits& b) {
  std::string s;
  for (auto x : b) s += x ? '1' : '0';
  return s;
}

TrackBits bits_from_text(const std::string& s) {
  TrackBits b;
  for (char c : s) {
    if (c != '0' && c != '1') bad("characteristic word must consist of 0 and 1: \"" + s + "\"");
    b.push_back(c == '1');
  }
  return b;
}

Symbols symbols_from_text(const Alphabet& a, const std::string& s) {
  try {
    return a.parse(s);
  } catch (const Error& e) {
    bad("cannot read \"" + s + "\": " + e.what());
  }
}

std::vector<bool> bools(const Json& j, const char* key) {
  std::vector<bool> out;
  for (const auto& x : field(j, key)) {
    if (x.is_boolean())
      out.push_back(x.get<bool>());
    else if (x.is_number_integer())
      out.push_back(x.get<int>() != 0);
    else
      bad(std::string("\"") + key + "\" must hold booleans");
  }
  return out;
}

Json bool_array(const std::vector<bool>& v) {
  Json out = Json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

std::size_t tabulation_length(std::optional<std::size_t> n_max, std::optional<std::size_t> bound, const char* what) {
  if (n_max) return bound ? std::min(*n_max, *bound) : *n_max;
  if (bound) return *bound;
  bad(std::string(what) + " is unbounded; give a length to tabulate up to");
}

}  // namespace

std::string word_text(const Word& w) { return w.empty() ? "ε" : w.str(); }

Word word_from_text(const Alphabet& a, const std::string& text) { return Word(a, symbols_from_text(a, text)); }

Json to_json(const Alphabet& a) { return Json{{"letters", a.letters()}}; }

Alphabet alphabet_from_json(const Json& j) {
  auto letters = get<std::vector<std::string>>(j, "letters");
  try {
    return Alphabet(std::move(letters));
  } catch (const Error& e) {
    bad(std::string("bad alphabet: ") + e.what());
  }
}

Json to_json(const Dfa& d) {
  Json alpha = to_json(d.alphabet().base());
  alpha["tracks"] = d.alphabet().tracks();
  return Json{{"alphabet", alpha},
              {"states", d.num_states()},
              {"initial", d.initial()},
              {"delta", d.table()},
              {"accepting", bool_array(d.accepting_states())}};
}

Dfa dfa_from_json(const Json& j) {
  const auto& alpha = field(j, "alphabet");
  auto base = alphabet_from_json(alpha);
  std::uint32_t tracks = alpha.contains("tracks") ? get<std::uint32_t>(alpha, "tracks") : 0;
  TrackedAlphabet ta(base, tracks);
  auto states = get<std::size_t>(j, "states");
  auto delta = get<std::vector<std::vector<State>>>(j, "delta");
  auto acc = bools(j, "accepting");
  auto init = get<State>(j, "initial");
  if (delta.size() != states || acc.size() != states) bad("dfa: delta and accepting must have one row per state");
  for (const auto& row : delta) {
    if (row.size() != ta.size()) bad("dfa: every row of delta needs one entry per letter");
    for (State t : row)
      if (t >= states) bad("dfa: transition target out of range");
  }
  if (init >= states) bad("dfa: initial state out of range");
  return Dfa::from_table(ta, init, delta, std::move(acc));
}

Json to_json(const RegularCombo& c) {
  switch (c.op()) {
    case RegularCombo::Op::kLocal: {
      const auto& a = c.local_atom();
      return Json{{"kind", "local"},
                  {"which", a.kind == LocalAtom::Kind::kPositionConst ? "const" : "last_minus"},
                  {"c", a.c}};
    }
    case RegularCombo::Op::kModular: {
      const auto& a = c.modular_atom();
      return Json{{"kind", "modular"}, {"which", a.kind == ModularAtom::Kind::kPos ? "pos" : "last"},
                  {"r", a.r},          {"q", a.q}};
    }
    default: {
      Json args = Json::array();
      for (const auto& x : c.args()) args.push_back(to_json(x));
      const char* op = c.op() == RegularCombo::Op::kAnd ? "and" : c.op() == RegularCombo::Op::kOr ? "or" : "not";
      return Json{{"kind", "bool"}, {"op", op}, {"args", args}};
    }
  }
}

RegularCombo combo_from_json(const Json& j) {
  auto kind = get<std::string>(j, "kind");
  if (kind == "local") {
    auto which = get<std::string>(j, "which");
    auto c = get<std::size_t>(j, "c");
    if (which == "const") return RegularCombo::position_const(c);
    if (which == "last_minus") return RegularCombo::last_minus(c);
    bad("local atom: unknown \"which\" \"" + which + "\"");
  }
  if (kind == "modular") {
    auto which = get<std::string>(j, "which");
    auto r = get<std::size_t>(j, "r");
    auto q = get<std::size_t>(j, "q");
    if (q == 0 || r >= q) bad("modular atom needs 0 <= r < q");
    if (which == "pos") return RegularCombo::pos_mod(r, q);
    if (which == "last") return RegularCombo::last_mod(r, q);
    bad("modular atom: unknown \"which\" \"" + which + "\"");
  }
  if (kind == "bool") {
    auto op = get<std::string>(j, "op");
    const auto& args = field(j, "args");
    if (!args.is_array() || args.empty()) bad("bool combination needs arguments");
    if (op == "not") {
      if (args.size() != 1) bad("\"not\" takes one argument");
      return ~combo_from_json(args[0]);
    }
    if (op != "and" && op != "or") bad("unknown boolean operator \"" + op + "\"");
    RegularCombo acc = combo_from_json(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i)
      acc = op == "and" ? (acc & combo_from_json(args[i])) : (acc | combo_from_json(args[i]));
    return acc;
  }
  bad("unknown predicate kind \"" + kind + "\"");
}

Json to_json(const MonadicPredicate& p, std::optional<std::size_t> n_max) {
  Json out;
  switch (p.kind()) {
    case MonadicPredicate::Kind::kExplicit: {
      Json table = Json::object();
      for (const auto& [n, bits] : p.table()) table[std::to_string(n)] = bits_text(bits);
      out = Json{{"kind", "explicit"}, {"table", table}};
      break;
    }
    case MonadicPredicate::Kind::kRegularCombo:
      out = to_json(p.combo());
      break;
    case MonadicPredicate::Kind::kRegularDfa:
      out = Json{{"kind", "dfa"}, {"dfa", to_json(p.dfa())}};
      break;
    default: {
      if (!n_max) bad("predicate " + p.name() + " is computed on demand; give a length to tabulate up to");
      std::size_t upto = p.bound() ? std::min(*n_max, *p.bound()) : *n_max;
      Json table = Json::object();
      for (std::size_t n = 0; n <= upto; ++n) table[std::to_string(n)] = bits_text(p.eval(n));
      out = Json{{"kind", "explicit"}, {"table", table}};
    }
  }
  out["name"] = p.name();
  return out;
}

MonadicPredicate predicate_from_json(const Json& j, const std::filesystem::path& base_dir) {
  auto kind = get<std::string>(j, "kind");
  std::string name = j.contains("name") ? get<std::string>(j, "name") : "P";
  if (kind == "explicit") {
    std::map<std::size_t, TrackBits> table;
    const auto& t = field(j, "table");
    if (!t.is_object()) bad("explicit table must map lengths to words");
    for (const auto& [key, val] : t.items()) {
      std::size_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        bad("explicit table key \"" + key + "\" is not a length");
      }
      if (!val.is_string()) bad("explicit table values must be strings");
      auto bits = bits_from_text(val.get<std::string>());
      if (bits.size() != n) bad("explicit table entry for " + key + " has the wrong length");
      table[n] = std::move(bits);
    }
    return MonadicPredicate::explicit_table(name, std::move(table));
  }
  if (kind == "dfa") return MonadicPredicate::from_dfa(name, dfa_from_json(field(j, "dfa")));
  if (kind == "morphic") {
    Hd0lSystem s;
    if (j.contains("builtin")) {
      s = Hd0lSystem::builtin(get<std::string>(j, "builtin"));
    } else {
      const auto& sys = field(j, "system");
      if (sys.is_string()) {
        std::filesystem::path path = sys.get<std::string>();
        s = hd0l_from_json(read_json_file(path.is_absolute() ? path : base_dir / path));
      } else {
        s = hd0l_from_json(sys);
      }
    }
    auto one = get<std::string>(j, "one_letter");
    if (!s.output().contains(one)) bad("one_letter \"" + one + "\" is not an output letter");
    return morphic_predicate(s, s.output().index_of(one), name);
  }
  return MonadicPredicate::regular(name, combo_from_json(j));
}

Json to_json(const Interpretation& interp, std::optional<std::size_t> n_max) {
  Json out = Json::object();
  for (const auto& [name, p] : interp) out[name] = to_json(p.renamed(name), n_max);
  return out;
}

Interpretation interpretation_from_json(const Json& j, const std::filesystem::path& base_dir) {
  Interpretation out;
  if (j.is_array()) {
    for (const auto& x : j) {
      auto p = predicate_from_json(x, base_dir);
      if (!x.contains("name")) bad("predicates in a list need a \"name\"");
      out[p.name()] = p;
    }
  } else if (j.is_object()) {
    for (const auto& [name, x] : j.items()) out[name] = predicate_from_json(x, base_dir).renamed(name);
  } else {
    bad("interpretation must be an object or a list");
  }
  return out;
}

Json to_json(const Hd0lSystem& s) {
  Json sigma = Json::object(), coding = Json::object();
  for (Letter c = 0; c < s.internal().size(); ++c) {
    sigma[s.internal().letter(c)] = s.internal().format(s.sigma()[c]);
    coding[s.internal().letter(c)] = s.output().format(s.coding()[c]);
  }
  return Json{{"alphabet", s.internal().letters()},
              {"sigma", sigma},
              {"seed", s.internal().letter(s.seed())},
              {"coding", coding},
              {"out_alphabet", s.output().letters()}};
}

Hd0lSystem hd0l_from_json(const Json& j) {
  Alphabet internal(get<std::vector<std::string>>(j, "alphabet"));
  Alphabet output(get<std::vector<std::string>>(j, "out_alphabet"));
  const auto& sigma = field(j, "sigma");
  const auto& coding = field(j, "coding");
  std::vector<Symbols> s(internal.size()), c(internal.size());
  for (Letter x = 0; x < internal.size(); ++x) {
    const auto& name = internal.letter(x);
    s[x] = symbols_from_text(internal, get<std::string>(sigma, name.c_str()));
    c[x] = symbols_from_text(output, get<std::string>(coding, name.c_str()));
  }
  auto seed = get<std::string>(j, "seed");
  if (!internal.contains(seed)) bad("seed \"" + seed + "\" is not an internal letter");
  return Hd0lSystem::create(internal, std::move(s), internal.index_of(seed), output, std::move(c));
}

Json to_json(const FiniteMonoid& m) {
  return Json{{"size", m.size()}, {"identity", m.identity()}, {"table", m.table()}};
}

FiniteMonoid monoid_from_json(const Json& j) {
  auto table = get<std::vector<std::vector<Element>>>(j, "table");
  if (table.size() != get<std::size_t>(j, "size")) bad("monoid: table size differs from \"size\"");
  return FiniteMonoid::from_table(std::move(table), get<Element>(j, "identity"));
}

Json to_json(const OneScanProgram& p, std::optional<std::size_t> n_max) {
  Json accepting = Json::array();
  for (Element x = 0; x < p.monoid().size(); ++x)
    if (p.accepting(x)) accepting.push_back(x);
  Json out{{"monoid", to_json(p.monoid())},
           {"alphabet", to_json(p.alphabet())},
           {"accepting", accepting},
           {"epsilon_accept", p.epsilon_accept()}};
  if (p.presentation() == OneScanProgram::Presentation::kBase && !n_max) {
    Json preds = Json::array();
    for (const auto& q : p.predicates()) preds.push_back(to_json(q));
    out["presentation"] = "base";
    out["table"] = p.base_table();
    out["predicates"] = preds;
    return out;
  }
  std::size_t upto = tabulation_length(n_max, p.bound(), "program");
  std::vector<std::vector<Element>> tables;
  for (std::size_t n = 0; n <= upto; ++n) tables.push_back(p.instructions(n));
  out["presentation"] = "tables";
  out["tables"] = tables;
  return out;
}

OneScanProgram program_from_json(const Json& j, const std::filesystem::path& base_dir) {
  auto m = monoid_from_json(field(j, "monoid"));
  auto alphabet = alphabet_from_json(field(j, "alphabet"));
  std::vector<bool> acc(m.size(), false);
  for (const auto& x : field(j, "accepting")) {
    auto e = x.get<Element>();
    if (e >= m.size()) bad("accepting element out of range");
    acc[e] = true;
  }
  bool eps = get<bool>(j, "epsilon_accept");
  auto pres = get<std::string>(j, "presentation");
  if (pres == "tables")
    return OneScanProgram::from_tables(m, alphabet, get<std::vector<std::vector<Element>>>(j, "tables"), acc, eps);
  if (pres == "base") {
    std::vector<MonadicPredicate> preds;
    for (const auto& x : field(j, "predicates")) preds.push_back(predicate_from_json(x, base_dir));
    return OneScanProgram::from_base(m, alphabet, get<std::vector<Element>>(j, "table"), std::move(preds), acc, eps);
  }
  bad("unknown program presentation \"" + pres + "\"");
}

Json to_json(const AdviceAutomaton& a, std::optional<std::size_t> n_max) {
  Json out{{"kind", "advice_automaton"}};
  if (!a.state_names().empty()) out["state_names"] = a.state_names();
  if (a.presentation() == AdviceAutomaton::Presentation::kBase && !n_max) {
    Json preds = Json::array();
    for (const auto& p : a.predicates()) preds.push_back(to_json(p));
    out["presentation"] = "base";
    out["dfa"] = to_json(a.base_dfa());
    out["predicates"] = preds;
    return out;
  }
  std::size_t upto = tabulation_length(n_max, a.bound(), "automaton");
  out["presentation"] = "tables";
  out["alphabet"] = to_json(a.alphabet());
  out["states"] = a.num_states();
  out["initial"] = a.initial();
  out["mode"] = a.deterministic() ? "deterministic" : "nondeterministic";
  Json slices = Json::array();
  for (std::size_t n = 0; n <= upto; ++n) {
    auto s = a.slice(n);
    Json delta = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      Json per_q = Json::array();
      for (State q = 0; q < s.num_states(); ++q) {
        Json per_a = Json::array();
        for (Letter x = 0; x < s.num_letters(); ++x) {
          auto next = s.next(i, q, x);
          per_a.push_back(std::vector<State>(next.begin(), next.end()));
        }
        per_q.push_back(per_a);
      }
      delta.push_back(per_q);
    }
    slices.push_back(Json{{"n", n}, {"accepting", bool_array(s.accepting_states())}, {"delta", delta}});
  }
  out["slices"] = slices;
  return out;
}

AdviceAutomaton advice_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (j.contains("kind") && get<std::string>(j, "kind") != "advice_automaton")
    bad("expected \"kind\": \"advice_automaton\"");
  auto pres = get<std::string>(j, "presentation");
  AdviceAutomaton a;
  if (pres == "base") {
    std::vector<MonadicPredicate> preds;
    for (const auto& x : field(j, "predicates")) preds.push_back(predicate_from_json(x, base_dir));
    a = AdviceAutomaton::from_base(dfa_from_json(field(j, "dfa")), std::move(preds));
  } else if (pres == "tables") {
    auto alphabet = alphabet_from_json(field(j, "alphabet"));
    auto states = get<std::size_t>(j, "states");
    auto initial = get<std::vector<State>>(j, "initial");
    auto mode_text = get<std::string>(j, "mode");
    if (mode_text != "deterministic" && mode_text != "nondeterministic") bad("unknown mode \"" + mode_text + "\"");
    auto mode = mode_text == "deterministic" ? AdviceAutomaton::Mode::kDeterministic
                                             : AdviceAutomaton::Mode::kNondeterministic;
    std::vector<AdviceSlice> slices;
    const auto& list = field(j, "slices");
    for (std::size_t n = 0; n < list.size(); ++n) {
      const auto& s = list[n];
      if (get<std::size_t>(s, "n") != n) bad("slices must be listed for n = 0, 1, 2, ...");
      const auto& delta = field(s, "delta");
      if (!delta.is_array() || delta.size() != n) bad("slice " + std::to_string(n) + " needs n positions");
      auto acc = bools(s, "accepting");
      if (acc.size() != states) bad("slice " + std::to_string(n) + ": accepting needs one entry per state");
      slices.push_back(AdviceSlice::build(
          n, states, alphabet.size(),
          [&](std::size_t i, State q, Letter x, std::vector<State>& out) {
            const auto& cell = delta.at(i).at(q).at(x);
            for (const auto& t : cell) {
              auto v = t.get<State>();
              if (v >= states) bad("transition target out of range");
              out.push_back(v);
            }
          },
          std::move(acc)));
    }
    a = AdviceAutomaton::from_tables(alphabet, states, std::move(initial), mode, std::move(slices));
  } else {
    bad("unknown automaton presentation \"" + pres + "\"");
  }
  if (j.contains("state_names")) a = a.with_state_names(get<std::vector<std::string>>(j, "state_names"));
  return a;
}

Json to_json(const SliceStructure& s) {
  Json reps = Json::array();
  for (const auto& row : s.reps) {
    Json r = Json::array();
    for (const auto& w : row) r.push_back(word_text(w));
    reps.push_back(r);
  }
  return Json{{"alphabet", to_json(s.alphabet)}, {"n", s.n},     {"counts", s.counts},
              {"reps", reps},                    {"tau", s.tau}, {"acc", s.acc}};
}

SliceStructure slice_structure_from_json(const Json& j) {
  SliceStructure s;
  s.alphabet = alphabet_from_json(field(j, "alphabet"));
  s.n = get<std::size_t>(j, "n");
  s.counts = get<std::vector<std::size_t>>(j, "counts");
  s.tau = get<std::vector<std::vector<std::uint32_t>>>(j, "tau");
  s.acc = get<std::vector<std::uint32_t>>(j, "acc");
  for (const auto& row : field(j, "reps")) {
    std::vector<Word> r;
    for (const auto& w : row) r.push_back(word_from_text(s.alphabet, w.get<std::string>()));
    s.reps.push_back(std::move(r));
  }
  const std::size_t k = s.alphabet.size();
  if (s.counts.size() != s.n + 1 || s.reps.size() != s.n + 1 || s.tau.size() != s.n)
    bad("slice structure: counts and reps need n + 1 rows, tau needs n");
  for (std::size_t i = 0; i <= s.n; ++i) {
    if (s.reps[i].size() != s.counts[i]) bad("slice structure: reps and counts disagree");
    for (const auto& w : s.reps[i])
      if (w.size() != i) bad("slice structure: representative of the wrong length");
  }
  for (std::size_t i = 0; i < s.n; ++i) {
    if (s.tau[i].size() != s.counts[i] * k) bad("slice structure: tau row has the wrong size");
    for (auto t : s.tau[i])
      if (t >= s.counts[i + 1]) bad("slice structure: tau leaves its range");
  }
  for (auto a : s.acc)
    if (a >= s.counts[s.n]) bad("slice structure: accepting class out of range");
  return s;
}

Json to_json(const SyntacticPredicate& p) {
  Json letters = Json::array();
  for (const auto& l : p.letters) {
    Json x{{"sources", l.sources}, {"targets", l.targets}, {"tau", l.tau}};
    if (l.acc) x["acc"] = *l.acc;
    letters.push_back(x);
  }
  return Json{{"alphabet", to_json(p.alphabet)},
              {"n", p.n},
              {"k", p.k},
              {"letters", letters},
              {"epsilon_accept", p.epsilon_accept}};
}

SyntacticPredicate synpred_from_json(const Json& j) {
  SyntacticPredicate p;
  p.alphabet = alphabet_from_json(field(j, "alphabet"));
  p.n = get<std::size_t>(j, "n");
  p.k = get<std::size_t>(j, "k");
  p.epsilon_accept = get<bool>(j, "epsilon_accept");
  for (const auto& x : field(j, "letters")) {
    SynPredLetter l;
    l.sources = get<std::size_t>(x, "sources");
    l.targets = get<std::size_t>(x, "targets");
    l.tau = get<std::vector<std::uint32_t>>(x, "tau");
    if (x.contains("acc")) l.acc = get<std::vector<std::uint32_t>>(x, "acc");
    if (l.tau.size() != l.sources * p.alphabet.size()) bad("synpred letter: tau has the wrong size");
    for (auto t : l.tau)
      if (t >= l.targets) bad("synpred letter: tau leaves its range");
    if (l.sources > p.k || l.targets > p.k) bad("synpred letter: class count exceeds k");
    p.letters.push_back(std::move(l));
  }
  if (p.letters.size() != p.n) bad("synpred: needs one letter per position");
  for (std::size_t i = 0; i < p.letters.size(); ++i) {
    if (i + 1 < p.letters.size() && p.letters[i].targets != p.letters[i + 1].sources)
      bad("synpred: consecutive letters do not chain");
    if (p.letters[i].acc.has_value() != (i + 1 == p.letters.size()))
      bad("synpred: only the last letter carries accepting classes");
  }
  return p;
}

Json to_json(const PeriodicityCertificate& c) {
  return Json{{"threshold", c.threshold}, {"period", c.period}, {"window", c.window}};
}

Json to_json(const RegularityProbe& p) {
  Json out{{"found", p.found},           {"n_max", p.n_max},     {"period_max", p.period_max},
           {"refuted", p.refuted},       {"message", p.message}};
  if (p.found) {
    out["n0"] = p.n0;
    out["period"] = p.period;
  }
  if (p.dfa) out["dfa"] = to_json(*p.dfa);
  return out;
}

Json to_json(const MorphicRegularity& r) {
  Json out{{"verdict", to_string(r.verdict)},
           {"n_max", r.n_max},
           {"period_max", r.period_max},
           {"message", r.message}};
  if (r.dfa) out["dfa"] = to_json(*r.dfa);
  if (r.stream_certificate) out["stream_certificate"] = to_json(*r.stream_certificate);
  if (r.probe) out["probe"] = to_json(*r.probe);
  return out;
}

Json to_json(const SubstitutionResult& r) {
  Json preds = Json::object();
  for (std::size_t j = 0; j < r.predicates.size(); ++j) preds[r.names[j]] = to_json(r.predicates[j]);
  return Json{{"predicates", preds},
              {"agreement", to_json(r.agreement.dfa)},
              {"target", to_json(r.target)},
              {"target_synthesized", r.target_synthesized},
              {"n_check", r.n_check},
              {"verified", r.verified},
              {"report", r.report}};
}

Json to_json(const CraneBeachResult& r) {
  Json out{{"neutral", r.neutral},
           {"verified", r.verified},
           {"inconclusive", r.inconclusive},
           {"message", r.message}};
  if (r.counterexample)
    out["counterexample"] = Json{{"u", word_text(r.counterexample->first)}, {"v", word_text(r.counterexample->second)}};
  if (r.offending) out["offending"] = word_text(*r.offending);
  if (r.dfa) out["dfa"] = to_json(*r.dfa);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  auto text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot move output into place at " + path.string());
  }
}

}  // namespace advreg
