#include <CLI11.hpp>

#include <cassert>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "advreg/advice.hpp"
#include "advreg/compile.hpp"
#include "advreg/error.hpp"
#include "advreg/json_io.hpp"
#include "advreg/morphic.hpp"
#include "advreg/nerode.hpp"
#include "advreg/one_scan.hpp"
#include "advreg/substitution.hpp"

namespace fs = std::filesystem;
using namespace advreg;

namespace {

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kError = 2;
constexpr int kBounded = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::size_t work_cap = std::size_t{1} << 20;
  std::string json_out;
  std::string dot_out;
};

void emit_json(const Globals& g, const Json& j) {
  if (!g.json_out.empty()) write_file_atomic(g.json_out, j.dump(2) + "\n");
}

void emit_dot(const Globals& g, const std::optional<Dfa>& d, const std::string& name) {
  if (g.dot_out.empty()) return;
  if (!d) {
    std::cerr << "note: no automaton to draw; " << g.dot_out << " not written\n";
    return;
  }
  write_file_atomic(g.dot_out, to_dot(*d, name));
}

Alphabet parse_alphabet(const std::string& text) {
  if (text.find(',') == std::string::npos) return Alphabet::of_chars(text);
  std::vector<std::string> letters;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) letters.push_back(tok);
  return Alphabet(std::move(letters));
}

struct FormulaInput {
  Formula formula;
  Interpretation interp;
  std::optional<Alphabet> alphabet;
};

// "builtin:prime" is the run formula of the prime example automaton.
FormulaInput load_formula(const std::string& formula, const std::string& preds, const std::string& alphabet) {
  FormulaInput in;
  if (formula == "builtin:prime") {
    auto rf = to_formula(builtin_prime_example());
    in.formula = rf.formula;
    in.interp = rf.interpretation;
    in.alphabet = builtin_prime_example().alphabet();
  } else {
    in.formula = parse_formula(read_text_file(formula));
  }
  if (!preds.empty()) {
    fs::path p(preds);
    for (auto& [name, pred] : interpretation_from_json(read_json_file(p), p.parent_path())) in.interp[name] = pred;
  }
  for (const auto& name : in.formula.predicates())
    if (!in.interp.count(name)) throw Error(ErrorKind::kMissingInterpretation, "interpretation missing " + name);
  if (!alphabet.empty()) in.alphabet = parse_alphabet(alphabet);
  return in;
}

Alphabet alphabet_for(const FormulaInput& in, const std::string& extra_word = {}) {
  if (in.alphabet) return *in.alphabet;
  std::set<std::string> letters;
  for (const auto& l : in.formula.letters()) letters.insert(l);
  for (char c : extra_word) letters.insert(std::string(1, c));
  if (letters.empty()) letters.insert("a");
  return Alphabet(std::vector<std::string>(letters.begin(), letters.end()));
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

// A built-in name, "builtin:NAME", or a language file.
Language load_language(const std::string& spec) {
  std::string name = spec.rfind("builtin:", 0) == 0 ? spec.substr(8) : spec;
  auto names = builtin_language_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return builtin_language(name);
  if (spec.rfind("builtin:", 0) == 0) throw Error(ErrorKind::kPrecondition, "unknown built-in language " + name);

  fs::path path(spec);
  auto j = read_json_file(path);
  auto dir = path.parent_path();
  auto sub = [&](const char* key) { return j[key].is_string() ? read_json_file(resolve(dir, j[key])) : j[key]; };
  if (j.contains("builtin")) return builtin_language(j["builtin"].get<std::string>());
  if (j.contains("dfa")) {
    auto d = dfa_from_json(sub("dfa"));
    if (d.alphabet().tracks() != 0) throw Error(ErrorKind::kFormat, "a language automaton must not carry tracks");
    return Language::dfa(d);
  }
  if (j.contains("advice_automaton")) return Language::automaton(advice_from_json(sub("advice_automaton"), dir));
  if (j.contains("formula")) {
    auto f = parse_formula(read_text_file(resolve(dir, j["formula"].get<std::string>())));
    Interpretation interp;
    if (j.contains("preds")) interp = interpretation_from_json(sub("preds"), dir);
    for (const auto& p : f.predicates())
      if (!interp.count(p)) throw Error(ErrorKind::kMissingInterpretation, "interpretation missing " + p);
    Alphabet a = j.contains("alphabet")
                     ? (j["alphabet"].is_string() ? parse_alphabet(j["alphabet"]) : alphabet_from_json(j["alphabet"]))
                     : alphabet_for(FormulaInput{f, {}, std::nullopt});
    return Language::formula(f, interp, a);
  }
  if (j.value("kind", "") == "advice_automaton") return Language::automaton(advice_from_json(j, dir));
  if (j.contains("delta")) return Language::dfa(dfa_from_json(j));
  throw Error(ErrorKind::kFormat, spec + ": expected one of builtin, dfa, advice_automaton, formula");
}

Hd0lSystem load_system(const std::string& spec) {
  auto names = Hd0lSystem::builtin_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return Hd0lSystem::builtin(spec);
  return hd0l_from_json(read_json_file(spec));
}

std::string reps_text(const std::vector<Word>& reps) {
  std::string s;
  for (std::size_t i = 0; i < reps.size(); ++i) s += (i ? "," : "") + word_text(reps[i]);
  return s;
}

// ---- commands ----

int cmd_eval(const Globals&, const std::string& formula, const std::string& preds, const std::string& alphabet,
             const std::string& word) {
  auto in = load_formula(formula, preds, alphabet);
  auto a = alphabet_for(in, word);
  auto u = word_from_text(a, word);
  bool verdict;
  if (u.size() > 10) {
    auto c = compile(in.formula, a);
    verdict = specialize(c.dfa, c.tracks, in.interp).run(u);
#ifndef NDEBUG
    if (u.size() <= 14) assert(verdict == eval_direct(in.formula, in.interp, u));
#endif
  } else {
    verdict = eval_direct(in.formula, in.interp, u);
#ifndef NDEBUG
    auto c = compile(in.formula, a);
    assert(verdict == specialize(c.dfa, c.tracks, in.interp).run(u));
#endif
  }
  std::cout << (verdict ? "accept" : "reject") << "\t" << word_text(u) << "\n";
  return verdict ? kAccept : kReject;
}

int cmd_nerode(const Globals& g, const std::string& lang, std::size_t n, const std::string& mode) {
  auto l = load_language(lang);
  if (mode == "unsliced") {
    Json rows = Json::array();
    for (std::size_t i = 0; i <= n; ++i) {
      auto p = nerode_classes_unsliced(l, i, n, g.work_cap);
      std::cout << i << "\t" << p.reps.size() << "\t" << reps_text(p.reps) << "\n";
      Json reps = Json::array();
      for (const auto& w : p.reps) reps.push_back(word_text(w));
      rows.push_back(Json{{"i", i}, {"count", p.reps.size()}, {"reps", reps}});
    }
    emit_json(g, Json{{"mode", "unsliced"}, {"p_max", n}, {"rows", rows}});
    return kAccept;
  }
  SliceStructure s;
  if (mode == "bruteforce")
    s = nerode_slices_bruteforce(l, n, g.work_cap);
  else
    s = slice_structure(l, n);
  for (std::size_t i = 0; i <= n; ++i) std::cout << i << "\t" << s.counts[i] << "\t" << reps_text(s.reps[i]) << "\n";
  emit_json(g, to_json(s));
  return kAccept;
}

int cmd_synpred(const Globals& g, const std::string& lang, std::size_t n, const std::string& word) {
  auto l = load_language(lang);
  auto p = syntactic_predicate(l, n);
  std::cout << "n = " << p.n << ", k = " << p.k << ", empty word " << (p.epsilon_accept ? "accepted" : "rejected")
            << "\n";
  for (std::size_t i = 0; i < p.letters.size(); ++i) {
    const auto& x = p.letters[i];
    std::cout << "letter " << i << ": " << x.sources << " -> " << x.targets << " classes";
    if (x.acc) {
      std::cout << ", accepting {";
      for (std::size_t j = 0; j < x.acc->size(); ++j) std::cout << (j ? "," : "") << (*x.acc)[j];
      std::cout << "}";
    }
    std::cout << "\n";
  }
  emit_json(g, to_json(p));
  if (!word.empty()) {
    bool in = membership_via_synpred(p, word_from_text(l.alphabet(), word));
    std::cout << (in ? "accept" : "reject") << "\t" << word << "\n";
    return in ? kAccept : kReject;
  }
  return kAccept;
}

int cmd_regularity(const Globals& g, const std::string& lang, std::size_t n_max, std::size_t period_max) {
  auto l = load_language(lang);
  auto probe = synpred_regularity_probe(l, n_max, period_max);
  emit_json(g, to_json(probe));
  emit_dot(g, probe.dfa, "regular");
  if (probe.found) {
    std::cout << "regular within bounds: n0 = " << probe.n0 << ", period = " << probe.period << ", automaton with "
              << probe.dfa->num_states() << " states agrees with the language on every length <= " << n_max
              << "\n";
    return kAccept;
  }
  std::cout << probe.message << " (within bounds; not a proof of non-regularity)\n";
  return kBounded;
}

int cmd_substitute(const Globals& g, const std::string& formula, const std::string& preds,
                   const std::string& alphabet, const std::string& target, std::size_t n_check,
                   std::size_t period_max) {
  auto in = load_formula(formula, preds, alphabet);
  auto a = alphabet_for(in);
  std::optional<Dfa> t;
  if (!target.empty()) t = dfa_from_json(read_json_file(target));
  auto rep = straubing_check(in.formula, a, in.interp, n_check, t, period_max);
  std::cout << "fragment: " << rep.tags.str() << "\n";
  if (!rep.ok) {
    std::cout << rep.message << "\n";
    if (rep.probe) emit_json(g, Json{{"ok", false}, {"message", rep.message}, {"probe", to_json(*rep.probe)}});
    return rep.probe && !rep.probe->found ? kBounded : kError;
  }
  const auto& r = *rep.result;
  std::cout << r.report;
  std::cout << (r.verified ? "exact equivalence verified" : "equivalence check failed") << "\n";
  Json out = Json::object();
  for (std::size_t j = 0; j < r.predicates.size(); ++j) out[r.names[j]] = to_json(r.predicates[j]);
  emit_json(g, out);
  emit_dot(g, r.target, "target");
  return r.verified ? kAccept : kError;
}

int cmd_crane_beach(const Globals& g, const std::string& lang, const std::string& neutral, std::size_t n_check) {
  auto l = load_language(lang);
  if (!l.alphabet().contains(neutral)) throw Error(ErrorKind::kPrecondition, "letter " + neutral + " not in alphabet");
  auto r = crane_beach(l, l.alphabet().index_of(neutral), n_check);
  std::cout << r.message << "\n";
  emit_json(g, r.dfa && r.verified ? to_json(*r.dfa) : to_json(r));
  emit_dot(g, r.dfa, "crane_beach");
  return r.verified ? kAccept : kBounded;
}

int cmd_morphic_gen(const Globals& g, const std::string& system, std::size_t n) {
  auto s = load_system(system);
  auto w = generate_prefix(s, n);
  std::cout << w.str() << "\n";
  emit_json(g, Json{{"system", to_json(s)}, {"n", n}, {"prefix", w.str()}});
  return kAccept;
}

int cmd_morphic_periodicity(const Globals& g, const std::string& system, std::size_t t_max, std::size_t p_max,
                            std::size_t window) {
  auto s = load_system(system);
  auto c = bounded_periodicity(s, t_max, p_max, window);
  Json out{{"t_max", t_max}, {"p_max", p_max}, {"window", window}};
  if (c) {
    out["certificate"] = to_json(*c);
    std::cout << "ultimately periodic: threshold " << c->threshold << ", period " << c->period
              << " (checked on a window of " << c->window << ")\n";
  } else {
    std::cout << "no period found within bounds (t <= " << t_max << ", p <= " << p_max << ", window " << window
              << ")\n";
  }
  emit_json(g, out);
  return c ? kAccept : kBounded;
}

int cmd_morphic_regularity(const Globals& g, const std::string& formula, const std::string& preds,
                           const std::string& alphabet, std::size_t n_max, std::size_t period_max) {
  auto in = load_formula(formula, preds, alphabet);
  auto r = morphic_regularity(in.formula, alphabet_for(in), in.interp, n_max, period_max);
  std::cout << r.message << "\n";
  if (r.verdict == MorphicRegularity::Verdict::kNoPeriodFound)
    std::cout << "no period <= " << period_max << " within n <= " << n_max << " (within bounds)\n";
  emit_json(g, to_json(r));
  emit_dot(g, r.dfa, "morphic");
  return r.verdict == MorphicRegularity::Verdict::kRegular ? kAccept : kBounded;
}

// Random advice automata through determinize, one-scan programs and the
// class automaton, all compared on every word up to n.
int cmd_random_check(const Globals& g, std::size_t count, std::size_t states, std::size_t n) {
  std::mt19937_64 rng(g.seed);
  const Alphabet a = Alphabet::of_chars("ab");
  std::bernoulli_distribution coin(0.35), acc(0.4);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<AdviceSlice> slices;
    for (std::size_t len = 0; len <= n; ++len) {
      std::vector<bool> f(states);
      for (std::size_t q = 0; q < states; ++q) f[q] = acc(rng);
      slices.push_back(AdviceSlice::build(
          len, states, 2,
          [&](std::size_t, State, Letter, std::vector<State>& out) {
            for (State r = 0; r < states; ++r)
              if (coin(rng)) out.push_back(r);
          },
          f));
    }
    auto nd = AdviceAutomaton::from_tables(a, states, {0}, AdviceAutomaton::Mode::kNondeterministic, slices);
    auto det = determinize(nd);
    ToProgramOptions opts;
    opts.monoid_cap = g.work_cap;
    auto prog = automaton_to_program(det, opts);
    auto back = program_to_automaton(prog);
    auto cls = class_automaton(Language::automaton(det), n);
    bool ok = bounded_equivalent(nd, det, n).equal && bounded_equivalent(det, back, n).equal &&
              bounded_equivalent(det, cls, n).equal;
    if (!ok) ++failures;
    std::cout << "automaton " << t << ": " << det.num_states() << " subsets, monoid " << prog.monoid().size()
              << ", classes " << cls.num_states() << ", " << (ok ? "agree" : "DISAGREE") << " on n <= " << n << "\n";
  }
  emit_json(g, Json{{"seed", g.seed}, {"count", count}, {"failures", failures}});
  return failures == 0 ? kAccept : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automata and logic with advice"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized commands")->default_val(1);
  app.add_option("--work-cap", g.work_cap, "Work limit for brute-force searches and monoid closure")
      ->default_val(std::size_t{1} << 20);
  app.add_option("--json-out", g.json_out, "Write the machine-readable result here");
  app.add_option("--dot-out", g.dot_out, "Write a DOT rendering of the resulting automaton here");

  std::string formula, preds, alphabet, word, lang, mode = "exact", target, neutral, system;
  std::size_t n = 4, n_max = 24, period_max = 8, n_check = 10, t_max = 64, p_max = 32, window = 4096;
  std::size_t count = 10, states = 3;

  auto* eval = app.add_subcommand("eval", "Decide u, P ⊨ φ for one word");
  eval->add_option("--formula", formula, "Formula file, or builtin:prime")->required();
  eval->add_option("--preds", preds, "Predicate JSON");
  eval->add_option("--alphabet", alphabet, "Letters, e.g. abc or a,b,c");
  eval->add_option("--word", word, "Word to test (ε for the empty word)")->required();

  auto* nerode = app.add_subcommand("nerode", "Classes of the sliced Nerode congruence as TSV");
  nerode->add_option("--lang", lang, "Built-in name or language file")->required();
  nerode->add_option("--n", n, "Word length");
  nerode->add_option("--mode", mode, "exact, bruteforce or unsliced")
      ->check(CLI::IsMember({"exact", "bruteforce", "unsliced"}));

  auto* synpred = app.add_subcommand("synpred", "Syntactic predicate at one length");
  synpred->add_option("--lang", lang)->required();
  synpred->add_option("--n", n);
  synpred->add_option("--word", word, "Also decide membership of this word via the predicate");

  auto* regularity = app.add_subcommand("regularity", "Bounded search for a regular description");
  regularity->add_option("--lang", lang)->required();
  regularity->add_option("--n-max", n_max);
  regularity->add_option("--period-max", period_max);

  auto* substitute = app.add_subcommand("substitute", "Replace predicates by regular ones");
  substitute->add_option("--formula", formula)->required();
  substitute->add_option("--preds", preds);
  substitute->add_option("--alphabet", alphabet);
  substitute->add_option("--target", target, "Dfa JSON of the language; synthesized when absent");
  substitute->add_option("--n-check", n_check);
  substitute->add_option("--period-max", period_max);

  auto* crane = app.add_subcommand("crane-beach", "Neutral letter check and learned automaton");
  crane->add_option("--lang", lang)->required();
  crane->add_option("--neutral", neutral)->required();
  crane->add_option("--n-check", n_check);

  auto* morphic = app.add_subcommand("morphic", "Morphic words");
  morphic->require_subcommand(1);
  auto* gen = morphic->add_subcommand("gen", "Prefix of the limit word");
  gen->add_option("--system", system, "Built-in name or system JSON")->required();
  gen->add_option("--n", n);
  auto* period = morphic->add_subcommand("periodicity", "Bounded ultimate periodicity search");
  period->add_option("--system", system)->required();
  period->add_option("--t-max", t_max);
  period->add_option("--p-max", p_max);
  period->add_option("--window", window);
  auto* mreg = morphic->add_subcommand("regularity", "Regularity of a language with morphic predicates");
  mreg->add_option("--formula", formula)->required();
  mreg->add_option("--preds", preds)->required();
  mreg->add_option("--alphabet", alphabet);
  mreg->add_option("--n-max", n_max);
  mreg->add_option("--period-max", period_max);

  auto* random = app.add_subcommand("random-check", "Cross-check conversions on random automata");
  random->add_option("--count", count);
  random->add_option("--states", states);
  random->add_option("--n", n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  }

  try {
    if (*eval) return cmd_eval(g, formula, preds, alphabet, word);
    if (*nerode) return cmd_nerode(g, lang, n, mode);
    if (*synpred) return cmd_synpred(g, lang, n, word);
    if (*regularity) return cmd_regularity(g, lang, n_max, period_max);
    if (*substitute) return cmd_substitute(g, formula, preds, alphabet, target, n_check, period_max);
    if (*crane) return cmd_crane_beach(g, lang, neutral, n_check);
    if (*gen) return cmd_morphic_gen(g, system, n);
    if (*period) return cmd_morphic_periodicity(g, system, t_max, p_max, window);
    if (*mreg) return cmd_morphic_regularity(g, formula, preds, alphabet, n_max, period_max);
    if (*random) return cmd_random_check(g, count, states, n);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
