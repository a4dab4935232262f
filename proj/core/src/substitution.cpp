#include "advreg/substitution.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "advreg/compile.hpp"
#include "advreg/error.hpp"

namespace advreg {

namespace {

std::string quoted(const Word& w) { return "'" + (w.empty() ? std::string("ε") : w.str()) + "'"; }

void require_plain(const Dfa& d, const char* what) {
  if (d.alphabet().tracks() != 0) throw Error(ErrorKind::kAlphabetMismatch, std::string(what) + " must not carry tracks");
}

// The j-th track of a one-letter-base automaton whose other tracks are
// irrelevant, as an automaton over {0,1}.
Dfa track_as_bits(const Dfa& d, std::uint32_t j) {
  const std::uint32_t l = d.alphabet().tracks();
  std::vector<std::vector<State>> delta(d.num_states(), std::vector<State>(2));
  TrackBits bits(l, 0);
  for (State q = 0; q < d.num_states(); ++q)
    for (std::uint8_t b = 0; b < 2; ++b) {
      bits[j] = b;
      delta[q][b] = d.step(q, 0, bits);
    }
  return minimize(Dfa::from_table(bit_alphabet(), d.initial(), delta, d.accepting_states()));
}

}  // namespace

AgreementLanguage agreement_language(const Formula& f, const Dfa& target) {
  require_plain(target, "target automaton");
  auto c = compile(f, target.alphabet().base());
  const auto l = static_cast<std::uint32_t>(c.tracks.size());
  auto disagreement = product(c.dfa, with_tracks(target, l), BoolOp::kXor);
  return {c.tracks, minimize(complement(project_base(disagreement)))};
}

namespace {

SubstitutionResult substitute_impl(const Formula& f, const Alphabet& alphabet, const Interpretation& interp,
                                   std::size_t n_check, const std::optional<Dfa>& target, std::size_t period_max,
                                   bool probed) {
  auto c = compile(f, alphabet);
  auto adv = specialize(c.dfa, c.tracks, interp);
  auto lang = Language::automaton(adv);

  SubstitutionResult r;
  r.n_check = n_check;
  if (target) {
    require_plain(*target, "target automaton");
    if (!(target->alphabet().base() == alphabet))
      throw Error(ErrorKind::kAlphabetMismatch, "target automaton is over a different alphabet");
    if (auto w = first_disagreement(lang, *target, n_check))
      throw Error(ErrorKind::kPrecondition, "target differs from the language of the formula on " + quoted(*w));
    r.target = *target;
    r.target_synthesized = probed;
  } else {
    auto probe = synpred_regularity_probe(lang, n_check, period_max);
    if (!probe.found || !probe.dfa)
      throw Error(ErrorKind::kPrecondition, "no regular target: " + probe.message);
    r.target = *probe.dfa;
    r.target_synthesized = true;
  }

  r.agreement = agreement_language(f, r.target);
  if (auto gap = first_missing_length(r.agreement.dfa))
    throw Error(ErrorKind::kPrecondition,
                "no advice of length " + std::to_string(*gap) + " yields the target language");
  r.choice = lexmin_per_length(r.agreement.dfa);

  const auto l = static_cast<std::uint32_t>(c.tracks.size());
  r.names = c.tracks;
  for (std::uint32_t j = 0; j < l; ++j) {
    std::vector<std::uint32_t> others;
    for (std::uint32_t t = 0; t < l; ++t)
      if (t != j) others.push_back(t);
    auto single = track_as_bits(minimize(project_tracks(r.choice, others)), j);
    r.predicates.push_back(MonadicPredicate::from_dfa(c.tracks[j], std::move(single)));
  }

  // L_{φ,Q̄} from the chosen advice word, compared exactly with the target.
  std::vector<std::uint32_t> all(l);
  for (std::uint32_t t = 0; t < l; ++t) all[t] = t;
  auto with_choice = product(c.dfa, lift_base(r.choice, alphabet), BoolOp::kAnd);
  auto defined = minimize(with_tracks(project_tracks(with_choice, all), 0));
  auto eq = equivalent(defined, r.target);
  r.verified = eq.equal;

  std::ostringstream os;
  os << "target: " << (r.target_synthesized ? "synthesized" : "given") << ", " << r.target.num_states()
     << " states, agrees within bounds n <= " << n_check << "\n";
  os << "agreement language: " << r.agreement.dfa.num_states() << " states\n";
  for (std::size_t j = 0; j < r.predicates.size(); ++j)
    os << "  " << r.names[j] << " -> regular, " << r.predicates[j].dfa().num_states() << " states\n";
  os << "substituted formula defines the target: " << (r.verified ? "yes" : "no");
  if (!r.verified && eq.counterexample) os << " (differs on '" << eq.counterexample->str() << "')";
  os << "\n";
  r.report = os.str();
  if (!r.verified) throw Error(ErrorKind::kIntegrity, "substituted formula does not define the target\n" + r.report);
  return r;
}

}  // namespace

SubstitutionResult substitute(const Formula& f, const Alphabet& alphabet, const Interpretation& interp,
                              std::size_t n_check, const std::optional<Dfa>& target, std::size_t period_max) {
  return substitute_impl(f, alphabet, interp, n_check, target, period_max, false);
}

StraubingReport straubing_check(const Formula& f, const Alphabet& alphabet, const Interpretation& interp,
                                std::size_t n_check, const std::optional<Dfa>& target, std::size_t period_max) {
  StraubingReport rep;
  rep.tags = classify_fragment(f);
  std::optional<Dfa> t = target;
  bool synthesized = false;
  try {
    if (!t) {
      auto c = compile(f, alphabet);
      auto probe = synpred_regularity_probe(Language::automaton(specialize(c.dfa, c.tracks, interp)), n_check,
                                            period_max);
      if (!probe.found) {
        rep.message = "language looks non-regular within bounds: " + probe.message;
        rep.probe = std::move(probe);
        return rep;
      }
      t = probe.dfa;
      synthesized = true;
      rep.probe = std::move(probe);
    }
    auto res = substitute_impl(f, alphabet, interp, n_check, t, period_max, synthesized);
    rep.ok = true;
    rep.message = "regular predicates found for " + rep.tags.str();
    rep.result = std::move(res);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kPrecondition && e.kind() != ErrorKind::kIntegrity) throw;
    rep.ok = false;
    rep.message = e.what();
  }
  return rep;
}

CraneBeachResult crane_beach(const Language& l, Letter e, std::size_t n_check) {
  const Alphabet& a = l.alphabet();
  const std::size_t k = a.size();
  if (e >= k) throw Error(ErrorKind::kPrecondition, "neutral letter is not in the alphabet");
  if (l.bound() && *l.bound() < n_check + 1)
    throw Error(ErrorKind::kBoundExceeded, "language bound is below n_check + 1");
  CraneBeachResult r;

  auto word = [&](std::span<const Letter> s) { return Word(a, Symbols(s.begin(), s.end())); };

  for (std::size_t m = 0; m <= n_check && !r.counterexample; ++m)
    for_each_word(k, m, [&](std::span<const Letter> s) {
      if (r.counterexample) return;
      bool in = l.member(word(s));
      for (std::size_t cut = 0; cut <= m; ++cut) {
        Symbols x(s.begin(), s.begin() + cut);
        x.push_back(e);
        x.insert(x.end(), s.begin() + cut, s.end());
        if (l.member(Word(a, x)) != in) {
          r.counterexample = {word(s.subspan(0, cut)), word(s.subspan(cut))};
          return;
        }
      }
    });
  if (r.counterexample) {
    r.message = "letter " + a.letter(e) + " is not neutral: u = " + quoted(r.counterexample->first) +
                ", v = " + quoted(r.counterexample->second);
    return r;
  }
  r.neutral = true;

  // Classes of ∼_L among words of length ≤ r_max, told apart by suffixes of
  // length ≤ p.
  const std::size_t r_max = n_check / 2;
  const std::size_t p = n_check > r_max ? n_check - r_max - 1 : 0;
  std::vector<Symbols> suffixes;
  for (std::size_t m = 0; m <= p; ++m)
    for_each_word(k, m, [&](std::span<const Letter> s) { suffixes.emplace_back(s.begin(), s.end()); });
  auto profile = [&](const Symbols& u) {
    std::vector<bool> out;
    out.reserve(suffixes.size());
    for (const auto& w : suffixes) {
      Symbols x = u;
      x.insert(x.end(), w.begin(), w.end());
      out.push_back(l.member(Word(a, x)));
    }
    return out;
  };

  std::map<std::vector<bool>, State> index;
  std::vector<Symbols> reps;
  std::vector<bool> accepting;
  std::vector<std::vector<State>> delta;
  std::deque<State> queue;
  auto add = [&](Symbols u, std::vector<bool> prof) {
    State id = static_cast<State>(reps.size());
    accepting.push_back(prof[0]);
    index.emplace(std::move(prof), id);
    reps.push_back(std::move(u));
    delta.emplace_back(k, 0);
    queue.push_back(id);
    return id;
  };
  add({}, profile({}));
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Letter c = 0; c < k; ++c) {
      Symbols u = reps[q];
      u.push_back(c);
      auto prof = profile(u);
      auto it = index.find(prof);
      if (it != index.end()) {
        delta[q][c] = it->second;
        continue;
      }
      if (u.size() > r_max) {
        r.inconclusive = true;
        r.offending = Word(a, u);
        r.message = "letter " + a.letter(e) + " is neutral within bounds; class of " + quoted(*r.offending) +
                    " is new beyond representative length " + std::to_string(r_max) + " (inconclusive)";
        return r;
      }
      delta[q][c] = add(std::move(u), std::move(prof));
    }
  }

  r.dfa = minimize(Dfa::from_table(a, 0, delta, accepting));
  if (auto bad = first_disagreement(l, *r.dfa, n_check)) {
    r.inconclusive = true;
    r.offending = *bad;
    r.message = "letter " + a.letter(e) + " is neutral within bounds; learned automaton fails on " + quoted(*bad) +
                " (inconclusive)";
    return r;
  }
  r.verified = true;
  r.message = "letter " + a.letter(e) + " is neutral within bounds; learned automaton with " +
              std::to_string(r.dfa->num_states()) + " states agrees with the language within bounds n <= " +
              std::to_string(n_check);
  return r;
}

}  // namespace advreg
