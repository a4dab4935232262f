#include "advreg/morphic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "advreg/advice.hpp"
#include "advreg/compile.hpp"
#include "advreg/error.hpp"

namespace advreg {

namespace {

Symbols apply(const std::vector<Symbols>& h, const Symbols& w, std::size_t cap) {
  Symbols out;
  for (Letter c : w) {
    out.insert(out.end(), h[c].begin(), h[c].end());
    if (out.size() >= cap) break;
  }
  return out;
}

bool is_prefix(const Symbols& a, const Symbols& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

Hd0lSystem Hd0lSystem::create(Alphabet internal, std::vector<Symbols> sigma, Letter seed, Alphabet output,
                              std::vector<Symbols> coding) {
  const std::size_t k = internal.size();
  if (sigma.size() != k || coding.size() != k)
    throw Error(ErrorKind::kPrecondition, "morphism must give an image for every internal letter");
  if (seed >= k) throw Error(ErrorKind::kPrecondition, "seed is not an internal letter");
  for (std::size_t c = 0; c < k; ++c) {
    const auto& name = internal.letter(static_cast<Letter>(c));
    if (sigma[c].empty()) throw Error(ErrorKind::kPrecondition, "sigma erases " + name);
    if (coding[c].empty()) throw Error(ErrorKind::kPrecondition, "coding erases " + name);
    for (Letter l : sigma[c])
      if (l >= k) throw Error(ErrorKind::kPrecondition, "sigma(" + name + ") leaves the internal alphabet");
    for (Letter l : coding[c])
      if (l >= output.size()) throw Error(ErrorKind::kPrecondition, "coding(" + name + ") leaves the output alphabet");
  }
  if (sigma[seed].size() < 2 || sigma[seed][0] != seed)
    throw Error(ErrorKind::kPrecondition,
                "not prolongable: sigma(" + internal.letter(seed) + ") must start with it and be longer");

  // φ(σ^k(seed)) ⊑ φ(σ^{k+1}(seed)) for k ≤ 5
  constexpr std::size_t kCap = std::size_t{1} << 16;
  Symbols cur{seed};
  Symbols img = apply(coding, cur, kCap);
  for (int step = 0; step <= 5 && cur.size() < kCap; ++step) {
    Symbols next = apply(sigma, cur, kCap);
    Symbols next_img = apply(coding, next, kCap);
    if (next.size() < kCap && !is_prefix(img, next_img))
      throw Error(ErrorKind::kPrecondition, "prefixes of the generated words are not stable");
    cur = std::move(next);
    img = std::move(next_img);
  }

  Hd0lSystem s;
  s.internal_ = std::move(internal);
  s.output_ = std::move(output);
  s.sigma_ = std::move(sigma);
  s.coding_ = std::move(coding);
  s.seed_ = seed;
  return s;
}

Hd0lSystem Hd0lSystem::thue_morse() {
  auto b = Alphabet::of_chars("01");
  return create(b, {{0, 1}, {1, 0}}, 0, b, {{0}, {1}});
}

Hd0lSystem Hd0lSystem::a_b_omega() {
  return create(Alphabet::of_chars("ab"), {{0, 1}, {1}}, 0, Alphabet::of_chars("01"), {{1}, {0}});
}

Hd0lSystem Hd0lSystem::constant() {
  return create(Alphabet::of_chars("a"), {{0, 0}}, 0, Alphabet::of_chars("ab"), {{0}});
}

Hd0lSystem Hd0lSystem::fibonacci() {
  return create(Alphabet::of_chars("ab"), {{0, 1}, {0}}, 0, Alphabet::of_chars("01"), {{0}, {1}});
}

Hd0lSystem Hd0lSystem::builtin(const std::string& name) {
  if (name == "thue_morse") return thue_morse();
  if (name == "ab_omega") return a_b_omega();
  if (name == "constant") return constant();
  if (name == "fibonacci") return fibonacci();
  throw Error(ErrorKind::kPrecondition, "unknown morphic system '" + name + "'");
}

std::vector<std::string> Hd0lSystem::builtin_names() { return {"thue_morse", "ab_omega", "constant", "fibonacci"}; }

Word generate_prefix(const Hd0lSystem& s, std::size_t n) {
  // σ fixes the limit word x, so x = σ(x[0]) σ(x[1]) …: expand x in place.
  const auto& sigma = s.sigma();
  Symbols x = sigma[s.seed()];
  std::size_t j = 1;
  Symbols out;
  std::size_t coded = 0;
  while (out.size() < n) {
    if (coded == x.size()) {
      const auto& img = sigma[x[j++]];  // j < x.size() since |σ(seed)| ≥ 2
      x.insert(x.end(), img.begin(), img.end());
    }
    const auto& c = s.coding()[x[coded++]];
    out.insert(out.end(), c.begin(), c.end());
  }
  out.resize(n);
  return Word(s.output(), std::move(out));
}

MonadicPredicate morphic_predicate(const Hd0lSystem& s, Letter one_letter, std::string name) {
  if (one_letter >= s.output().size()) throw Error(ErrorKind::kPrecondition, "letter is not in the output alphabet");
  return MonadicPredicate::uniform(
      std::move(name),
      [s, one_letter](std::size_t n) {
        auto w = generate_prefix(s, n);
        TrackBits bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = w[i] == one_letter;
        return bits;
      },
      "morphic");
}

std::optional<PeriodicityCertificate> stream_periodicity(const std::vector<std::uint64_t>& w, std::size_t t_max,
                                                         std::size_t p_max, std::size_t w_len) {
  if (p_max == 0) throw Error(ErrorKind::kPrecondition, "period bound must be positive");
  if (w.size() < t_max + std::max(2 * p_max, w_len))
    throw Error(ErrorKind::kPrecondition, "stream is shorter than the certificate window");
  for (std::size_t t = 0; t <= t_max; ++t)
    for (std::size_t p = 1; p <= p_max; ++p) {
      const std::size_t win = std::max(2 * p, w_len);
      bool ok = true;
      for (std::size_t i = t; ok && i + p < t + win; ++i) ok = w[i] == w[i + p];
      if (ok) return PeriodicityCertificate{t, p, win};
    }
  return std::nullopt;
}

std::optional<PeriodicityCertificate> bounded_periodicity(const Hd0lSystem& s, std::size_t t_max, std::size_t p_max,
                                                          std::size_t w_len) {
  if (p_max == 0) throw Error(ErrorKind::kPrecondition, "period bound must be positive");
  auto w = generate_prefix(s, t_max + std::max(2 * p_max, w_len));
  std::vector<std::uint64_t> stream(w.symbols().begin(), w.symbols().end());
  return stream_periodicity(stream, t_max, p_max, w_len);
}

std::string to_string(MorphicRegularity::Verdict v) {
  switch (v) {
    case MorphicRegularity::Verdict::kRegular: return "regular-with-DFA";
    case MorphicRegularity::Verdict::kNoPeriodFound: return "no-period-found";
    case MorphicRegularity::Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

MorphicRegularity morphic_regularity(const Formula& f, const Alphabet& alphabet, const Interpretation& interp,
                                     std::size_t n_max, std::size_t period_max) {
  for (const auto& name : f.predicates()) {
    auto it = interp.find(name);
    if (it == interp.end()) throw Error(ErrorKind::kMissingInterpretation, "no interpretation for " + name);
    if (!it->second.is_uniform())
      throw Error(ErrorKind::kPrecondition, "predicate " + name + " is not uniform");
  }
  if (period_max == 0) throw Error(ErrorKind::kPrecondition, "period bound must be positive");

  MorphicRegularity r;
  r.n_max = n_max;
  r.period_max = period_max;
  auto c = compile(f, alphabet);
  auto adv = specialize(c.dfa, c.tracks, interp);
  auto lang = Language::automaton(adv);
  const Dfa& d = c.dfa;
  const std::size_t q_count = d.num_states();
  const std::size_t k = alphabet.size();

  // advice-letter stream: position i ↦ the step map under the bits at i
  const std::size_t t_max = n_max / 2;
  const std::size_t len = t_max + std::max(2 * period_max, n_max);
  std::vector<TrackBits> pred_bits;
  for (const auto& name : c.tracks) pred_bits.push_back(interp.at(name).eval(len));
  std::map<std::vector<State>, std::uint64_t> ids;
  std::vector<std::vector<State>> maps;
  std::vector<std::uint64_t> stream(len);
  TrackBits bits(c.tracks.size());
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = pred_bits[j][i];
    std::vector<State> m(q_count * k);
    for (State q = 0; q < q_count; ++q)
      for (Letter a = 0; a < k; ++a) m[q * k + a] = d.step(q, a, bits);
    auto [it, fresh] = ids.emplace(m, maps.size());
    if (fresh) maps.push_back(std::move(m));
    stream[i] = it->second;
  }
  r.stream_certificate = stream_periodicity(stream, t_max, period_max, n_max);

  std::ostringstream msg;
  if (r.stream_certificate) {
    const auto [t, p, win] = *r.stream_certificate;
    const std::size_t cols = t + p;
    std::vector<std::vector<State>> delta(cols * q_count, std::vector<State>(k));
    std::vector<bool> acc(cols * q_count);
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t next = j + 1 < cols ? j + 1 : t;
      const auto& m = maps[stream[j]];
      for (State q = 0; q < q_count; ++q) {
        acc[j * q_count + q] = d.accepting(q);
        for (Letter a = 0; a < k; ++a) delta[j * q_count + q][a] = static_cast<State>(next * q_count + m[q * k + a]);
      }
    }
    auto candidate = minimize(Dfa::from_table(alphabet, d.initial(), delta, acc));
    if (auto bad = first_disagreement(lang, candidate, n_max)) {
      msg << "advice stream certificate (t=" << t << ", p=" << p << ") refuted on '" << bad->str() << "'; ";
    } else {
      r.dfa = std::move(candidate);
      msg << "advice stream ultimately periodic within bounds (t=" << t << ", p=" << p << ", window " << win
          << "); ";
    }
  } else {
    msg << "no period <= " << period_max << " found in the advice stream within bounds; ";
  }

  bool exhausted = false;
  try {
    r.probe = synpred_regularity_probe(lang, n_max, period_max);
    msg << "syntactic predicate probe: "
        << (r.probe->found ? "period found (n0=" + std::to_string(r.probe->n0) +
                                 ", p=" + std::to_string(r.probe->period) + ")"
                           : r.probe->message);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kCapExceeded && e.kind() != ErrorKind::kBoundExceeded) throw;
    exhausted = true;
    msg << "syntactic predicate probe exhausted its budget: " << e.what();
  }

  if (!r.dfa && r.probe && r.probe->found) r.dfa = r.probe->dfa;
  if (r.dfa)
    r.verdict = MorphicRegularity::Verdict::kRegular;
  else if (exhausted || n_max < 2)
    r.verdict = MorphicRegularity::Verdict::kInconclusive;
  else
    r.verdict = MorphicRegularity::Verdict::kNoPeriodFound;
  r.message = to_string(r.verdict) + ": " + msg.str();
  return r;
}

InterpretedWord mso_interpretation_closure_check(const Formula& unary, const Interpretation& interp, std::size_t n) {
  auto free = unary.free_variables();
  if (free.size() != 1 || unary.var(free[0]).second_order)
    throw Error(ErrorKind::kPrecondition, "formula must have exactly one free first-order variable");
  const std::string var = unary.var(free[0]).name;
  const Alphabet one;
  auto c = compile_with_free(unary, one);
  const std::size_t l = c.tracks.size();
  std::vector<TrackBits> pred_bits;
  for (std::size_t j = 1; j < l; ++j) {
    auto it = interp.find(c.tracks[j]);
    if (it == interp.end()) throw Error(ErrorKind::kMissingInterpretation, "no interpretation for " + c.tracks[j]);
    if (it->second.bound() && *it->second.bound() < n)
      throw Error(ErrorKind::kBoundExceeded, "predicate " + c.tracks[j] + " is bounded below n");
    pred_bits.push_back(it->second.eval(n));
  }
  const Dfa& d = c.dfa;
  auto bits_at = [&](std::size_t i, bool mark) {
    TrackBits b(l);
    b[0] = mark;
    for (std::size_t j = 1; j < l; ++j) b[j] = pred_bits[j - 1][i];
    return b;
  };

  // good[i][q]: from q, the unmarked rest i..n-1 is accepted
  std::vector<std::vector<bool>> good(n + 1, std::vector<bool>(d.num_states()));
  good[n] = d.accepting_states();
  for (std::size_t i = n; i-- > 0;) {
    auto b = bits_at(i, false);
    for (State q = 0; q < d.num_states(); ++q) good[i][q] = good[i + 1][d.step(q, 0, b)];
  }
  InterpretedWord out;
  out.bits.resize(n);
  State q = d.initial();
  for (std::size_t i = 0; i < n; ++i) {
    out.bits[i] = good[i + 1][d.step(q, 0, bits_at(i, true))];
    q = d.step(q, 0, bits_at(i, false));
  }

  const Word word(one, Symbols(n, 0));
  out.checked = std::min<std::size_t>(n, 10);
  std::ostringstream rep;
  for (std::size_t i = 0; i < out.checked; ++i) {
    bool direct = eval_direct(unary, interp, word, {{var, i}});
    if (direct != static_cast<bool>(out.bits[i])) {
      out.consistent = false;
      rep << "position " << i << ": automaton " << int(out.bits[i]) << ", direct " << direct << "\n";
    }
  }
  rep << "interpreted " << n << " positions; direct evaluation agrees on the first " << out.checked
      << (out.consistent ? "" : " except as listed") << "\n";
  out.report = rep.str();
  return out;
}

}  // namespace advreg
