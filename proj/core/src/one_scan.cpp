#include "advreg/one_scan.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>

#include "advreg/error.hpp"

namespace advreg {

namespace {

using Map = std::vector<std::uint32_t>;

Map compose(const Map& x, const Map& y) {
  Map r(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) r[p] = y[x[p]];
  return r;
}

Map identity_map(std::size_t points) {
  Map r(points);
  for (std::size_t p = 0; p < points; ++p) r[p] = static_cast<std::uint32_t>(p);
  return r;
}

void check_accepting(const FiniteMonoid& m, const std::vector<bool>& acc) {
  if (acc.size() != m.size()) throw Error(ErrorKind::kIntegrity, "accepting set does not match the monoid size");
}

}  // namespace

std::size_t FiniteMonoid::MapHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto x : v) h = (h ^ x) * 0x100000001b3ull;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

FiniteMonoid FiniteMonoid::from_table(std::vector<std::vector<Element>> table, Element identity) {
  const std::size_t m = table.size();
  if (m == 0) throw Error(ErrorKind::kIntegrity, "a monoid has at least one element");
  if (identity >= m) throw Error(ErrorKind::kIntegrity, "identity out of range");
  for (const auto& row : table) {
    if (row.size() != m) throw Error(ErrorKind::kIntegrity, "multiplication table is not square");
    for (Element e : row)
      if (e >= m) throw Error(ErrorKind::kIntegrity, "multiplication table entry out of range");
  }
  Data d;
  d.size = m;
  d.identity = identity;
  d.table = std::move(table);
  FiniteMonoid out;
  out.data_ = std::make_shared<const Data>(std::move(d));
  for (Element x = 0; x < m; ++x)
    if (out.mul(identity, x) != x || out.mul(x, identity) != x)
      throw Error(ErrorKind::kIntegrity, "identity law fails at element " + std::to_string(x));
  if (m <= 64 && !out.verify()) throw Error(ErrorKind::kIntegrity, "multiplication is not associative");
  return out;
}

FiniteMonoid FiniteMonoid::transformations(std::size_t points, std::vector<std::vector<std::uint32_t>> elements) {
  if (points == 0) throw Error(ErrorKind::kIntegrity, "transformations need at least one point");
  Data d;
  d.points = points;
  d.size = elements.size();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& e = elements[k];
    if (e.size() != points) throw Error(ErrorKind::kIntegrity, "transformation has the wrong number of points");
    for (auto x : e)
      if (x >= points) throw Error(ErrorKind::kIntegrity, "transformation value out of range");
    if (!d.index.emplace(e, static_cast<Element>(k)).second)
      throw Error(ErrorKind::kIntegrity, "duplicate transformation");
  }
  auto id = d.index.find(identity_map(points));
  if (id == d.index.end()) throw Error(ErrorKind::kIntegrity, "identity transformation missing");
  d.identity = id->second;
  d.maps = std::move(elements);
  // closure is checked pairwise for moderate sizes only
  if (d.size <= 1024)
    for (const auto& x : d.maps)
      for (const auto& y : d.maps)
        if (!d.index.count(compose(x, y))) throw Error(ErrorKind::kIntegrity, "transformations are not closed");
  FiniteMonoid out;
  out.data_ = std::make_shared<const Data>(std::move(d));
  return out;
}

FiniteMonoid FiniteMonoid::u1() { return from_table({{0, 0}, {0, 1}}, 1); }

Element FiniteMonoid::mul(Element x, Element y) const {
  if (!is_transformation()) return data_->table[x][y];
  return data_->index.at(compose(data_->maps[x], data_->maps[y]));
}

std::vector<std::vector<Element>> FiniteMonoid::table() const {
  if (!is_transformation()) return data_->table;
  if (size() > 4096) throw Error(ErrorKind::kCapExceeded, "monoid too large to tabulate");
  std::vector<std::vector<Element>> t(size(), std::vector<Element>(size()));
  for (Element x = 0; x < size(); ++x)
    for (Element y = 0; y < size(); ++y) t[x][y] = mul(x, y);
  return t;
}

std::optional<Element> FiniteMonoid::find(const std::vector<std::uint32_t>& map) const {
  auto it = data_->index.find(map);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

bool FiniteMonoid::verify() const {
  const auto m = static_cast<Element>(size());
  for (Element x = 0; x < m; ++x)
    if (mul(identity(), x) != x || mul(x, identity()) != x) return false;
  for (Element x = 0; x < m; ++x)
    for (Element y = 0; y < m; ++y) {
      Element xy = mul(x, y);
      for (Element z = 0; z < m; ++z)
        if (mul(xy, z) != mul(x, mul(y, z))) return false;
    }
  return true;
}

OneScanProgram OneScanProgram::from_base(FiniteMonoid m, Alphabet alphabet, std::vector<Element> table,
                                         std::vector<MonadicPredicate> predicates, std::vector<bool> accepting,
                                         bool epsilon_accept) {
  TrackedAlphabet ta(alphabet, static_cast<std::uint32_t>(predicates.size()));
  if (table.size() != ta.size()) throw Error(ErrorKind::kIntegrity, "instruction table has the wrong size");
  for (Element e : table)
    if (e >= m.size()) throw Error(ErrorKind::kIntegrity, "instruction out of the monoid");
  check_accepting(m, accepting);
  Data d;
  d.monoid = std::move(m);
  d.alphabet = std::move(alphabet);
  d.presentation = Presentation::kBase;
  d.accepting = std::move(accepting);
  d.epsilon_accept = epsilon_accept;
  d.base = std::move(table);
  for (const auto& p : predicates)
    if (auto b = p.bound()) d.bound = d.bound ? std::min(*d.bound, *b) : *b;
  d.predicates = std::move(predicates);
  OneScanProgram out;
  out.data_ = std::make_shared<const Data>(std::move(d));
  return out;
}

OneScanProgram OneScanProgram::from_tables(FiniteMonoid m, Alphabet alphabet, std::vector<std::vector<Element>> tables,
                                           std::vector<bool> accepting, bool epsilon_accept) {
  if (tables.empty()) throw Error(ErrorKind::kIntegrity, "at least the table for n = 0 is needed");
  for (std::size_t n = 0; n < tables.size(); ++n) {
    if (tables[n].size() != n * alphabet.size())
      throw Error(ErrorKind::kIntegrity, "instruction table for n = " + std::to_string(n) + " has the wrong size");
    for (Element e : tables[n])
      if (e >= m.size()) throw Error(ErrorKind::kIntegrity, "instruction out of the monoid");
  }
  check_accepting(m, accepting);
  Data d;
  d.monoid = std::move(m);
  d.alphabet = std::move(alphabet);
  d.presentation = Presentation::kTables;
  d.bound = tables.size() - 1;
  d.accepting = std::move(accepting);
  d.epsilon_accept = epsilon_accept;
  d.tables = std::move(tables);
  OneScanProgram out;
  out.data_ = std::make_shared<const Data>(std::move(d));
  return out;
}

OneScanProgram OneScanProgram::from_function(FiniteMonoid m, Alphabet alphabet, Instruction f,
                                             std::vector<bool> accepting, bool epsilon_accept,
                                             std::optional<std::size_t> bound, std::string name) {
  check_accepting(m, accepting);
  Data d;
  d.monoid = std::move(m);
  d.alphabet = std::move(alphabet);
  d.presentation = Presentation::kFunction;
  d.name = std::move(name);
  d.bound = bound;
  d.accepting = std::move(accepting);
  d.epsilon_accept = epsilon_accept;
  d.fn = std::move(f);
  OneScanProgram out;
  out.data_ = std::make_shared<const Data>(std::move(d));
  return out;
}

Element OneScanProgram::instruction(std::size_t i, std::size_t n, Letter a) const {
  if (bound() && n > *bound())
    throw Error(ErrorKind::kBoundExceeded, "length " + std::to_string(n) + " exceeds the program bound " +
                                               std::to_string(*bound()));
  if (i >= n || a >= alphabet().size()) throw Error(ErrorKind::kPrecondition, "instruction index out of range");
  switch (presentation()) {
    case Presentation::kTables:
      return data_->tables[n][i * alphabet().size() + a];
    case Presentation::kFunction: {
      Element e = data_->fn(i, n, a);
      if (e >= monoid().size()) throw Error(ErrorKind::kIntegrity, "instruction out of the monoid");
      return e;
    }
    case Presentation::kBase: {
      TrackBits bits(predicates().size());
      for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = predicates()[j].holds(i, n);
      TrackedAlphabet ta(alphabet(), static_cast<std::uint32_t>(bits.size()));
      return data_->base[ta.letter_index(a, bits)];
    }
  }
  return 0;
}

std::vector<Element> OneScanProgram::instructions(std::size_t n) const {
  if (bound() && n > *bound())
    throw Error(ErrorKind::kBoundExceeded, "length " + std::to_string(n) + " exceeds the program bound " +
                                               std::to_string(*bound()));
  const std::size_t k = alphabet().size();
  std::vector<Element> out(n * k);
  if (presentation() == Presentation::kBase) {
    TrackedAlphabet ta(alphabet(), static_cast<std::uint32_t>(predicates().size()));
    std::vector<TrackBits> words;
    for (const auto& p : predicates()) words.push_back(p.eval(n));
    TrackBits bits(predicates().size());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = words[j][i];
      for (Letter a = 0; a < k; ++a) out[i * k + a] = data_->base[ta.letter_index(a, bits)];
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (Letter a = 0; a < k; ++a) out[i * k + a] = instruction(i, n, a);
  return out;
}

OneScanProgram OneScanProgram::to_tables(std::size_t n_max) const {
  std::vector<std::vector<Element>> tables;
  for (std::size_t n = 0; n <= n_max; ++n) tables.push_back(instructions(n));
  return from_tables(monoid(), alphabet(), std::move(tables), accepting(), epsilon_accept());
}

bool run_program(const OneScanProgram& p, const Word& u) {
  if (!(u.alphabet() == p.alphabet())) throw Error(ErrorKind::kAlphabetMismatch, "word over a different alphabet");
  const std::size_t n = u.size();
  if (p.bound() && n > *p.bound())
    throw Error(ErrorKind::kBoundExceeded, "length " + std::to_string(n) + " exceeds the program bound " +
                                               std::to_string(*p.bound()));
  if (n == 0) return p.epsilon_accept();
  const auto f = p.instructions(n);
  const std::size_t k = p.alphabet().size();
  Element x = p.monoid().identity();
  for (std::size_t i = 0; i < n; ++i) x = p.monoid().mul(x, f[i * k + u[i]]);
  return p.accepting(x);
}

OneScanProgram builtin_u1_prime_program() {
  auto f = [](std::size_t i, std::size_t n, Letter a) -> Element {
    if (!is_prime(n)) return 0;
    return (a == 0 && is_prime(i)) ? 0 : 1;
  };
  return OneScanProgram::from_function(FiniteMonoid::u1(), Alphabet::of_chars("ab"), f, {false, true}, false,
                                       std::nullopt, "u1_prime");
}

OneScanProgram automaton_to_program(const AdviceAutomaton& a, const ToProgramOptions& options) {
  if (!a.deterministic()) throw Error(ErrorKind::kMode, "automaton_to_program needs a deterministic automaton");
  auto n_max = options.n_max ? options.n_max : a.bound();
  if (!n_max) throw Error(ErrorKind::kPrecondition, "an unbounded automaton needs an explicit n_max");
  if (a.bound() && *n_max > *a.bound()) throw Error(ErrorKind::kBoundExceeded, "n_max exceeds the automaton bound");

  const std::size_t q = a.num_states();
  const std::size_t k = a.alphabet().size();
  const auto top = static_cast<std::uint32_t>(q), bot = static_cast<std::uint32_t>(q + 1);
  const std::size_t points = q + 2;

  std::vector<Map> elements{identity_map(points)};
  struct Hash {
    std::size_t operator()(const Map& v) const noexcept {
      std::uint64_t h = 0xcbf29ce484222325ull;
      for (auto x : v) h = (h ^ x) * 0x100000001b3ull;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };
  std::unordered_map<Map, Element, Hash> index{{elements[0], 0}};
  auto intern = [&](Map m) {
    auto [it, fresh] = index.emplace(m, static_cast<Element>(elements.size()));
    if (fresh) {
      if (elements.size() >= options.monoid_cap)
        throw Error(ErrorKind::kCapExceeded,
                    "transformation monoid exceeds the cap of " + std::to_string(options.monoid_cap) + " elements");
      elements.push_back(std::move(m));
    }
    return it->second;
  };

  std::vector<std::vector<Element>> tables(*n_max + 1);
  std::vector<Element> generators;
  for (std::size_t n = 1; n <= *n_max; ++n) {
    auto s = a.slice(n);
    tables[n].resize(n * k);
    for (std::size_t i = 0; i < n; ++i)
      for (Letter l = 0; l < k; ++l) {
        Map m(points);
        m[top] = top;
        m[bot] = bot;
        for (State p = 0; p < q; ++p) {
          State t = s.next(i, p, l)[0];
          m[p] = i + 1 < n ? t : (s.accepting(t) ? top : bot);
        }
        Element e = intern(std::move(m));
        tables[n][i * k + l] = e;
        generators.push_back(e);
      }
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  // right closure from the identity reaches the whole generated monoid
  std::vector<char> seen(elements.size(), 0);
  std::deque<Element> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (Element g : generators) {
      Element y = intern(compose(elements[x], elements[g]));
      if (y >= seen.size()) seen.resize(elements.size(), 0);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }

  const State q0 = a.initial()[0];
  std::vector<bool> acc(elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e) acc[e] = elements[e][q0] == top;
  const bool eps = a.slice(0).accepting(q0);
  auto monoid = FiniteMonoid::transformations(points, std::move(elements));
  return OneScanProgram::from_tables(std::move(monoid), a.alphabet(), std::move(tables), std::move(acc), eps);
}

AdviceAutomaton program_to_automaton(const OneScanProgram& p) {
  const std::size_t m = p.monoid().size();
  // instructions of the most recent length; shared by copies, not thread-safe
  struct Cache {
    std::optional<std::size_t> n;
    std::vector<Element> f;
  };
  auto cache = std::make_shared<Cache>();
  const std::size_t k = p.alphabet().size();
  auto step = [p, k, cache](std::size_t i, std::size_t n, State x, Letter a) -> State {
    if (cache->n != n) {
      cache->f = p.instructions(n);
      cache->n = n;
    }
    return p.monoid().mul(x, cache->f[i * k + a]);
  };
  auto accept = [p](std::size_t n, State x) {
    if (n == 0) return x == p.monoid().identity() && p.epsilon_accept();
    return static_cast<bool>(p.accepting()[x]);
  };
  std::vector<std::string> names;
  for (std::size_t x = 0; x < m; ++x) names.push_back("m" + std::to_string(x));
  return AdviceAutomaton::from_step(p.alphabet(), m, p.monoid().identity(), step, accept, p.bound())
      .with_state_names(std::move(names));
}

}  // namespace advreg
