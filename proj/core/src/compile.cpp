#include "advreg/compile.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "advreg/error.hpp"

namespace advreg {

namespace {

// Small automaton that only looks at the tracks in `rel` (sorted); step gets
// the bits of those tracks packed into a mask (bit j = rel[j]).
Dfa atom(const TrackedAlphabet& alphabet, std::size_t states, std::vector<bool> accepting,
         const std::vector<std::uint32_t>& rel, const std::function<State(State, Letter, unsigned)>& step) {
  TrackBdd store;
  std::vector<NodeId> roots;
  for (State q = 0; q < states; ++q)
    for (Letter a = 0; a < alphabet.base().size(); ++a) {
      std::function<NodeId(std::size_t, unsigned)> build = [&](std::size_t d, unsigned mask) -> NodeId {
        if (d == rel.size()) return store.leaf(step(q, a, mask));
        return store.node(rel[d], build(d + 1, mask), build(d + 1, mask | (1u << d)));
      };
      roots.push_back(build(0, 0));
    }
  return Dfa(alphabet, std::make_shared<TrackBdd>(std::move(store)), std::move(roots), std::move(accepting), 0);
}

// Formulas are compiled for the mirror image of the input (reading right to
// left) and turned around at the end. Run-style formulas pass information
// from a position to its successor; read backwards, the intermediate
// automata only need to remember the state at the successor, while a
// forward reading has to carry every allowed successor set through the
// projections.
class Compiler {
 public:
  Compiler(const Formula& f, const Alphabet& alphabet) : f_(f) {
    const auto vars = static_cast<std::uint32_t>(f.vars().size());
    for (std::size_t j = 0; j < f.predicates().size(); ++j)
      pred_track_[f.predicates()[j]] = vars + static_cast<std::uint32_t>(j);
    alphabet_ = TrackedAlphabet(alphabet, vars + static_cast<std::uint32_t>(f.predicates().size()));
  }

  const TrackedAlphabet& alphabet() const { return alphabet_; }

  Dfa run(const FormulaNode& n) {
    switch (n.kind) {
      case NodeKind::kTrue:
        return Dfa::universal(alphabet_);
      case NodeKind::kFalse:
        return Dfa::empty(alphabet_);
      case NodeKind::kLetter: {
        if (!alphabet_.base().contains(n.symbol))
          throw Error(ErrorKind::kAlphabetMismatch, "letter '" + n.symbol + "' is not in the alphabet");
        const Letter want = alphabet_.base().index_of(n.symbol);
        // 0: before x, 1: at or after x, 2: sink
        return atom(alphabet_, 3, {false, true, false}, {track(n.x)},
                    [want](State q, Letter a, unsigned m) -> State {
                      if (!m) return q;
                      return q == 0 && a == want ? 1 : 2;
                    });
      }
      case NodeKind::kPred:
      case NodeKind::kIn: {
        const std::uint32_t x = track(n.x);
        const std::uint32_t p = n.kind == NodeKind::kPred ? pred_track_.at(n.symbol) : track(n.y);
        const unsigned xbit = x < p ? 1u : 2u;
        const unsigned pbit = x < p ? 2u : 1u;
        return atom(alphabet_, 3, {false, true, false}, {std::min(x, p), std::max(x, p)},
                    [=](State q, Letter, unsigned m) -> State {
                      if (!(m & xbit)) return q;
                      return q == 0 && (m & pbit) ? 1 : 2;
                    });
      }
      case NodeKind::kLeq: {
        if (n.x == n.y) return singleton_track(alphabet_, track(n.x));
        // mirrored words: x <= y becomes y <= x
        const std::uint32_t x = track(n.y), y = track(n.x);
        const unsigned xbit = x < y ? 1u : 2u;
        const unsigned ybit = x < y ? 2u : 1u;
        // 0: neither seen, 1: both seen, 2: x seen, 3: sink
        return atom(alphabet_, 4, {false, true, false, false}, {std::min(x, y), std::max(x, y)},
                    [=](State q, Letter, unsigned m) -> State {
                      const bool bx = m & xbit, by = m & ybit;
                      switch (q) {
                        case 0:
                          return bx ? (by ? 1 : 2) : (by ? 3 : 0);
                        case 1:
                          return bx || by ? 3 : 1;
                        case 2:
                          return bx ? 3 : (by ? 1 : 2);
                        default:
                          return 3;
                      }
                    });
      }
      case NodeKind::kNot:
        return restrict(complement(run(*n.lhs)), free_fo(n));
      case NodeKind::kAnd:
        return binary(n, BoolOp::kAnd);
      case NodeKind::kOr:
        return binary(n, BoolOp::kOr);
      case NodeKind::kImplies:
        return binary(n, BoolOp::kImplies);
      case NodeKind::kIff:
        return binary(n, BoolOp::kIff);
      case NodeKind::kExistsFO:
      case NodeKind::kForallFO:
      case NodeKind::kExistsSO:
      case NodeKind::kForallSO: {
        // a run of equal quantifiers is projected in one subset construction
        std::vector<const FormulaNode*> block{&n};
        while (block.back()->lhs->kind == n.kind) block.push_back(block.back()->lhs.get());
        const FormulaNode& inner_node = *block.back()->lhs;
        const bool forall = n.kind == NodeKind::kForallFO || n.kind == NodeKind::kForallSO;
        const bool fo = n.kind == NodeKind::kExistsFO || n.kind == NodeKind::kForallFO;
        Dfa body = run(inner_node);
        const auto& inner = free_fo(inner_node);
        if (forall) body = restrict(complement(body), inner);
        std::vector<std::uint32_t> proj;
        for (const FormulaNode* q : block) {
          proj.push_back(track(q->x));
          if (fo && !inner.count(q->x)) body = product(body, singleton_track(alphabet_, track(q->x)), BoolOp::kAnd);
        }
        Dfa out = minimize(project_tracks(body, proj));
        return forall ? restrict(complement(out), free_fo(n)) : out;
      }
    }
    throw Error(ErrorKind::kIntegrity, "unknown formula node");
  }

  std::uint32_t track(int var) const { return static_cast<std::uint32_t>(var); }

 private:
  // Every intermediate automaton only accepts words where each free FO
  // variable track carries exactly one 1.
  Dfa binary(const FormulaNode& n, BoolOp op) {
    Dfa l = run(*n.lhs);
    Dfa r = run(*n.rhs);
    Dfa out = minimize(product(l, r, op));
    return op == BoolOp::kAnd ? out : restrict(out, free_fo(n));
  }

  Dfa restrict(Dfa d, const std::set<int>& vars) {
    for (int v : vars) d = product(d, singleton_track(alphabet_, track(v)), BoolOp::kAnd);
    return vars.empty() ? d : minimize(d);
  }

  const std::set<int>& free_fo(const FormulaNode& n) {
    auto it = free_.find(&n);
    if (it != free_.end()) return it->second;
    std::set<int> out;
    if (n.lhs) out = free_fo(*n.lhs);
    if (n.rhs) {
      const auto& r = free_fo(*n.rhs);
      out.insert(r.begin(), r.end());
    }
    switch (n.kind) {
      case NodeKind::kLetter:
      case NodeKind::kPred:
      case NodeKind::kIn:
        out.insert(n.x);
        break;
      case NodeKind::kLeq:
        out.insert(n.x);
        out.insert(n.y);
        break;
      case NodeKind::kExistsFO:
      case NodeKind::kForallFO:
        out.erase(n.x);
        break;
      default:
        break;
    }
    return free_.emplace(&n, std::move(out)).first->second;
  }

  const Formula& f_;
  TrackedAlphabet alphabet_;
  std::map<std::string, std::uint32_t> pred_track_;
  std::map<const FormulaNode*, std::set<int>> free_;
};

CompiledFormula finish(const Formula& f, const Compiler& c, Dfa d, const std::vector<int>& free) {
  const auto vars = static_cast<std::uint32_t>(f.vars().size());
  const auto total = c.alphabet().tracks();
  std::vector<std::uint32_t> map(total, 0);
  CompiledFormula out;
  std::uint32_t next = 0;
  for (int v : free) {
    map[static_cast<std::uint32_t>(v)] = next++;
    out.tracks.push_back(f.var(v).name);
  }
  for (std::size_t j = 0; j < f.predicates().size(); ++j) {
    map[vars + j] = next++;
    out.tracks.push_back(f.predicates()[j]);
  }
  out.dfa = minimize(reverse_determinize(rename_tracks(d, map, next)));
  return out;
}

}  // namespace

Dfa singleton_track(const TrackedAlphabet& alphabet, std::uint32_t t) {
  return atom(alphabet, 3, {false, true, false}, {t},
              [](State q, Letter, unsigned m) -> State { return m ? (q == 0 ? 1 : 2) : q; });
}

CompiledFormula compile(const Formula& f, const Alphabet& alphabet) {
  auto free = f.free_variables();
  if (!free.empty()) {
    std::string names;
    for (int v : free) names += (names.empty() ? "" : ", ") + f.var(v).name;
    throw Error(ErrorKind::kFreeVariables, "formula has free variables: " + names);
  }
  Compiler c(f, alphabet);
  return finish(f, c, c.run(f.root()), free);
}

CompiledFormula compile_with_free(const Formula& f, const Alphabet& alphabet) {
  Compiler c(f, alphabet);
  return finish(f, c, c.run(f.root()), f.free_variables());
}

}  // namespace advreg
