#include "advreg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "advreg/error.hpp"

namespace advreg {

namespace {

NodePtr make(NodeKind kind, std::string symbol = {}, int x = -1, int y = -1, NodePtr lhs = nullptr,
             NodePtr rhs = nullptr) {
  return std::make_shared<const FormulaNode>(FormulaNode{kind, std::move(symbol), x, y, std::move(lhs), std::move(rhs)});
}

bool is_quantifier(NodeKind k) {
  return k == NodeKind::kExistsFO || k == NodeKind::kForallFO || k == NodeKind::kExistsSO || k == NodeKind::kForallSO;
}

bool is_upper(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

bool is_synthetic(const Variable& v) { return v.name.rfind("_m", 0) == 0; }

// ---------------------------------------------------------------- lexer

enum class Tok { kIdent, kLParen, kRParen, kComma, kDot, kNot, kAnd, kOr, kImplies, kIff, kLeq, kLt, kEq, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kSyntax, what + " at offset " + std::to_string(i));
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
        ++i;
      out.push_back({Tok::kIdent, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto two = s.substr(i, 2);
    auto three = s.substr(i, 3);
    if (three == "<->") {
      out.push_back({Tok::kIff, "<->", start});
      i += 3;
    } else if (two == "->") {
      out.push_back({Tok::kImplies, "->", start});
      i += 2;
    } else if (two == "<=") {
      out.push_back({Tok::kLeq, "<=", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::kLParen; break;
        case ')': k = Tok::kRParen; break;
        case ',': k = Tok::kComma; break;
        case '.': k = Tok::kDot; break;
        case '~':
        case '!': k = Tok::kNot; break;
        case '&': k = Tok::kAnd; break;
        case '|': k = Tok::kOr; break;
        case '<': k = Tok::kLt; break;
        case '=': k = Tok::kEq; break;
        default: fail(std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<std::string> declared, bool has_declarations,
         const std::vector<std::string>& free_fo)
      : toks_(std::move(toks)), preds_(std::move(declared)), declared_(has_declarations) {
    for (const auto& name : free_fo) {
      int id = new_var(name, false);
      vars_[static_cast<std::size_t>(id)].free = true;
      scope_[name].push_back(id);
    }
  }

  Formula run() {
    NodePtr root = parse_iff();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return Formula(root, vars_, preds_, macro_width_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kSyntax, what + " at offset " + std::to_string(peek().pos));
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }

  int new_var(const std::string& name, bool so) {
    vars_.push_back(Variable{name, so, false});
    return static_cast<int>(vars_.size() - 1);
  }

  int lookup(const std::string& name, bool so, std::size_t at) const {
    auto it = scope_.find(name);
    if (it == scope_.end() || it->second.empty())
      throw Error(ErrorKind::kUnboundVariable, "unbound variable '" + name + "' at offset " + std::to_string(at));
    int id = it->second.back();
    if (vars_[static_cast<std::size_t>(id)].second_order != so)
      throw Error(ErrorKind::kSyntax, "variable '" + name + "' used as " + (so ? "a set" : "a position") +
                                          " at offset " + std::to_string(at));
    return id;
  }

  int fo_arg() {
    if (peek().kind != Tok::kIdent) fail("expected a position variable");
    const Token& t = take();
    return lookup(t.text, false, t.pos);
  }

  bool is_predicate(const std::string& name) {
    if (std::find(preds_.begin(), preds_.end(), name) != preds_.end()) return true;
    if (declared_ || !is_upper(name)) return false;
    preds_.push_back(name);
    return true;
  }

  NodePtr parse_iff() {
    NodePtr l = parse_implies();
    while (accept(Tok::kIff)) l = make(NodeKind::kIff, {}, -1, -1, l, parse_implies());
    return l;
  }
  NodePtr parse_implies() {
    NodePtr l = parse_or();
    if (accept(Tok::kImplies)) return make(NodeKind::kImplies, {}, -1, -1, l, parse_implies());
    return l;
  }
  NodePtr parse_or() {
    NodePtr l = parse_and();
    while (accept(Tok::kOr)) l = make(NodeKind::kOr, {}, -1, -1, l, parse_and());
    return l;
  }
  NodePtr parse_and() {
    NodePtr l = parse_unary();
    while (accept(Tok::kAnd)) l = make(NodeKind::kAnd, {}, -1, -1, l, parse_unary());
    return l;
  }

  NodePtr parse_unary() {
    if (accept(Tok::kNot)) return make(NodeKind::kNot, {}, -1, -1, parse_unary());
    if (peek().kind == Tok::kIdent && (peek().text == "forall" || peek().text == "exists")) return parse_quantifier();
    return parse_atom();
  }

  NodePtr parse_quantifier() {
    bool exists = take().text == "exists";
    std::vector<std::pair<std::string, int>> bound;
    do {
      const Token& t = take();
      if (t.kind != Tok::kIdent) fail("expected a variable after quantifier");
      bool so = is_upper(t.text);
      bound.emplace_back(t.text, new_var(t.text, so));
    } while (accept(Tok::kComma) || peek().kind == Tok::kIdent);
    expect(Tok::kDot, "'.' after quantified variables");
    for (auto& [name, id] : bound) scope_[name].push_back(id);
    NodePtr body = parse_iff();
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      scope_[it->first].pop_back();
      bool so = vars_[static_cast<std::size_t>(it->second)].second_order;
      NodeKind k = so ? (exists ? NodeKind::kExistsSO : NodeKind::kForallSO)
                      : (exists ? NodeKind::kExistsFO : NodeKind::kForallFO);
      body = make(k, {}, it->second, -1, body);
    }
    return body;
  }

  int synthetic() {
    int id = new_var("_m" + std::to_string(vars_.size()), false);
    return id;
  }

  NodePtr leq(int x, int y) { return make(NodeKind::kLeq, {}, x, y); }
  NodePtr lt(int x, int y) { return make(NodeKind::kAnd, {}, -1, -1, leq(x, y), make(NodeKind::kNot, {}, -1, -1, leq(y, x))); }

  NodePtr parse_atom() {
    if (accept(Tok::kLParen)) {
      NodePtr inner = parse_iff();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    if (peek().kind != Tok::kIdent) fail("expected a formula");
    const Token& t = take();
    if (t.text == "true") return make(NodeKind::kTrue);
    if (t.text == "false") return make(NodeKind::kFalse);
    if (accept(Tok::kLParen)) {
      NodePtr out;
      if (t.text == "in") {
        int x = fo_arg();
        expect(Tok::kComma, "','");
        if (peek().kind != Tok::kIdent) fail("expected a set variable");
        const Token& s = take();
        out = make(NodeKind::kIn, {}, x, lookup(s.text, true, s.pos));
      } else if (t.text == "first" || t.text == "last") {
        int x = fo_arg();
        int z = synthetic();
        macro_width_ = std::max(macro_width_, 2);
        out = make(NodeKind::kForallFO, {}, z, -1, t.text == "first" ? leq(x, z) : leq(z, x));
      } else if (t.text == "succ") {
        int x = fo_arg();
        expect(Tok::kComma, "','");
        int y = fo_arg();
        int z = synthetic();
        macro_width_ = std::max(macro_width_, 3);
        NodePtr between = make(NodeKind::kImplies, {}, -1, -1, lt(x, z), leq(y, z));
        out = make(NodeKind::kAnd, {}, -1, -1, lt(x, y), make(NodeKind::kForallFO, {}, z, -1, between));
      } else {
        int x = fo_arg();
        out = make(is_predicate(t.text) ? NodeKind::kPred : NodeKind::kLetter, t.text, x);
      }
      expect(Tok::kRParen, "')'");
      return out;
    }
    int x = lookup(t.text, false, t.pos);
    Tok op = peek().kind;
    if (op != Tok::kLeq && op != Tok::kLt && op != Tok::kEq) fail("expected '<=', '<' or '='");
    take();
    int y = fo_arg();
    if (op == Tok::kLeq) return leq(x, y);
    if (op == Tok::kLt) return lt(x, y);
    return make(NodeKind::kAnd, {}, -1, -1, leq(x, y), leq(y, x));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Variable> vars_;
  std::vector<std::string> preds_;
  bool declared_;
  std::map<std::string, std::vector<int>> scope_;
  int macro_width_ = 0;
};

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// ---------------------------------------------------------------- printing

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::kIff: return 1;
    case NodeKind::kImplies: return 2;
    case NodeKind::kOr: return 3;
    case NodeKind::kAnd: return 4;
    case NodeKind::kNot: return 5;
    default: return is_quantifier(k) ? 0 : 6;
  }
}

void print(const Formula& f, const FormulaNode& n, int ctx, std::string& out) {
  int prec = precedence(n.kind);
  // quantifiers extend to the right, so they are parenthesized unless they
  // already stand at the loosest position
  bool paren = prec < ctx || (is_quantifier(n.kind) && ctx > 0);
  if (paren) out += "(";
  auto name = [&](int id) { return f.var(id).name; };
  switch (n.kind) {
    case NodeKind::kTrue: out += "true"; break;
    case NodeKind::kFalse: out += "false"; break;
    case NodeKind::kLetter:
    case NodeKind::kPred: out += n.symbol + "(" + name(n.x) + ")"; break;
    case NodeKind::kLeq: out += name(n.x) + " <= " + name(n.y); break;
    case NodeKind::kIn: out += "in(" + name(n.x) + ", " + name(n.y) + ")"; break;
    case NodeKind::kNot:
      out += "~";
      print(f, *n.lhs, 5, out);
      break;
    case NodeKind::kAnd:
    case NodeKind::kOr:
    case NodeKind::kIff: {
      const char* op = n.kind == NodeKind::kAnd ? " & " : n.kind == NodeKind::kOr ? " | " : " <-> ";
      print(f, *n.lhs, prec, out);
      out += op;
      print(f, *n.rhs, prec + 1, out);
      break;
    }
    case NodeKind::kImplies:
      print(f, *n.lhs, prec + 1, out);
      out += " -> ";
      print(f, *n.rhs, prec, out);
      break;
    default: {
      bool exists = n.kind == NodeKind::kExistsFO || n.kind == NodeKind::kExistsSO;
      out += exists ? "exists " : "forall ";
      out += name(n.x) + ". ";
      print(f, *n.lhs, 0, out);
    }
  }
  if (paren) out += ")";
}

// ---------------------------------------------------------------- nnf

NodePtr nnf(const NodePtr& n, bool neg) {
  switch (n->kind) {
    case NodeKind::kTrue: return make(neg ? NodeKind::kFalse : NodeKind::kTrue);
    case NodeKind::kFalse: return make(neg ? NodeKind::kTrue : NodeKind::kFalse);
    case NodeKind::kLetter:
    case NodeKind::kLeq:
    case NodeKind::kPred:
    case NodeKind::kIn: return neg ? make(NodeKind::kNot, {}, -1, -1, n) : n;
    case NodeKind::kNot: return nnf(n->lhs, !neg);
    case NodeKind::kAnd:
    case NodeKind::kOr: {
      bool conj = (n->kind == NodeKind::kAnd) != neg;
      return make(conj ? NodeKind::kAnd : NodeKind::kOr, {}, -1, -1, nnf(n->lhs, neg), nnf(n->rhs, neg));
    }
    case NodeKind::kImplies:
      // a -> b == ~a | b
      return make(neg ? NodeKind::kAnd : NodeKind::kOr, {}, -1, -1, nnf(n->lhs, !neg), nnf(n->rhs, neg));
    case NodeKind::kIff: {
      if (!neg)
        return make(NodeKind::kAnd, {}, -1, -1,
                    make(NodeKind::kOr, {}, -1, -1, nnf(n->lhs, true), nnf(n->rhs, false)),
                    make(NodeKind::kOr, {}, -1, -1, nnf(n->lhs, false), nnf(n->rhs, true)));
      return make(NodeKind::kOr, {}, -1, -1,
                  make(NodeKind::kAnd, {}, -1, -1, nnf(n->lhs, false), nnf(n->rhs, true)),
                  make(NodeKind::kAnd, {}, -1, -1, nnf(n->lhs, true), nnf(n->rhs, false)));
    }
    case NodeKind::kExistsFO: return make(neg ? NodeKind::kForallFO : NodeKind::kExistsFO, {}, n->x, -1, nnf(n->lhs, neg));
    case NodeKind::kForallFO: return make(neg ? NodeKind::kExistsFO : NodeKind::kForallFO, {}, n->x, -1, nnf(n->lhs, neg));
    case NodeKind::kExistsSO: return make(neg ? NodeKind::kForallSO : NodeKind::kExistsSO, {}, n->x, -1, nnf(n->lhs, neg));
    case NodeKind::kForallSO: return make(neg ? NodeKind::kExistsSO : NodeKind::kForallSO, {}, n->x, -1, nnf(n->lhs, neg));
  }
  return n;
}

// ---------------------------------------------------------------- evaluation

struct Evaluator {
  const Formula& f;
  std::size_t n;
  std::vector<std::uint64_t> fo;  // position per FO variable
  std::vector<std::uint64_t> so;  // bit mask per SO variable
  std::vector<Letter> word;
  std::unordered_map<const FormulaNode*, Letter> letter_of;
  std::unordered_map<std::string, TrackBits> pred_bits;
  std::unordered_map<const FormulaNode*, const TrackBits*> pred_of;

  bool eval(const FormulaNode& node) {
    switch (node.kind) {
      case NodeKind::kTrue: return true;
      case NodeKind::kFalse: return false;
      case NodeKind::kLetter: return word[fo[node.x]] == letter_of.at(&node);
      case NodeKind::kLeq: return fo[node.x] <= fo[node.y];
      case NodeKind::kPred: return (*pred_of.at(&node))[fo[node.x]] != 0;
      case NodeKind::kIn: return (so[node.y] >> fo[node.x]) & 1u;
      case NodeKind::kNot: return !eval(*node.lhs);
      case NodeKind::kAnd: return eval(*node.lhs) && eval(*node.rhs);
      case NodeKind::kOr: return eval(*node.lhs) || eval(*node.rhs);
      case NodeKind::kImplies: return !eval(*node.lhs) || eval(*node.rhs);
      case NodeKind::kIff: return eval(*node.lhs) == eval(*node.rhs);
      case NodeKind::kExistsFO:
        for (std::size_t i = 0; i < n; ++i) {
          fo[node.x] = i;
          if (eval(*node.lhs)) return true;
        }
        return false;
      case NodeKind::kForallFO:
        for (std::size_t i = 0; i < n; ++i) {
          fo[node.x] = i;
          if (!eval(*node.lhs)) return false;
        }
        return true;
      case NodeKind::kExistsSO:
      case NodeKind::kForallSO: {
        bool exists = node.kind == NodeKind::kExistsSO;
        const std::uint64_t count = std::uint64_t{1} << n;
        for (std::uint64_t m = 0; m < count; ++m) {
          so[node.x] = m;
          if (eval(*node.lhs) == exists) return exists;
        }
        return !exists;
      }
    }
    return false;
  }
};

void walk(const FormulaNode& n, const std::function<void(const FormulaNode&)>& fn) {
  fn(n);
  if (n.lhs) walk(*n.lhs, fn);
  if (n.rhs) walk(*n.rhs, fn);
}

// sigma/pi: least k with the subformula in Σ_k / Π_k; bs: least k with it in BΣ_k.
struct Levels {
  int sigma, pi, bs;
};

Levels levels(const FormulaNode& n) {
  switch (n.kind) {
    case NodeKind::kNot: {
      auto l = levels(*n.lhs);
      return {l.pi, l.sigma, l.bs};
    }
    case NodeKind::kAnd:
    case NodeKind::kOr: {
      auto a = levels(*n.lhs), b = levels(*n.rhs);
      return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi), std::max(a.bs, b.bs)};
    }
    case NodeKind::kImplies: {
      auto a = levels(*n.lhs), b = levels(*n.rhs);
      return {std::max(a.pi, b.sigma), std::max(a.sigma, b.pi), std::max(a.bs, b.bs)};
    }
    case NodeKind::kIff: {
      auto a = levels(*n.lhs), b = levels(*n.rhs);
      int both = std::max({a.sigma, a.pi, b.sigma, b.pi});
      return {both, both, std::max(a.bs, b.bs)};
    }
    case NodeKind::kExistsFO:
    case NodeKind::kExistsSO: {
      auto l = levels(*n.lhs);
      int sigma = std::max(1, l.sigma);
      return {sigma, sigma + 1, sigma};
    }
    case NodeKind::kForallFO:
    case NodeKind::kForallSO: {
      auto l = levels(*n.lhs);
      int pi = std::max(1, l.pi);
      return {pi + 1, pi, pi};
    }
    default:
      return {0, 0, 0};
  }
}

}  // namespace

Formula::Formula(NodePtr root, std::vector<Variable> vars, std::vector<std::string> predicates, int fo_width)
    : root_(std::move(root)), vars_(std::move(vars)), predicates_(std::move(predicates)), macro_width_(fo_width) {}

std::vector<int> Formula::free_variables() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].free) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::string> Formula::letters() const {
  std::vector<std::string> out;
  walk(*root_, [&](const FormulaNode& n) {
    if (n.kind == NodeKind::kLetter && std::find(out.begin(), out.end(), n.symbol) == out.end())
      out.push_back(n.symbol);
  });
  return out;
}

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  std::string body(text);
  std::vector<std::string> declared = options.predicates;
  std::vector<std::string> free_fo = options.free_fo;
  bool has_declarations = !options.predicates.empty();
  // strip comments and header lines, keeping offsets
  std::size_t line_start = 0;
  while (line_start < body.size()) {
    std::size_t line_end = body.find('\n', line_start);
    if (line_end == std::string::npos) line_end = body.size();
    std::size_t hash = body.find('#', line_start);
    if (hash != std::string::npos && hash < line_end)
      std::fill(body.begin() + static_cast<std::ptrdiff_t>(hash), body.begin() + static_cast<std::ptrdiff_t>(line_end), ' ');
    std::string_view line(body.data() + line_start, line_end - line_start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      auto rest = line.substr(first);
      auto header = [&](std::string_view key) { return rest.substr(0, key.size()) == key; };
      std::vector<std::string>* target = nullptr;
      std::size_t skip = 0;
      if (header("preds:")) {
        target = &declared;
        skip = 6;
        has_declarations = true;
      } else if (header("free:")) {
        target = &free_fo;
        skip = 5;
      } else if (header("alphabet:")) {
        skip = 9;
      }
      if (skip) {
        if (target)
          for (auto& w : split_words(rest.substr(skip))) target->push_back(w);
        std::fill(body.begin() + static_cast<std::ptrdiff_t>(line_start),
                  body.begin() + static_cast<std::ptrdiff_t>(line_end), ' ');
      }
    }
    line_start = line_end + 1;
  }
  for (const auto& v : free_fo)
    if (is_upper(v)) throw Error(ErrorKind::kSyntax, "free variable '" + v + "' must be first order");
  Parser parser(lex(body), declared, has_declarations, free_fo);
  return parser.run();
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, f.root(), 0, out);
  return out;
}

std::string to_text(const Formula& f) {
  std::string out;
  if (!f.predicates().empty()) {
    out += "preds:";
    for (const auto& p : f.predicates()) out += " " + p;
    out += "\n";
  }
  auto free = f.free_variables();
  if (!free.empty()) {
    out += "free:";
    for (int v : free) out += " " + f.var(v).name;
    out += "\n";
  }
  return out + to_string(f) + "\n";
}

Formula to_nnf(const Formula& f) {
  return Formula(nnf(f.root_ptr(), false), f.vars(), f.predicates(), f.macro_width());
}

bool eval_direct(const Formula& f, const Interpretation& interp, const Word& u) {
  return eval_direct(f, interp, u, {});
}

bool eval_direct(const Formula& f, const Interpretation& interp, const Word& u,
                 const std::map<std::string, std::size_t>& free_values) {
  const std::size_t n = u.size();
  Evaluator ev{f, n, std::vector<std::uint64_t>(f.vars().size(), 0), std::vector<std::uint64_t>(f.vars().size(), 0),
               u.symbols(), {}, {}, {}};
  bool has_so = false;
  for (const auto& p : f.predicates()) {
    auto it = interp.find(p);
    if (it == interp.end()) throw Error(ErrorKind::kMissingInterpretation, "interpretation missing " + p);
  }
  walk(f.root(), [&](const FormulaNode& node) {
    if (node.kind == NodeKind::kLetter) {
      if (!u.alphabet().contains(node.symbol))
        throw Error(ErrorKind::kAlphabetMismatch, "letter '" + node.symbol + "' is not in the alphabet");
      ev.letter_of[&node] = u.alphabet().index_of(node.symbol);
    } else if (node.kind == NodeKind::kPred) {
      auto it = ev.pred_bits.find(node.symbol);
      if (it == ev.pred_bits.end()) {
        auto pi = interp.find(node.symbol);
        if (pi == interp.end()) throw Error(ErrorKind::kMissingInterpretation, "interpretation missing " + node.symbol);
        it = ev.pred_bits.emplace(node.symbol, pi->second.eval(n)).first;
      }
      ev.pred_of[&node] = &it->second;
    } else if (node.kind == NodeKind::kExistsSO || node.kind == NodeKind::kForallSO) {
      has_so = true;
    }
  });
  if (has_so && n > 20)
    throw Error(ErrorKind::kCapExceeded, "direct evaluation with set quantifiers is limited to words of length <= 20");
  for (int v : f.free_variables()) {
    const auto& name = f.var(v).name;
    auto it = free_values.find(name);
    if (it == free_values.end()) throw Error(ErrorKind::kFreeVariables, "no value for free variable " + name);
    if (it->second >= n)
      throw Error(ErrorKind::kPrecondition, "free variable " + name + " must denote a position < " + std::to_string(n));
    ev.fo[static_cast<std::size_t>(v)] = it->second;
  }
  return ev.eval(f.root());
}

std::string FragmentTags::str() const {
  std::vector<std::string> tags;
  if (fo) tags.push_back("FO");
  if (fo2) tags.push_back("FO2");
  if (bsigma) tags.push_back("BSigma_" + std::to_string(*bsigma));
  if (mso) tags.push_back("MSO");
  std::string out = "{";
  for (std::size_t i = 0; i < tags.size(); ++i) out += (i ? ", " : "") + tags[i];
  return out + "}";
}

FragmentTags classify_fragment(const Formula& f) {
  FragmentTags tags;
  bool so = false;
  walk(f.root(), [&](const FormulaNode& n) {
    so = so || n.kind == NodeKind::kExistsSO || n.kind == NodeKind::kForallSO || n.kind == NodeKind::kIn;
  });
  tags.fo = !so;
  if (tags.fo) {
    std::set<std::string> names;
    for (const auto& v : f.vars())
      if (!v.second_order && !is_synthetic(v)) names.insert(v.name);
    // names as written, and the width of the expanded formula (macros)
    std::size_t width = 0;
    std::function<std::set<int>(const FormulaNode&)> live = [&](const FormulaNode& n) {
      std::set<int> out;
      if (n.lhs) out = live(*n.lhs);
      if (n.rhs) out.merge(live(*n.rhs));
      if (n.kind == NodeKind::kLetter || n.kind == NodeKind::kPred || n.kind == NodeKind::kLeq) out.insert(n.x);
      if (n.kind == NodeKind::kLeq) out.insert(n.y);
      width = std::max(width, out.size());
      if (n.kind == NodeKind::kExistsFO || n.kind == NodeKind::kForallFO) out.erase(n.x);
      return out;
    };
    live(f.root());
    tags.fo2 = names.size() <= 2 && width <= 2;
    tags.bsigma = std::max(1, levels(f.root()).bs);
  }
  return tags;
}

}  // namespace advreg
