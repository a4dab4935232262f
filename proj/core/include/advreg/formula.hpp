#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advreg/predicate.hpp"
#include "advreg/word.hpp"

namespace advreg {

enum class NodeKind {
  kTrue,
  kFalse,
  kLetter,  // symbol(x)
  kLeq,     // x <= y
  kPred,    // symbol(x)
  kIn,      // in(x, X)
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kExistsFO,
  kForallFO,
  kExistsSO,
  kForallSO,
};

struct FormulaNode;
using NodePtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  NodeKind kind;
  std::string symbol;  // letter token or predicate name
  int x = -1;          // first FO variable (atoms) or bound variable (quantifiers)
  int y = -1;          // second FO variable (Leq) or SO variable (In)
  NodePtr lhs;         // also the body of quantifiers and negation
  NodePtr rhs;
};

struct Variable {
  std::string name;
  bool second_order = false;
  bool free = false;
};

/// An MSO[≤, P̄] formula. Every binder introduces its own variable id, so ids
/// are unique even when names repeat. Ids of free variables come first, then
/// bound ones in preorder (outer binders get smaller ids).
class Formula {
 public:
  Formula() = default;
  Formula(NodePtr root, std::vector<Variable> vars, std::vector<std::string> predicates, int fo_width = 0);

  const FormulaNode& root() const { return *root_; }
  NodePtr root_ptr() const { return root_; }
  const std::vector<Variable>& vars() const { return vars_; }
  const Variable& var(int id) const { return vars_.at(static_cast<std::size_t>(id)); }
  /// Predicate symbols in declaration order (this fixes track numbering).
  const std::vector<std::string>& predicates() const { return predicates_; }
  std::vector<int> free_variables() const;
  bool is_sentence() const { return free_variables().empty(); }
  /// Letter symbols mentioned.
  std::vector<std::string> letters() const;
  /// Least number of FO names needed by macros used while parsing.
  int macro_width() const { return macro_width_; }

 private:
  NodePtr root_;
  std::vector<Variable> vars_;
  std::vector<std::string> predicates_;
  int macro_width_ = 0;
};

using Interpretation = std::map<std::string, MonadicPredicate>;

struct ParseOptions {
  /// Extra predicate symbols (in addition to a "preds:" header).
  std::vector<std::string> predicates;
  /// FO variables allowed to occur free.
  std::vector<std::string> free_fo;
};

/// Concrete syntax:
///   φ ::= forall v. φ | exists v. φ | φ <-> φ | φ -> φ | φ | φ | φ & φ | ~φ
///       | a(x) | P(x) | in(x, X) | x <= y | x < y | x = y
///       | first(x) | last(x) | succ(x, y) | true | false | (φ)
/// Precedence from tight to loose: ~, &, |, ->, <->; -> associates to the
/// right and a quantifier body extends as far right as possible. Uppercase
/// variables are second order. Optional header lines "preds: P1 P2" and
/// "free: x" precede the formula; '#' starts a comment. Without a header,
/// identifiers starting with an uppercase letter are predicate symbols.
Formula parse_formula(std::string_view text, const ParseOptions& options = {});

/// Formula text without header lines.
std::string to_string(const Formula& f);
/// Formula text including the "preds:" / "free:" headers needed to re-parse.
std::string to_text(const Formula& f);

/// Negation normal form: only ~ directly above atoms; -> and <-> expanded.
Formula to_nnf(const Formula& f);

/// Direct model checking on u. FO quantifiers range over positions, SO
/// quantifiers over all subsets (|u| ≤ 20 when set quantifiers occur).
bool eval_direct(const Formula& f, const Interpretation& interp, const Word& u);
/// Same with values for the free FO variables (by name).
bool eval_direct(const Formula& f, const Interpretation& interp, const Word& u,
                 const std::map<std::string, std::size_t>& free_values);

struct FragmentTags {
  bool fo = false;
  bool fo2 = false;
  std::optional<int> bsigma;  // least k with the formula in BΣ_k (FO only)
  bool mso = true;
  /// e.g. "{FO, FO2, BSigma_1, MSO}"
  std::string str() const;
};

/// Purely syntactic classification.
FragmentTags classify_fragment(const Formula& f);

}  // namespace advreg
