#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "advreg/advice.hpp"
#include "advreg/dfa.hpp"
#include "advreg/morphic.hpp"
#include "advreg/nerode.hpp"
#include "advreg/one_scan.hpp"
#include "advreg/predicate.hpp"
#include "advreg/substitution.hpp"

namespace advreg {

using Json = nlohmann::json;

// Every *_from_json re-validates through the owning constructor and throws
// kFormat (shape) or the constructor's own error kind (content).

Json to_json(const Alphabet& a);
Alphabet alphabet_from_json(const Json& j);

/// {"alphabet":{"letters":[...],"tracks":l},"states":m,"initial":q,"delta":[[...]],"accepting":[...]}
Json to_json(const Dfa& d);
Dfa dfa_from_json(const Json& j);

Json to_json(const RegularCombo& c);
RegularCombo combo_from_json(const Json& j);

/// Function-backed predicates have no closed form; with `n_max` they are
/// written as an explicit table, otherwise kFormat.
Json to_json(const MonadicPredicate& p, std::optional<std::size_t> n_max = std::nullopt);
/// "morphic" entries name a system file (relative to `base_dir`), an inline
/// system object, or a built-in system.
MonadicPredicate predicate_from_json(const Json& j, const std::filesystem::path& base_dir = {});

/// Either {"P": {...}, ...} or a list of predicates carrying "name".
Json to_json(const Interpretation& interp, std::optional<std::size_t> n_max = std::nullopt);
Interpretation interpretation_from_json(const Json& j, const std::filesystem::path& base_dir = {});

Json to_json(const Hd0lSystem& s);
Hd0lSystem hd0l_from_json(const Json& j);

/// {"size":m,"identity":e,"table":[[...]]}
Json to_json(const FiniteMonoid& m);
FiniteMonoid monoid_from_json(const Json& j);

/// Function presentations are tabulated up to `n_max` (or the bound).
Json to_json(const OneScanProgram& p, std::optional<std::size_t> n_max = std::nullopt);
OneScanProgram program_from_json(const Json& j, const std::filesystem::path& base_dir = {});

/// Base presentations keep the base automaton and predicates; the others
/// are tabulated up to `n_max` (or the bound).
Json to_json(const AdviceAutomaton& a, std::optional<std::size_t> n_max = std::nullopt);
AdviceAutomaton advice_from_json(const Json& j, const std::filesystem::path& base_dir = {});

Json to_json(const SliceStructure& s);
SliceStructure slice_structure_from_json(const Json& j);

Json to_json(const SyntacticPredicate& p);
SyntacticPredicate synpred_from_json(const Json& j);

Json to_json(const PeriodicityCertificate& c);
Json to_json(const RegularityProbe& p);
Json to_json(const MorphicRegularity& r);
Json to_json(const SubstitutionResult& r);
Json to_json(const CraneBeachResult& r);

/// "ε" for the empty word.
std::string word_text(const Word& w);
Word word_from_text(const Alphabet& a, const std::string& text);

Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace advreg
