#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace marpa {

using SymbolId = std::int32_t;
using RuleId = std::int32_t;

inline constexpr SymbolId no_symbol = -1;
inline constexpr RuleId no_rule = -1;

/// Raised for invalid grammars and misuse of the preprocessing pipeline.
class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Symbol {
  SymbolId id = no_symbol;
  std::string name;
  bool is_nullable = false;  // derives the empty string
  bool is_nulling = false;   // derives only the empty string
  bool terminal_allowed = true;
};

struct Rule {
  RuleId id = no_rule;
  SymbolId lhs = no_symbol;
  std::vector<SymbolId> rhs;  // empty only at the raw stage
  bool is_right_recursive = false;
};

/// raw  = validated user form, empty rules and proper nullables allowed
/// nnf  = no empty rules; every nullable symbol is nulling
/// core = nulling symbols removed from every rule
enum class GrammarStage { raw, nnf, core };

class Grammar {
 public:
  GrammarStage stage = GrammarStage::raw;
  std::vector<Symbol> symbols;
  std::vector<Rule> rules;
  SymbolId start = no_symbol;
  SymbolId accept_symbol = no_symbol;
  RuleId accept_rule = no_rule;

  bool augmented() const { return accept_symbol != no_symbol; }
  std::size_t symbol_count() const { return symbols.size(); }

  const Symbol& symbol(SymbolId s) const { return symbols.at(static_cast<std::size_t>(s)); }
  Symbol& symbol(SymbolId s) { return symbols.at(static_cast<std::size_t>(s)); }
  const Rule& rule(RuleId r) const { return rules.at(static_cast<std::size_t>(r)); }
  const std::string& name_of(SymbolId s) const { return symbol(s).name; }

  std::optional<SymbolId> find_symbol(std::string_view name) const;
  std::span<const RuleId> rules_of(SymbolId lhs) const;

  bool nullable(SymbolId s) const { return symbol(s).is_nullable; }
  bool nulling(SymbolId s) const { return symbol(s).is_nulling; }

  std::string rule_text(RuleId r) const;

  /// Must be called after any direct mutation of `rules`.
  void rebuild_rule_index();

 private:
  std::vector<std::vector<RuleId>> rules_by_lhs_;
};

struct SymbolDecl {
  std::string name;
  // Defaults to true for non-nullable symbols; nullable symbols can never be tokens.
  std::optional<bool> terminal_allowed = std::nullopt;
};

struct RuleDecl {
  std::string lhs;
  std::vector<std::string> rhs;
};

/// Validates and builds a raw grammar. Assigns dense symbol and rule ids in
/// declaration order. Rejects duplicate symbol names, references to
/// undeclared symbols, and unreachable or unproductive symbols.
Grammar build_grammar(const std::vector<SymbolDecl>& symbols, const std::vector<RuleDecl>& rules,
                      std::string_view start_name);

/// Least fixed point of "derives the empty string".
std::set<SymbolId> compute_nullable(const Grammar& g);

/// Sets is_nullable / is_nulling on every symbol and withdraws
/// terminal_allowed from nullable symbols.
void annotate_nullability(Grammar& g);

/// Last symbol of rhs that is not nullable, skipping the nullable suffix.
std::optional<SymbolId> rightmost_nonnull(const Grammar& g, std::span<const SymbolId> rhs);

/// True iff the rule's rightmost non-null symbol derives, through the
/// RightNN digraph, a string whose rightmost non-null symbol is the LHS.
/// Requires nullability annotations. Exact on grammars without proper
/// nullables (the stages where the flag is consumed).
bool is_right_recursive(const Grammar& g, const Rule& r);

/// Computes is_right_recursive for every rule.
void annotate_right_recursion(Grammar& g);

struct RewriteStep {
  enum class Kind {
    dropped_empty_rule,    // raw empty rule removed
    split_proper_nullable, // symbol's empty derivation factored away
    factored_rule,         // rule variant emitted with some occurrences nulled
    dropped_empty_variant, // factoring variant whose RHS vanished
    removed_nulling_rule,  // rule whose RHS became empty at the core stage
    stripped_occurrence,   // nulling symbol removed from a RHS
  };
  Kind kind;
  RuleId before_rule = no_rule;
  RuleId after_rule = no_rule;
  SymbolId symbol = no_symbol;
};

/// For each rule of the rewritten grammar: the rule it came from and, for
/// each RHS position, the source RHS position.
struct RuleProvenance {
  RuleId source_rule = no_rule;
  std::vector<std::int32_t> source_pos;
};

struct RewriteHistory {
  std::vector<RewriteStep> steps;
  std::vector<RuleProvenance> provenance;  // indexed by result rule id
};

struct RewriteResult {
  Grammar grammar;
  RewriteHistory history;
  bool trivial = false;         // language is exactly {ε}
  bool start_nullable = false;  // the empty input is accepted
};

/// raw -> nnf. Splits every proper nullable into its non-null half (which
/// keeps the symbol's name and id) and a conceptual nulling half whose
/// occurrences are factored away; drops empty rules and empty variants.
/// Identity on nnf-stage input. A trivial grammar is flagged and gets an
/// empty rule set; the recognizer answers its queries as a special case.
RewriteResult rewrite_nnf(const Grammar& raw);

/// nnf -> core. Strips nulling symbols from every RHS and removes rules
/// (with their necessarily-nulling LHS) whose RHS becomes empty.
/// Identity on core-stage input.
RewriteResult strip_nulling(const Grammar& nnf);

/// Adds the dedicated acceptance symbol and rule [accept -> start].
Grammar augment(const Grammar& core, SymbolId start);

/// The full preprocessing pipeline plus the bookkeeping the recognizer
/// needs to report in terms of the user's grammar.
struct PreparedGrammar {
  Grammar raw;   // nullability-annotated user grammar
  Grammar core;  // rewritten and augmented; empty when trivial
  RewriteHistory history;
  bool trivial = false;
  bool accepts_empty = false;

  struct DotMap {
    RuleId raw_rule = no_rule;  // no_rule for the acceptance rule
    std::vector<std::int32_t> raw_pos;
  };
  std::vector<DotMap> dotmap;  // indexed by core rule id

  /// Maps a core dotted position back to the user rule's dot position.
  std::int32_t raw_dot(RuleId core_rule, std::int32_t pos) const;
};

PreparedGrammar prepare(const Grammar& raw);

}  // namespace marpa
