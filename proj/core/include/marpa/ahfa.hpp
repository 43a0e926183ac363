#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "marpa/grammar.hpp"

namespace marpa {

using StateId = std::int32_t;
inline constexpr StateId no_state = -1;

struct DottedRule {
  RuleId rule = no_rule;
  std::int32_t pos = 0;
  auto operator<=>(const DottedRule&) const = default;
};

inline SymbolId postdot(const Grammar& g, DottedRule dr) {
  const Rule& r = g.rule(dr.rule);
  return dr.pos < static_cast<std::int32_t>(r.rhs.size()) ? r.rhs[static_cast<std::size_t>(dr.pos)]
                                                          : no_symbol;
}
inline DottedRule next(DottedRule dr) { return {dr.rule, dr.pos + 1}; }
inline bool is_completion(const Grammar& g, DottedRule dr) {
  return dr.pos == static_cast<std::int32_t>(g.rule(dr.rule).rhs.size());
}

/// The postdot symbol when it is the rightmost non-null symbol of the rule:
/// the dot sits just before it, followed only by nullable symbols.
SymbolId penult(const Grammar& g, DottedRule dr);

std::string dotted_rule_text(const Grammar& g, DottedRule dr);

enum class StateKind { confirmed, predicted };

struct AhfaState {
  StateId id = no_state;
  StateKind kind = StateKind::confirmed;
  std::vector<DottedRule> items;  // canonically ordered

  std::vector<StateId> goto_table;  // indexed by symbol; no_state when undefined
  StateId null_goto = no_state;

  std::vector<SymbolId> completed_lhs;  // sorted, unique
  std::vector<SymbolId> postdot_symbols;

  struct PostdotItem {
    SymbolId sym;
    DottedRule dr;
    bool leo_candidate;  // penult position of a right-recursive rule
  };
  std::vector<PostdotItem> postdot_items;

  bool has_accept_completion = false;
};

struct Automaton {
  std::vector<AhfaState> states;
  StateId initial = no_state;
  std::int32_t symbol_count = 0;

  std::size_t size() const { return states.size(); }
  const AhfaState& state(StateId s) const { return states.at(static_cast<std::size_t>(s)); }
  StateId goto_state(StateId from, SymbolId sym) const {
    return state(from).goto_table.at(static_cast<std::size_t>(sym));
  }
};

/// All predictions the Earley prediction operation would generate for the
/// given postdot symbols: the transitive left-corner closure over the core
/// grammar's rules. Excludes the initial dotted rule.
std::vector<DottedRule> predict_closure(const Grammar& core, std::span<const SymbolId> postdot_syms);

/// Worklist subset construction of the split LR(0) ε-DFA over an augmented
/// core grammar. Every state's transition row advances its own items;
/// predicted states carry their own rows and no null transition.
Automaton build_ahfa(const Grammar& core_augmented);

std::string dump_ahfa(const Automaton& fa, const Grammar& g);

}  // namespace marpa
