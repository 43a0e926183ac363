#include "marpa/ahfa.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace marpa {

SymbolId penult(const Grammar& g, DottedRule dr) {
  const Rule& r = g.rule(dr.rule);
  auto len = static_cast<std::int32_t>(r.rhs.size());
  if (dr.pos >= len) return no_symbol;
  SymbolId pd = r.rhs[static_cast<std::size_t>(dr.pos)];
  if (g.nullable(pd)) return no_symbol;
  for (std::int32_t k = dr.pos + 1; k < len; ++k)
    if (!g.nullable(r.rhs[static_cast<std::size_t>(k)])) return no_symbol;
  return pd;
}

std::string dotted_rule_text(const Grammar& g, DottedRule dr) {
  const Rule& r = g.rule(dr.rule);
  std::string out = g.name_of(r.lhs) + " ::=";
  for (std::int32_t k = 0; k <= static_cast<std::int32_t>(r.rhs.size()); ++k) {
    if (k == dr.pos) out += " •";
    if (k < static_cast<std::int32_t>(r.rhs.size()))
      out += " " + g.name_of(r.rhs[static_cast<std::size_t>(k)]);
  }
  return out;
}

std::vector<DottedRule> predict_closure(const Grammar& core, std::span<const SymbolId> postdot_syms) {
  // Left-corner reachability; exact because core grammars have no nullables.
  std::vector<bool> seen(core.symbols.size(), false);
  std::vector<SymbolId> work;
  for (SymbolId s : postdot_syms)
    if (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      work.push_back(s);
    }
  std::vector<DottedRule> out;
  std::vector<bool> emitted(core.rules.size(), false);
  while (!work.empty()) {
    SymbolId x = work.back();
    work.pop_back();
    for (RuleId rid : core.rules_of(x)) {
      if (rid == core.accept_rule) continue;
      if (emitted[static_cast<std::size_t>(rid)]) continue;
      emitted[static_cast<std::size_t>(rid)] = true;
      out.push_back({rid, 0});
      SymbolId first = core.rule(rid).rhs.front();
      if (!seen[static_cast<std::size_t>(first)]) {
        seen[static_cast<std::size_t>(first)] = true;
        work.push_back(first);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void finish_state(const Grammar& g, AhfaState& st) {
  std::vector<SymbolId> completed;
  for (DottedRule dr : st.items) {
    if (is_completion(g, dr)) {
      completed.push_back(g.rule(dr.rule).lhs);
      if (dr.rule == g.accept_rule) st.has_accept_completion = true;
      continue;
    }
    SymbolId pd = postdot(g, dr);
    bool cand = penult(g, dr) == pd && g.rule(dr.rule).is_right_recursive;
    st.postdot_items.push_back({pd, dr, cand});
    if (std::find(st.postdot_symbols.begin(), st.postdot_symbols.end(), pd) ==
        st.postdot_symbols.end())
      st.postdot_symbols.push_back(pd);
  }
  std::sort(completed.begin(), completed.end());
  completed.erase(std::unique(completed.begin(), completed.end()), completed.end());
  st.completed_lhs = std::move(completed);
  std::sort(st.postdot_symbols.begin(), st.postdot_symbols.end());
}

}  // namespace

Automaton build_ahfa(const Grammar& g) {
  if (!g.augmented() || g.stage != GrammarStage::core)
    throw GrammarError("AHFA construction requires an augmented core grammar");

  Automaton fa;
  fa.symbol_count = static_cast<std::int32_t>(g.symbols.size());
  std::map<std::vector<DottedRule>, StateId> by_items;

  auto intern = [&](std::vector<DottedRule> items, StateKind kind) -> StateId {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    auto it = by_items.find(items);
    if (it != by_items.end()) {
      assert(fa.states[static_cast<std::size_t>(it->second)].kind == kind);
      return it->second;
    }
    AhfaState st;
    st.id = static_cast<StateId>(fa.states.size());
    st.kind = kind;
    st.items = std::move(items);
    st.goto_table.assign(g.symbols.size(), no_state);
    finish_state(g, st);
    by_items.emplace(st.items, st.id);
    fa.states.push_back(std::move(st));
    return fa.states.back().id;
  };

  fa.initial = intern({{g.accept_rule, 0}}, StateKind::confirmed);

  for (std::size_t q = 0; q < fa.states.size(); ++q) {
    if (fa.states[q].kind == StateKind::confirmed) {
      std::vector<DottedRule> preds = predict_closure(g, fa.states[q].postdot_symbols);
      if (!preds.empty()) {
        StateId ng = intern(std::move(preds), StateKind::predicted);
        fa.states[q].null_goto = ng;
      }
    }
    // Transitions advance a state's own items only. The predicted
    // companion is a separate state whose EIM carries the prediction
    // origin; folding its advances in here would smuggle them out under
    // the confirmed EIM's origin.
    std::vector<std::pair<SymbolId, DottedRule>> sources;
    for (const auto& pi : fa.states[q].postdot_items) sources.emplace_back(pi.sym, pi.dr);
    std::sort(sources.begin(), sources.end());

    for (std::size_t i = 0; i < sources.size();) {
      SymbolId t = sources[i].first;
      std::vector<DottedRule> succ;
      for (; i < sources.size() && sources[i].first == t; ++i) succ.push_back(next(sources[i].second));
      StateId to = intern(std::move(succ), StateKind::confirmed);
      fa.states[q].goto_table[static_cast<std::size_t>(t)] = to;
    }
  }
  return fa;
}

std::string dump_ahfa(const Automaton& fa, const Grammar& g) {
  std::ostringstream out;
  for (const AhfaState& st : fa.states) {
    out << "state " << st.id << ' '
        << (st.kind == StateKind::confirmed ? "confirmed" : "predicted") << '\n';
    for (DottedRule dr : st.items) out << "  " << dotted_rule_text(g, dr) << '\n';
    for (std::size_t s = 0; s < st.goto_table.size(); ++s)
      if (st.goto_table[s] != no_state)
        out << "  goto " << g.name_of(static_cast<SymbolId>(s)) << " -> " << st.goto_table[s] << '\n';
    if (st.null_goto != no_state) out << "  null -> " << st.null_goto << '\n';
  }
  return out.str();
}

}  // namespace marpa
