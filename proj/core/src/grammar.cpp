#include "marpa/grammar.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace marpa {

std::optional<SymbolId> Grammar::find_symbol(std::string_view name) const {
  for (const Symbol& s : symbols)
    if (s.name == name) return s.id;
  return std::nullopt;
}

std::span<const RuleId> Grammar::rules_of(SymbolId lhs) const {
  static const std::vector<RuleId> empty;
  auto i = static_cast<std::size_t>(lhs);
  if (i >= rules_by_lhs_.size()) return empty;
  return rules_by_lhs_[i];
}

void Grammar::rebuild_rule_index() {
  rules_by_lhs_.assign(symbols.size(), {});
  for (const Rule& r : rules) rules_by_lhs_[static_cast<std::size_t>(r.lhs)].push_back(r.id);
}

std::string Grammar::rule_text(RuleId r) const {
  const Rule& ru = rule(r);
  std::string out = name_of(ru.lhs) + " ::=";
  if (ru.rhs.empty()) out += " ;";
  for (SymbolId s : ru.rhs) out += " " + name_of(s);
  return out;
}

Grammar build_grammar(const std::vector<SymbolDecl>& symbols, const std::vector<RuleDecl>& rules,
                      std::string_view start_name) {
  if (rules.empty()) throw GrammarError("rule list is empty");
  Grammar g;
  std::unordered_map<std::string, SymbolId> by_name;
  for (const SymbolDecl& d : symbols) {
    if (by_name.count(d.name)) throw GrammarError("duplicate symbol name " + d.name);
    SymbolId id = static_cast<SymbolId>(g.symbols.size());
    by_name.emplace(d.name, id);
    g.symbols.push_back(Symbol{id, d.name, false, false, d.terminal_allowed.value_or(true)});
  }
  auto lookup = [&](const std::string& n) -> SymbolId {
    auto it = by_name.find(n);
    if (it == by_name.end()) throw GrammarError("rule references undeclared symbol " + n);
    return it->second;
  };
  for (const RuleDecl& d : rules) {
    Rule r;
    r.id = static_cast<RuleId>(g.rules.size());
    r.lhs = lookup(d.lhs);
    for (const std::string& n : d.rhs) r.rhs.push_back(lookup(n));
    g.rules.push_back(std::move(r));
  }
  auto s = by_name.find(std::string(start_name));
  if (s == by_name.end()) throw GrammarError("start symbol " + std::string(start_name) + " is not declared");
  g.start = s->second;
  g.rebuild_rule_index();

  // Terminal policy: explicit declaration wins, otherwise only rule-less
  // symbols are scannable; nullable symbols never are.
  annotate_nullability(g);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    Symbol& sym = g.symbols[i];
    bool base = symbols[i].terminal_allowed.value_or(g.rules_of(sym.id).empty());
    sym.terminal_allowed = base && !sym.is_nullable;
  }

  // Reachability from the start symbol.
  std::vector<bool> reach(g.symbols.size(), false);
  std::vector<SymbolId> work{g.start};
  reach[static_cast<std::size_t>(g.start)] = true;
  while (!work.empty()) {
    SymbolId x = work.back();
    work.pop_back();
    for (RuleId rid : g.rules_of(x))
      for (SymbolId y : g.rule(rid).rhs)
        if (!reach[static_cast<std::size_t>(y)]) {
          reach[static_cast<std::size_t>(y)] = true;
          work.push_back(y);
        }
  }
  for (const Symbol& sym : g.symbols)
    if (!reach[static_cast<std::size_t>(sym.id)])
      throw GrammarError("unreachable symbol " + sym.name);

  // Productivity: a symbol must derive some scannable string. Tokens make
  // every terminal-allowed symbol productive by itself.
  std::vector<bool> prod(g.symbols.size(), false);
  for (const Symbol& sym : g.symbols)
    if (sym.terminal_allowed) prod[static_cast<std::size_t>(sym.id)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      if (prod[static_cast<std::size_t>(r.lhs)]) continue;
      bool all = true;
      for (SymbolId y : r.rhs) all = all && prod[static_cast<std::size_t>(y)];
      if (all) {
        prod[static_cast<std::size_t>(r.lhs)] = true;
        changed = true;
      }
    }
  }
  // Prefer naming a symbol that actually blocks a derivation.
  for (const Rule& r : g.rules)
    for (SymbolId y : r.rhs)
      if (!prod[static_cast<std::size_t>(y)])
        throw GrammarError("unproductive symbol " + g.name_of(y));
  for (const Symbol& sym : g.symbols)
    if (!prod[static_cast<std::size_t>(sym.id)])
      throw GrammarError("unproductive symbol " + sym.name);

  return g;
}

std::set<SymbolId> compute_nullable(const Grammar& g) {
  std::vector<bool> nul(g.symbols.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      if (nul[static_cast<std::size_t>(r.lhs)]) continue;
      bool all = true;
      for (SymbolId y : r.rhs) all = all && nul[static_cast<std::size_t>(y)];
      if (all) {
        nul[static_cast<std::size_t>(r.lhs)] = true;
        changed = true;
      }
    }
  }
  std::set<SymbolId> out;
  for (const Symbol& s : g.symbols)
    if (nul[static_cast<std::size_t>(s.id)]) out.insert(s.id);
  return out;
}

void annotate_nullability(Grammar& g) {
  std::set<SymbolId> nul = compute_nullable(g);
  // A symbol is nulling when it cannot derive anything non-empty.
  // Rule-less symbols stand for themselves and are never nulling.
  std::vector<bool> nonempty(g.symbols.size(), false);
  for (const Symbol& s : g.symbols)
    if (g.rules_of(s.id).empty()) nonempty[static_cast<std::size_t>(s.id)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      if (nonempty[static_cast<std::size_t>(r.lhs)]) continue;
      for (SymbolId y : r.rhs)
        if (nonempty[static_cast<std::size_t>(y)]) {
          nonempty[static_cast<std::size_t>(r.lhs)] = true;
          changed = true;
          break;
        }
    }
  }
  for (Symbol& s : g.symbols) {
    s.is_nullable = nul.count(s.id) != 0;
    s.is_nulling = s.is_nullable && !nonempty[static_cast<std::size_t>(s.id)];
    if (s.is_nullable) s.terminal_allowed = false;
  }
}

std::optional<SymbolId> rightmost_nonnull(const Grammar& g, std::span<const SymbolId> rhs) {
  for (auto it = rhs.rbegin(); it != rhs.rend(); ++it)
    if (!g.nullable(*it)) return *it;
  return std::nullopt;
}

namespace {

// Digraph with an edge lhs -> RightNN(rule) per rule; reachability gives
// the chain of rightmost non-null symbols a right derivation can produce.
std::vector<std::vector<bool>> rightnn_reachability(const Grammar& g) {
  std::size_t n = g.symbols.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const Rule& r : g.rules)
    if (auto rnn = rightmost_nonnull(g, r.rhs))
      reach[static_cast<std::size_t>(r.lhs)][static_cast<std::size_t>(*rnn)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  return reach;
}

}  // namespace

bool is_right_recursive(const Grammar& g, const Rule& r) {
  auto rnn = rightmost_nonnull(g, r.rhs);
  if (!rnn) return false;
  if (*rnn == r.lhs) return true;
  auto reach = rightnn_reachability(g);
  return reach[static_cast<std::size_t>(*rnn)][static_cast<std::size_t>(r.lhs)];
}

void annotate_right_recursion(Grammar& g) {
  auto reach = rightnn_reachability(g);
  for (Rule& r : g.rules) {
    auto rnn = rightmost_nonnull(g, r.rhs);
    r.is_right_recursive =
        rnn && (*rnn == r.lhs ||
                reach[static_cast<std::size_t>(*rnn)][static_cast<std::size_t>(r.lhs)]);
  }
}

RewriteResult rewrite_nnf(const Grammar& raw) {
  if (raw.stage == GrammarStage::nnf || raw.stage == GrammarStage::core) {
    RewriteResult out{raw, {}, false, false};
    out.history.provenance.resize(raw.rules.size());
    for (const Rule& r : raw.rules) {
      RuleProvenance& p = out.history.provenance[static_cast<std::size_t>(r.id)];
      p.source_rule = r.id;
      for (std::size_t k = 0; k < r.rhs.size(); ++k) p.source_pos.push_back(static_cast<std::int32_t>(k));
    }
    return out;
  }

  RewriteResult out;
  Grammar& g = out.grammar;
  g.stage = GrammarStage::nnf;
  g.symbols = raw.symbols;
  g.start = raw.start;
  out.start_nullable = raw.nullable(raw.start);
  out.trivial = raw.nulling(raw.start);

  RewriteHistory& h = out.history;
  std::map<std::pair<SymbolId, std::vector<SymbolId>>, RuleId> seen;

  for (const Symbol& s : raw.symbols)
    if (s.is_nullable && !s.is_nulling)
      h.steps.push_back({RewriteStep::Kind::split_proper_nullable, no_rule, no_rule, s.id});

  if (out.trivial) {
    // Language is {ε}; no rules survive.
    for (const Rule& r : raw.rules)
      h.steps.push_back({RewriteStep::Kind::dropped_empty_variant, r.id, no_rule, no_symbol});
    for (Symbol& s : g.symbols) {
      s.is_nullable = raw.symbol(s.id).is_nullable;
      s.is_nulling = raw.symbol(s.id).is_nulling;
    }
    g.rebuild_rule_index();
    return out;
  }

  for (const Rule& r : raw.rules) {
    if (r.rhs.empty()) {
      h.steps.push_back({RewriteStep::Kind::dropped_empty_rule, r.id, no_rule, no_symbol});
      continue;
    }
    if (raw.nulling(r.lhs)) {
      // Every variant would factor down to an empty RHS.
      h.steps.push_back({RewriteStep::Kind::dropped_empty_variant, r.id, no_rule, no_symbol});
      continue;
    }
    // Positions holding a proper nullable can each be kept or nulled out.
    std::vector<std::size_t> optional_pos;
    for (std::size_t k = 0; k < r.rhs.size(); ++k) {
      SymbolId y = r.rhs[k];
      if (raw.nullable(y) && !raw.nulling(y)) optional_pos.push_back(k);
    }
    // Factored rules shed their nulling occurrences as well, or an
    // all-nulled variant would reintroduce a proper nullable LHS.
    // Unfactored rules keep them; strip_nulling removes those.
    bool factored = !optional_pos.empty();
    std::size_t variants = std::size_t{1} << optional_pos.size();
    for (std::size_t mask = 0; mask < variants; ++mask) {
      std::vector<SymbolId> rhs;
      std::vector<std::int32_t> pos;
      for (std::size_t k = 0; k < r.rhs.size(); ++k) {
        auto opt = std::find(optional_pos.begin(), optional_pos.end(), k);
        if (opt != optional_pos.end() &&
            (mask >> (opt - optional_pos.begin())) & 1u)
          continue;  // this occurrence derives ε in the variant
        if (factored && raw.nulling(r.rhs[k])) {
          if (mask == 0)
            h.steps.push_back(
                {RewriteStep::Kind::stripped_occurrence, r.id, no_rule, r.rhs[k]});
          continue;
        }
        rhs.push_back(r.rhs[k]);
        pos.push_back(static_cast<std::int32_t>(k));
      }
      if (rhs.empty()) {
        h.steps.push_back({RewriteStep::Kind::dropped_empty_variant, r.id, no_rule, no_symbol});
        continue;
      }
      auto key = std::make_pair(r.lhs, rhs);
      if (seen.count(key)) continue;
      Rule nr;
      nr.id = static_cast<RuleId>(g.rules.size());
      nr.lhs = r.lhs;
      nr.rhs = rhs;
      seen.emplace(key, nr.id);
      g.rules.push_back(std::move(nr));
      h.provenance.push_back({r.id, pos});
      h.steps.push_back({RewriteStep::Kind::factored_rule, r.id, g.rules.back().id, no_symbol});
    }
  }

  g.rebuild_rule_index();
  annotate_nullability(g);
  // Formerly proper nullables are non-nullable now; keep the raw nulling
  // flags so strip_nulling can remove those symbols' occurrences.
  for (Symbol& s : g.symbols)
    if (raw.nulling(s.id)) {
      s.is_nullable = true;
      s.is_nulling = true;
      s.terminal_allowed = false;
    }
  return out;
}

RewriteResult strip_nulling(const Grammar& nnf) {
  RewriteResult out;
  Grammar& g = out.grammar;
  g.stage = GrammarStage::core;
  g.symbols = nnf.symbols;
  g.start = nnf.start;
  RewriteHistory& h = out.history;

  bool already_core = nnf.stage == GrammarStage::core;
  for (const Rule& r : nnf.rules) {
    std::vector<SymbolId> rhs;
    std::vector<std::int32_t> pos;
    for (std::size_t k = 0; k < r.rhs.size(); ++k) {
      if (!already_core && nnf.nulling(r.rhs[k])) {
        h.steps.push_back({RewriteStep::Kind::stripped_occurrence, r.id, no_rule, r.rhs[k]});
        continue;
      }
      rhs.push_back(r.rhs[k]);
      pos.push_back(static_cast<std::int32_t>(k));
    }
    if (rhs.empty()) {
      h.steps.push_back({RewriteStep::Kind::removed_nulling_rule, r.id, no_rule, r.lhs});
      continue;
    }
    Rule nr;
    nr.id = static_cast<RuleId>(g.rules.size());
    nr.lhs = r.lhs;
    nr.rhs = std::move(rhs);
    g.rules.push_back(std::move(nr));
    h.provenance.push_back({r.id, std::move(pos)});
  }
  g.rebuild_rule_index();
  annotate_nullability(g);
  annotate_right_recursion(g);
  return out;
}

Grammar augment(const Grammar& core, SymbolId start) {
  if (core.augmented()) throw GrammarError("grammar is already augmented");
  if (start < 0 || static_cast<std::size_t>(start) >= core.symbols.size())
    throw GrammarError("start symbol is not part of the grammar");
  Grammar g = core;
  Symbol accept;
  accept.id = static_cast<SymbolId>(g.symbols.size());
  accept.name = "[accept]";
  accept.terminal_allowed = false;
  g.symbols.push_back(accept);
  Rule r;
  r.id = static_cast<RuleId>(g.rules.size());
  r.lhs = accept.id;
  r.rhs = {start};
  g.rules.push_back(r);
  g.accept_symbol = accept.id;
  g.accept_rule = r.id;
  g.start = start;
  g.rebuild_rule_index();
  annotate_right_recursion(g);
  return g;
}

std::int32_t PreparedGrammar::raw_dot(RuleId core_rule, std::int32_t pos) const {
  const DotMap& m = dotmap.at(static_cast<std::size_t>(core_rule));
  if (m.raw_rule == no_rule) return pos;  // acceptance rule
  if (pos == 0) return 0;
  auto len = static_cast<std::int32_t>(m.raw_pos.size());
  if (pos >= len) return static_cast<std::int32_t>(raw.rule(m.raw_rule).rhs.size());
  return m.raw_pos[static_cast<std::size_t>(pos)];
}

PreparedGrammar prepare(const Grammar& raw) {
  if (raw.stage != GrammarStage::raw) throw GrammarError("prepare expects a raw grammar");
  PreparedGrammar pg;
  pg.raw = raw;

  RewriteResult nnf = rewrite_nnf(pg.raw);
  pg.accepts_empty = nnf.start_nullable;
  pg.trivial = nnf.trivial;
  pg.history.steps = std::move(nnf.history.steps);
  if (pg.trivial) return pg;

  RewriteResult core = strip_nulling(nnf.grammar);
  for (const RewriteStep& s : core.history.steps) pg.history.steps.push_back(s);

  pg.core = augment(core.grammar, core.grammar.start);

  // Compose provenance: core rule -> nnf rule -> raw rule.
  for (std::size_t i = 0; i < core.grammar.rules.size(); ++i) {
    const RuleProvenance& cp = core.history.provenance[i];
    const RuleProvenance& np = nnf.history.provenance[static_cast<std::size_t>(cp.source_rule)];
    PreparedGrammar::DotMap m;
    m.raw_rule = np.source_rule;
    for (std::int32_t p : cp.source_pos) m.raw_pos.push_back(np.source_pos[static_cast<std::size_t>(p)]);
    pg.dotmap.push_back(std::move(m));
  }
  pg.dotmap.push_back({no_rule, {0}});  // acceptance rule maps to itself
  return pg;
}

}  // namespace marpa
