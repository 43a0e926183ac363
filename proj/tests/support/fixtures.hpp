#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "marpa/bnf.hpp"
#include "marpa/grammar.hpp"
#include "marpa/input.hpp"

namespace marpa::test {

// Right-recursive workhorse: S ::= 'a' S | 'a'
inline Grammar g1() { return load_bnf("S ::= 'a' S | 'a'\n"); }

inline InputStream text_stream(const Grammar& g, const std::string& text) {
  InputStream in(g);
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto sym = g.find_symbol(std::string_view(&text[i], 1));
    if (!sym) throw GrammarError("fixture text uses unknown symbol");
    in.push_token({*sym, static_cast<std::int32_t>(i), 1});
  }
  return in;
}

inline std::vector<SymbolId> word_of(const Grammar& g, const std::string& text) {
  std::vector<SymbolId> out;
  for (char c : text) out.push_back(*g.find_symbol(std::string_view(&c, 1)));
  return out;
}

// Depth-bounded exhaustive check that a symbol derives the empty string.
inline bool derives_empty_brute(const Grammar& g, SymbolId x, int depth) {
  if (depth <= 0) return false;
  for (RuleId rid : g.rules_of(x)) {
    bool all = true;
    for (SymbolId y : g.rule(rid).rhs)
      if (!derives_empty_brute(g, y, depth - 1)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

// Brute-force right-recursion: expand right derivations to depth
// |symbols| + 1 tracking the rightmost non-null symbol, looking for the
// rule's LHS to recur.
inline bool right_recursive_brute(const Grammar& g, const Rule& r) {
  auto rnn = [&](const std::vector<SymbolId>& rhs) -> std::optional<SymbolId> {
    for (auto it = rhs.rbegin(); it != rhs.rend(); ++it)
      if (!g.nullable(*it)) return *it;
    return std::nullopt;
  };
  auto first = rnn(r.rhs);
  if (!first) return false;
  if (*first == r.lhs) return true;
  std::vector<bool> seen(g.symbols.size(), false);
  std::vector<SymbolId> frontier{*first};
  seen[static_cast<std::size_t>(*first)] = true;
  for (std::size_t depth = 0; depth <= g.symbols.size() + 1 && !frontier.empty(); ++depth) {
    std::vector<SymbolId> nxt;
    for (SymbolId x : frontier)
      for (RuleId rid : g.rules_of(x))
        if (auto y = rnn(g.rule(rid).rhs)) {
          if (*y == r.lhs) return true;
          if (!seen[static_cast<std::size_t>(*y)]) {
            seen[static_cast<std::size_t>(*y)] = true;
            nxt.push_back(*y);
          }
        }
    frontier = std::move(nxt);
  }
  return false;
}

struct RandomGrammarOptions {
  int nonterminals = 3;  // S, A, B
  int max_rules = 6;
  int max_rhs = 3;
  bool allow_empty = true;
};

// Random small grammar over nonterminals {S,A,B} and terminals {a,b}.
// Returns nullopt when validation rejects the draw (caller retries).
inline std::optional<Grammar> random_grammar(std::mt19937& rng, RandomGrammarOptions opts = {}) {
  static const std::vector<std::string> nt_names{"S", "A", "B", "C", "D"};
  std::vector<std::string> names(nt_names.begin(), nt_names.begin() + opts.nonterminals);
  names.push_back("a");
  names.push_back("b");

  std::uniform_int_distribution<int> rule_count(1, opts.max_rules);
  std::uniform_int_distribution<int> lhs_pick(0, opts.nonterminals - 1);
  std::uniform_int_distribution<int> sym_pick(0, static_cast<int>(names.size()) - 1);

  int nrules = rule_count(rng);
  std::vector<RuleDecl> rules;
  std::vector<bool> used(names.size(), false);
  used[0] = true;  // the start symbol
  for (int r = 0; r < nrules; ++r) {
    RuleDecl d;
    int lhs = lhs_pick(rng);
    used[static_cast<std::size_t>(lhs)] = true;
    d.lhs = names[static_cast<std::size_t>(lhs)];
    std::uniform_int_distribution<int> len_pick(opts.allow_empty ? 0 : 1, opts.max_rhs);
    int len = len_pick(rng);
    for (int k = 0; k < len; ++k) {
      int sym = sym_pick(rng);
      used[static_cast<std::size_t>(sym)] = true;
      d.rhs.push_back(names[static_cast<std::size_t>(sym)]);
    }
    rules.push_back(std::move(d));
  }

  // Only mentioned symbols are declared, so grammars over a single
  // terminal (or none: trivial grammars) survive validation.
  std::vector<SymbolDecl> decls;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (used[i]) decls.push_back({names[i], std::nullopt});
  try {
    return build_grammar(decls, rules, "S");
  } catch (const GrammarError&) {
    return std::nullopt;
  }
}

// Every word of length [0, max_len] over the given alphabet.
inline void each_word(const std::vector<SymbolId>& alphabet, int max_len,
                      const std::function<void(const std::vector<SymbolId>&)>& fn) {
  std::vector<SymbolId> word;
  std::function<void(int)> rec = [&](int remaining) {
    fn(word);
    if (remaining == 0) return;
    for (SymbolId s : alphabet) {
      word.push_back(s);
      rec(remaining - 1);
      word.pop_back();
    }
  };
  rec(max_len);
}

inline InputStream stream_of(const Grammar& g, const std::vector<SymbolId>& word) {
  InputStream in(g);
  for (std::size_t i = 0; i < word.size(); ++i)
    in.push_token({word[i], static_cast<std::int32_t>(i), 1});
  return in;
}

}  // namespace marpa::test
