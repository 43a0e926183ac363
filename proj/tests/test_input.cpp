#include "doctest.h"
#include "marpa/input.hpp"
#include "marpa/recognizer.hpp"
#include "support/fixtures.hpp"

using namespace marpa;
using namespace marpa::test;

TEST_CASE("push_token groups tokens by end earleme") {
  Grammar g = load_bnf("S ::= 'a' | 'b'\n");
  InputStream in(g);
  SymbolId a = *g.find_symbol("a"), b = *g.find_symbol("b");
  in.push_token({a, 0, 1});
  in.push_token({b, 0, 1});  // ambiguous alternatives at one start
  CHECK(in.tokens_ending_at(1).size() == 2);
  CHECK(in.furthest_end() == 1);
  CHECK(in.token_count() == 2);
}

TEST_CASE("push_token enforces the complexity restrictions") {
  Grammar g = load_bnf("S ::= 'a'\n");
  SymbolId a = *g.find_symbol("a");

  InputStream in(g, 4);
  CHECK_THROWS_WITH_AS(in.push_token({a, 0, 4}),
                       "restriction 1 violated: token length 4 not below c = 4", InputError);
  in.push_token({a, 0, 3});

  InputStream in2(g, 3);
  in2.push_token({a, 0, 1});
  in2.push_token({a, 0, 2});
  CHECK_THROWS_WITH_AS(in2.push_token({a, 0, 1}),
                       "restriction 2 violated: more than c - 1 = 2 tokens start at earleme 0",
                       InputError);
}

TEST_CASE("push_token rejects malformed and non-terminal tokens") {
  Grammar g = load_bnf("S ::= 'a'\n");
  SymbolId S = *g.find_symbol("S"), a = *g.find_symbol("a");
  InputStream in(g);
  CHECK_THROWS_AS(in.push_token({S, 0, 1}), InputError);   // S has rules, unquoted
  CHECK_THROWS_AS(in.push_token({a, -1, 1}), InputError);
  CHECK_THROWS_AS(in.push_token({a, 0, 0}), InputError);
}

TEST_CASE("coverage and spanning queries") {
  Grammar g = load_bnf("S ::= 'a' 'c' | 'c'\n");
  SymbolId a = *g.find_symbol("a"), c = *g.find_symbol("c");
  InputStream in(g);
  in.push_token({a, 0, 2});
  in.push_token({c, 2, 1});
  CHECK(in.covers(0));
  CHECK(in.covers(1));
  CHECK(in.covers(2));
  CHECK(!in.covers(3));
  CHECK(in.spans(1));   // the long 'a' crosses earleme 1
  CHECK(!in.spans(2));
}

TEST_CASE("property: a traditional stream behaves exactly like plain text") {
  Grammar raw = load_bnf("S ::= 'a' S 'b' | 'a' 'b' | 'c'\n");
  PreparedGrammar pg = prepare(raw);
  Automaton fa = build_ahfa(pg.core);
  for (const char* text : {"ab", "aabb", "c", "aacbb", "ba", ""}) {
    Session via_text(pg, fa);
    RunResult rt = via_text.run(tokens_from_text(pg.core, text));

    InputStream tokens(pg.core);
    for (std::size_t i = 0; i < std::string_view(text).size(); ++i)
      tokens.push_token({*pg.core.find_symbol(std::string_view(&text[i], 1)),
                         static_cast<std::int32_t>(i), 1});
    Session via_tokens(pg, fa);
    RunResult rk = via_tokens.run(tokens);

    CHECK(rt.accepted == rk.accepted);
    REQUIRE(via_text.set_count() == via_tokens.set_count());
    for (std::int32_t i = 0; i < via_text.set_count(); ++i)
      CHECK(via_text.set(i).items.size() == via_tokens.set(i).items.size());
  }
}

TEST_CASE("property: dropping the sole cover of an earleme is a gap") {
  Grammar raw = load_bnf("S ::= 'a' S | 'a'\n");
  PreparedGrammar pg = prepare(raw);
  Automaton fa = build_ahfa(pg.core);
  SymbolId a = *pg.core.find_symbol("a");
  const std::int32_t n = 5;
  for (std::int32_t drop = 0; drop < n; ++drop) {
    InputStream in(pg.core);
    for (std::int32_t i = 0; i < n; ++i)
      if (i != drop) in.push_token({a, i, 1});
    Session s(pg, fa);
    RunResult r = s.run(in);
    if (drop < n - 1) {
      CHECK(!r.accepted);
      CHECK(r.gap_at == drop);
    } else {
      CHECK(r.accepted);  // dropping the last token merely shortens the input
    }
  }
}

TEST_CASE("text and token-file streams") {
  Grammar g = load_bnf("S ::= 'a' S | 'b'\n");
  std::int32_t unknown = -1;
  InputStream in = tokens_from_text(g, "aab", &unknown);
  CHECK(unknown == -1);
  CHECK(in.furthest_end() == 3);
  CHECK(in.token_count() == 3);

  tokens_from_text(g, "axb", &unknown);
  CHECK(unknown == 1);

  InputStream file = tokens_from_file_text(g,
                                           "# one long a over two earlemes\n"
                                           "a 0 2\n"
                                           "b 2 1\n");
  CHECK(file.furthest_end() == 3);
  CHECK(file.tokens_ending_at(2).size() == 1);
  CHECK_THROWS_AS(tokens_from_file_text(g, "z 0 1\n"), InputError);
  CHECK_THROWS_AS(tokens_from_file_text(g, "a zero 1\n"), InputError);
}
