#include <sstream>

#include "doctest.h"
#include "marpa/bench.hpp"
#include "marpa/bnf.hpp"
#include "support/fixtures.hpp"

using namespace marpa;
using namespace marpa::test;

TEST_CASE("fit_growth recovers synthetic exponents") {
  std::vector<BenchRow> rows;
  for (std::int64_t n : {8, 16, 32, 64})
    rows.push_back({n, n, n * n, 7});
  GrowthFit fit = fit_growth(rows);
  CHECK(fit.items_slope == doctest::Approx(1.0).epsilon(0.01));
  CHECK(fit.attempts_slope == doctest::Approx(2.0).epsilon(0.01));
  CHECK(fit.max_set_slope == doctest::Approx(0.0).epsilon(0.01));

  CHECK_THROWS_AS(fit_growth(std::vector<BenchRow>{{8, 1, 1, 1}, {16, 2, 2, 2}}),
                  std::invalid_argument);
  std::vector<BenchRow> zero{{8, 0, 1, 1}, {16, 0, 1, 1}, {32, 0, 1, 1}};
  CHECK_THROWS_AS(fit_growth(zero), std::invalid_argument);
}

TEST_CASE("measure reports the recognizer counters") {
  PreparedGrammar pg = prepare(g1());
  Automaton fa = build_ahfa(pg.core);
  SymbolId a = *pg.core.find_symbol("a");
  std::vector<std::int32_t> sizes{8, 16, 32};

  auto rows = measure(pg, fa, repeat_symbol(pg.core, a), sizes);
  REQUIRE(rows.size() == 3);
  for (const BenchRow& r : rows) {
    CHECK(r.total_attempts >= r.total_items);
    CHECK(r.max_set_size <= (r.n + 1) * static_cast<std::int64_t>(fa.size()));
  }
  // counter integrity: items equal the summed set sizes of a fresh session
  Session s(pg, fa);
  s.run(repeat_symbol(pg.core, a)(32));
  std::int64_t total = 0;
  for (std::int32_t i = 0; i < s.set_count(); ++i)
    total += static_cast<std::int64_t>(s.set(i).items.size());
  CHECK(total == rows[2].total_items);
}

TEST_CASE("measure with leo disabled runs the oracle") {
  PreparedGrammar pg = prepare(g1());
  Automaton fa = build_ahfa(pg.core);
  SymbolId a = *pg.core.find_symbol("a");
  std::vector<std::int32_t> sizes{16, 32, 64};

  auto with_leo = measure(pg, fa, repeat_symbol(pg.core, a), sizes, {true, true});
  auto without = measure(pg, fa, repeat_symbol(pg.core, a), sizes, {false, true});
  // the memoized recognizer stays linear; the plain oracle goes quadratic
  CHECK(fit_growth(with_leo).items_slope < 1.3);
  CHECK(fit_growth(without).items_slope > 1.6);
}

TEST_CASE("attempt counts stay proportional to items on unambiguous grammars") {
  // Constants measured once at n=64 and frozen with a little headroom.
  struct Sample {
    const char* bnf;
    double c;
  };
  for (const Sample& sample : {Sample{"S ::= 'a' S | 'a'\n", 1.05},
                               Sample{"S ::= S 'a' | 'a'\n", 1.40}}) {
    PreparedGrammar pg = prepare(load_bnf(sample.bnf));
    Automaton fa = build_ahfa(pg.core);
    SymbolId a = *pg.core.find_symbol("a");
    for (std::int32_t n : {16, 64, 256}) {
      Session s(pg, fa);
      s.run(repeat_symbol(pg.core, a)(n));
      CHECK(static_cast<double>(s.stats().attempts) <=
            sample.c * static_cast<double>(s.stats().items));
    }
  }
}

TEST_CASE("csv output carries the fixed header") {
  std::ostringstream os;
  std::vector<BenchRow> rows{{8, 10, 12, 3}};
  write_csv(os, rows);
  CHECK(os.str() == "n,total_items,total_attempts,max_set_size\n8,10,12,3\n");
}
