#include <benchmark/benchmark.h>

#include "marpa/bnf.hpp"
#include "marpa/oracle.hpp"
#include "marpa/recognizer.hpp"

namespace {

struct Fixture {
  marpa::PreparedGrammar pg;
  marpa::Automaton fa;
  marpa::SymbolId a;
  explicit Fixture(const char* bnf) : pg(marpa::prepare(marpa::load_bnf(bnf))) {
    fa = marpa::build_ahfa(pg.core);
    a = *pg.core.find_symbol("a");
  }
  marpa::InputStream repeated(std::int64_t n) const {
    marpa::InputStream in(pg.core);
    for (std::int32_t i = 0; i < n; ++i) in.push_token({a, i, 1});
    return in;
  }
};

const Fixture& right_recursive() {
  static Fixture f("S ::= 'a' S | 'a'\n");
  return f;
}

const Fixture& ambiguous() {
  static Fixture f("S ::= S S | 'a'\n");
  return f;
}

void BM_RightRecursion(benchmark::State& state) {
  const Fixture& f = right_recursive();
  for (auto _ : state) {
    marpa::Session s(f.pg, f.fa);
    benchmark::DoNotOptimize(s.run(f.repeated(state.range(0))).accepted);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RightRecursion)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_RightRecursionNoLinks(benchmark::State& state) {
  const Fixture& f = right_recursive();
  for (auto _ : state) {
    marpa::Session s(f.pg, f.fa, marpa::SessionOptions{false, nullptr});
    benchmark::DoNotOptimize(s.run(f.repeated(state.range(0))).accepted);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RightRecursionNoLinks)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_OracleRightRecursion(benchmark::State& state) {
  const Fixture& f = right_recursive();
  for (auto _ : state) {
    auto r = marpa::oracle_run(f.pg.core, f.repeated(state.range(0)), marpa::LeoMode::off);
    benchmark::DoNotOptimize(r.accepted);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleRightRecursion)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void BM_Ambiguous(benchmark::State& state) {
  const Fixture& f = ambiguous();
  for (auto _ : state) {
    marpa::Session s(f.pg, f.fa);
    benchmark::DoNotOptimize(s.run(f.repeated(state.range(0))).accepted);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Ambiguous)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_BuildAhfa(benchmark::State& state) {
  marpa::PreparedGrammar pg = marpa::prepare(marpa::load_bnf(
      "E ::= E '+' T | T\nT ::= T '*' F | F\nF ::= '(' E ')' | 'a'\n"));
  for (auto _ : state) benchmark::DoNotOptimize(marpa::build_ahfa(pg.core).size());
}
BENCHMARK(BM_BuildAhfa);

}  // namespace

BENCHMARK_MAIN();
