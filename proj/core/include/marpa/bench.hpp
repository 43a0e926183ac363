#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "marpa/grammar.hpp"
#include "marpa/input.hpp"
#include "marpa/recognizer.hpp"

namespace marpa {

/// Complexity is measured in Earley items and attempts, the quantities the
/// algorithm charges its resources to, not wall-clock time.
struct BenchRow {
  std::int64_t n = 0;
  std::int64_t total_items = 0;
  std::int64_t total_attempts = 0;
  std::int64_t max_set_size = 0;
};

struct BenchConfig {
  bool leo = true;    // false runs the traditional-item oracle instead
  bool links = true;  // affects space only; counts are unchanged
};

using InputFamily = std::function<InputStream(std::int32_t n)>;

std::vector<BenchRow> measure(const PreparedGrammar& pg, const Automaton& fa,
                              const InputFamily& family, std::span<const std::int32_t> sizes,
                              BenchConfig config = {});

struct GrowthFit {
  double items_slope = 0;
  double attempts_slope = 0;
  double max_set_slope = 0;
};

/// Log-log least-squares slope per counter. Requires at least three rows
/// and positive counts.
GrowthFit fit_growth(std::span<const BenchRow> rows);

/// CSV with header `n,total_items,total_attempts,max_set_size`.
void write_csv(std::ostream& out, std::span<const BenchRow> rows);

/// The input family a^n for a single repeated symbol.
InputFamily repeat_symbol(const Grammar& g, SymbolId s);

}  // namespace marpa
