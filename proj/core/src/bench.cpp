#include "marpa/bench.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "marpa/oracle.hpp"

namespace marpa {

std::vector<BenchRow> measure(const PreparedGrammar& pg, const Automaton& fa,
                              const InputFamily& family, std::span<const std::int32_t> sizes,
                              BenchConfig config) {
  std::vector<BenchRow> rows;
  for (std::int32_t n : sizes) {
    InputStream in = family(n);
    BenchRow row;
    row.n = n;
    if (config.leo) {
      Session s(pg, fa, SessionOptions{config.links, nullptr});
      s.run(in);
      const SessionStats& st = s.stats();
      row.total_items = st.items;
      row.total_attempts = st.attempts;
      row.max_set_size = st.max_set_size;
    } else {
      OracleRun r = oracle_run(pg.core, in, LeoMode::off);
      row.total_items = r.stats.items;
      row.total_attempts = r.stats.attempts;
      row.max_set_size = r.stats.max_set_size;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

double slope(std::span<const BenchRow> rows, std::int64_t BenchRow::* col) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  auto n = static_cast<double>(rows.size());
  for (const BenchRow& r : rows) {
    if (r.n <= 0 || r.*col <= 0) throw std::invalid_argument("growth fit needs positive counts");
    double x = std::log(static_cast<double>(r.n));
    double y = std::log(static_cast<double>(r.*col));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("growth fit needs distinct sizes");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

GrowthFit fit_growth(std::span<const BenchRow> rows) {
  if (rows.size() < 3) throw std::invalid_argument("growth fit needs at least three sizes");
  GrowthFit fit;
  fit.items_slope = slope(rows, &BenchRow::total_items);
  fit.attempts_slope = slope(rows, &BenchRow::total_attempts);
  fit.max_set_slope = slope(rows, &BenchRow::max_set_size);
  return fit;
}

void write_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "n,total_items,total_attempts,max_set_size\n";
  for (const BenchRow& r : rows)
    out << r.n << ',' << r.total_items << ',' << r.total_attempts << ',' << r.max_set_size << '\n';
}

InputFamily repeat_symbol(const Grammar& g, SymbolId s) {
  return [&g, s](std::int32_t n) {
    InputStream in(g);
    for (std::int32_t i = 0; i < n; ++i) in.push_token({s, i, 1});
    return in;
  };
}

}  // namespace marpa
