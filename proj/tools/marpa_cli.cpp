// Command-line front end: loads a grammar file, recognizes text or token
// streams, dumps the automaton, and runs the counting benches.
//
// Exit codes: 0 accepted, 1 rejected, 2 usage or grammar errors (and any
// --oracle cross-check violation).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "marpa/bench.hpp"
#include "marpa/bnf.hpp"
#include "marpa/oracle.hpp"
#include "marpa/recognizer.hpp"

namespace {

constexpr int exit_accept = 0;
constexpr int exit_reject = 1;
constexpr int exit_error = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw marpa::GrammarError("cannot open input file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string expected_list(const marpa::Grammar& g, const std::vector<marpa::SymbolId>& syms) {
  std::string out;
  for (marpa::SymbolId s : syms) {
    if (!out.empty()) out += ' ';
    out += "'" + g.name_of(s) + "'";
  }
  return out.empty() ? "(nothing)" : out;
}

struct RecognizeArgs {
  std::string grammar_path;
  std::string input_path;
  std::string text;
  bool text_given = false;
  bool tokens = false;
  bool trace = false;
  bool oracle = false;
  bool no_leo = false;
  bool no_links = false;
  int expected_at = -1;
  int progress_at = -1;
};

int run_recognize(const RecognizeArgs& args) {
  marpa::Grammar raw = marpa::load_bnf_file(args.grammar_path);
  marpa::PreparedGrammar pg = marpa::prepare(raw);
  marpa::Automaton fa;
  if (!pg.trivial) fa = marpa::build_ahfa(pg.core);
  const marpa::Grammar& g = pg.trivial ? pg.raw : pg.core;

  std::string text = args.text;
  bool is_text = args.text_given || !args.tokens;
  if (!args.text_given) {
    if (args.input_path.empty()) throw marpa::GrammarError("no input: give a file or --text");
    text = read_file(args.input_path);
    if (is_text)
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  }

  std::int32_t unknown_at = -1;
  marpa::InputStream in = is_text
                              ? marpa::tokens_from_text(g, text, &unknown_at)
                              : marpa::tokens_from_file_text(g, text);
  if (is_text && unknown_at >= 0)
    in = marpa::tokens_from_text(g, std::string_view(text).substr(0, static_cast<std::size_t>(unknown_at)));

  if (args.no_leo) {
    // Oracle-only mode: the traditional-item reference recognizer.
    bool ok;
    if (is_text && unknown_at >= 0)
      ok = false;
    else if (pg.trivial || in.empty())
      ok = in.empty() && (pg.trivial || pg.accepts_empty);
    else
      ok = marpa::oracle_run(pg.core, in, marpa::LeoMode::off).accepted;
    std::cout << (ok ? "accepted" : "rejected") << '\n';
    return ok ? exit_accept : exit_reject;
  }

  marpa::SessionOptions opts;
  opts.record_links = !args.no_links;
  if (args.trace) opts.trace = &std::cout;
  marpa::Session session(pg, fa, opts);
  marpa::RunResult r = session.run(in);

  if (is_text && unknown_at >= 0) {
    // The char has no grammar symbol; recognizing the prefix tells the
    // caller what would have been acceptable in its place.
    std::int32_t at = unknown_at;
    std::cout << "rejected at earleme " << at + 1 << "; expected: "
              << expected_list(g, r.accepted || r.failed_at > at ? session.expected_terminals(at)
                                                                 : r.expected)
              << '\n';
    return exit_reject;
  }

  int code = r.accepted ? exit_accept : exit_reject;
  if (r.accepted) {
    std::cout << "accepted\n";
  } else if (r.gap_at >= 0) {
    std::cout << "rejected at earleme " << r.failed_at << "; input gap at earleme " << r.gap_at
              << '\n';
  } else {
    std::cout << "rejected at earleme " << r.failed_at
              << "; expected: " << expected_list(g, r.expected) << '\n';
  }

  if (args.expected_at >= 0)
    std::cout << "expected at " << args.expected_at << ": "
              << expected_list(g, session.expected_terminals(args.expected_at)) << '\n';
  if (args.progress_at >= 0)
    std::cout << session.progress_report_text(args.progress_at);

  if (args.oracle) {
    if (pg.trivial || in.empty()) {
      bool oracle_accepts = in.empty() && (pg.trivial || pg.accepts_empty);
      if (oracle_accepts != r.accepted) {
        std::cout << "oracle mismatch: acceptance differs\n";
        return exit_error;
      }
      std::cout << "correspondence: consistent complete\n";
      return code;
    }
    marpa::OracleRun o = marpa::oracle_run(pg.core, in, marpa::LeoMode::right_recursive);
    if (o.accepted != r.accepted) {
      std::cout << "oracle mismatch: acceptance differs\n";
      return exit_error;
    }
    marpa::CorrespondenceReport rep =
        marpa::correspondence_check(marpa::expand_sets(session), o.sets);
    std::cout << "correspondence:" << (rep.consistent ? " consistent" : " inconsistent")
              << (rep.complete ? " complete" : " incomplete") << '\n';
    for (const auto& w : rep.witnesses)
      std::cout << "  set " << w.set << ": " << w.what << '\n';
    if (!rep.ok()) return exit_error;
  }
  return code;
}

int run_dump(const std::string& grammar_path) {
  marpa::Grammar raw = marpa::load_bnf_file(grammar_path);
  marpa::PreparedGrammar pg = marpa::prepare(raw);
  if (pg.trivial) {
    std::cout << "trivial grammar: recognizes only the empty input; no automaton\n";
    return exit_accept;
  }
  marpa::Automaton fa = marpa::build_ahfa(pg.core);
  std::cout << marpa::dump_ahfa(fa, pg.core);
  return exit_accept;
}

int run_bench(const std::string& grammar_path, const std::string& sizes_arg, bool no_leo,
              const std::string& repeat) {
  marpa::Grammar raw = marpa::load_bnf_file(grammar_path);
  marpa::PreparedGrammar pg = marpa::prepare(raw);
  if (pg.trivial) throw marpa::GrammarError("cannot bench a trivial grammar");
  marpa::Automaton fa = marpa::build_ahfa(pg.core);

  std::vector<std::int32_t> sizes;
  std::stringstream ss(sizes_arg);
  for (std::string part; std::getline(ss, part, ',');) sizes.push_back(std::stoi(part));
  if (sizes.empty()) throw marpa::GrammarError("--sizes expects a,b,c");

  marpa::SymbolId sym = marpa::no_symbol;
  if (!repeat.empty()) {
    auto s = pg.core.find_symbol(repeat);
    if (!s) throw marpa::GrammarError("unknown symbol " + repeat);
    sym = *s;
  } else {
    for (const marpa::Symbol& s : pg.core.symbols)
      if (s.terminal_allowed) {
        sym = s.id;
        break;
      }
    if (sym == marpa::no_symbol) throw marpa::GrammarError("grammar has no terminal to repeat");
  }

  marpa::BenchConfig config;
  config.leo = !no_leo;
  std::cerr << "automaton states: " << fa.size() << ", repeating symbol "
            << pg.core.name_of(sym) << '\n';
  auto rows = marpa::measure(pg, fa, marpa::repeat_symbol(pg.core, sym), sizes, config);
  marpa::write_csv(std::cout, rows);
  return exit_accept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"general context-free recognizer"};
  app.require_subcommand(1);

  RecognizeArgs rec;
  CLI::App* recognize = app.add_subcommand("recognize", "recognize an input against a grammar");
  recognize->add_option("grammar", rec.grammar_path, "grammar file")->required();
  recognize->add_option("input", rec.input_path, "input file");
  auto* text_opt = recognize->add_option("--text", rec.text, "literal text input");
  recognize->add_flag("--tokens", rec.tokens, "input file holds `<symbol> <start> <length>` lines");
  recognize->add_flag("--trace", rec.trace, "log one line per item attempt");
  recognize->add_flag("--oracle", rec.oracle, "cross-check against the traditional-item oracle");
  recognize->add_flag("--no-leo", rec.no_leo, "oracle-only mode without Leo memoization");
  recognize->add_flag("--no-links", rec.no_links, "do not record causation links");
  recognize->add_option("--expected-at", rec.expected_at, "print expected terminals at an earleme");
  recognize->add_option("--progress-at", rec.progress_at, "print the progress report at an earleme");

  std::string dump_grammar;
  CLI::App* dump = app.add_subcommand("dump-ahfa", "print the automaton");
  dump->add_option("grammar", dump_grammar, "grammar file")->required();

  std::string bench_grammar, bench_sizes, bench_repeat;
  bool bench_no_leo = false;
  CLI::App* bench = app.add_subcommand("bench", "count items and attempts over an input family");
  bench->add_option("grammar", bench_grammar, "grammar file")->required();
  bench->add_option("--sizes", bench_sizes, "comma-separated input sizes")->required();
  bench->add_flag("--no-leo", bench_no_leo, "measure the oracle without Leo memoization");
  bench->add_option("--repeat", bench_repeat, "symbol to repeat (default: first terminal)");

  try {
    app.parse(argc, argv);
    rec.text_given = text_opt->count() > 0;
    if (recognize->parsed()) return run_recognize(rec);
    if (dump->parsed()) return run_dump(dump_grammar);
    if (bench->parsed()) return run_bench(bench_grammar, bench_sizes, bench_no_leo, bench_repeat);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}
