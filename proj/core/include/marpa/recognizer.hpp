#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "marpa/ahfa.hpp"
#include "marpa/grammar.hpp"
#include "marpa/input.hpp"

namespace marpa {

class RecognizerError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EimRef {
  std::int32_t set = -1;
  std::int32_t item = -1;
  bool valid() const { return set >= 0; }
};

enum class LinkKind : std::uint8_t { initial, scan, reduction, leo, prediction };

/// One link is appended per attempt to add an EIM, duplicate or not. A leo
/// link's predecessor names the LIM by (set, symbol); a scan link's token is
/// recoverable as (predecessor's set, symbol, this set).
struct Link {
  LinkKind kind;
  SymbolId symbol = no_symbol;
  EimRef predecessor;
  bool predecessor_is_lim = false;
  EimRef cause;  // component EIM for reductions, causing confirmed EIM for predictions
};

struct Eim {
  StateId state = no_state;
  std::int32_t origin = 0;
  std::vector<Link> links;
};

struct Lim {
  StateId top_state = no_state;  // singleton state of the memoized chain's top EIM
  SymbolId transition = no_symbol;
  std::int32_t top_origin = 0;
};

/// Per-symbol postdot memo of an Earley set. When a LIM is present the
/// single bottom EIM is still listed so token scans over the symbol keep
/// their predecessor; reductions use only the LIM.
struct TransitionEntry {
  std::optional<Lim> lim;
  std::vector<std::int32_t> eims;
  bool empty() const { return !lim && eims.empty(); }
};

class EarleySet {
 public:
  std::int32_t earleme = 0;
  std::vector<Eim> items;                    // append-only; iteration order is generation order
  std::vector<TransitionEntry> transitions;  // indexed by symbol, built by memoize_transitions
  // Interleaved (timestamp, item index) pairs indexed by AHFA state id. An
  // entry stamped with the earleme under construction means the EIM with
  // this origin and state is already present there.
  std::vector<std::int32_t> psl;
  std::int64_t attempts = 0;  // attempts made while this set was built
  bool memoized = false;

  std::size_t size() const { return items.size(); }
  std::int64_t items_added() const { return static_cast<std::int64_t>(items.size()); }
};

struct SessionStats {
  std::int64_t items = 0;
  std::int64_t attempts = 0;
  std::int64_t duplicate_attempts = 0;
  std::int64_t links = 0;
  std::int64_t duplicate_links = 0;  // links appended to an already-present EIM
  std::int64_t goto_misses = 0;      // reduction attempts whose GOTO is undefined
  std::int64_t leo_reductions = 0;
  std::int64_t leo_singleton_violations = 0;
  std::int64_t max_set_size = 0;
};

struct SessionOptions {
  bool record_links = true;
  std::ostream* trace = nullptr;
};

enum class StepStatus { continuing, exhausted, rejected };

struct RunResult {
  bool accepted = false;
  std::int32_t failed_at = -1;        // earleme where recognition stopped
  std::int32_t gap_at = -1;           // uncovered earleme, when the input had a gap
  std::vector<SymbolId> expected;     // expected terminals at the failure point
};

/// One recognition over one input. Grammar and automaton are shared and
/// immutable; a session itself is single-threaded.
class Session {
 public:
  Session(const PreparedGrammar& pg, const Automaton& fa, SessionOptions opts = {});

  /// Creates Earley set 0 with the initial EIM pair and memoizes it.
  void initialize();

  /// Runs the whole input and reports the outcome with diagnostics.
  RunResult run(const InputStream& in);

  /// Advances by one earleme: scan pass over the tokens ending here, the
  /// rejection/gap check, then the reduction pass.
  StepStatus complete_earleme(const InputStream& in);

  void scan_pass(std::int32_t i, std::span<const Token> tokens);
  void reduction_pass(std::int32_t i);
  void memoize_transitions(std::int32_t i);

  bool accepted() const;
  std::vector<SymbolId> expected_terminals(std::int32_t i) const;

  struct ProgressEntry {
    RuleId raw_rule = no_rule;  // no_rule for the acceptance rule
    std::int32_t dot = 0;
    std::int32_t origin = 0;
    auto operator<=>(const ProgressEntry&) const = default;
  };
  std::vector<ProgressEntry> progress_report(std::int32_t i) const;
  std::string progress_report_text(std::int32_t i) const;

  const EarleySet& set(std::int32_t i) const { return sets_.at(static_cast<std::size_t>(i)); }
  std::int32_t set_count() const { return static_cast<std::int32_t>(sets_.size()); }
  std::int32_t current_earleme() const { return current_; }
  const SessionStats& stats() const { return stats_; }
  const PreparedGrammar& prepared() const { return *pg_; }
  const Automaton& automaton() const { return *fa_; }

  // Recognizer internals, public so drivers and tests can exercise the
  // individual operations.
  void reduce_one_lhs(std::int32_t i, std::int32_t origin, SymbolId lhs, EimRef component);
  void earley_reduction(std::int32_t i, EimRef from, SymbolId trans, EimRef component);
  void leo_reduction(std::int32_t i, const Lim& from, std::int32_t lim_set, EimRef component);
  void add_eim_pair(std::int32_t i, StateId confirmed, std::int32_t origin, Link link);
  bool psl_is_new(std::int32_t origin_set, StateId state);

 private:
  void new_set(std::int32_t earleme);
  void trace(std::int32_t i, const char* op, StateId state, std::int32_t origin, bool fresh);

  const PreparedGrammar* pg_;
  const Automaton* fa_;
  const Grammar* g_;  // core grammar; null for trivial grammars
  SessionOptions opts_;
  std::vector<EarleySet> sets_;
  std::int32_t current_ = 0;
  std::int32_t gap_at_ = -1;
  bool initialized_ = false;
  bool saw_tokens_ = false;
  SessionStats stats_;
};

}  // namespace marpa
