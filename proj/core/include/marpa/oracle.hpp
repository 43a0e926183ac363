#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "marpa/ahfa.hpp"
#include "marpa/grammar.hpp"
#include "marpa/input.hpp"

namespace marpa {

class Session;

/// Traditional Earley item: dotted rule plus origin location.
struct Eimt {
  DottedRule dr;
  std::int32_t origin = 0;
  auto operator<=>(const Eimt&) const = default;
};

/// Traditional Leo item: the chain-top item to add on reductions over the
/// transition symbol.
struct Limt {
  DottedRule top;
  SymbolId transition = no_symbol;
  std::int32_t top_origin = 0;
};

enum class LeoMode {
  off,              // pure Earley
  right_recursive,  // penults of right-recursive rules (matches the recognizer)
  all_penults,      // every penult
};

struct OracleStats {
  std::int64_t items = 0;
  std::int64_t attempts = 0;
  std::int64_t duplicate_attempts = 0;
  std::int64_t leo_reductions = 0;
  std::int64_t max_set_size = 0;
};

struct OracleRun {
  std::vector<std::vector<Eimt>> sets;   // insertion-ordered
  std::vector<std::vector<Limt>> limts;  // per set, at most one per symbol
  bool accepted = false;
  OracleStats stats;
};

/// Reference recognizer at the EIMT/LIMT level. Each set is built as a
/// worklist run to its fixed point; no per-set memos beyond the Leo items
/// the inference rules require. `shuffle_seed` != 0 randomizes the worklist
/// processing order (the fixed point is order-insensitive).
OracleRun oracle_run(const Grammar& core_augmented, const InputStream& in, LeoMode leo,
                     std::uint64_t shuffle_seed = 0);

/// The per-set item lists of a recognizer session, expanded to dotted rules
/// for comparison against the oracle.
struct ExpandedEim {
  std::vector<DottedRule> drs;
  std::int32_t origin = 0;
};
using ExpandedSets = std::vector<std::vector<ExpandedEim>>;
ExpandedSets expand_sets(const Session& session);

struct CorrespondenceReport {
  bool consistent = true;  // every EIM corresponds to some same-origin EIMT
  bool complete = true;    // every EIMT has a corresponding EIM
  struct Witness {
    std::int32_t set = 0;
    std::string what;
  };
  std::vector<Witness> witnesses;
  bool ok() const { return consistent && complete; }
};

CorrespondenceReport correspondence_check(const ExpandedSets& marpa_sets,
                                          const std::vector<std::vector<Eimt>>& oracle_sets);

/// Exact independent acceptance oracle: exhaustive fixed point over the
/// derivation relation "symbol derives word[i..j)", where a symbol always
/// derives the one-symbol string naming it. Works on any grammar stage.
bool brute_force_accepts(const Grammar& g, std::span<const SymbolId> word, std::int32_t bound = 8);

}  // namespace marpa
