#include "marpa/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>

#include "marpa/recognizer.hpp"

namespace marpa {

namespace {

struct OracleSet {
  std::vector<Eimt> items;
  std::set<Eimt> present;
  std::vector<Limt> limts;
  std::vector<bool> predicted_syms;

  const Limt* limt_for(SymbolId s) const {
    for (const Limt& l : limts)
      if (l.transition == s) return &l;
    return nullptr;
  }
};

class Oracle {
 public:
  Oracle(const Grammar& g, const InputStream& in, LeoMode leo, std::uint64_t seed)
      : g_(g), in_(in), leo_(leo), rng_(seed), shuffle_(seed != 0) {}

  OracleRun run() {
    std::int32_t n = in_.furthest_end();
    sets_.resize(static_cast<std::size_t>(n) + 1);
    for (auto& es : sets_) es.predicted_syms.assign(g_.symbols.size(), false);

    for (std::int32_t i = 0; i <= n; ++i) build_set(i);

    OracleRun out;
    out.stats = stats_;
    for (OracleSet& es : sets_) {
      out.stats.items += static_cast<std::int64_t>(es.items.size());
      out.stats.max_set_size =
          std::max(out.stats.max_set_size, static_cast<std::int64_t>(es.items.size()));
      out.sets.push_back(std::move(es.items));
      out.limts.push_back(std::move(es.limts));
    }
    for (const Eimt& e : out.sets.back())
      if (e.origin == 0 && e.dr.rule == g_.accept_rule && is_completion(g_, e.dr))
        out.accepted = true;
    return out;
  }

 private:
  void attempt(std::int32_t i, Eimt e) {
    ++stats_.attempts;
    OracleSet& es = sets_[static_cast<std::size_t>(i)];
    if (!es.present.insert(e).second) {
      ++stats_.duplicate_attempts;
      return;
    }
    es.items.push_back(e);
    pending_.push_back(e);
  }

  // Worklist run to the fixed point; order is non-deterministic by
  // definition and optionally shuffled to demonstrate it.
  void build_set(std::int32_t i) {
    pending_.clear();
    if (i == 0) {
      ++stats_.attempts;  // initialization
      Eimt initial{{g_.accept_rule, 0}, 0};
      sets_[0].present.insert(initial);
      sets_[0].items.push_back(initial);
      pending_.push_back(initial);
    } else {
      for (const Token& t : in_.tokens_ending_at(i))
        for (const Eimt& pred : sets_[static_cast<std::size_t>(t.start)].items)
          if (postdot(g_, pred.dr) == t.symbol) attempt(i, Eimt{next(pred.dr), pred.origin});
    }

    while (!pending_.empty()) {
      std::size_t pick = pending_.size() - 1;
      if (shuffle_)
        pick = std::uniform_int_distribution<std::size_t>(0, pending_.size() - 1)(rng_);
      Eimt work = pending_[pick];
      pending_[pick] = pending_.back();
      pending_.pop_back();
      process(i, work);
    }
    memoize_limts(i);
  }

  void process(std::int32_t i, Eimt work) {
    OracleSet& es = sets_[static_cast<std::size_t>(i)];
    if (is_completion(g_, work.dr)) {
      SymbolId lhs = g_.rule(work.dr.rule).lhs;
      const OracleSet& origin = sets_[static_cast<std::size_t>(work.origin)];
      // Completions always originate strictly earlier: core rules have
      // non-empty RHS and tokens have positive length.
      assert(work.origin < i);
      if (leo_ != LeoMode::off) {
        if (const Limt* l = origin.limt_for(lhs)) {
          // Leo reduction; the extra premise suppresses Earley reduction.
          ++stats_.leo_reductions;
          attempt(i, Eimt{l->top, l->top_origin});
          return;
        }
      }
      for (const Eimt& pred : origin.items)
        if (postdot(g_, pred.dr) == lhs) attempt(i, Eimt{next(pred.dr), pred.origin});
      return;
    }
    SymbolId pd = postdot(g_, work.dr);
    if (pd == no_symbol) return;
    // Predictions fire once per postdot symbol per set; the worklist
    // carries the closure transitively.
    if (es.predicted_syms[static_cast<std::size_t>(pd)]) return;
    es.predicted_syms[static_cast<std::size_t>(pd)] = true;
    for (RuleId rid : g_.rules_of(pd)) {
      if (rid == g_.accept_rule) continue;
      attempt(i, Eimt{{rid, 0}, i});
    }
  }

  void memoize_limts(std::int32_t i) {
    if (leo_ == LeoMode::off) return;
    OracleSet& es = sets_[static_cast<std::size_t>(i)];
    // Transition symbols holding exactly one postdot EIMT.
    std::vector<std::int32_t> count(g_.symbols.size(), 0);
    std::vector<Eimt> bottom(g_.symbols.size());
    for (const Eimt& e : es.items) {
      SymbolId pd = postdot(g_, e.dr);
      if (pd == no_symbol) continue;
      if (count[static_cast<std::size_t>(pd)]++ == 0) bottom[static_cast<std::size_t>(pd)] = e;
    }
    for (std::size_t s = 0; s < count.size(); ++s) {
      if (count[s] != 1) continue;
      const Eimt& b = bottom[s];
      if (penult(g_, b.dr) != static_cast<SymbolId>(s)) continue;
      if (leo_ == LeoMode::right_recursive && !g_.rule(b.dr.rule).is_right_recursive) continue;
      // Chains are followed through earlier sets only; a bottom whose
      // origin is this set starts a fresh chain.
      const Limt* pred = nullptr;
      if (b.origin < i)
        pred = sets_[static_cast<std::size_t>(b.origin)].limt_for(g_.rule(b.dr.rule).lhs);
      if (pred)
        es.limts.push_back(Limt{pred->top, static_cast<SymbolId>(s), pred->top_origin});
      else
        es.limts.push_back(Limt{next(b.dr), static_cast<SymbolId>(s), b.origin});
    }
  }

  const Grammar& g_;
  const InputStream& in_;
  LeoMode leo_;
  std::mt19937_64 rng_;
  bool shuffle_;
  std::vector<OracleSet> sets_;
  std::vector<Eimt> pending_;
  OracleStats stats_;
};

}  // namespace

OracleRun oracle_run(const Grammar& g, const InputStream& in, LeoMode leo, std::uint64_t seed) {
  if (!g.augmented() || g.stage != GrammarStage::core)
    throw GrammarError("the oracle requires an augmented core grammar");
  return Oracle(g, in, leo, seed).run();
}

ExpandedSets expand_sets(const Session& session) {
  ExpandedSets out;
  const Automaton& fa = session.automaton();
  for (std::int32_t i = 0; i < session.set_count(); ++i) {
    std::vector<ExpandedEim> items;
    for (const Eim& it : session.set(i).items)
      items.push_back({fa.state(it.state).items, it.origin});
    out.push_back(std::move(items));
  }
  return out;
}

CorrespondenceReport correspondence_check(const ExpandedSets& marpa_sets,
                                          const std::vector<std::vector<Eimt>>& oracle_sets) {
  CorrespondenceReport rep;
  std::size_t n = std::max(marpa_sets.size(), oracle_sets.size());
  static const std::vector<ExpandedEim> no_eims;
  static const std::vector<Eimt> no_eimts;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ms = i < marpa_sets.size() ? marpa_sets[i] : no_eims;
    const auto& os = i < oracle_sets.size() ? oracle_sets[i] : no_eimts;
    std::set<Eimt> oracle_index(os.begin(), os.end());
    for (const ExpandedEim& m : ms) {
      bool found = false;
      for (DottedRule dr : m.drs)
        if (oracle_index.count(Eimt{dr, m.origin})) {
          found = true;
          break;
        }
      if (!found) {
        rep.consistent = false;
        rep.witnesses.push_back({static_cast<std::int32_t>(i),
                                 "EIM at origin " + std::to_string(m.origin) +
                                     " matches no traditional item"});
      }
    }
    for (const Eimt& e : os) {
      bool found = false;
      for (const ExpandedEim& m : ms) {
        if (m.origin != e.origin) continue;
        if (std::find(m.drs.begin(), m.drs.end(), e.dr) != m.drs.end()) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.complete = false;
        rep.witnesses.push_back({static_cast<std::int32_t>(i),
                                 "traditional item (rule " + std::to_string(e.dr.rule) + ", dot " +
                                     std::to_string(e.dr.pos) + ", origin " +
                                     std::to_string(e.origin) + ") has no EIM"});
      }
    }
  }
  return rep;
}

bool brute_force_accepts(const Grammar& g, std::span<const SymbolId> word, std::int32_t bound) {
  auto n = static_cast<std::int32_t>(word.size());
  if (n > bound) throw GrammarError("brute-force oracle bound exceeded");
  SymbolId start = g.start;
  if (n == 0) return g.nullable(start);

  std::size_t spans = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1);
  auto at = [n](std::int32_t i, std::int32_t j) {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 1) +
           static_cast<std::size_t>(j);
  };
  std::vector<std::vector<char>> derives(g.symbols.size(), std::vector<char>(spans, 0));
  for (std::size_t s = 0; s < g.symbols.size(); ++s) {
    for (std::int32_t i = 0; i <= n; ++i)
      if (g.nullable(static_cast<SymbolId>(s))) derives[s][at(i, i)] = 1;
    for (std::int32_t i = 0; i < n; ++i)
      if (word[static_cast<std::size_t>(i)] == static_cast<SymbolId>(s))
        derives[s][at(i, i + 1)] = 1;
  }

  // match[k][j]: the first k RHS symbols derive word[i..j)
  bool changed = true;
  std::vector<std::vector<char>> match;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      auto& lhs = derives[static_cast<std::size_t>(r.lhs)];
      for (std::int32_t i = 0; i <= n; ++i) {
        match.assign(r.rhs.size() + 1, std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
        match[0][static_cast<std::size_t>(i)] = 1;
        for (std::size_t k = 0; k < r.rhs.size(); ++k) {
          const auto& sym = derives[static_cast<std::size_t>(r.rhs[k])];
          for (std::int32_t p = i; p <= n; ++p) {
            if (!match[k][static_cast<std::size_t>(p)]) continue;
            for (std::int32_t q = p; q <= n; ++q)
              if (sym[at(p, q)]) match[k + 1][static_cast<std::size_t>(q)] = 1;
          }
        }
        for (std::int32_t j = i; j <= n; ++j)
          if (match[r.rhs.size()][static_cast<std::size_t>(j)] && !lhs[at(i, j)]) {
            lhs[at(i, j)] = 1;
            changed = true;
          }
      }
    }
  }
  return derives[static_cast<std::size_t>(start)][at(0, n)] != 0;
}

}  // namespace marpa
