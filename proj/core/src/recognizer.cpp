#include "marpa/recognizer.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace marpa {

namespace {

const char* op_name(LinkKind k) {
  switch (k) {
    case LinkKind::initial: return "init";
    case LinkKind::scan: return "scan";
    case LinkKind::reduction: return "reduce";
    case LinkKind::leo: return "leo";
    case LinkKind::prediction: return "predict";
  }
  return "?";
}

}  // namespace

Session::Session(const PreparedGrammar& pg, const Automaton& fa, SessionOptions opts)
    : pg_(&pg), fa_(&fa), g_(pg.trivial ? nullptr : &pg.core), opts_(opts) {
  if (!pg.trivial && (!pg.core.augmented() || pg.core.stage != GrammarStage::core))
    throw RecognizerError("a session requires an augmented core grammar");
}

void Session::new_set(std::int32_t earleme) {
  EarleySet es;
  es.earleme = earleme;
  es.psl.assign(fa_->size() * 2, -1);  // interleaved (stamp, item) pairs
  sets_.push_back(std::move(es));
}

void Session::trace(std::int32_t i, const char* op, StateId state, std::int32_t origin, bool fresh) {
  if (!opts_.trace) return;
  *opts_.trace << "earleme=" << i << " op=" << op << " state=" << state << " origin=" << origin
               << (fresh ? " new" : " dup") << '\n';
}

void Session::initialize() {
  if (initialized_) throw RecognizerError("session is already initialized");
  initialized_ = true;
  if (!g_) return;  // trivial grammar: no sets are ever built
  new_set(0);
  current_ = 0;
  add_eim_pair(0, fa_->initial, 0, Link{LinkKind::initial, no_symbol, {}, false, {}});
  reduction_pass(0);
}

bool Session::psl_is_new(std::int32_t origin_set, StateId state) {
  auto& psl = sets_.at(static_cast<std::size_t>(origin_set)).psl;
  std::int32_t& stamp = psl[static_cast<std::size_t>(state) * 2];
  if (stamp == current_) return false;
  stamp = current_;
  return true;
}

void Session::add_eim_pair(std::int32_t i, StateId confirmed, std::int32_t origin, Link link) {
  assert(i == current_);
  if (confirmed == no_state) throw RecognizerError("add_eim_pair requires a state");
  EarleySet& es = sets_[static_cast<std::size_t>(i)];

  ++stats_.attempts;
  ++es.attempts;
  bool fresh = psl_is_new(origin, confirmed);
  std::int32_t& slot =
      sets_[static_cast<std::size_t>(origin)].psl[static_cast<std::size_t>(confirmed) * 2 + 1];
  if (fresh) {
    es.items.push_back(Eim{confirmed, origin, {}});
    slot = static_cast<std::int32_t>(es.items.size()) - 1;
    ++stats_.items;
    stats_.max_set_size = std::max(stats_.max_set_size, static_cast<std::int64_t>(es.items.size()));
  } else {
    ++stats_.duplicate_attempts;
  }
  if (opts_.record_links) {
    es.items[static_cast<std::size_t>(slot)].links.push_back(link);
    ++stats_.links;
    if (!fresh) ++stats_.duplicate_links;
  }
  trace(i, op_name(link.kind), confirmed, origin, fresh);
  EimRef confirmed_ref{i, slot};

  StateId predicted = fa_->state(confirmed).null_goto;
  if (predicted == no_state) return;
  ++stats_.attempts;
  ++es.attempts;
  bool pfresh = psl_is_new(i, predicted);
  std::int32_t& pslot = es.psl[static_cast<std::size_t>(predicted) * 2 + 1];
  if (pfresh) {
    es.items.push_back(Eim{predicted, i, {}});
    pslot = static_cast<std::int32_t>(es.items.size()) - 1;
    ++stats_.items;
    stats_.max_set_size = std::max(stats_.max_set_size, static_cast<std::int64_t>(es.items.size()));
  } else {
    ++stats_.duplicate_attempts;
  }
  if (opts_.record_links) {
    es.items[static_cast<std::size_t>(pslot)].links.push_back(
        Link{LinkKind::prediction, no_symbol, {}, false, confirmed_ref});
    ++stats_.links;
    if (!pfresh) ++stats_.duplicate_links;
  }
  trace(i, "predict", predicted, i, pfresh);
}

void Session::scan_pass(std::int32_t i, std::span<const Token> tokens) {
  assert(i == current_);
  for (const Token& t : tokens) {
    const EarleySet& from = sets_.at(static_cast<std::size_t>(t.start));
    assert(from.memoized);
    if (static_cast<std::size_t>(t.symbol) >= from.transitions.size()) continue;
    const TransitionEntry& entry = from.transitions[static_cast<std::size_t>(t.symbol)];
    // Each pass through this loop is an EIM attempt.
    for (std::int32_t pidx : entry.eims) {
      const Eim pred = from.items[static_cast<std::size_t>(pidx)];
      StateId to = fa_->goto_state(pred.state, t.symbol);
      assert(to != no_state);
      add_eim_pair(i, to, pred.origin,
                   Link{LinkKind::scan, t.symbol, EimRef{t.start, pidx}, false, {}});
    }
  }
}

void Session::reduction_pass(std::int32_t i) {
  assert(i == current_);
  EarleySet& es = sets_[static_cast<std::size_t>(i)];
  // Items appended during the pass are traversed too.
  for (std::size_t w = 0; w < es.items.size(); ++w) {
    const StateId state = es.items[w].state;
    const std::int32_t origin = es.items[w].origin;
    const AhfaState& st = fa_->state(state);
    for (SymbolId lhs : st.completed_lhs)
      reduce_one_lhs(i, origin, lhs, EimRef{i, static_cast<std::int32_t>(w)});
  }
  memoize_transitions(i);
}

void Session::reduce_one_lhs(std::int32_t i, std::int32_t origin, SymbolId lhs, EimRef component) {
  const EarleySet& from = sets_.at(static_cast<std::size_t>(origin));
  assert(from.memoized);
  if (static_cast<std::size_t>(lhs) >= from.transitions.size()) return;
  const TransitionEntry& entry = from.transitions[static_cast<std::size_t>(lhs)];
  if (entry.lim) {
    // A Leo memoization replaces Earley reduction over this symbol.
    leo_reduction(i, *entry.lim, origin, component);
    return;
  }
  for (std::int32_t pidx : entry.eims)
    earley_reduction(i, EimRef{origin, pidx}, lhs, component);
}

void Session::earley_reduction(std::int32_t i, EimRef from, SymbolId trans, EimRef component) {
  const Eim pred = sets_.at(static_cast<std::size_t>(from.set)).items.at(static_cast<std::size_t>(from.item));
  StateId to = fa_->goto_state(pred.state, trans);
  if (to == no_state) {
    // Unreachable through the transition memos; counted for direct calls.
    ++stats_.attempts;
    ++stats_.goto_misses;
    return;
  }
  add_eim_pair(i, to, pred.origin, Link{LinkKind::reduction, trans, from, false, component});
}

void Session::leo_reduction(std::int32_t i, const Lim& from, std::int32_t lim_set, EimRef component) {
  ++stats_.leo_reductions;
  if (fa_->state(from.top_state).items.size() != 1) {
    ++stats_.leo_singleton_violations;
    assert(false && "Leo reduction result state must hold a single dotted rule");
  }
  add_eim_pair(i, from.top_state, from.top_origin,
               Link{LinkKind::leo, from.transition, EimRef{lim_set, -1}, true, component});
}

void Session::memoize_transitions(std::int32_t i) {
  EarleySet& es = sets_[static_cast<std::size_t>(i)];
  es.transitions.assign(g_ ? g_->symbols.size() : 0, {});

  struct Tracker {
    DottedRule dr;
    std::int32_t origin = 0;
    std::int32_t bottom_item = -1;
    bool candidate = false;
    int distinct = 0;
  };
  std::vector<Tracker> trackers(es.transitions.size());

  for (std::size_t idx = 0; idx < es.items.size(); ++idx) {
    const Eim& it = es.items[idx];
    const AhfaState& st = fa_->state(it.state);
    for (SymbolId p : st.postdot_symbols)
      es.transitions[static_cast<std::size_t>(p)].eims.push_back(static_cast<std::int32_t>(idx));
    for (const AhfaState::PostdotItem& pi : st.postdot_items) {
      Tracker& tr = trackers[static_cast<std::size_t>(pi.sym)];
      if (tr.distinct == 0) {
        tr = Tracker{pi.dr, it.origin, static_cast<std::int32_t>(idx), pi.leo_candidate, 1};
      } else if (tr.distinct == 1 && (tr.dr != pi.dr || tr.origin != it.origin)) {
        tr.distinct = 2;  // Leo uniqueness fails
      }
    }
  }

  for (std::size_t s = 0; s < trackers.size(); ++s) {
    const Tracker& tr = trackers[s];
    if (tr.distinct != 1 || !tr.candidate) continue;
    SymbolId p = static_cast<SymbolId>(s);
    SymbolId lhs = g_->rule(tr.dr.rule).lhs;
    Lim lim;
    // A predecessor LIM is consulted only in strictly earlier sets, whose
    // memos are final; a prediction bottom (origin = i) starts its chain.
    if (tr.origin < i) {
      const TransitionEntry& pe =
          sets_[static_cast<std::size_t>(tr.origin)].transitions[static_cast<std::size_t>(lhs)];
      if (pe.lim) {
        lim = Lim{pe.lim->top_state, p, pe.lim->top_origin};
        es.transitions[s].lim = lim;
        continue;
      }
    }
    const Eim& bottom = es.items[static_cast<std::size_t>(tr.bottom_item)];
    StateId top = fa_->goto_state(bottom.state, p);
    assert(top != no_state);
    assert(fa_->state(top).items.size() == 1);
    es.transitions[s].lim = Lim{top, p, bottom.origin};
  }
  es.memoized = true;
}

StepStatus Session::complete_earleme(const InputStream& in) {
  if (!g_) throw RecognizerError("trivial grammar: recognition is answered as a special case");
  if (!initialized_) throw RecognizerError("session is not initialized");
  std::int32_t i = current_ + 1;
  if (i > in.furthest_end()) throw RecognizerError("input is already exhausted");
  new_set(i);
  current_ = i;
  scan_pass(i, in.tokens_ending_at(i));

  StepStatus status = i == in.furthest_end() ? StepStatus::exhausted : StepStatus::continuing;
  if (sets_[static_cast<std::size_t>(i)].items.empty()) {
    if (!in.covers(i - 1)) {
      gap_at_ = i - 1;
      status = StepStatus::rejected;
    } else if (!in.spans(i)) {
      status = StepStatus::rejected;
    }
    // Otherwise some token spans this earleme; the set stays empty and
    // recognition continues.
  }
  reduction_pass(i);
  return status;
}

bool Session::accepted() const {
  if (!g_) return !saw_tokens_;
  if (current_ == 0) return pg_->accepts_empty;
  const EarleySet& last = sets_.back();
  for (const Eim& it : last.items)
    if (it.origin == 0 && fa_->state(it.state).has_accept_completion) return true;
  return false;
}

std::vector<SymbolId> Session::expected_terminals(std::int32_t i) const {
  std::vector<SymbolId> out;
  if (!g_) return out;
  const EarleySet& es = sets_.at(static_cast<std::size_t>(i));
  for (std::size_t s = 0; s < es.transitions.size(); ++s)
    if (!es.transitions[s].empty() && g_->symbol(static_cast<SymbolId>(s)).terminal_allowed)
      out.push_back(static_cast<SymbolId>(s));
  return out;
}

std::vector<Session::ProgressEntry> Session::progress_report(std::int32_t i) const {
  if (i < 0 || i >= set_count()) throw RecognizerError("no such earleme");
  std::vector<ProgressEntry> out;
  const EarleySet& es = sets_[static_cast<std::size_t>(i)];
  for (const Eim& it : es.items)
    for (DottedRule dr : fa_->state(it.state).items)
      out.push_back({pg_->dotmap[static_cast<std::size_t>(dr.rule)].raw_rule,
                     pg_->raw_dot(dr.rule, dr.pos), it.origin});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Session::progress_report_text(std::int32_t i) const {
  std::string out;
  for (const ProgressEntry& e : progress_report(i)) {
    const Grammar& shown = e.raw_rule == no_rule ? pg_->core : pg_->raw;
    RuleId rid = e.raw_rule == no_rule ? pg_->core.accept_rule : e.raw_rule;
    const Rule& r = shown.rule(rid);
    out += shown.name_of(r.lhs) + " ::=";
    for (std::int32_t k = 0; k <= static_cast<std::int32_t>(r.rhs.size()); ++k) {
      if (k == e.dot) out += " •";
      if (k < static_cast<std::int32_t>(r.rhs.size()))
        out += " " + shown.name_of(r.rhs[static_cast<std::size_t>(k)]);
    }
    out += " @" + std::to_string(e.origin) + "\n";
  }
  return out;
}

RunResult Session::run(const InputStream& in) {
  RunResult r;
  saw_tokens_ = !in.empty();
  if (!g_) {
    r.accepted = in.empty();
    if (!r.accepted) r.failed_at = 0;
    return r;
  }
  if (!initialized_) initialize();
  if (in.empty()) {
    r.accepted = pg_->accepts_empty;
    if (!r.accepted) {
      r.failed_at = 0;
      r.expected = expected_terminals(0);
    }
    return r;
  }
  for (;;) {
    StepStatus st = complete_earleme(in);
    if (st == StepStatus::continuing) continue;
    if (st == StepStatus::rejected) {
      r.failed_at = current_;
      r.gap_at = gap_at_;
      for (std::int32_t k = current_ - 1; k >= 0; --k)
        if (!sets_[static_cast<std::size_t>(k)].items.empty()) {
          r.expected = expected_terminals(k);
          break;
        }
      return r;
    }
    break;  // exhausted
  }
  r.accepted = accepted();
  if (!r.accepted) {
    r.failed_at = current_;
    r.expected = expected_terminals(current_);
  }
  return r;
}

}  // namespace marpa
