#include "durcsp/equivalence.hpp"

#include <algorithm>
#include <sstream>

namespace durcsp {

void EventBijection::put(EventId l, EventId r) {
  fwd[l] = r;
  bwd[r] = l;
}

std::optional<EventId> EventBijection::to_right(EventId l) const {
  auto it = fwd.find(l);
  if (it == fwd.end()) return std::nullopt;
  return it->second;
}

std::optional<EventId> EventBijection::to_left(EventId r) const {
  auto it = bwd.find(r);
  if (it == bwd.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Grid derivation

namespace {

void collect_process_constants(const ProcPtr& p, std::vector<Rat>& out) {
  if (!p) return;
  if (p->kind == Process::Prefix || p->kind == Process::Skip ||
      p->kind == Process::Delay)
    out.push_back(p->bound);
  collect_process_constants(p->left, out);
  collect_process_constants(p->right, out);
}

Rat gcd_of(const std::vector<Rat>& values) {
  Rat g(0);
  for (const Rat& v : values) {
    if (v == Rat(0)) continue;
    g = g == Rat(0) ? (v > Rat(0) ? v : -v) : rat_gcd(g, v);
  }
  return g == Rat(0) ? Rat(1) : g;
}

}  // namespace

Rat default_grid(const Spec& spec) {
  std::vector<Rat> values;
  for (auto& [name, d] : spec.durations) values.push_back(d);
  for (auto& [name, p] : spec.processes) collect_process_constants(p, values);
  return gcd_of(values) / Rat(2);
}

Rat default_grid(const Spec& spec, const TimedCTS& m) {
  std::vector<Rat> values;
  for (auto& [name, d] : spec.durations) values.push_back(d);
  for (auto& [name, p] : spec.processes) collect_process_constants(p, values);
  for (const auto& t : m.transitions) collect_constants(t.guard, values);
  return gcd_of(values) / Rat(2);
}

// ---------------------------------------------------------------------------
// Game sides

namespace {

struct Side {
  // Exactly one of conf / (model, run) is populated.
  ConfigPtr conf;
  const TimedCTS* model = nullptr;
  RunConfig run;
};

Side conf_side(ConfigPtr c) { return {std::move(c), nullptr, {}}; }
Side run_side(const TimedCTS& m, RunConfig rc) { return {nullptr, &m, std::move(rc)}; }

struct Move {
  TimedEventSet causes;
  Action label;
  EventId event = 0;
  Side next;
  size_t index = 0;                               // position in the side's move order
  const std::map<EventId, EventId>* renames = nullptr;  // run sides only
  std::string text;
};

std::vector<Move> side_moves(const Side& s, const Spec& spec) {
  std::vector<Move> out;
  if (s.conf) {
    auto steps = enabled_actions(s.conf, spec);
    for (size_t i = 0; i < steps.size(); ++i)
      out.push_back({steps[i].first.causes, steps[i].first.label, steps[i].first.event,
                     conf_side(steps[i].second), i, nullptr, to_string(steps[i].first)});
  } else {
    size_t i = 0;
    for (size_t t : s.model->outgoing(s.run.state)) {
      auto r = step_action(*s.model, spec, s.run, t);
      if (auto* ok = std::get_if<RunConfig>(&r)) {
        const CtsTransition& tr = s.model->transitions[t];
        out.push_back({tr.causes, tr.label, tr.event, run_side(*s.model, *ok), i,
                       &tr.renames,
                       tr.label.display() + "_e" + std::to_string(tr.event) +
                           " (transition " + std::to_string(t) + ")"});
        ++i;
      }
    }
  }
  return out;
}

std::optional<Side> side_delay(const Side& s, const Rat& d, const Spec& spec) {
  if (s.conf) {
    auto next = apply_delay(s.conf, d, spec);
    if (!next) return std::nullopt;
    return conf_side(*next);
  }
  auto next = step_delay(*s.model, spec, s.run, d);
  if (!next) return std::nullopt;
  return run_side(*s.model, *next);
}

std::set<EventId> side_psi(const Side& s) {
  if (s.conf) return psi_ids(s.conf);
  return psi_ids(s.model->states[s.run.state].config);
}

// An event duplicated across leaves can age in one copy while a pending delay
// freezes another; the least-frozen copy is the deterministic representative.
void collect_stamps(const ConfigPtr& c, std::map<EventId, Rat>& out) {
  if (!c) return;
  if (c->kind == TimedConfig::Leaf) {
    for (const auto& e : c->events.items()) {
      auto it = out.find(e.id);
      if (it == out.end() || e.stamp > it->second) out[e.id] = e.stamp;
    }
    return;
  }
  collect_stamps(c->left, out);
  collect_stamps(c->right, out);
}

std::map<EventId, Rat> side_stamps(const Side& s, const Spec& spec) {
  (void)spec;
  std::map<EventId, Rat> out;
  if (s.conf) {
    collect_stamps(s.conf, out);
  } else {
    for (EventId x : side_psi(s)) out[x] = clock_value(s.run, x);
  }
  return out;
}

bool side_quiescent(const Side& s, const Spec& spec) {
  if (s.conf) return no_possible_actions(s.conf, spec);
  for (size_t t : s.model->outgoing(s.run.state)) {
    const CtsTransition& tr = s.model->transitions[t];
    ClockValuation nu;
    for (EventId x : clocks_of(tr.guard)) nu[x] = clock_value(s.run, x);
    if (future_satisfiable(tr.guard, nu)) return false;
  }
  return true;
}

void side_candidates(const Side& s, const Spec& spec, const Rat& grid,
                     std::vector<Rat>& out) {
  if (s.conf) {
    for (const Rat& c : critical_delays(s.conf, spec)) {
      out.push_back(c);
      out.push_back(c + grid);
    }
    TimeBound md = max_delay(s.conf, spec);
    if (md.kind == TimeBound::Finite) {
      out.push_back(md.value);
      out.push_back(md.value + grid);
    }
  } else {
    for (size_t t : s.model->outgoing(s.run.state)) {
      const CtsTransition& tr = s.model->transitions[t];
      ClockValuation nu;
      for (EventId x : clocks_of(tr.guard)) nu[x] = clock_value(s.run, x);
      for (const Interval& iv : enabling_window(tr.guard, nu)) {
        out.push_back(iv.lo);
        out.push_back(iv.lo + grid);
        if (!iv.hi_unbounded) {
          out.push_back(iv.hi);
          out.push_back(iv.hi + grid);
        }
      }
    }
  }
}

std::string side_key(const Side& s) {
  if (s.conf) return "C:" + render(s.conf);
  std::string k = "R:s" + std::to_string(s.run.state);
  for (EventId x : side_psi(s)) k += "|e" + std::to_string(x) + "=" + to_string(clock_value(s.run, x));
  return k;
}

// ---------------------------------------------------------------------------
// Engine

enum class Mode { TauRunVsConf, ConfVsConf, RunVsRun };

struct Exhausted {};

struct Res {
  bool related = true;
  std::vector<CexRound> path;
  std::string reason;
  std::set<std::string> assumed;  // in-progress keys this result leans on
};

struct Engine {
  Mode mode;
  const Spec& spec;
  Rat grid;
  CheckParams params;
  CheckStats stats;
  size_t budget = 0;
  bool boundHit = false;
  std::map<std::string, int> memo;  // 1 in-progress, 2 proven

  Engine(Mode m, const Spec& sp, Rat g, const CheckParams& p)
      : mode(m), spec(sp), grid(std::move(g)), params(p), budget(p.max_nodes) {}

  bool causes_match(const TimedEventSet& cl, const TimedEventSet& cr,
                    const EventBijection& f) const {
    if (cl.size() != cr.size()) return false;
    for (const auto& e : cl.items()) {
      auto r = f.to_right(e.id);
      if (!r) return false;
      const TimedEvent* other = cr.find(*r);
      if (!other || !(other->action == e.action)) return false;
      if (mode == Mode::ConfVsConf && !(other->stamp == e.stamp)) return false;
    }
    return true;  // sizes equal and fwd injective, so the match is bijective
  }

  // Rebuilds the bijection after a matched pair of action moves, following
  // model renamings and restricting to survivors on both sides.
  EventBijection advance_f(const EventBijection& f, const Move& ml, const Move& mr) const {
    std::set<EventId> psil = side_psi(ml.next);
    std::set<EventId> psir = side_psi(mr.next);
    EventBijection out;
    for (auto& [l, r] : f.fwd) {
      EventId l2 = l;
      if (ml.renames) {
        auto it = ml.renames->find(l);
        if (it == ml.renames->end() || l == ml.event) continue;
        l2 = it->second;
      }
      EventId r2 = r;
      if (mr.renames) {
        auto it = mr.renames->find(r);
        if (it == mr.renames->end() || r == mr.event) continue;
        r2 = it->second;
      }
      EventId nl = ml.renames ? l2 : l;
      EventId nr = mr.renames ? r2 : r;
      EventId etal = ml.renames ? ml.renames->at(ml.event) : ml.event;
      EventId etar = mr.renames ? mr.renames->at(mr.event) : mr.event;
      if (!psil.count(nl) || nl == etal) continue;
      if (!psir.count(nr) || nr == etar) continue;
      out.put(nl, nr);
    }
    EventId etal = ml.renames ? ml.renames->at(ml.event) : ml.event;
    EventId etar = mr.renames ? mr.renames->at(mr.event) : mr.event;
    out.put(etal, etar);
    return out;
  }

  // Frozen-time displacement per left event (tau mode): left clock equals
  // right stamp plus offset; a delay that freezes the right stamp grows it.
  std::map<EventId, Rat> advance_offsets_delay(const std::map<EventId, Rat>& off,
                                               const EventBijection& f, const Rat& d,
                                               const Side& rbefore, const Side& rafter) const {
    std::map<EventId, Rat> out = off;
    auto before = side_stamps(rbefore, spec);
    auto after = side_stamps(rafter, spec);
    for (auto& [l, r] : f.fwd) {
      Rat adv = after.count(r) && before.count(r) ? after.at(r) - before.at(r) : d;
      out[l] += d - adv;
    }
    return out;
  }

  std::map<EventId, Rat> advance_offsets_action(const std::map<EventId, Rat>& off,
                                                const EventBijection& fold,
                                                const EventBijection& fnew,
                                                const Move& ml, const Side& rbefore,
                                                const Move& mr) const {
    auto before = side_stamps(rbefore, spec);
    auto after = side_stamps(mr.next, spec);
    std::map<EventId, Rat> out;
    std::map<EventId, EventId> lrename;  // old left id -> new left id
    for (auto& [l, r] : fold.fwd) {
      EventId l2 = l;
      if (ml.renames) {
        auto it = ml.renames->find(l);
        if (it == ml.renames->end()) continue;
        l2 = it->second;
      }
      lrename[l] = l2;
    }
    for (auto& [l, v] : off) {
      auto it = lrename.find(l);
      if (it != lrename.end() && fnew.fwd.count(it->second)) {
        EventId r2 = fnew.fwd.at(it->second);
        Rat adj(0);  // a dying live copy hands the role to a more-frozen one
        if (before.count(r2) && after.count(r2)) adj = before.at(r2) - after.at(r2);
        out[it->second] = v + adj;
      }
    }
    for (auto& [l, r] : fnew.fwd)
      if (!out.count(l)) out[l] = Rat(0);  // freshly born pair
    return out;
  }

  void check_synch(const Side& l, const Side& r, const EventBijection& f,
                   const std::map<EventId, Rat>& off) {
    if (mode != Mode::TauRunVsConf) return;
    auto lv = side_stamps(l, spec);
    auto rv = side_stamps(r, spec);
    for (auto& [zl, zr] : f.fwd) {
      if (!lv.count(zl) || !rv.count(zr)) {
        ++stats.synchViolations;
        continue;
      }
      Rat expected = rv.at(zr);
      auto o = off.find(zl);
      if (o != off.end()) expected += o->second;
      if (!(lv.at(zl) == expected)) ++stats.synchViolations;
    }
  }

  Res node(const Side& l, const Side& r, const EventBijection& f,
           const std::map<EventId, Rat>& off, size_t depth, bool lastWasDelay) {
    if (budget == 0) throw Exhausted{};
    --budget;
    ++stats.nodes;
    stats.maxDepthSeen = std::max(stats.maxDepthSeen, depth);
    check_synch(l, r, f, off);

    if (side_quiescent(l, spec) && side_quiescent(r, spec)) return {};
    if (depth >= params.max_depth) {
      boundHit = true;
      return {};
    }

    std::string key = side_key(l) + "##" + side_key(r) + "##" +
                      (lastWasDelay ? "D" : "A") + "##";
    for (auto& [a, b] : f.fwd)
      key += std::to_string(a) + ">" + std::to_string(b) + ";";
    auto m = memo.find(key);
    if (m != memo.end()) {
      ++stats.cacheHits;
      if (m->second == 2) return {};
      Res res;
      res.assumed.insert(key);
      return res;  // coinductive assumption on a pair currently being proven
    }
    memo[key] = 1;

    Res agg;
    auto finish_fail = [&](Res fail) {
      memo.erase(key);
      return fail;
    };

    std::vector<Move> lmoves = side_moves(l, spec);
    std::vector<Move> rmoves = side_moves(r, spec);

    auto attack_actions = [&](bool fromLeft) -> std::optional<Res> {
      const std::vector<Move>& atts = fromLeft ? lmoves : rmoves;
      const std::vector<Move>& defs = fromLeft ? rmoves : lmoves;
      for (const Move& att : atts) {
        std::vector<const Move*> matching;
        for (const Move& def : defs) {
          if (!(def.label == att.label)) continue;
          bool ok = fromLeft ? causes_match(att.causes, def.causes, f)
                             : causes_match(def.causes, att.causes, f);
          if (ok) matching.push_back(&def);
        }
        CexMove attack{fromLeft, false, Rat(0), att.index, att.text};
        if (matching.empty()) {
          Res fail;
          fail.related = false;
          fail.path.push_back({attack, std::nullopt});
          fail.reason = "no response carries the same action with matching causes";
          return fail;
        }
        std::optional<Res> firstFail;
        bool defended = false;
        for (const Move* def : matching) {
          const Move& ml = fromLeft ? att : *def;
          const Move& mr = fromLeft ? *def : att;
          EventBijection f2 = advance_f(f, ml, mr);
          std::map<EventId, Rat> off2 =
              mode == Mode::TauRunVsConf ? advance_offsets_action(off, f, f2, ml, r, mr)
                                         : std::map<EventId, Rat>{};
          Res sub = node(ml.next, mr.next, f2, off2, depth + 1, false);
          if (sub.related) {
            defended = true;
            agg.assumed.insert(sub.assumed.begin(), sub.assumed.end());
            break;
          }
          if (!firstFail) {
            sub.path.insert(sub.path.begin(), {attack, def->index});
            firstFail = std::move(sub);
          }
        }
        if (!defended) return firstFail;
      }
      return std::nullopt;
    };

    if (auto fail = attack_actions(true)) return finish_fail(std::move(*fail));
    if (auto fail = attack_actions(false)) return finish_fail(std::move(*fail));

    if (!lastWasDelay) {
      std::vector<Rat> pool{grid};
      side_candidates(l, spec, grid, pool);
      side_candidates(r, spec, grid, pool);
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
      pool.erase(std::remove_if(pool.begin(), pool.end(),
                                [](const Rat& d) { return d <= Rat(0); }),
                 pool.end());
      if (pool.size() > 64) pool.resize(64);

      for (const Rat& d : pool) {
        for (bool fromLeft : {true, false}) {
          const Side& att = fromLeft ? l : r;
          const Side& def = fromLeft ? r : l;
          auto attNext = side_delay(att, d, spec);
          if (!attNext) continue;
          auto defNext = side_delay(def, d, spec);
          CexMove attack{fromLeft, true, d, 0, "delay " + to_string(d)};
          if (!defNext) {
            Res fail;
            fail.related = false;
            fail.path.push_back({attack, std::nullopt});
            fail.reason = "the wait of " + to_string(d) + " is refused on the other side";
            return finish_fail(std::move(fail));
          }
          const Side& l2 = fromLeft ? *attNext : *defNext;
          const Side& r2 = fromLeft ? *defNext : *attNext;
          std::map<EventId, Rat> off2 =
              mode == Mode::TauRunVsConf ? advance_offsets_delay(off, f, d, r, r2)
                                         : std::map<EventId, Rat>{};
          Res sub = node(l2, r2, f, off2, depth + 1, true);
          if (!sub.related) {
            sub.path.insert(sub.path.begin(), {attack, 0});
            return finish_fail(std::move(sub));
          }
          agg.assumed.insert(sub.assumed.begin(), sub.assumed.end());
          break;  // both sides admitted d, so the symmetric attack hits the same node
        }
      }
    }

    agg.assumed.erase(key);
    if (agg.assumed.empty())
      memo[key] = 2;
    else
      memo.erase(key);
    return agg;
  }
};

Verdict run_engine(Mode mode, const Spec& spec, const Rat& grid, const CheckParams& params,
                   const Side& l, const Side& r) {
  auto once = [&](size_t depth) {
    CheckParams p = params;
    p.max_depth = depth;
    Engine e(mode, spec, grid, p);
    Verdict v;
    try {
      Res res = e.node(l, r, {}, {}, 0, false);
      v.kind = res.related ? VerdictKind::Bisimilar : VerdictKind::NotBisimilar;
      if (!res.related) v.cex = Counterexample{std::move(res.path), std::move(res.reason)};
    } catch (const Exhausted&) {
      v.kind = VerdictKind::Inconclusive;
    }
    v.boundHit = e.boundHit;
    v.stats = e.stats;
    return v;
  };
  Verdict v = once(params.max_depth);
  if (v.kind == VerdictKind::NotBisimilar && params.minimize) {
    for (size_t k = 1; k < params.max_depth; ++k) {
      Verdict small = once(k);
      if (small.kind == VerdictKind::NotBisimilar) {
        small.stats.nodes += v.stats.nodes;
        small.stats.synchViolations += v.stats.synchViolations;
        return small;
      }
    }
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entry points

Verdict tau_bisimilar(const TimedCTS& m, const ConfigPtr& c, const Spec& spec,
                      const CheckParams& params) {
  CheckParams p = params;
  Rat grid = p.grid ? *p.grid : default_grid(spec, m);
  return run_engine(Mode::TauRunVsConf, spec, grid, p, run_side(m, initial_run(m)),
                    conf_side(c));
}

Verdict tau_bisimilar(const TimedCTS& m, const Spec& spec, const CheckParams& params) {
  return tau_bisimilar(m, initial_config(spec), spec, params);
}

Verdict config_bisimilar(const ConfigPtr& a, const ConfigPtr& b, const Spec& spec,
                         const CheckParams& params) {
  CheckParams p = params;
  Rat grid = p.grid ? *p.grid : default_grid(spec);
  return run_engine(Mode::ConfVsConf, spec, grid, p, conf_side(a), conf_side(b));
}

Verdict cts_run_bisimilar(const TimedCTS& a, const TimedCTS& b, const Spec& spec,
                          const CheckParams& params) {
  CheckParams p = params;
  Rat grid = p.grid ? *p.grid : rat_gcd(default_grid(spec, a), default_grid(spec, b));
  return run_engine(Mode::RunVsRun, spec, grid, p, run_side(a, initial_run(a)),
                    run_side(b, initial_run(b)));
}

bool check_synchronized(const TimedCTS& m, const RunConfig& rc, const ConfigPtr& c,
                        const EventBijection& f, const Spec& spec) {
  (void)m;
  (void)spec;
  TimedEventSet events = psi(c);
  for (auto& [l, r] : f.fwd) {
    const TimedEvent* e = events.find(r);
    if (!e) return false;
    if (!(clock_value(rc, l) == e->stamp)) return false;
  }
  return true;
}

Verdict refinement_preserved(const ProcPtr& p, const ProcPtr& q, const Action& a,
                             const ProcPtr& body, const Spec& spec,
                             const CheckParams& params) {
  Verdict pre = config_bisimilar(canonicalize(TimedEventSet(), p, spec),
                                 canonicalize(TimedEventSet(), q, spec), spec, params);
  if (pre.kind != VerdictKind::Bisimilar) return pre;
  ProcPtr rp = Process::refine(a, body, p);
  ProcPtr rq = Process::refine(a, body, q);
  return config_bisimilar(canonicalize(TimedEventSet(), rp, spec),
                          canonicalize(TimedEventSet(), rq, spec), spec, params);
}

// ---------------------------------------------------------------------------
// Replay

namespace {

struct ReplaySide {
  ConfigPtr conf;
  const TimedCTS* model = nullptr;
  RunConfig run;
};

std::vector<Move> replay_moves(const ReplaySide& s, const Spec& spec) {
  Side side;
  side.conf = s.conf;
  side.model = s.model;
  side.run = s.run;
  return side_moves(side, spec);
}

bool replay_generic(ReplaySide l, ReplaySide r, const Spec& spec, const Counterexample& cex,
                    bool literal_stamps) {
  EventBijection f;
  auto match = [&](const TimedEventSet& cl, const TimedEventSet& cr) {
    if (cl.size() != cr.size()) return false;
    for (const auto& e : cl.items()) {
      auto rr = f.to_right(e.id);
      if (!rr) return false;
      const TimedEvent* other = cr.find(*rr);
      if (!other || !(other->action == e.action)) return false;
      if (literal_stamps && !(other->stamp == e.stamp)) return false;
    }
    return true;
  };
  auto apply_delay_side = [&](ReplaySide& s, const Rat& d) -> bool {
    if (s.conf) {
      auto next = apply_delay(s.conf, d, spec);
      if (!next) return false;
      s.conf = *next;
      return true;
    }
    auto next = step_delay(*s.model, spec, s.run, d);
    if (!next) return false;
    s.run = *next;
    return true;
  };

  for (size_t i = 0; i < cex.rounds.size(); ++i) {
    const CexRound& round = cex.rounds[i];
    bool last = i + 1 == cex.rounds.size();
    ReplaySide& att = round.attack.fromLeft ? l : r;
    ReplaySide& def = round.attack.fromLeft ? r : l;

    if (round.attack.isDelay) {
      if (!apply_delay_side(att, round.attack.delay)) return false;  // attack itself bogus
      bool defok = apply_delay_side(def, round.attack.delay);
      if (last) return !defok;
      if (!defok) return false;  // recorded as defended but is not
      continue;
    }

    std::vector<Move> attMoves =
        replay_moves(att, spec);
    if (round.attack.actionIndex >= attMoves.size()) return false;
    Move am = attMoves[round.attack.actionIndex];
    std::vector<Move> defMoves = replay_moves(def, spec);
    std::vector<const Move*> matching;
    for (const Move& dm : defMoves) {
      if (!(dm.label == am.label)) continue;
      bool ok = round.attack.fromLeft ? match(am.causes, dm.causes)
                                      : match(dm.causes, am.causes);
      if (ok) matching.push_back(&dm);
    }
    if (last) return matching.empty();
    if (!round.defense) return false;
    const Move* dm = nullptr;
    for (const Move* c : matching)
      if (c->index == *round.defense) dm = c;
    if (!dm) return false;

    const Move& ml = round.attack.fromLeft ? am : *dm;
    const Move& mr = round.attack.fromLeft ? *dm : am;
    // Same survivor bookkeeping as the checker.
    std::set<EventId> psil = ml.next.conf ? psi_ids(ml.next.conf)
                                          : psi_ids(ml.next.model->states[ml.next.run.state].config);
    std::set<EventId> psir = mr.next.conf ? psi_ids(mr.next.conf)
                                          : psi_ids(mr.next.model->states[mr.next.run.state].config);
    EventBijection f2;
    EventId etal = ml.renames ? ml.renames->at(ml.event) : ml.event;
    EventId etar = mr.renames ? mr.renames->at(mr.event) : mr.event;
    for (auto& [a, b] : f.fwd) {
      EventId a2 = a, b2 = b;
      if (ml.renames) {
        auto it = ml.renames->find(a);
        if (it == ml.renames->end() || a == ml.event) continue;
        a2 = it->second;
      }
      if (mr.renames) {
        auto it = mr.renames->find(b);
        if (it == mr.renames->end() || b == mr.event) continue;
        b2 = it->second;
      }
      if (!psil.count(a2) || a2 == etal) continue;
      if (!psir.count(b2) || b2 == etar) continue;
      f2.put(a2, b2);
    }
    f2.put(etal, etar);
    f = std::move(f2);

    auto take = [&](ReplaySide& s, const Move& m) {
      s.conf = m.next.conf;
      s.model = m.next.model;
      s.run = m.next.run;
    };
    take(att, am);
    take(def, *dm);
  }
  return false;  // a counterexample must end in an unanswered attack
}

}  // namespace

bool replay_counterexample(const TimedCTS& a, const TimedCTS& b, const Spec& spec,
                           const Counterexample& cex) {
  ReplaySide l{nullptr, &a, initial_run(a)};
  ReplaySide r{nullptr, &b, initial_run(b)};
  return replay_generic(std::move(l), std::move(r), spec, cex, false);
}

bool replay_counterexample(const ConfigPtr& a, const ConfigPtr& b, const Spec& spec,
                           const Counterexample& cex) {
  ReplaySide l{a, nullptr, {}};
  ReplaySide r{b, nullptr, {}};
  return replay_generic(std::move(l), std::move(r), spec, cex, true);
}

}  // namespace durcsp
