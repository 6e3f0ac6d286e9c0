#include "durcsp/semantics.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace durcsp {

std::string to_string(const ActionStep& s) {
  return "_" + to_string(s.causes) + " " + s.label.display() + "_e" + std::to_string(s.event);
}

// ---------------------------------------------------------------------------
// Action transitions

namespace {

using Steps = std::vector<std::pair<ActionStep, ConfigPtr>>;

std::set<EventId> ids_minus(const ConfigPtr& c, EventId drop) {
  std::set<EventId> out = all_ids(c);
  out.erase(drop);
  return out;
}

void merge_ids(std::set<EventId>& into, const std::set<EventId>& from) {
  into.insert(from.begin(), from.end());
}

// Cause ids may die out of the step target, yet the run bookkeeping still
// refers to them; reanchoring must never hand them to the new event.
void merge_cause_ids(std::set<EventId>& into, const TimedEventSet& causes) {
  for (const auto& e : causes.items()) into.insert(e.id);
}

bool syncs_in(const Action& a, const std::set<std::string>& L) {
  if (a.kind == Action::Delta) return true;  // termination always synchronizes
  return a.kind == Action::Visible && L.count(a.name) > 0;
}

// Signed time until the last cause weakly terminates; negative once every
// cause finished in the past. Callers guarantee a nonempty set.
Rat finish_gap(const TimedEventSet& events, const Spec& spec) {
  bool first = true;
  Rat gap(0);
  for (const auto& e : events.items()) {
    Rat g = spec.duration_of(e.action) - e.stamp;
    if (first || g > gap) {
      gap = g;
      first = false;
    }
  }
  return gap;
}

// Upper half of the firing window: some cause still lies within `bound` of
// its termination (or, with no causes, the birth-anchored budget remains).
bool offer_open(const TimedEventSet& events, const Rat& bound, const Spec& spec) {
  if (events.size() == 0) return bound >= Rat(0);
  return finish_gap(events, spec) + bound >= Rat(0);
}

Steps enabled(const ConfigPtr& c, const Spec& spec) {
  Steps out;
  switch (c->kind) {
    case TimedConfig::Leaf: {
      const ProcPtr& p = c->proc;
      if (p->kind == Process::Stop) break;
      if (!is_finished(c->events, spec)) break;
      if (!offer_open(c->events, p->bound, spec)) break;  // window already crossed
      EventId x = fresh_event(c->events.ids());
      if (p->kind == Process::Skip) {
        auto target = TimedConfig::leaf(
            TimedEventSet::single(x, Action::delta(), Rat(0)), Process::stop());
        out.push_back({{c->events, Action::delta(), x}, std::move(target)});
      } else {  // Prefix
        auto target =
            canonicalize(TimedEventSet::single(x, p->action, Rat(0)), p->left, spec);
        out.push_back({{c->events, p->action, x}, std::move(target)});
      }
      break;
    }
    case TimedConfig::Delay:
      break;  // a pending delay blocks every action
    case TimedConfig::Choice: {
      for (auto& [s, t] : enabled(c->left, spec)) out.push_back({s, t});
      for (auto& [s, t] : enabled(c->right, spec)) out.push_back({s, t});
      break;
    }
    case TimedConfig::Par: {
      Steps ls = enabled(c->left, spec);
      Steps rs = enabled(c->right, spec);
      for (auto& [s, l2] : ls) {
        if (syncs_in(s.label, c->sync)) continue;
        std::set<EventId> used = ids_minus(l2, s.event);
        merge_ids(used, all_ids(c->right));
        merge_cause_ids(used, s.causes);
        EventId y = fresh_event(used);
        out.push_back({{s.causes, s.label, y},
                       TimedConfig::par(substitute_event(l2, s.event, y), c->sync, c->right)});
      }
      for (auto& [s, r2] : rs) {
        if (syncs_in(s.label, c->sync)) continue;
        std::set<EventId> used = ids_minus(r2, s.event);
        merge_ids(used, all_ids(c->left));
        merge_cause_ids(used, s.causes);
        EventId y = fresh_event(used);
        out.push_back({{s.causes, s.label, y},
                       TimedConfig::par(c->left, c->sync, substitute_event(r2, s.event, y))});
      }
      for (auto& [sl, l2] : ls) {
        if (!syncs_in(sl.label, c->sync)) continue;
        for (auto& [sr, r2] : rs) {
          if (sr.label != sl.label) continue;
          std::set<EventId> used = ids_minus(l2, sl.event);
          merge_ids(used, ids_minus(r2, sr.event));
          merge_cause_ids(used, sl.causes);
          merge_cause_ids(used, sr.causes);
          EventId z = fresh_event(used);
          out.push_back({{merge(sl.causes, sr.causes), sl.label, z},
                         TimedConfig::par(substitute_event(l2, sl.event, z), c->sync,
                                          substitute_event(r2, sr.event, z))});
        }
      }
      break;
    }
    case TimedConfig::Hide: {
      for (auto& [s, t] : enabled(c->left, spec)) {
        Action label = s.label;
        if (label.kind == Action::Visible && c->sync.count(label.name))
          label = Action::internal();
        out.push_back({{s.causes, label, s.event}, TimedConfig::hide(t, c->sync)});
      }
      break;
    }
    case TimedConfig::Interrupt: {
      for (auto& [s, l2] : enabled(c->left, spec)) {
        if (s.label.kind == Action::Delta) {
          out.push_back({s, l2});  // termination dissolves the interrupt
        } else {
          std::set<EventId> used = ids_minus(l2, s.event);
          merge_ids(used, all_ids(c->right));
          merge_cause_ids(used, s.causes);
          EventId y = fresh_event(used);
          out.push_back({{s.causes, s.label, y},
                         TimedConfig::interrupt(substitute_event(l2, s.event, y), c->right)});
        }
      }
      for (auto& [s, r2] : enabled(c->right, spec)) out.push_back({s, r2});
      break;
    }
    case TimedConfig::Refine: {
      for (auto& [s, q2] : enabled(c->left, spec)) {
        if (s.label != c->action) {
          out.push_back({s, TimedConfig::refine(c->action, c->proc, q2)});
          continue;
        }
        // Replace the refined occurrence by the body's first steps; the
        // occurrence event anchors the rest of the scope behind the body.
        ConfigPtr body = canonicalize(s.causes, c->proc, spec);
        for (auto& [bs, b2] : enabled(body, spec)) {
          if (bs.causes != s.causes)
            throw EngineError("refinement body fired with unexpected causes");
          std::set<EventId> used = ids_minus(b2, bs.event);
          merge_ids(used, ids_minus(q2, s.event));
          used.insert(s.event);
          merge_cause_ids(used, s.causes);
          EventId z = fresh_event(used);
          auto scope = TimedConfig::refine(c->action, c->proc, q2);
          out.push_back({{s.causes, bs.label, z},
                         TimedConfig::partial_seq(substitute_event(b2, bs.event, z), s.event,
                                                  std::move(scope))});
        }
      }
      break;
    }
    case TimedConfig::PartialSeq: {
      for (auto& [s, l2] : enabled(c->left, spec)) {
        if (s.label.kind == Action::Delta) {
          // Left terminated: the anchor resolves to the termination event and
          // the right half proceeds alone.
          std::set<EventId> used = all_ids(c->right);
          used.insert(c->anchor);
          merge_cause_ids(used, s.causes);
          EventId z = fresh_event(used);
          out.push_back({{s.causes, Action::internal(), z},
                         substitute_event(c->right, c->anchor, z)});
        } else {
          std::set<EventId> used = ids_minus(l2, s.event);
          merge_ids(used, all_ids(c->right));
          used.insert(c->anchor);
          merge_cause_ids(used, s.causes);
          EventId z = fresh_event(used);
          out.push_back({{s.causes, s.label, z},
                         TimedConfig::partial_seq(substitute_event(l2, s.event, z), c->anchor,
                                                  c->right)});
        }
      }
      for (auto& [s, r2] : enabled(c->right, spec)) {
        if (s.causes.contains(c->anchor)) continue;  // still waits on the left
        std::set<EventId> used = all_ids(c->left);
        merge_ids(used, ids_minus(r2, s.event));
        used.insert(c->anchor);
        merge_cause_ids(used, s.causes);
        EventId z = fresh_event(used);
        out.push_back({{s.causes, s.label, z},
                       TimedConfig::partial_seq(c->left, c->anchor,
                                                substitute_event(r2, s.event, z))});
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<ActionStep, ConfigPtr>> enabled_actions(const ConfigPtr& c,
                                                              const Spec& spec) {
  return enabled(c, spec);
}

// ---------------------------------------------------------------------------
// Delay transitions
//
// Time passes freely except that it may not silently cross a live firing
// window. Windows are composed exactly as firings are: synchronized offers
// intersect, pending delay gates shift, frozen regions hold still. A dead
// offer (expired, or with no compatible partner) constrains nothing, and an
// unfired branch merely loses its window. Both ends are weak — windows track
// guard satisfiability; strict termination is a separate firing condition.

namespace {

struct ActionWindow {
  Action label;
  Rat lo{0};  // may be negative while the offer is already open
  Rat hi{0};
  bool held = false;  // frozen satisfiable offer: open at every future wait
};

void config_windows(const ConfigPtr& c, const Spec& spec, bool frozen,
                    const std::set<EventId>& blocked, std::vector<ActionWindow>& out) {
  switch (c->kind) {
    case TimedConfig::Leaf: {
      const ProcPtr& p = c->proc;
      if (p->kind == Process::Stop) return;
      for (const auto& e : c->events.items())
        if (blocked.count(e.id)) return;  // waits on an undissolved anchor
      Action label = p->kind == Process::Skip ? Action::delta() : p->action;
      Rat lo(0), hi = p->bound;
      if (c->events.size() > 0) {
        Rat gap = finish_gap(c->events, spec);
        lo = gap;
        hi = gap + p->bound;
      }
      if (frozen) {
        if (lo <= Rat(0) && hi >= Rat(0)) out.push_back({label, Rat(0), Rat(0), true});
        return;
      }
      if (hi < lo || hi < Rat(0)) return;  // expired
      out.push_back({label, lo, hi, false});
      return;
    }
    case TimedConfig::Delay: {
      if (frozen) return;  // the gate never opens while time stands still
      std::vector<ActionWindow> inner;
      config_windows(c->left, spec, false, blocked, inner);
      for (auto& w : inner) {
        w.lo += c->delay;
        if (!w.held) w.hi += c->delay;
        out.push_back(w);
      }
      return;
    }
    case TimedConfig::Choice:
    case TimedConfig::Interrupt:
      config_windows(c->left, spec, frozen, blocked, out);
      config_windows(c->right, spec, frozen, blocked, out);
      return;
    case TimedConfig::Par: {
      std::vector<ActionWindow> ls, rs;
      config_windows(c->left, spec, frozen, blocked, ls);
      config_windows(c->right, spec, frozen, blocked, rs);
      for (const auto& w : ls)
        if (!syncs_in(w.label, c->sync)) out.push_back(w);
      for (const auto& w : rs)
        if (!syncs_in(w.label, c->sync)) out.push_back(w);
      for (const auto& a : ls) {
        if (!syncs_in(a.label, c->sync)) continue;
        for (const auto& b : rs) {
          if (!(a.label == b.label)) continue;
          ActionWindow w{a.label, std::max(a.lo, b.lo), Rat(0), a.held && b.held};
          if (a.held)
            w.hi = b.hi;
          else if (b.held)
            w.hi = a.hi;
          else
            w.hi = std::min(a.hi, b.hi);
          if (!w.held && (w.hi < w.lo || w.hi < Rat(0))) continue;  // partners miss
          out.push_back(w);
        }
      }
      return;
    }
    case TimedConfig::Hide: {
      std::vector<ActionWindow> inner;
      config_windows(c->left, spec, frozen, blocked, inner);
      for (auto& w : inner) {
        if (w.label.kind == Action::Visible && c->sync.count(w.label.name))
          w.label = Action::internal();
        out.push_back(w);
      }
      return;
    }
    case TimedConfig::Refine:
      config_windows(c->left, spec, frozen, blocked, out);
      return;
    case TimedConfig::PartialSeq: {
      config_windows(c->left, spec, frozen, blocked, out);
      std::set<EventId> b2 = blocked;
      b2.insert(c->anchor);
      bool gate = psi(c->right).contains(c->anchor);
      config_windows(c->right, spec, frozen || gate, b2, out);
      return;
    }
  }
  throw EngineError("unreachable configuration kind");
}

std::vector<ActionWindow> windows_of(const ConfigPtr& c, const Spec& spec) {
  std::vector<ActionWindow> out;
  config_windows(c, spec, false, {}, out);
  return out;
}

// Unconditional time passage: stamps advance, birth-anchored budgets burn
// down (possibly past zero), gates peel, frozen regions keep their stamps.
ConfigPtr advance_config(const ConfigPtr& c, const Rat& d, const Spec& spec) {
  switch (c->kind) {
    case TimedConfig::Leaf: {
      const ProcPtr& p = c->proc;
      if (p->kind == Process::Stop) return TimedConfig::leaf(c->events.advanced(d), p);
      if (c->events.size() > 0) return TimedConfig::leaf(c->events.advanced(d), p);
      ProcPtr residual = p->kind == Process::Skip
                             ? Process::skip(p->bound - d)
                             : Process::prefix(p->action, p->bound - d, p->left);
      return TimedConfig::leaf(c->events, residual);
    }
    case TimedConfig::Delay: {
      if (d <= c->delay) return TimedConfig::delay_node(c->delay - d, c->left);
      return advance_config(c->left, d - c->delay, spec);
    }
    case TimedConfig::Choice:
      return TimedConfig::choice(advance_config(c->left, d, spec),
                                 advance_config(c->right, d, spec));
    case TimedConfig::Par:
      return TimedConfig::par(advance_config(c->left, d, spec), c->sync,
                              advance_config(c->right, d, spec));
    case TimedConfig::Interrupt:
      return TimedConfig::interrupt(advance_config(c->left, d, spec),
                                    advance_config(c->right, d, spec));
    case TimedConfig::Hide:
      return TimedConfig::hide(advance_config(c->left, d, spec), c->sync);
    case TimedConfig::Refine:
      return TimedConfig::refine(c->action, c->proc, advance_config(c->left, d, spec));
    case TimedConfig::PartialSeq: {
      ConfigPtr l = advance_config(c->left, d, spec);
      if (psi(c->right).contains(c->anchor))  // right still waits: it is frozen
        return TimedConfig::partial_seq(l, c->anchor, c->right);
      return TimedConfig::partial_seq(l, c->anchor, advance_config(c->right, d, spec));
    }
  }
  throw EngineError("unreachable configuration kind");
}

}  // namespace

std::optional<ConfigPtr> apply_delay(const ConfigPtr& c, const Rat& d, const Spec& spec) {
  if (d <= Rat(0)) throw EngineError("delay must be positive");
  for (const auto& w : windows_of(c, spec))
    if (!w.held && w.hi < d) return std::nullopt;  // would silently cross a live offer
  return advance_config(c, d, spec);
}

namespace {

TimeBound tb_min(const TimeBound& a, const TimeBound& b) {
  if (a.kind == TimeBound::Unbounded) return b;
  if (b.kind == TimeBound::Unbounded) return a;
  if (a.value < b.value) return a;
  if (b.value < a.value) return b;
  return TimeBound{TimeBound::Finite, a.value, a.attained && b.attained};
}

}  // namespace

TimeBound max_delay(const ConfigPtr& c, const Spec& spec) {
  TimeBound out = TimeBound::unbounded();
  for (const auto& w : windows_of(c, spec))
    if (!w.held) out = tb_min(out, TimeBound::closed(w.hi));
  return out;
}

bool is_quiescent(const ConfigPtr& c) {
  if (c->kind == TimedConfig::Leaf) return c->proc->kind == Process::Stop;
  if (c->left && !is_quiescent(c->left)) return false;
  if (c->right && !is_quiescent(c->right)) return false;
  return true;
}

bool no_possible_actions(const ConfigPtr& c, const Spec& spec) {
  return windows_of(c, spec).empty();
}

std::vector<Rat> critical_delays(const ConfigPtr& c, const Spec& spec) {
  std::vector<Rat> out;
  for (const auto& w : windows_of(c, spec)) {
    Rat lo = std::max(w.lo, Rat(0));
    if (lo > Rat(0)) out.push_back(lo);
    if (!w.held && w.hi > Rat(0)) out.push_back(w.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Replay

Trace run(const ConfigPtr& c, const Schedule& schedule, const Spec& spec) {
  Trace trace{c, {}};
  ConfigPtr cur = c;
  for (size_t i = 0; i < schedule.size(); ++i) {
    const auto& entry = schedule[i];
    if (entry.kind == ScheduleEntry::Pick) {
      auto steps = enabled_actions(cur, spec);
      if (entry.index >= steps.size())
        throw EngineError("schedule step " + std::to_string(i) + ": pick " +
                          std::to_string(entry.index) + " out of range (" +
                          std::to_string(steps.size()) + " enabled)");
      cur = steps[entry.index].second;
      trace.steps.push_back({steps[entry.index].first, Rat(0), cur});
    } else {
      auto next = apply_delay(cur, entry.wait, spec);
      if (!next)
        throw EngineError("schedule step " + std::to_string(i) + ": delay " +
                          to_string(entry.wait) + " refused (a firing window or pending "
                          "completion forbids it)");
      cur = *next;
      trace.steps.push_back({std::nullopt, entry.wait, cur});
    }
  }
  return trace;
}

std::string write_trace(const Trace& t) {
  std::string out = "durcsp-trace v1\n";
  for (const auto& step : t.steps) {
    if (step.act)
      out += "ACT " + to_string(step.act->causes) + " " + step.act->label.display() + " e" +
             std::to_string(step.act->event) + "\n";
    else
      out += "DELAY " + to_string(step.delay) + "\n";
  }
  return out;
}

std::string write_schedule(const Schedule& s) {
  std::string out = "durcsp-schedule v1\n";
  for (const auto& e : s) {
    if (e.kind == ScheduleEntry::Pick)
      out += "PICK " + std::to_string(e.index) + "\n";
    else
      out += "WAIT " + to_string(e.wait) + "\n";
  }
  return out;
}

Schedule parse_schedule(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line) || line != "durcsp-schedule v1")
    throw ParseError("expected header 'durcsp-schedule v1'", {1, 1});
  Schedule out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word, arg;
    ls >> word >> arg;
    if (word == "PICK") {
      try {
        out.push_back({ScheduleEntry::Pick, std::stoul(arg), Rat(0)});
      } catch (const std::exception&) {
        throw ParseError("bad PICK index '" + arg + "'", {lineno + 1, 1});
      }
    } else if (word == "WAIT") {
      auto d = parse_rat(arg);
      if (!d || *d <= Rat(0))
        throw ParseError("bad WAIT duration '" + arg + "'", {lineno + 1, 1});
      out.push_back({ScheduleEntry::Wait, 0, *d});
    } else {
      throw ParseError("expected PICK or WAIT, got '" + word + "'", {lineno + 1, 1});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Makespan search

namespace {

// Stamps far past their duration behave identically; clamping them makes the
// waiting tail of the search space finite.
ConfigPtr clamp_stamps(const ConfigPtr& c, const Spec& spec, const Rat& grid) {
  TimedConfig copy = *c;
  std::vector<TimedEvent> items = c->events.items();
  bool changed = false;
  for (auto& e : items) {
    Rat cap = spec.duration_of(e.action) + grid;
    if (e.stamp > cap) {
      e.stamp = cap;
      changed = true;
    }
  }
  if (changed) copy.events = TimedEventSet(std::move(items));
  copy.left = c->left ? clamp_stamps(c->left, spec, grid) : nullptr;
  copy.right = c->right ? clamp_stamps(c->right, spec, grid) : nullptr;
  return std::make_shared<const TimedConfig>(std::move(copy));
}

bool makespan_terminal(const ConfigPtr& c, const Spec& spec) {
  if (!is_finished(psi(c), spec)) return false;
  for (auto& [step, target] : enabled_actions(c, spec))
    if (step.label.kind == Action::Visible) return false;
  return true;
}

}  // namespace

std::optional<Rat> min_makespan(const ConfigPtr& c, const Spec& spec, const Rat& grid,
                                const MakespanOptions& opts) {
  if (grid <= Rat(0)) throw EngineError("grid must be positive");
  struct Entry {
    Rat elapsed;
    size_t steps = 0;
    ConfigPtr config;
  };
  auto cmp = [](const Entry& a, const Entry& b) { return a.elapsed > b.elapsed; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
  // Without a step bound one best cost per configuration suffices; with one,
  // fewer steps and lower cost are incomparable, so keep the Pareto frontier.
  std::unordered_map<ConfigPtr, std::map<size_t, Rat>, ConfigHash, ConfigEq> best;

  auto push = [&](ConfigPtr cfg, const Rat& elapsed, size_t steps) {
    if (opts.max_steps && steps > *opts.max_steps) return;
    ConfigPtr key = canonical_renumber(clamp_stamps(cfg, spec, grid)).first;
    auto& layers = best[key];
    size_t slot = opts.max_steps ? steps : 0;
    for (auto& [s, e] : layers)
      if (s <= slot && e <= elapsed) return;
    std::erase_if(layers, [&](const auto& kv) { return kv.first >= slot && kv.second >= elapsed; });
    layers[slot] = elapsed;
    queue.push({elapsed, steps, std::move(key)});
  };

  push(c, Rat(0), 0);
  size_t visited = 0;
  while (!queue.empty()) {
    auto [elapsed, steps, cur] = queue.top();
    queue.pop();
    if (++visited > opts.max_nodes) return std::nullopt;
    if (makespan_terminal(cur, spec)) return elapsed;
    for (auto& [step, target] : enabled_actions(cur, spec)) push(target, elapsed, steps + 1);
    if (auto delayed = apply_delay(cur, grid, spec)) push(*delayed, elapsed + grid, steps + 1);
  }
  return std::nullopt;
}

std::optional<TimeBound> min_makespan_exact(const ConfigPtr& c, const Spec& spec,
                                            const Rat& grid, const MakespanOptions& opts) {
  auto coarse = min_makespan(c, spec, grid, opts);
  auto fine = min_makespan(c, spec, grid / Rat(2), opts);
  if (!coarse || !fine) return std::nullopt;
  if (*fine > *coarse)
    throw EngineError("makespan grid refinement worsened the bound");
  if (*fine == *coarse) return TimeBound::closed(*fine);
  return TimeBound::open(*fine - (*coarse - *fine));
}

}  // namespace durcsp
