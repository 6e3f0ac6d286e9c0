#include "durcsp/tcts.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace durcsp {

std::vector<size_t> TimedCTS::outgoing(size_t state) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].source == state) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic steps (stampless configurations; termination lives in the guards)

namespace {

struct DenStep {
  TimedEventSet causes;
  Action label;
  EventId event = 0;
  ConstraintPtr guard;
  std::set<EventId> resets;
  ConfigPtr target;
};

std::set<EventId> rename_resets(const std::set<EventId>& r, EventId from, EventId to) {
  std::set<EventId> out;
  for (EventId x : r) out.insert(x == from ? to : x);
  return out;
}

// Renames the step's own event everywhere it occurs: target, guard, resets.
DenStep reanchor(DenStep s, EventId to) {
  if (to == s.event) return s;
  s.guard = rename_clock(s.guard, to, s.event);
  s.resets = rename_resets(s.resets, s.event, to);
  s.target = substitute_event(s.target, s.event, to);
  s.event = to;
  return s;
}

std::set<EventId> ids_minus(const ConfigPtr& c, EventId drop) {
  std::set<EventId> out = all_ids(c);
  out.erase(drop);
  return out;
}

// Cause clocks live in the guard even when the causes die out of the target,
// so reanchoring must never hand their ids to the new event.
void add_cause_ids(std::set<EventId>& used, const TimedEventSet& causes) {
  for (const auto& e : causes.items()) used.insert(e.id);
}

bool syncs_in(const Action& a, const std::set<std::string>& L) {
  if (a.kind == Action::Delta) return true;
  return a.kind == Action::Visible && L.count(a.name) > 0;
}

std::vector<DenStep> den_steps(const ConfigPtr& c, const Spec& spec) {
  std::vector<DenStep> out;
  switch (c->kind) {
    case TimedConfig::Leaf: {
      const ProcPtr& p = c->proc;
      if (p->kind == Process::Stop) break;
      EventId x = fresh_event(c->events.ids());
      ConstraintPtr guard;
      if (c->events.empty()) {
        guard = make_plain_window(x, p->bound);
      } else {
        std::vector<std::pair<EventId, Action>> causes;
        for (const auto& e : c->events.items()) causes.push_back({e.id, e.action});
        guard = make_window(p->bound, causes, spec);
      }
      Action label = p->kind == Process::Skip ? Action::delta() : p->action;
      ConfigPtr target =
          p->kind == Process::Skip
              ? TimedConfig::leaf(TimedEventSet::single(x, Action::delta(), Rat(0)),
                                  Process::stop())
              : canonicalize(TimedEventSet::single(x, p->action, Rat(0)), p->left, spec);
      out.push_back({c->events, label, x, guard, {x}, std::move(target)});
      break;
    }
    case TimedConfig::Delay: {
      // The pending delay dissolves into the first transition's guard.
      for (DenStep s : den_steps(c->left, spec)) {
        s.guard = shift(s.guard, c->delay);
        out.push_back(std::move(s));
      }
      break;
    }
    case TimedConfig::Choice: {
      for (auto& s : den_steps(c->left, spec)) out.push_back(s);
      for (auto& s : den_steps(c->right, spec)) out.push_back(s);
      break;
    }
    case TimedConfig::Par: {
      std::vector<DenStep> ls = den_steps(c->left, spec);
      std::vector<DenStep> rs = den_steps(c->right, spec);
      for (auto& s : ls) {
        if (syncs_in(s.label, c->sync)) continue;
        std::set<EventId> used = ids_minus(s.target, s.event);
        auto rids = all_ids(c->right);
        used.insert(rids.begin(), rids.end());
        add_cause_ids(used, s.causes);
        DenStep r = reanchor(s, fresh_event(used));
        r.target = TimedConfig::par(r.target, c->sync, c->right);
        out.push_back(std::move(r));
      }
      for (auto& s : rs) {
        if (syncs_in(s.label, c->sync)) continue;
        std::set<EventId> used = ids_minus(s.target, s.event);
        auto lids = all_ids(c->left);
        used.insert(lids.begin(), lids.end());
        add_cause_ids(used, s.causes);
        DenStep r = reanchor(s, fresh_event(used));
        r.target = TimedConfig::par(c->left, c->sync, r.target);
        out.push_back(std::move(r));
      }
      for (auto& sl : ls) {
        if (!syncs_in(sl.label, c->sync)) continue;
        for (auto& sr : rs) {
          if (sr.label != sl.label) continue;
          std::set<EventId> used = ids_minus(sl.target, sl.event);
          auto more = ids_minus(sr.target, sr.event);
          used.insert(more.begin(), more.end());
          add_cause_ids(used, sl.causes);
          add_cause_ids(used, sr.causes);
          EventId z = fresh_event(used);
          DenStep a = reanchor(sl, z);
          DenStep b = reanchor(sr, z);
          out.push_back({merge(a.causes, b.causes), a.label, z,
                         Constraint::conj(a.guard, b.guard),
                         [&] {
                           std::set<EventId> g = a.resets;
                           g.insert(b.resets.begin(), b.resets.end());
                           return g;
                         }(),
                         TimedConfig::par(a.target, c->sync, b.target)});
        }
      }
      break;
    }
    case TimedConfig::Hide: {
      for (DenStep s : den_steps(c->left, spec)) {
        if (s.label.kind == Action::Visible && c->sync.count(s.label.name))
          s.label = Action::internal();
        s.target = TimedConfig::hide(s.target, c->sync);
        out.push_back(std::move(s));
      }
      break;
    }
    case TimedConfig::Interrupt: {
      for (auto& s : den_steps(c->left, spec)) {
        if (s.label.kind == Action::Delta) {
          out.push_back(s);  // termination drops the interrupt
        } else {
          std::set<EventId> used = ids_minus(s.target, s.event);
          auto rids = all_ids(c->right);
          used.insert(rids.begin(), rids.end());
          add_cause_ids(used, s.causes);
          DenStep r = reanchor(s, fresh_event(used));
          r.target = TimedConfig::interrupt(r.target, c->right);
          out.push_back(std::move(r));
        }
      }
      for (auto& s : den_steps(c->right, spec)) out.push_back(s);
      break;
    }
    case TimedConfig::Refine:
    case TimedConfig::PartialSeq:
      throw EngineError(
          "refinement forms have no automaton translation; expand them operationally");
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Compilation

TimedCTS compile(const ProcPtr& p, const Spec& spec, const CompileOptions& opts) {
  TimedCTS m;
  m.durations = spec.durations;
  std::unordered_map<ConfigPtr, size_t, ConfigHash, ConfigEq> index;
  std::deque<size_t> frontier;

  auto intern = [&](const ConfigPtr& raw) -> std::pair<std::optional<size_t>, std::map<EventId, EventId>> {
    auto [canon, renames] = canonical_renumber(raw);
    auto it = index.find(canon);
    if (it != index.end()) return {it->second, std::move(renames)};
    if (m.states.size() >= opts.max_states) {
      m.truncated = true;
      return {std::nullopt, {}};
    }
    size_t id = m.states.size();
    index.emplace(canon, id);
    m.states.push_back({id, canon});
    frontier.push_back(id);
    return {id, std::move(renames)};
  };

  intern(canonicalize(TimedEventSet(), p, spec));
  while (!frontier.empty()) {
    size_t src = frontier.front();
    frontier.pop_front();
    for (auto& step : den_steps(m.states[src].config, spec)) {
      auto [dst, renames] = intern(step.target);
      if (!dst) continue;  // budget hit; drop the edge, model stays a prefix
      m.transitions.push_back({src, *dst, step.label, step.causes, step.event,
                               step.guard, step.resets, std::move(renames)});
    }
  }
  return m;
}

TimedCTS compile(const Spec& spec, const CompileOptions& opts) {
  return compile(spec.main_process(), spec, opts);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::map<EventId, Action> psi_actions(const ConfigPtr& c) {
  std::map<EventId, Action> out;
  TimedEventSet events = psi(c);
  for (const auto& e : events.items()) out.emplace(e.id, e.action);
  return out;
}

Rat max_lower_const(const ConstraintPtr& phi, EventId clock) {
  if (!phi) return Rat(0);
  switch (phi->kind) {
    case Constraint::And:
    case Constraint::Or:
      return std::max(max_lower_const(phi->left, clock), max_lower_const(phi->right, clock));
    case Constraint::Lower:
      return phi->clock == clock ? phi->bound : Rat(0);
    case Constraint::Upper:
      return Rat(0);
  }
  return Rat(0);
}

}  // namespace

std::vector<std::string> validate_cts(const TimedCTS& m, const Spec& spec) {
  std::vector<std::string> bad;
  auto flag = [&](const std::string& s) { bad.push_back(s); };

  if (m.states.empty()) {
    flag("model has no states");
    return bad;
  }
  if (m.initial >= m.states.size()) {
    flag("initial state out of range");
    return bad;
  }
  for (size_t i = 0; i < m.states.size(); ++i)
    if (m.states[i].id != i) flag("state " + std::to_string(i) + " carries id " +
                                  std::to_string(m.states[i].id));
  if (!psi(m.states[m.initial].config).empty())
    flag("initial state carries live events");

  std::vector<bool> reach(m.states.size(), false);
  std::deque<size_t> q{m.initial};
  reach[m.initial] = true;
  while (!q.empty()) {
    size_t s = q.front();
    q.pop_front();
    for (size_t t : m.outgoing(s))
      if (m.transitions[t].target < m.states.size() && !reach[m.transitions[t].target]) {
        reach[m.transitions[t].target] = true;
        q.push_back(m.transitions[t].target);
      }
  }
  for (size_t i = 0; i < m.states.size(); ++i)
    if (!reach[i]) flag("state " + std::to_string(i) + " unreachable from the initial state");

  for (size_t i = 0; i < m.transitions.size(); ++i) {
    const CtsTransition& t = m.transitions[i];
    std::string at = "transition " + std::to_string(i) + ": ";
    if (t.source >= m.states.size() || t.target >= m.states.size()) {
      flag(at + "endpoint out of range");
      continue;
    }
    auto src = psi_actions(m.states[t.source].config);
    auto dst = psi_actions(m.states[t.target].config);

    // The new event's id may coincide with a source event that dies in this
    // step (pass-through rules do not re-freshen), so no disjointness demand
    // between eta and the source; the renaming checks below pin what matters.
    for (const auto& e : t.causes.items()) {
      auto it = src.find(e.id);
      if (it == src.end())
        flag(at + "cause e" + std::to_string(e.id) + " not live in the source");
      else if (it->second != e.action)
        flag(at + "cause e" + std::to_string(e.id) + " action mismatch with the source");
    }
    // Renaming must injectively re-key source survivors plus the new event
    // onto exactly the target's events.
    std::set<EventId> image;
    bool renames_ok = true;
    for (auto& [from, to] : t.renames) {
      if (!image.insert(to).second) {
        flag(at + "renaming not injective");
        renames_ok = false;
      }
      if (from != t.event && !src.count(from)) {
        flag(at + "renaming maps e" + std::to_string(from) + " absent from the source");
        renames_ok = false;
      }
    }
    std::set<EventId> dst_ids;
    for (auto& [id, a] : dst) dst_ids.insert(id);
    if (image != dst_ids) {
      flag(at + "renaming image differs from the target's events");
      renames_ok = false;
    }
    auto eta_it = t.renames.find(t.event);
    if (eta_it == t.renames.end()) {
      flag(at + "new event e" + std::to_string(t.event) + " does not reach the target");
    } else if (renames_ok) {
      const Action& eta_act = dst.at(eta_it->second);
      if (t.label.kind == Action::Visible && !(eta_act == t.label))
        flag(at + "target action of the new event differs from the label");
      if (t.label.kind == Action::Delta && eta_act.kind != Action::Delta)
        flag(at + "termination label on a non-termination event");
      for (auto& [from, to] : t.renames) {
        if (from == t.event) continue;
        auto s_it = src.find(from);
        if (s_it != src.end() && !(s_it->second == dst.at(to)))
          flag(at + "survivor e" + std::to_string(from) + " changes action across the step");
      }
    }

    if (!t.guard) {
      flag(at + "missing guard");
      continue;
    }
    if (!is_normal_form(t.guard)) flag(at + "guard not in window normal form");
    std::set<EventId> allowed = t.causes.ids();
    allowed.insert(t.event);
    for (EventId x : clocks_of(t.guard))
      if (!allowed.count(x))
        flag(at + "guard reads clock c_e" + std::to_string(x) +
             " outside the causes and the new event");
    for (const auto& e : t.causes.items()) {
      Rat low = max_lower_const(t.guard, e.id);
      if (low < spec.duration_of(e.action))
        flag(at + "cause e" + std::to_string(e.id) +
             " window opens before the action can finish");
    }
    if (t.resets != std::set<EventId>{t.event})
      flag(at + "resets differ from the new event's clock");
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Runs

Rat clock_value(const RunConfig& rc, EventId x) {
  auto it = rc.resets.find(x);
  return it == rc.resets.end() ? rc.global : rc.global - it->second;
}

RunConfig initial_run(const TimedCTS& m) { return {m.initial, Rat(0), {}}; }

namespace {

ClockValuation valuation_for(const RunConfig& rc, const ConstraintPtr& guard,
                             const TimedEventSet& causes, EventId eta) {
  ClockValuation nu;
  for (EventId x : clocks_of(guard)) nu[x] = clock_value(rc, x);
  for (const auto& e : causes.items()) nu[e.id] = clock_value(rc, e.id);
  nu[eta] = clock_value(rc, eta);
  return nu;
}

}  // namespace

std::variant<RunConfig, StepRefusal> step_action(const TimedCTS& m, const Spec& spec,
                                                 const RunConfig& rc, size_t t) {
  if (t >= m.transitions.size()) throw EngineError("transition index out of range");
  const CtsTransition& tr = m.transitions[t];
  if (tr.source != rc.state)
    throw EngineError("transition does not leave the current state");

  ClockValuation nu = valuation_for(rc, tr.guard, tr.causes, tr.event);
  if (!evaluate(tr.guard, nu))
    return StepRefusal{StepRefusal::GuardUnsatisfied,
                       "guard " + to_string(tr.guard) + " unsatisfied at elapsed " +
                           to_string(rc.global)};
  // Weak guard bounds admit the boundary instant itself, but an action only
  // finishes strictly after its duration; delayed windows inherit the same
  // strictness through their shifted lower bounds.
  for (const auto& e : tr.causes.items()) {
    Rat threshold = std::max(spec.duration_of(e.action), max_lower_const(tr.guard, e.id));
    if (!(clock_value(rc, e.id) > threshold))
      return StepRefusal{StepRefusal::CauseUnterminated,
                         "cause e" + std::to_string(e.id) + ":" + e.action.display() +
                             " needs strictly more than " + to_string(threshold) +
                             " on its clock, has " + to_string(clock_value(rc, e.id))};
  }

  std::map<EventId, Rat> stamps = rc.resets;
  for (EventId x : tr.resets) stamps[x] = rc.global;
  std::map<EventId, Rat> rekeyed;
  for (auto& [from, to] : tr.renames) {
    auto it = stamps.find(from);
    if (it != stamps.end()) rekeyed[to] = it->second;
  }
  return RunConfig{tr.target, rc.global, std::move(rekeyed)};
}

std::optional<RunConfig> step_delay(const TimedCTS& m, const Spec& spec, const RunConfig& rc,
                                    const Rat& d) {
  (void)spec;
  if (d <= Rat(0)) throw EngineError("delay must be positive");
  for (size_t t : m.outgoing(rc.state)) {
    const CtsTransition& tr = m.transitions[t];
    ClockValuation nu = valuation_for(rc, tr.guard, tr.causes, tr.event);
    IntervalSet win = enabling_window(tr.guard, nu);
    if (win.empty()) continue;  // already lost; nothing to preserve
    IntervalSet rest = interval_intersection(
        win, {{d, false, Rat(0), false, true}});
    if (rest.empty()) return std::nullopt;  // the wait would lose this option
  }
  RunConfig out = rc;
  out.global += d;
  return out;
}

TimeBound max_run_delay(const TimedCTS& m, const Spec& spec, const RunConfig& rc) {
  (void)spec;
  TimeBound best = TimeBound::unbounded();
  for (size_t t : m.outgoing(rc.state)) {
    const CtsTransition& tr = m.transitions[t];
    ClockValuation nu = valuation_for(rc, tr.guard, tr.causes, tr.event);
    IntervalSet win = enabling_window(tr.guard, nu);
    if (win.empty()) continue;
    const Interval& last = win.back();
    if (last.hi_unbounded) continue;
    TimeBound cap{TimeBound::Finite, last.hi, !last.hi_strict};
    if (best.kind == TimeBound::Unbounded || cap.value < best.value ||
        (cap.value == best.value && !cap.attained))
      best = cap;
  }
  return best;
}

std::vector<size_t> fireable_transitions(const TimedCTS& m, const Spec& spec,
                                         const RunConfig& rc) {
  std::vector<size_t> out;
  for (size_t t : m.outgoing(rc.state))
    if (std::holds_alternative<RunConfig>(step_action(m, spec, rc, t))) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string action_word(const Action& a) {
  switch (a.kind) {
    case Action::Visible: return a.name;
    case Action::Delta: return "delta";
    case Action::Internal: return "i";
  }
  return "?";
}

Action word_action(const std::string& w, int line) {
  if (w == "delta") return Action::delta();
  if (w == "i") return Action::internal();
  if (w.empty() || w == "?") throw ParseError("bad action word", {line, 1});
  return Action::visible(w);
}

std::string event_set_word(const ConfigPtr& state_config) {
  std::string out = "{";
  bool first = true;
  TimedEventSet events = psi(state_config);
  for (const auto& e : events.items()) {
    if (!first) out += ", ";
    first = false;
    out += "e" + std::to_string(e.id) + ":" + action_word(e.action);
  }
  return out + "}";
}

std::string causes_word(const TimedEventSet& E) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : E.items()) {
    if (!first) out += ", ";
    first = false;
    out += "e" + std::to_string(e.id) + ":" + action_word(e.action);
  }
  return out + "}";
}

EventId parse_event_id(const std::string& w, int line) {
  if (w.size() < 2 || w[0] != 'e')
    throw ParseError("expected event id 'eN', got '" + w + "'", {line, 1});
  try {
    return static_cast<EventId>(std::stoul(w.substr(1)));
  } catch (const std::exception&) {
    throw ParseError("bad event id '" + w + "'", {line, 1});
  }
}

// "{e0:a, e1:b}" possibly split across whitespace-separated words.
std::vector<std::pair<EventId, Action>> parse_event_list(std::istringstream& in, int line) {
  std::string blob, w;
  in >> w;
  if (w.empty() || w[0] != '{') throw ParseError("expected '{'", {line, 1});
  blob = w;
  while (blob.find('}') == std::string::npos && in >> w) blob += w;
  if (blob.find('}') == std::string::npos) throw ParseError("unterminated '{'", {line, 1});
  blob = blob.substr(1, blob.find('}') - 1);
  std::vector<std::pair<EventId, Action>> out;
  std::istringstream items(blob);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) continue;
    size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'eN:action' in event list", {line, 1});
    out.push_back({parse_event_id(item.substr(0, colon), line),
                   word_action(item.substr(colon + 1), line)});
  }
  return out;
}

}  // namespace

std::string write_model(const TimedCTS& m) {
  std::string out = "durcsp-model v1\n";
  out += "truncated " + std::string(m.truncated ? "1" : "0") + "\n";
  out += "initial " + std::to_string(m.initial) + "\n";
  for (const auto& [name, d] : m.durations)
    out += "duration " + name + " " + to_string(d) + "\n";
  for (const auto& s : m.states)
    out += "state " + std::to_string(s.id) + " " + event_set_word(s.config) + "\n";
  for (const auto& t : m.transitions) {
    out += "trans " + std::to_string(t.source) + " " + std::to_string(t.target) +
           " label " + action_word(t.label) + " event e" + std::to_string(t.event) +
           " causes " + causes_word(t.causes) + " guard " + write_constraint(t.guard) +
           " resets {";
    bool first = true;
    for (EventId x : t.resets) {
      if (!first) out += ", ";
      first = false;
      out += "e" + std::to_string(x);
    }
    out += "} renames {";
    first = true;
    for (auto& [from, to] : t.renames) {
      if (!first) out += ", ";
      first = false;
      out += "e" + std::to_string(from) + ":e" + std::to_string(to);
    }
    out += "}\n";
  }
  return out;
}

TimedCTS parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || line != "durcsp-model v1")
    throw ParseError("expected header 'durcsp-model v1'", {1, 1});
  TimedCTS m;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "truncated") {
      int v = 0;
      ls >> v;
      m.truncated = v != 0;
    } else if (word == "initial") {
      ls >> m.initial;
    } else if (word == "duration") {
      std::string name, value;
      ls >> name >> value;
      auto d = parse_rat(value);
      if (name.empty() || !d)
        throw ParseError("expected 'duration <action> <rational>'", {lineno, 1});
      m.durations[name] = *d;
    } else if (word == "state") {
      size_t id = 0;
      ls >> id;
      if (id != m.states.size())
        throw ParseError("states must appear in order", {lineno, 1});
      std::vector<TimedEvent> events;
      for (auto& [eid, a] : parse_event_list(ls, lineno)) events.push_back({eid, a, Rat(0)});
      // A leaf over stop carries exactly the declared events; the file format
      // does not keep process structure.
      m.states.push_back({id, TimedConfig::leaf(TimedEventSet(std::move(events)),
                                                Process::stop())});
    } else if (word == "trans") {
      CtsTransition t;
      ls >> t.source >> t.target;
      std::string key;
      while (ls >> key) {
        if (key == "label") {
          std::string w;
          ls >> w;
          t.label = word_action(w, lineno);
        } else if (key == "event") {
          std::string w;
          ls >> w;
          t.event = parse_event_id(w, lineno);
        } else if (key == "causes") {
          std::vector<TimedEvent> events;
          for (auto& [eid, a] : parse_event_list(ls, lineno))
            events.push_back({eid, a, Rat(0)});
          t.causes = TimedEventSet(std::move(events));
        } else if (key == "guard") {
          std::string w;
          ls >> w;
          t.guard = parse_constraint(w);
        } else if (key == "resets") {
          std::string blob, w;
          ls >> w;
          if (w.empty() || w[0] != '{') throw ParseError("expected '{'", {lineno, 1});
          blob = w;
          while (blob.find('}') == std::string::npos && ls >> w) blob += w;
          if (blob.find('}') == std::string::npos)
            throw ParseError("unterminated '{'", {lineno, 1});
          blob = blob.substr(1, blob.find('}') - 1);
          std::istringstream items(blob);
          std::string item;
          while (std::getline(items, item, ','))
            if (!item.empty()) t.resets.insert(parse_event_id(item, lineno));
        } else if (key == "renames") {
          std::string blob, w;
          ls >> w;
          if (w.empty() || w[0] != '{') throw ParseError("expected '{'", {lineno, 1});
          blob = w;
          while (blob.find('}') == std::string::npos && ls >> w) blob += w;
          if (blob.find('}') == std::string::npos)
            throw ParseError("unterminated '{'", {lineno, 1});
          blob = blob.substr(1, blob.find('}') - 1);
          std::istringstream items(blob);
          std::string item;
          while (std::getline(items, item, ',')) {
            if (item.empty()) continue;
            size_t colon = item.find(':');
            if (colon == std::string::npos)
              throw ParseError("expected 'eN:eM' in renames", {lineno, 1});
            t.renames.emplace(parse_event_id(item.substr(0, colon), lineno),
                              parse_event_id(item.substr(colon + 1), lineno));
          }
        } else {
          throw ParseError("unknown transition field '" + key + "'", {lineno, 1});
        }
      }
      m.transitions.push_back(std::move(t));
    } else {
      throw ParseError("unknown directive '" + word + "'", {lineno, 1});
    }
  }
  if (m.states.empty()) throw ParseError("model has no states", {lineno, 1});
  return m;
}

std::string to_dot(const TimedCTS& m) {
  std::string out = "// durcsp-dot v1\n";
  out += "digraph tcts {\n  rankdir=LR;\n  node [shape=circle, fontsize=11];\n";
  out += "  init [shape=point];\n  init -> s" + std::to_string(m.initial) + ";\n";
  for (const auto& s : m.states)
    out += "  s" + std::to_string(s.id) + " [label=\"" + event_set_word(s.config) + "\"];\n";
  for (const auto& t : m.transitions) {
    std::string label = "_" + causes_word(t.causes) + " " + t.label.display() + "_e" +
                        std::to_string(t.event) + "\\n[" + to_string(t.guard) + "]\\n{";
    bool first = true;
    for (EventId x : t.resets) {
      if (!first) label += ", ";
      first = false;
      label += "c_e" + std::to_string(x);
    }
    label += "}";
    out += "  s" + std::to_string(t.source) + " -> s" + std::to_string(t.target) +
           " [label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace durcsp
