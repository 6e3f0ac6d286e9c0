#include "durcsp/config.hpp"

#include <algorithm>
#include <functional>

namespace durcsp {

// ---------------------------------------------------------------------------
// TimedEventSet

TimedEventSet::TimedEventSet(std::vector<TimedEvent> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end(),
            [](const TimedEvent& a, const TimedEvent& b) { return a.id < b.id; });
  for (size_t i = 1; i < items_.size(); ++i)
    if (items_[i - 1].id == items_[i].id)
      throw EngineError("duplicate event id e" + std::to_string(items_[i].id) + " in event set");
}

TimedEventSet TimedEventSet::single(EventId id, Action a, Rat stamp) {
  TimedEventSet s;
  s.items_.push_back({id, std::move(a), std::move(stamp)});
  return s;
}

bool TimedEventSet::contains(EventId id) const { return find(id) != nullptr; }

const TimedEvent* TimedEventSet::find(EventId id) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), id,
                             [](const TimedEvent& e, EventId v) { return e.id < v; });
  return (it != items_.end() && it->id == id) ? &*it : nullptr;
}

std::set<EventId> TimedEventSet::ids() const {
  std::set<EventId> out;
  for (const auto& e : items_) out.insert(e.id);
  return out;
}

void TimedEventSet::insert(const TimedEvent& e) {
  auto it = std::lower_bound(items_.begin(), items_.end(), e.id,
                             [](const TimedEvent& x, EventId v) { return x.id < v; });
  if (it != items_.end() && it->id == e.id) {
    if (it->action != e.action)
      throw EngineError("event e" + std::to_string(e.id) + " merged with conflicting actions");
    // Shared inherited causes can diverge across freeze boundaries (a delay
    // or anchored-wait region holds its copy still while a sibling advances);
    // the most-advanced copy is the live clock.
    if (e.stamp > it->stamp) it->stamp = e.stamp;
    return;
  }
  items_.insert(it, e);
}

void TimedEventSet::erase(EventId id) {
  auto it = std::lower_bound(items_.begin(), items_.end(), id,
                             [](const TimedEvent& e, EventId v) { return e.id < v; });
  if (it != items_.end() && it->id == id) items_.erase(it);
}

TimedEventSet TimedEventSet::advanced(const Rat& d) const {
  TimedEventSet out = *this;
  for (auto& e : out.items_) e.stamp += d;
  return out;
}

TimedEventSet TimedEventSet::renamed(EventId from, EventId to) const {
  if (!contains(from)) return *this;
  std::vector<TimedEvent> items = items_;
  for (auto& e : items)
    if (e.id == from) e.id = to;
  return TimedEventSet(std::move(items));
}

TimedEventSet merge(const TimedEventSet& a, const TimedEventSet& b) {
  TimedEventSet out = a;
  for (const auto& e : b.items()) out.insert(e);
  return out;
}

std::string to_string(const TimedEvent& e) {
  return "e" + std::to_string(e.id) + ":" + e.action.display() + ":" + to_decimal_string(e.stamp);
}

std::string to_string(const TimedEventSet& E) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : E.items()) {
    if (!first) out += ", ";
    out += to_string(e);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Construction

namespace {
ConfigPtr make(TimedConfig&& c) { return std::make_shared<const TimedConfig>(std::move(c)); }
}  // namespace

ConfigPtr TimedConfig::leaf(TimedEventSet E, ProcPtr residual) {
  switch (residual->kind) {
    case Process::Stop:
    case Process::Skip:
    case Process::Prefix: break;
    default: throw EngineError("leaf residual must start with stop, skip or a prefix");
  }
  return make({.kind = Leaf, .events = std::move(E), .proc = std::move(residual)});
}
ConfigPtr TimedConfig::delay_node(Rat d, ConfigPtr c) {
  if (d < Rat(0)) throw EngineError("negative delay remainder");
  if (d == Rat(0)) return c;
  return make({.kind = Delay, .delay = std::move(d), .left = std::move(c)});
}
ConfigPtr TimedConfig::choice(ConfigPtr l, ConfigPtr r) {
  return make({.kind = Choice, .left = std::move(l), .right = std::move(r)});
}
ConfigPtr TimedConfig::par(ConfigPtr l, std::set<std::string> sync, ConfigPtr r) {
  return make({.kind = Par, .left = std::move(l), .right = std::move(r), .sync = std::move(sync)});
}
ConfigPtr TimedConfig::hide(ConfigPtr c, std::set<std::string> hidden) {
  return make({.kind = Hide, .left = std::move(c), .sync = std::move(hidden)});
}
ConfigPtr TimedConfig::interrupt(ConfigPtr l, ConfigPtr r) {
  return make({.kind = Interrupt, .left = std::move(l), .right = std::move(r)});
}
ConfigPtr TimedConfig::refine(Action a, ProcPtr body, ConfigPtr scope) {
  return make({.kind = Refine, .proc = std::move(body), .left = std::move(scope),
               .action = std::move(a)});
}
ConfigPtr TimedConfig::partial_seq(ConfigPtr l, EventId anchor, ConfigPtr r) {
  return make({.kind = PartialSeq, .left = std::move(l), .right = std::move(r), .anchor = anchor});
}

bool equal(const ConfigPtr& a, const ConfigPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->events != b->events || a->delay != b->delay ||
      a->sync != b->sync || a->action != b->action || a->anchor != b->anchor)
    return false;
  if (!equal(a->proc, b->proc)) return false;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

size_t hash_value(const ConfigPtr& c) {
  if (!c) return 0x517c;
  size_t h = std::hash<int>{}(c->kind);
  for (const auto& e : c->events.items()) {
    hash_combine(h, e.id);
    hash_combine(h, std::hash<std::string>{}(e.action.display()));
    hash_combine(h, RatHash{}(e.stamp));
  }
  hash_combine(h, RatHash{}(c->delay));
  for (const auto& s : c->sync) hash_combine(h, std::hash<std::string>{}(s));
  hash_combine(h, std::hash<std::string>{}(c->action.display()));
  hash_combine(h, c->anchor);
  hash_combine(h, hash_value(c->proc));
  hash_combine(h, hash_value(c->left));
  hash_combine(h, hash_value(c->right));
  return h;
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

// Unguarded recursion through |||/+ makes the unfolding both wide and deep;
// the depth cap fires before the recursion can exhaust the call stack.
constexpr size_t kCanonDepthBudget = 4000;

ConfigPtr canon(const TimedEventSet& E, const ProcPtr& p, const Spec& spec, size_t& budget,
                size_t depth) {
  if (budget-- == 0 || depth > kCanonDepthBudget)
    throw EngineError("canonicalization exceeded node budget (unguarded recursion?)");
  ++depth;
  switch (p->kind) {
    case Process::Stop:
    case Process::Skip:
    case Process::Prefix:
      return TimedConfig::leaf(E, p);
    case Process::Choice:
      return TimedConfig::choice(canon(E, p->left, spec, budget, depth),
                                 canon(E, p->right, spec, budget, depth));
    case Process::Par:
      return TimedConfig::par(canon(E, p->left, spec, budget, depth), p->sync,
                              canon(E, p->right, spec, budget, depth));
    case Process::Hide:
      return TimedConfig::hide(canon(E, p->left, spec, budget, depth), p->sync);
    case Process::Interrupt:
      return TimedConfig::interrupt(canon(E, p->left, spec, budget, depth),
                                    canon(E, p->right, spec, budget, depth));
    case Process::Delay:
      if (p->bound == Rat(0)) return canon(E, p->left, spec, budget, depth);
      return TimedConfig::delay_node(p->bound, canon(E, p->left, spec, budget, depth));
    case Process::Refine:
      return TimedConfig::refine(p->action, p->left, canon(E, p->right, spec, budget, depth));
    case Process::PartialSeq:
      return TimedConfig::partial_seq(canon(E, p->left, spec, budget, depth), p->anchor,
                                      canon(E, p->right, spec, budget, depth));
    case Process::Ref: {
      auto it = spec.processes.find(p->name);
      if (it == spec.processes.end())
        throw EngineError("reference to undefined process '" + p->name + "'");
      return canon(E, it->second, spec, budget, depth);
    }
  }
  throw EngineError("unreachable process kind");
}

}  // namespace

ConfigPtr canonicalize(const TimedEventSet& E, const ProcPtr& p, const Spec& spec) {
  size_t budget = kCanonNodeBudget;
  return canon(E, p, spec, budget, 0);
}

ConfigPtr initial_config(const Spec& spec) {
  return canonicalize(TimedEventSet{}, spec.main_process(), spec);
}

// ---------------------------------------------------------------------------
// Observation

TimedEventSet psi(const ConfigPtr& c) {
  switch (c->kind) {
    case TimedConfig::Leaf:
      return c->events;
    case TimedConfig::Delay:
    case TimedConfig::Hide:
    case TimedConfig::Refine:
      return psi(c->left);
    case TimedConfig::Choice:
    case TimedConfig::Par:
    case TimedConfig::Interrupt:
      return merge(psi(c->left), psi(c->right));
    case TimedConfig::PartialSeq: {
      TimedEventSet r = psi(c->right);
      r.erase(c->anchor);
      return merge(psi(c->left), r);
    }
  }
  throw EngineError("unreachable configuration kind");
}

std::set<EventId> psi_ids(const ConfigPtr& c) { return psi(c).ids(); }

std::set<EventId> all_ids(const ConfigPtr& c) {
  std::set<EventId> out;
  std::function<void(const ConfigPtr&)> walk = [&](const ConfigPtr& n) {
    if (!n) return;
    for (const auto& e : n->events.items()) out.insert(e.id);
    if (n->kind == TimedConfig::PartialSeq) out.insert(n->anchor);
    walk(n->left);
    walk(n->right);
  };
  walk(c);
  return out;
}

EventId fresh_event(const std::set<EventId>& excluded) {
  EventId id = 0;
  for (EventId used : excluded) {
    if (used > id) break;
    if (used == id) ++id;
  }
  return id;
}

ConfigPtr substitute_event(const ConfigPtr& c, EventId from, EventId to) {
  if (from == to) return c;
  TimedConfig copy = *c;
  copy.events = c->events.renamed(from, to);
  if (copy.kind == TimedConfig::PartialSeq && copy.anchor == from) copy.anchor = to;
  if (copy.left) copy.left = substitute_event(copy.left, from, to);
  if (copy.right) copy.right = substitute_event(copy.right, from, to);
  return std::make_shared<const TimedConfig>(std::move(copy));
}

ConfigPtr advance(const ConfigPtr& c, const Rat& d) {
  if (d == Rat(0)) return c;
  TimedConfig copy = *c;
  copy.events = c->events.advanced(d);
  if (copy.left) copy.left = durcsp::advance(copy.left, d);
  if (copy.right) copy.right = durcsp::advance(copy.right, d);
  return std::make_shared<const TimedConfig>(std::move(copy));
}

bool is_finished(const TimedEventSet& E, const Spec& spec) {
  for (const auto& e : E.items())
    if (e.stamp <= spec.duration_of(e.action)) return false;
  return true;
}

Rat time_to_finish(const TimedEventSet& E, const Spec& spec) {
  Rat worst(0);
  for (const auto& e : E.items()) {
    Rat left = spec.duration_of(e.action) - e.stamp;
    if (left > worst) worst = left;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_set(const std::set<std::string>& s, std::string& out) {
  bool first = true;
  for (const auto& a : s) {
    if (!first) out += ",";
    out += a;
    first = false;
  }
}

// Same binding levels as process rendering: choice < interrupt < par < hide.
int level_of(const ConfigPtr& c) {
  switch (c->kind) {
    case TimedConfig::Choice: return 0;
    case TimedConfig::Interrupt: return 1;
    case TimedConfig::Par: return 2;
    case TimedConfig::Hide: return 3;
    case TimedConfig::Refine:
    case TimedConfig::PartialSeq: return 0;
    default: return 4;
  }
}

void render_into(const ConfigPtr& c, int min_level, std::string& out) {
  bool parens = level_of(c) < min_level;
  if (parens) out += "(";
  switch (c->kind) {
    case TimedConfig::Leaf: {
      out += "_";
      out += to_string(c->events);
      out += "[" + render(c->proc) + "]";
      break;
    }
    case TimedConfig::Delay:
      out += "delay{" + to_string(c->delay) + "} ";
      render_into(c->left, 4, out);
      break;
    case TimedConfig::Choice:
      render_into(c->left, 0, out);
      out += " + ";
      render_into(c->right, 1, out);
      break;
    case TimedConfig::Interrupt:
      render_into(c->left, 1, out);
      out += " [> ";
      render_into(c->right, 2, out);
      break;
    case TimedConfig::Par:
      render_into(c->left, 2, out);
      out += " |[";
      if (c->sync.empty())
        out += " ";
      else
        render_set(c->sync, out);
      out += "]| ";
      render_into(c->right, 3, out);
      break;
    case TimedConfig::Hide:
      render_into(c->left, 3, out);
      out += " \\{";
      render_set(c->sync, out);
      out += "}";
      break;
    case TimedConfig::Refine:
      out += "rho " + c->action.display() + " := " + render(c->proc) + " in ";
      render_into(c->left, 4, out);
      break;
    case TimedConfig::PartialSeq:
      render_into(c->left, 4, out);
      out += " >>^e" + std::to_string(c->anchor) + " ";
      render_into(c->right, 4, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string render(const ConfigPtr& c) {
  std::string out;
  render_into(c, 0, out);
  return out;
}

namespace {

void renumber_walk(const ConfigPtr& c, std::map<EventId, EventId>& map) {
  if (!c) return;
  for (const auto& e : c->events.items())
    map.emplace(e.id, static_cast<EventId>(map.size()));
  if (c->kind == TimedConfig::PartialSeq)
    map.emplace(c->anchor, static_cast<EventId>(map.size()));
  renumber_walk(c->left, map);
  renumber_walk(c->right, map);
}

ConfigPtr apply_renumber(const ConfigPtr& c, const std::map<EventId, EventId>& map) {
  if (!c) return c;
  TimedConfig copy = *c;
  std::vector<TimedEvent> items = c->events.items();
  for (auto& e : items) e.id = map.at(e.id);
  copy.events = TimedEventSet(std::move(items));
  if (copy.kind == TimedConfig::PartialSeq) copy.anchor = map.at(copy.anchor);
  copy.left = apply_renumber(copy.left, map);
  copy.right = apply_renumber(copy.right, map);
  return std::make_shared<const TimedConfig>(std::move(copy));
}

}  // namespace

std::pair<ConfigPtr, std::map<EventId, EventId>> canonical_renumber(const ConfigPtr& c) {
  std::map<EventId, EventId> map;
  renumber_walk(c, map);
  return {apply_renumber(c, map), map};
}

}  // namespace durcsp
