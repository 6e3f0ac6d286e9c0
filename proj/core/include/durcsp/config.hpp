#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "durcsp/rational.hpp"
#include "durcsp/syntax.hpp"

namespace durcsp {

using EventId = uint32_t;

// An occurred action occurrence: identity, what fired, and how long ago.
struct TimedEvent {
  EventId id = 0;
  Action action;
  Rat stamp;  // time elapsed since the occurrence
  auto operator<=>(const TimedEvent&) const = default;
};

std::string to_string(const TimedEvent& e);  // "e0:a:3/2" (decimal when exact)

// Set of timed events, kept sorted by id; ids are unique within a set.
class TimedEventSet {
 public:
  TimedEventSet() = default;
  explicit TimedEventSet(std::vector<TimedEvent> items);

  static TimedEventSet single(EventId id, Action a, Rat stamp);

  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }
  const std::vector<TimedEvent>& items() const { return items_; }

  bool contains(EventId id) const;
  const TimedEvent* find(EventId id) const;
  std::set<EventId> ids() const;

  // Insert keeps sortedness; inserting an existing id with a different
  // action/stamp is an error (same id must mean the same occurrence).
  void insert(const TimedEvent& e);
  void erase(EventId id);

  TimedEventSet advanced(const Rat& d) const;
  TimedEventSet renamed(EventId from, EventId to) const;

  auto operator<=>(const TimedEventSet&) const = default;

 private:
  std::vector<TimedEvent> items_;
};

// Union with stamp-consistency check on shared ids.
TimedEventSet merge(const TimedEventSet& a, const TimedEventSet& b);
std::string to_string(const TimedEventSet& E);  // "{e0:a:0, e1:b:2}"

struct TimedConfig;
using ConfigPtr = std::shared_ptr<const TimedConfig>;

// Canonical timed configuration. Leaves carry the cause set and a residual
// process whose top is stop, skip or a prefix; all other operators are
// configuration-level nodes.
struct TimedConfig {
  enum Kind { Leaf, Delay, Choice, Par, Hide, Interrupt, Refine, PartialSeq };

  Kind kind = Leaf;
  TimedEventSet events;        // Leaf
  ProcPtr proc;                // Leaf residual; Refine body
  Rat delay;                   // Delay remainder (> 0 after normalization)
  ConfigPtr left, right;       // operands (Delay/Hide/Refine use left only)
  std::set<std::string> sync;  // Par sync set / Hide hidden set
  Action action;               // Refine target
  EventId anchor = 0;          // PartialSeq anchor event

  static ConfigPtr leaf(TimedEventSet E, ProcPtr residual);
  static ConfigPtr delay_node(Rat d, ConfigPtr c);  // d == 0 collapses to c
  static ConfigPtr choice(ConfigPtr l, ConfigPtr r);
  static ConfigPtr par(ConfigPtr l, std::set<std::string> sync, ConfigPtr r);
  static ConfigPtr hide(ConfigPtr c, std::set<std::string> hidden);
  static ConfigPtr interrupt(ConfigPtr l, ConfigPtr r);
  static ConfigPtr refine(Action a, ProcPtr body, ConfigPtr scope);
  static ConfigPtr partial_seq(ConfigPtr l, EventId anchor, ConfigPtr r);
};

bool equal(const ConfigPtr& a, const ConfigPtr& b);
size_t hash_value(const ConfigPtr& c);

struct ConfigHash {
  size_t operator()(const ConfigPtr& c) const { return hash_value(c); }
};
struct ConfigEq {
  bool operator()(const ConfigPtr& a, const ConfigPtr& b) const { return equal(a, b); }
};

// Node budget for canonicalization; exceeding it raises EngineError (the
// validator flags unguarded recursion, but programmatic terms can bypass it).
inline constexpr size_t kCanonNodeBudget = 200000;

// Rewrite _E[P] to canonical form: cause sets distribute over every operator,
// references unfold, zero delays collapse. Leaves end at stop/skip/prefix.
ConfigPtr canonicalize(const TimedEventSet& E, const ProcPtr& p, const Spec& spec);

ConfigPtr initial_config(const Spec& spec);

// Observable event set: Refine exposes its scope, PartialSeq hides the
// anchor on the right, everything else is the union of its parts.
TimedEventSet psi(const ConfigPtr& c);
std::set<EventId> psi_ids(const ConfigPtr& c);

// Every id mentioned anywhere (event sets and anchors), used for freshness.
std::set<EventId> all_ids(const ConfigPtr& c);

EventId fresh_event(const std::set<EventId>& excluded);  // least unused id

// Rename one event id everywhere it occurs (sets and anchors); stamps stay.
ConfigPtr substitute_event(const ConfigPtr& c, EventId from, EventId to);

// Structural +d on every stamp, including frozen regions. Rule-aware time
// passage lives in apply_delay (semantics); this is its raw building block.
ConfigPtr advance(const ConfigPtr& c, const Rat& d);

// Strict completion: every event's stamp strictly exceeds its duration.
bool is_finished(const TimedEventSet& E, const Spec& spec);

// Least tau with "finished after every delay > tau" (0 when already finished).
Rat time_to_finish(const TimedEventSet& E, const Spec& spec);

std::string render(const ConfigPtr& c);  // debug form, e.g. _{e0:a:1.5}[b{2}; stop]

// Renumber events by first appearance in a deterministic pre-order walk
// (node events in id order, then left, then right). Configurations equal
// after renumbering describe the same state up to event identity.
std::pair<ConfigPtr, std::map<EventId, EventId>> canonical_renumber(const ConfigPtr& c);

}  // namespace durcsp
