#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "durcsp/config.hpp"
#include "durcsp/constraint.hpp"
#include "durcsp/rational.hpp"
#include "durcsp/syntax.hpp"

namespace durcsp {

// State payload: a stampless configuration (every stamp zero) in canonical
// event numbering. psi/causes/eta are read off the configuration.
struct CtsState {
  size_t id = 0;
  ConfigPtr config;
};

struct CtsTransition {
  size_t source = 0;
  size_t target = 0;
  Action label;          // post-hiding
  TimedEventSet causes;  // zeta, stamps zero, actions kept for thresholds
  EventId event = 0;     // eta, fresh w.r.t. the source state
  ConstraintPtr guard;
  std::set<EventId> resets;  // clocks reset after firing ({eta} for compiled models)
  // Event renaming into the target state's canonical numbering. Ids of the
  // source absent from the domain are dropped; their clocks die with them.
  std::map<EventId, EventId> renames;
};

struct TimedCTS {
  std::vector<CtsState> states;
  std::vector<CtsTransition> transitions;
  size_t initial = 0;
  bool truncated = false;  // state budget hit; model is a prefix
  // Durations of the actions appearing on labels and causes; makes a model
  // file self-contained for the run semantics (strict termination thresholds).
  std::map<std::string, Duration> durations;

  std::vector<size_t> outgoing(size_t state) const;
};

struct CompileOptions {
  size_t max_states = 20000;
};

// Symbolic translation to a timed-CTS. States are deduplicated by canonical
// renumbering, so commuting diamonds close. Rejects refinement forms: they
// are executed operationally, not compiled.
TimedCTS compile(const ProcPtr& p, const Spec& spec, const CompileOptions& opts = {});
TimedCTS compile(const Spec& spec, const CompileOptions& opts = {});

// Structural well-formedness: per transition the new event is fresh and lands
// in the target, surviving events are inherited, guards are in normal form
// with coherent windows over cause clocks, resets name exactly the new event,
// and every state is reachable. Empty result means well-formed.
std::vector<std::string> validate_cts(const TimedCTS& m, const Spec& spec);

// ---------------------------------------------------------------------------
// Runs: states paired with clock valuations, clocks materialized lazily as
// global time minus last reset stamp.

struct RunConfig {
  size_t state = 0;
  Rat global;                      // time elapsed since the run started
  std::map<EventId, Rat> resets;   // clock id -> instant of its last reset
};

Rat clock_value(const RunConfig& rc, EventId x);

RunConfig initial_run(const TimedCTS& m);

struct StepRefusal {
  enum Why { GuardUnsatisfied, CauseUnterminated } why = GuardUnsatisfied;
  std::string detail;
};

// Fire transition t from rc. The guard is evaluated weakly; on top of it every
// cause clock must strictly exceed both its action's duration and any lower
// bound the guard places on it (a delayed window opens only after the causes
// really finished). Resets happen at the firing instant, then clocks are
// re-keyed through the transition's renaming.
std::variant<RunConfig, StepRefusal> step_action(const TimedCTS& m, const Spec& spec,
                                                 const RunConfig& rc, size_t t);

// Let time pass. A delay is admissible when no outgoing transition that is
// still reachable in time (guard satisfiable at some future instant) becomes
// unreachable during the wait; states without outgoing transitions admit
// every delay.
std::optional<RunConfig> step_delay(const TimedCTS& m, const Spec& spec, const RunConfig& rc,
                                    const Rat& d);

// sup of admissible delays at rc.
TimeBound max_run_delay(const TimedCTS& m, const Spec& spec, const RunConfig& rc);

// Transitions of rc.state that step_action would accept right now.
std::vector<size_t> fireable_transitions(const TimedCTS& m, const Spec& spec,
                                         const RunConfig& rc);

// ---------------------------------------------------------------------------
// Serialization

std::string to_dot(const TimedCTS& m);
std::string write_model(const TimedCTS& m);        // durcsp-model v1
TimedCTS parse_model(const std::string& text);

}  // namespace durcsp
