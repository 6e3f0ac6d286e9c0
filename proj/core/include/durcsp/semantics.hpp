#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "durcsp/config.hpp"
#include "durcsp/rational.hpp"
#include "durcsp/syntax.hpp"

namespace durcsp {

// One action transition: decoration _{causes} label_event.
struct ActionStep {
  TimedEventSet causes;  // stamps as of the firing instant
  Action label;          // post-hiding, possibly i
  EventId event = 0;
};

std::string to_string(const ActionStep& s);  // "_{e0:a:4} b_e1"

// Complete set of one-step action derivations from a canonical configuration.
// Deterministic order; fresh events are least-unused over the rule-specified
// exclusion sets (strengthened to all ids, anchors included).
std::vector<std::pair<ActionStep, ConfigPtr>> enabled_actions(const ConfigPtr& c,
                                                              const Spec& spec);

// Time passage. Refused only when the wait would silently cross a live
// composed firing window (synchronized offers intersected, delay gates
// applied); dead or partner-less offers impose nothing and simply expire.
// Stamps advance uniformly except in frozen regions.
std::optional<ConfigPtr> apply_delay(const ConfigPtr& c, const Rat& d, const Spec& spec);

// sup{d | apply_delay(c,d) defined}, tagged open/closed/unbounded.
TimeBound max_delay(const ConfigPtr& c, const Spec& spec);

// Structurally terminated: only stop residuals remain.
bool is_quiescent(const ConfigPtr& c);

// Behaviourally terminated: every composed firing window is dead, so no
// action can ever fire again and time passes freely.
bool no_possible_actions(const ConfigPtr& c, const Spec& spec);

// Window endpoints of the composed firing windows: the waits at which some
// offer opens or dies. Positive, sorted, deduplicated.
std::vector<Rat> critical_delays(const ConfigPtr& c, const Spec& spec);

struct ScheduleEntry {
  enum Kind { Pick, Wait } kind = Pick;
  size_t index = 0;  // Pick: position in enabled_actions order
  Rat wait;          // Wait: duration
};
using Schedule = std::vector<ScheduleEntry>;

struct TraceStep {
  std::optional<ActionStep> act;  // nullopt: delay step
  Rat delay;
  ConfigPtr after;
};
struct Trace {
  ConfigPtr start;
  std::vector<TraceStep> steps;
};

// Deterministic replay; throws EngineError naming the refusal.
Trace run(const ConfigPtr& c, const Schedule& schedule, const Spec& spec);

std::string write_trace(const Trace& t);        // durcsp-trace v1
std::string write_schedule(const Schedule& s);  // durcsp-schedule v1
Schedule parse_schedule(const std::string& text);

struct MakespanOptions {
  size_t max_nodes = 500000;
  std::optional<size_t> max_steps;  // schedule length bound (actions + waits)
};

// Least total elapsed time, over delay-grid-quantized schedules, to reach a
// configuration with no visible action enabled and every event finished.
// nullopt when unreachable within the node budget.
std::optional<Rat> min_makespan(const ConfigPtr& c, const Spec& spec, const Rat& grid,
                                const MakespanOptions& opts = {});

// Runs min_makespan at grid and grid/2; a strictly smaller refined value
// signals an open infimum, extrapolated exactly (results are affine in the
// grid: value + k*grid for the k strict waits on the optimal schedule).
// nullopt when no terminal configuration is reachable within the node budget.
std::optional<TimeBound> min_makespan_exact(const ConfigPtr& c, const Spec& spec,
                                            const Rat& grid,
                                            const MakespanOptions& opts = {});

}  // namespace durcsp
