#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "durcsp/config.hpp"
#include "durcsp/rational.hpp"
#include "durcsp/syntax.hpp"

namespace durcsp {

struct Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

// Guard tree over per-event clocks. Atoms are one-sided bounds on a single
// clock; only {<, <=} appear, mirrored as Lower (bound rel c_x) and Upper
// (c_x rel bound). Bounds are non-negative.
struct Constraint {
  enum Kind { And, Or, Lower, Upper };
  Kind kind = And;
  ConstraintPtr left, right;  // And/Or
  EventId clock = 0;          // Lower/Upper
  Rat bound;
  bool strict = false;  // false: <=, true: <

  static ConstraintPtr conj(ConstraintPtr l, ConstraintPtr r);
  static ConstraintPtr disj(ConstraintPtr l, ConstraintPtr r);
  static ConstraintPtr lower(EventId clock, Rat bound, bool strict = false);
  static ConstraintPtr upper(EventId clock, Rat bound, bool strict = false);
};

bool equal(const ConstraintPtr& a, const ConstraintPtr& b);

using ClockValuation = std::map<EventId, Rat>;

// Caused firing window: all causes terminated, within u of the last
// termination — conjunction of duration lower bounds and a disjunction of
// duration+u upper bounds, all weak.
ConstraintPtr make_window(const Rat& u, const std::vector<std::pair<EventId, Action>>& E,
                          const Spec& spec);

// Uncaused firing window 0 <= c_x <= u.
ConstraintPtr make_plain_window(EventId x, const Rat& u);

ConstraintPtr shift(const ConstraintPtr& phi, const Rat& d);
ConstraintPtr rename_clock(const ConstraintPtr& phi, EventId to, EventId from);

bool evaluate(const ConstraintPtr& phi, const ClockValuation& nu);

std::set<EventId> clocks_of(const ConstraintPtr& phi);

// Half-open/closed interval of elapsed time t >= 0; hi_unbounded ignores hi.
struct Interval {
  Rat lo;
  bool lo_strict = false;
  Rat hi;
  bool hi_strict = false;
  bool hi_unbounded = false;
  bool contains(const Rat& t) const;
};
using IntervalSet = std::vector<Interval>;  // normalized: sorted, disjoint

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b);
std::string to_string(const IntervalSet& s);

// Set of t >= 0 with evaluate(phi, nu0 + t) true.
IntervalSet enabling_window(const ConstraintPtr& phi, const ClockValuation& nu0);

bool future_satisfiable(const ConstraintPtr& phi, const ClockValuation& nu);

// Shape produced by the guard constructors: a conjunction of blocks, each a
// conjunction of lower atoms with a disjunction of upper atoms.
bool is_normal_form(const ConstraintPtr& phi);

// Largest/smallest constants, for grid derivation.
void collect_constants(const ConstraintPtr& phi, std::vector<Rat>& out);

// Pretty form for DOT/console: "0 <= c_e0 <= 4" sugar for single-clock
// windows, otherwise explicit with unicode connectives.
std::string to_string(const ConstraintPtr& phi);

// ASCII machine form for model files: and(ge(e0,4),le(e0,104)).
std::string write_constraint(const ConstraintPtr& phi);
ConstraintPtr parse_constraint(const std::string& text);

}  // namespace durcsp
