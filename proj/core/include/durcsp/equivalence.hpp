#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "durcsp/config.hpp"
#include "durcsp/semantics.hpp"
#include "durcsp/tcts.hpp"

namespace durcsp {

// Bijection between the event names of the two compared sides (left: model
// states / first configuration, right: configuration / second one). Grows by
// one pair per matched action and is restricted to the live events afterwards.
struct EventBijection {
  std::map<EventId, EventId> fwd;  // left -> right
  std::map<EventId, EventId> bwd;

  void put(EventId l, EventId r);
  std::optional<EventId> to_right(EventId l) const;
  std::optional<EventId> to_left(EventId r) const;
  bool operator==(const EventBijection&) const = default;
};

struct CheckParams {
  size_t max_depth = 40;
  size_t max_nodes = 200000;
  std::optional<Rat> grid;  // candidate-delay granularity; derived when absent
  bool minimize = true;     // shrink counterexamples by iterative deepening
};

// One attacker move of a counterexample round. Action indices address
// fireable_transitions order on run sides and enabled_actions order on
// configuration sides, evaluated at the moment of the move.
struct CexMove {
  bool fromLeft = true;
  bool isDelay = false;
  Rat delay;
  size_t actionIndex = 0;
  std::string text;  // human-readable rendering of the move
};

struct CexRound {
  CexMove attack;
  std::optional<size_t> defense;  // matching response followed; none in the last round
};

struct Counterexample {
  std::vector<CexRound> rounds;
  std::string reason;  // why the final attack has no matching response
};

struct CheckStats {
  size_t nodes = 0;
  size_t cacheHits = 0;
  size_t maxDepthSeen = 0;
  size_t synchViolations = 0;  // clock/stamp synchronization assertion failures
};

enum class VerdictKind { Bisimilar, NotBisimilar, Inconclusive };

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  bool boundHit = false;  // a depth cut was taken somewhere; Bisimilar is then "up to depth"
  std::optional<Counterexample> cex;
  CheckStats stats;
};

// Half the gcd of every rational constant of the instance; a sound default
// step for boundary-crossing probes.
Rat default_grid(const Spec& spec);
Rat default_grid(const Spec& spec, const TimedCTS& m);

// Model runs against operational configurations: clocks against stamps,
// causes matched through the bijection with actions alone (stamps are
// existential on the operational side). Checks the stamp synchronization
// invariant at every related pair and counts violations in stats.
Verdict tau_bisimilar(const TimedCTS& m, const ConfigPtr& c, const Spec& spec,
                      const CheckParams& params = {});
Verdict tau_bisimilar(const TimedCTS& m, const Spec& spec, const CheckParams& params = {});

// Two operational configurations; causes must agree through the bijection in
// action and literal stamp.
Verdict config_bisimilar(const ConfigPtr& a, const ConfigPtr& b, const Spec& spec,
                         const CheckParams& params = {});

// Two model runs.
Verdict cts_run_bisimilar(const TimedCTS& a, const TimedCTS& b, const Spec& spec,
                          const CheckParams& params = {});

// Literal synchronization invariant: every paired clock equals the stamp of
// its configuration event. Holds on delay-free instances; delays displace it
// by the frozen offsets the checker tracks internally.
bool check_synchronized(const TimedCTS& m, const RunConfig& rc, const ConfigPtr& c,
                        const EventBijection& f, const Spec& spec);

// Theorem-shaped convenience: wraps both processes in the same refinement
// (rho a := body in .) and checks the results; the unrefined pair is checked
// first and a failure there is reported as-is.
Verdict refinement_preserved(const ProcPtr& p, const ProcPtr& q, const Action& a,
                             const ProcPtr& body, const Spec& spec,
                             const CheckParams& params = {});

// Walk a recorded counterexample again: every attack must be admissible where
// it is played and the final attack must have no structurally matching
// response. True when the counterexample still demonstrates the difference.
bool replay_counterexample(const TimedCTS& a, const TimedCTS& b, const Spec& spec,
                           const Counterexample& cex);
bool replay_counterexample(const ConfigPtr& a, const ConfigPtr& b, const Spec& spec,
                           const Counterexample& cex);

}  // namespace durcsp
