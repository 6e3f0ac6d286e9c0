#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "durcsp/rational.hpp"

namespace durcsp {

/// Visible actions are user-named; Delta is successful termination (written
/// "delta", duration fixed to 0); Internal is the silent action "i" produced
/// by hiding and by refinement termination. Neither reserved action may be
/// written in source files.
struct Action {
  enum Kind { Visible, Delta, Internal } kind = Visible;
  std::string name;  // empty for Delta / Internal

  static Action visible(std::string n) { return {Visible, std::move(n)}; }
  static Action delta() { return {Delta, {}}; }
  static Action internal() { return {Internal, {}}; }

  bool is_visible() const { return kind == Visible; }
  std::string display() const {
    if (kind == Delta) return "delta";
    if (kind == Internal) return "i";
    return name;
  }
  auto operator<=>(const Action&) const = default;
};

using Duration = Rat;

struct SourcePos {
  int line = 0, col = 0;
  bool operator==(const SourcePos&) const = default;
};

struct Process;
using ProcPtr = std::shared_ptr<const Process>;

/// Immutable process term. Children are shared; equality is structural and
/// ignores source positions.
struct Process {
  enum Kind {
    Stop,        // no fields
    Skip,        // bound
    Prefix,      // action, bound, left=continuation
    Choice,      // left, right
    Par,         // left, right, sync
    Hide,        // left, sync=hidden set
    Interrupt,   // left, right
    Delay,       // bound=delay, left
    Refine,      // action=refined, left=refining body, right=scope
    PartialSeq,  // left, right, anchor event id (configuration-level only)
    Ref,         // name
  };

  Kind kind = Stop;
  Action action;
  Duration bound{0};
  ProcPtr left, right;
  std::set<std::string> sync;  // Par sync set / Hide hidden set
  std::string name;            // Ref target
  uint32_t anchor = 0;         // PartialSeq anchor event id
  SourcePos pos;

  static ProcPtr stop();
  static ProcPtr skip(Duration u);
  static ProcPtr prefix(Action a, Duration u, ProcPtr cont);
  static ProcPtr choice(ProcPtr l, ProcPtr r);
  static ProcPtr par(ProcPtr l, std::set<std::string> sync, ProcPtr r);
  static ProcPtr hide(ProcPtr p, std::set<std::string> hidden);
  static ProcPtr interrupt(ProcPtr l, ProcPtr r);
  static ProcPtr delay(Duration d, ProcPtr p);
  static ProcPtr refine(Action a, ProcPtr body, ProcPtr scope);
  static ProcPtr partial_seq(ProcPtr l, uint32_t anchor, ProcPtr r);
  static ProcPtr ref(std::string name);
};

bool equal(const ProcPtr& a, const ProcPtr& b);
size_t hash_value(const ProcPtr& p);

/// A parsed specification: duration table, process definitions, entry point.
/// delta's duration is implicitly 0 and is not stored in the table.
struct Spec {
  std::map<std::string, Duration> durations;
  std::map<std::string, ProcPtr> processes;
  std::string main;

  /// Duration lookup; throws EngineError for visible actions missing from
  /// the table (validation normally rules this out).
  Duration duration_of(const Action& a) const;
  ProcPtr main_process() const;
};

struct ParseError : std::runtime_error {
  SourcePos pos;
  ParseError(const std::string& msg, SourcePos p)
      : std::runtime_error(msg + " at line " + std::to_string(p.line) + ", column " +
                           std::to_string(p.col)),
        pos(p) {}
};

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Diagnostic {
  enum Category {
    MissingDuration,
    UnknownReference,
    UnguardedRecursion,
    DuplicateDefinition,
    UnknownMain,
    ReservedName,
    NestedRefinementBody,
    EmptySet,
  };
  Category category;
  std::string message;
  SourcePos pos;
};

std::string to_string(Diagnostic::Category c);

/// Parses the surface syntax (see docs/grammar.md). Throws ParseError with
/// a position and the expected tokens on malformed input. A bare prefix
/// "a;P" receives the documented default firing window of 1000000 units.
Spec parse_spec(const std::string& source);

extern const Duration kDefaultPrefixBound;

/// Canonical rendering of a process term; parse_spec of a rendered spec
/// yields a structurally equal tree (label-preserving round trip).
std::string render(const ProcPtr& p);

/// Whole-file rendering (durations, main, process definitions).
std::string render(const Spec& s);

/// Static checks: total duration table over used actions, known references,
/// action-guarded recursion (every Ref cycle passes through a Prefix
/// continuation), refinement bodies free of nested refinement, non-empty
/// hide/sync member validity. Returns all findings, empty = valid.
std::vector<Diagnostic> validate(const Spec& s);

/// Collects every visible action appearing in the term.
std::set<std::string> used_actions(const ProcPtr& p);

}  // namespace durcsp
