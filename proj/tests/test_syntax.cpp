#include <string>

#include "doctest.h"
#include "durcsp/syntax.hpp"
#include "gen.hpp"

using namespace durcsp;

namespace {

ProcPtr body_of(const std::string& src) {
  Spec s = parse_spec("process w := " + src + " endproc");
  return s.processes.at("w");
}

}  // namespace

TEST_CASE("prefix binds tighter than choice") {
  ProcPtr p = body_of("a; stop + b; stop");
  REQUIRE(p->kind == Process::Choice);
  CHECK(p->left->kind == Process::Prefix);
  CHECK(p->left->action.display() == "a");
  CHECK(p->left->bound == kDefaultPrefixBound);
  CHECK(p->left->left->kind == Process::Stop);
  CHECK(p->right->action.display() == "b");
}

TEST_CASE("binding strength: choice < interrupt < par < hide") {
  ProcPtr p = body_of("p + q [> r");
  REQUIRE(p->kind == Process::Choice);
  CHECK(p->right->kind == Process::Interrupt);

  p = body_of("p [> q ||| r");
  REQUIRE(p->kind == Process::Interrupt);
  CHECK(p->right->kind == Process::Par);
  CHECK(p->right->sync.empty());

  p = body_of("p ||| q \\{a}");
  REQUIRE(p->kind == Process::Par);
  CHECK(p->right->kind == Process::Hide);
  CHECK(p->right->sync == std::set<std::string>{"a"});

  p = body_of("(p + q) \\{a}");
  REQUIRE(p->kind == Process::Hide);
  CHECK(p->left->kind == Process::Choice);
}

TEST_CASE("explicit firing windows and sync sets parse") {
  ProcPtr p = body_of("a{3/2}; skip{0.5}");
  REQUIRE(p->kind == Process::Prefix);
  CHECK(p->bound == Rat(3, 2));
  REQUIRE(p->left->kind == Process::Skip);
  CHECK(p->left->bound == Rat(1, 2));

  p = body_of("p |[a,b]| q");
  REQUIRE(p->kind == Process::Par);
  CHECK(p->sync == (std::set<std::string>{"a", "b"}));

  p = body_of("delay{7} a{2}; stop");
  REQUIRE(p->kind == Process::Delay);
  CHECK(p->bound == Rat(7));
  CHECK(p->left->kind == Process::Prefix);
}

TEST_CASE("refinement surface form") {
  ProcPtr p = body_of("rho a := b{1}; skip{1} in a{2}; stop");
  REQUIRE(p->kind == Process::Refine);
  CHECK(p->action.display() == "a");
  CHECK(p->left->kind == Process::Prefix);   // body
  CHECK(p->right->kind == Process::Prefix);  // scope
}

TEST_CASE("identifiers may contain hyphens and underscores; comments are skipped") {
  Spec s = parse_spec(
      "-- setup phase\n"
      "durations ss-sap=2 t_x=1;\n"
      "main m;\n"
      "process m := ss-sap{4}; t_x{1}; stop endproc  -- trailing\n");
  CHECK(validate(s).empty());
  CHECK(s.duration_of(Action::visible("ss-sap")) == Rat(2));
  CHECK(s.main_process()->action.display() == "ss-sap");
}

TEST_CASE("reserved names, duplicates and empty hide sets are parse errors") {
  CHECK_THROWS_AS(parse_spec("process i := stop endproc"), ParseError);
  CHECK_THROWS_AS(parse_spec("process m := delta{1}; stop endproc"), ParseError);
  CHECK_THROWS_AS(parse_spec("process m := stop \\{} endproc"), ParseError);
  CHECK_THROWS_AS(parse_spec("process m := stop endproc process m := stop endproc"), ParseError);
  CHECK_THROWS_AS(parse_spec("main m; main m; process m := stop endproc"), ParseError);
  CHECK_THROWS_AS(parse_spec("process m := a{-1}; stop endproc"), ParseError);
  try {
    parse_spec("process m :=\n  a{1}; ? endproc");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 2);
  }
}

TEST_CASE("validate reports missing durations, dangling refs and bad main") {
  Spec s = parse_spec("main m; process m := a{1}; undefined endproc");
  auto d = validate(s);
  REQUIRE(d.size() == 2);
  CHECK(d[0].category == Diagnostic::MissingDuration);
  CHECK(d[1].category == Diagnostic::UnknownReference);

  s = parse_spec("durations a=1;\nprocess m := a{1}; stop endproc");
  d = validate(s);
  REQUIRE(d.size() == 1);
  CHECK(d[0].category == Diagnostic::UnknownMain);

  s = parse_spec("durations a=1;\nmain w;\nprocess m := a{1}; stop endproc");
  d = validate(s);
  REQUIRE(d.size() == 1);
  CHECK(d[0].category == Diagnostic::UnknownMain);
}

TEST_CASE("recursion must pass an action prefix") {
  // action-guarded: fine
  Spec s = parse_spec("durations a=1;\nmain x;\nprocess x := a{1}; x endproc");
  CHECK(validate(s).empty());

  // direct unguarded cycle
  s = parse_spec("durations a=1;\nmain x;\nprocess x := x + a{1}; stop endproc");
  auto d = validate(s);
  REQUIRE(d.size() == 1);
  CHECK(d[0].category == Diagnostic::UnguardedRecursion);

  // a pending delay does not guard: unfolding still diverges
  s = parse_spec("main x;\nprocess x := delay{1} x endproc");
  d = validate(s);
  REQUIRE(d.size() == 1);
  CHECK(d[0].category == Diagnostic::UnguardedRecursion);

  // mutual cycle through two definitions: both names end up reported
  s = parse_spec("main x;\nprocess x := y endproc process y := x endproc");
  d = validate(s);
  REQUIRE(d.size() == 2);
  CHECK(d[0].category == Diagnostic::UnguardedRecursion);
  CHECK(d[1].category == Diagnostic::UnguardedRecursion);
}

TEST_CASE("refinement bodies may not refine again") {
  Spec s = parse_spec(
      "durations a=1 b=1;\n"
      "main m;\n"
      "process m := rho a := (rho b := stop in stop) in a{1}; stop endproc");
  auto d = validate(s);
  REQUIRE(d.size() == 1);
  CHECK(d[0].category == Diagnostic::NestedRefinementBody);
}

TEST_CASE("used_actions sees through hiding and refinement bodies") {
  ProcPtr p = body_of("(a{1}; stop) \\{a} ||| rho b := c{1}; skip{1} in b{1}; stop");
  CHECK(used_actions(p) == (std::set<std::string>{"a", "b", "c"}));
}

TEST_CASE("render is exact and parses back") {
  Spec s = parse_spec(
      "durations a=4 b=1;\n"
      "main delayed_run;\n"
      "process delayed_run := a{4}; delay{100} b{0}; stop endproc\n");
  CHECK(render(s) ==
        "durations a=4 b=1;\n"
        "main delayed_run;\n"
        "process delayed_run := a{4}; delay{100} b{0}; stop endproc\n");
  Spec again = parse_spec(render(s));
  CHECK(equal(again.main_process(), s.main_process()));
}

TEST_CASE("render/parse round trip on random specs") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    testgen::Gen g(seed);
    Spec s = g.spec(1 + g.pick(6));
    CAPTURE(seed);
    CAPTURE(render(s));
    REQUIRE(validate(s).empty());
    Spec back = parse_spec(render(s));
    CHECK(equal(back.main_process(), s.main_process()));
    CHECK(back.durations == s.durations);
    CHECK(hash_value(back.main_process()) == hash_value(s.main_process()));
  }
}

TEST_CASE("structural equality distinguishes bounds, windows and shapes") {
  CHECK(equal(body_of("a{2}; stop"), body_of("a{2}; stop")));
  CHECK_FALSE(equal(body_of("a{2}; stop"), body_of("a{3}; stop")));
  CHECK_FALSE(equal(body_of("a{2}; stop"), body_of("b{2}; stop")));
  CHECK_FALSE(equal(body_of("p ||| q"), body_of("p |[a]| q")));
  CHECK_FALSE(equal(body_of("p + q"), body_of("q + p")));
}
