#include <random>

#include "doctest.h"
#include "durcsp/constraint.hpp"

using namespace durcsp;

namespace {

Spec two_action_spec(Rat da, Rat db) {
  Spec s;
  s.durations["a"] = da;
  s.durations["b"] = db;
  return s;
}

std::string window_string(const ConstraintPtr& phi, const ClockValuation& nu) {
  return to_string(enabling_window(phi, nu));
}

}  // namespace

TEST_CASE("plain windows anchor at birth") {
  auto w = make_plain_window(0, Rat(4));
  CHECK(to_string(w) == "0 <= c_e0 <= 4");
  CHECK(is_normal_form(w));
  CHECK(window_string(w, {{0, Rat(0)}}) == "[0, 4]");
  CHECK(window_string(w, {{0, Rat(3)}}) == "[0, 1]");
  CHECK(window_string(w, {{0, Rat(5)}}) == "empty");
}

TEST_CASE("caused windows conjoin lower bounds and disjoin upper bounds") {
  Spec s = two_action_spec(Rat(2), Rat(3));
  auto w = make_window(Rat(4), {{0, Action::visible("a")}, {1, Action::visible("b")}}, s);
  REQUIRE(w->kind == Constraint::And);
  CHECK(is_normal_form(w));
  CHECK(to_string(w) == "2 <= c_e0 ∧ 3 <= c_e1 ∧ (c_e0 <= 6 ∨ c_e1 <= 7)");
  // the slowest cause dominates both ends: [3, 7] from zero clocks
  CHECK(window_string(w, {{0, Rat(0)}, {1, Rat(0)}}) == "[3, 7]");

  CHECK_THROWS_AS(make_window(Rat(1), {}, s), EngineError);
}

TEST_CASE("single-cause window is a closed interval of width u") {
  Spec s = two_action_spec(Rat(2), Rat(3));
  auto w = make_window(Rat(4), {{0, Action::visible("a")}}, s);
  CHECK(to_string(w) == "2 <= c_e0 <= 6");
  std::vector<Rat> consts;
  collect_constants(w, consts);
  REQUIRE(consts.size() == 2);
  CHECK(consts[0] == Rat(2));
  CHECK(consts[1] == Rat(6));
}

TEST_CASE("point windows admit exactly one instant") {
  Spec s = two_action_spec(Rat(104), Rat(1));
  auto w = make_window(Rat(0), {{0, Action::visible("a")}}, s);
  CHECK(window_string(w, {{0, Rat(0)}}) == "[104, 104]");
  CHECK(evaluate(w, {{0, Rat(104)}}));
  CHECK_FALSE(evaluate(w, {{0, Rat(103)}}));
  CHECK_FALSE(evaluate(w, {{0, Rat(105)}}));
}

TEST_CASE("shift moves every bound uniformly; zero shift is identity") {
  auto w = make_plain_window(0, Rat(4));
  CHECK(shift(w, Rat(0)) == w);  // same node
  auto w2 = shift(w, Rat(3, 2));
  CHECK(to_string(w2) == "3/2 <= c_e0 <= 11/2");
}

TEST_CASE("rename_clock rewrites only the named clock") {
  auto w = Constraint::conj(make_plain_window(0, Rat(1)), make_plain_window(1, Rat(2)));
  auto r = rename_clock(w, 5, 0);
  CHECK(clocks_of(r) == (std::set<EventId>{1, 5}));
  CHECK(clocks_of(w) == (std::set<EventId>{0, 1}));
}

TEST_CASE("evaluate honours strictness and demands complete valuations") {
  auto lo = Constraint::lower(0, Rat(2), true);
  CHECK_FALSE(evaluate(lo, {{0, Rat(2)}}));
  CHECK(evaluate(lo, {{0, Rat(5, 2)}}));
  auto hi = Constraint::upper(0, Rat(2), true);
  CHECK(evaluate(hi, {{0, Rat(1)}}));
  CHECK_FALSE(evaluate(hi, {{0, Rat(2)}}));
  CHECK_THROWS_AS(evaluate(lo, ClockValuation{}), EngineError);
}

TEST_CASE("disjunction produces genuinely disconnected enabling windows") {
  auto w = Constraint::disj(make_plain_window(0, Rat(1)),
                            Constraint::conj(Constraint::lower(0, Rat(3)),
                                             Constraint::upper(0, Rat(4))));
  CHECK(window_string(w, {{0, Rat(0)}}) == "[0, 1] u [3, 4]");
  CHECK(future_satisfiable(w, {{0, Rat(0)}}));
  CHECK(future_satisfiable(w, {{0, Rat(7, 2)}}));
  CHECK_FALSE(future_satisfiable(w, {{0, Rat(5)}}));
}

TEST_CASE("interval union joins touching pieces unless both ends are strict") {
  IntervalSet a{{.lo = Rat(0), .hi = Rat(1)}};
  IntervalSet b{{.lo = Rat(1), .hi = Rat(2)}};
  CHECK(to_string(interval_union(a, b)) == "[0, 2]");

  IntervalSet c{{.lo = Rat(0), .hi = Rat(1), .hi_strict = true}};
  IntervalSet d{{.lo = Rat(1), .lo_strict = true, .hi = Rat(2)}};
  CHECK(to_string(interval_union(c, d)) == "[0, 1) u (1, 2]");

  IntervalSet e{{.lo = Rat(0), .hi = Rat(1), .hi_strict = true}};
  IntervalSet f{{.lo = Rat(1), .hi = Rat(2)}};
  CHECK(to_string(interval_union(e, f)) == "[0, 2]");
}

TEST_CASE("interval intersection clips overlaps") {
  IntervalSet a{{.lo = Rat(0), .hi = Rat(3)}};
  IntervalSet b{{.lo = Rat(2), .hi = Rat(5)}};
  CHECK(to_string(interval_intersection(a, b)) == "[2, 3]");
  IntervalSet c{{.lo = Rat(4), .hi = Rat(5)}};
  CHECK(to_string(interval_intersection(a, c)) == "empty");
  IntervalSet inf{{.lo = Rat(1), .hi_unbounded = true}};
  CHECK(to_string(interval_intersection(inf, a)) == "[1, 3]");
}

TEST_CASE("constraint text form round-trips") {
  Spec s = two_action_spec(Rat(2), Rat(3));
  auto w = make_window(Rat(4), {{0, Action::visible("a")}, {1, Action::visible("b")}}, s);
  std::string text = write_constraint(w);
  CHECK(text == "and(and(ge(e0,2),ge(e1,3)),or(le(e0,6),le(e1,7)))");
  CHECK(equal(parse_constraint(text), w));

  auto strictish = Constraint::conj(Constraint::lower(2, Rat(1, 2), true),
                                    Constraint::upper(2, Rat(9, 4), true));
  CHECK(equal(parse_constraint(write_constraint(strictish)), strictish));

  CHECK_THROWS_AS(parse_constraint("nonsense(e0,1)"), ParseError);
  CHECK_THROWS_AS(parse_constraint("ge(e0,1) trailing"), ParseError);
  CHECK_THROWS_AS(parse_constraint("ge(x0,1)"), ParseError);
}

// Composed firing windows reduce to a single interval whose span is exactly
// the window width: [max(0, tau), tau + u] with tau the latest cause
// termination offset under the given valuation, shifted rigidly by d.
TEST_CASE("caused-window enabling interval identity under random valuations") {
  std::mt19937_64 rng(20260825);
  auto pick = [&](size_t n) { return static_cast<long long>(rng() % n); };
  int empties = 0;
  for (int iter = 0; iter < 300; ++iter) {
    size_t n = 1 + static_cast<size_t>(pick(3));
    Spec s;
    std::vector<std::pair<EventId, Action>> causes;
    ClockValuation nu;
    Rat tau(-1000);
    for (size_t i = 0; i < n; ++i) {
      std::string name(1, static_cast<char>('a' + i));
      Rat dur(pick(9), 2);
      s.durations[name] = dur;
      causes.push_back({static_cast<EventId>(i), Action::visible(name)});
      Rat v(pick(9), 2);
      nu[static_cast<EventId>(i)] = v;
      if (dur - v > tau) tau = dur - v;
    }
    Rat u(pick(13), 2);
    Rat d(pick(5), 2);
    auto w = shift(make_window(u, causes, s), d);
    Rat lo = tau + d, hi = tau + d + u;
    std::string expect;
    if (hi < Rat(0)) {
      expect = "empty";
      ++empties;
    } else {
      if (lo < Rat(0)) lo = Rat(0);
      expect = "[" + to_string(lo) + ", " + to_string(hi) + "]";
    }
    CAPTURE(iter);
    CAPTURE(write_constraint(w));
    CHECK(window_string(w, nu) == expect);
  }
  CHECK(empties > 0);  // the degenerate branch must actually be exercised
}
