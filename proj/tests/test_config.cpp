#include "doctest.h"
#include "durcsp/config.hpp"

using namespace durcsp;

namespace {

Spec make_spec(const std::string& src) { return parse_spec(src); }

}  // namespace

TEST_CASE("TimedEventSet keeps ids sorted and unique") {
  TimedEventSet E;
  E.insert({2, Action::visible("b"), Rat(1)});
  E.insert({0, Action::visible("a"), Rat(0)});
  REQUIRE(E.size() == 2);
  CHECK(E.items()[0].id == 0);
  CHECK(E.items()[1].id == 2);
  CHECK(E.contains(2));
  CHECK_FALSE(E.contains(1));
  CHECK(E.ids() == (std::set<EventId>{0, 2}));

  // re-inserting the same occurrence is a no-op
  E.insert({0, Action::visible("a"), Rat(0)});
  CHECK(E.size() == 2);
  // copies of one occurrence can drift apart across freeze boundaries;
  // the most-advanced stamp wins on re-insert
  E.insert({0, Action::visible("a"), Rat(5)});
  CHECK(E.find(0)->stamp == Rat(5));
  E.insert({0, Action::visible("a"), Rat(1)});
  CHECK(E.find(0)->stamp == Rat(5));
  // same id with a different action is a real conflict
  CHECK_THROWS_AS(E.insert({0, Action::visible("c"), Rat(0)}), EngineError);

  E.erase(0);
  CHECK_FALSE(E.contains(0));
}

TEST_CASE("advanced/renamed preserve everything else") {
  auto E = TimedEventSet::single(3, Action::visible("a"), Rat(1, 2));
  auto F = E.advanced(Rat(2));
  CHECK(F.find(3)->stamp == Rat(5, 2));
  auto G = F.renamed(3, 7);
  CHECK_FALSE(G.contains(3));
  CHECK(G.find(7)->stamp == Rat(5, 2));
  CHECK(G.find(7)->action.display() == "a");
}

TEST_CASE("merge unions sets; shared ids keep the most-advanced stamp") {
  auto a = TimedEventSet::single(0, Action::visible("a"), Rat(0));
  auto b = TimedEventSet::single(1, Action::visible("b"), Rat(2));
  auto m = merge(a, b);
  CHECK(m.size() == 2);
  auto drift = TimedEventSet::single(0, Action::visible("a"), Rat(9));
  CHECK(merge(a, drift).find(0)->stamp == Rat(9));
  auto clash = TimedEventSet::single(0, Action::visible("c"), Rat(0));
  CHECK_THROWS_AS(merge(a, clash), EngineError);
}

TEST_CASE("event rendering uses decimal stamps when exact") {
  CHECK(to_string(TimedEvent{0, Action::visible("a"), Rat(3, 2)}) == "e0:a:1.5");
  CHECK(to_string(TimedEvent{4, Action::visible("b"), Rat(7, 3)}) == "e4:b:7/3");
}

TEST_CASE("canonicalize distributes causes, unfolds refs, collapses zero delays") {
  Spec s = make_spec(
      "durations a=1 b=1;\nmain m;\n"
      "process m := (a{1}; stop) + delay{0} b{1}; w endproc\n"
      "process w := stop endproc");
  auto E = TimedEventSet::single(9, Action::visible("a"), Rat(4));
  ConfigPtr c = canonicalize(E, s.main_process(), s);
  REQUIRE(c->kind == TimedConfig::Choice);
  // cause set pushed into both branches
  REQUIRE(c->left->kind == TimedConfig::Leaf);
  CHECK(c->left->events.contains(9));
  // delay{0} is gone; the ref is not unfolded past the prefix guard
  REQUIRE(c->right->kind == TimedConfig::Leaf);
  CHECK(c->right->events.contains(9));
  CHECK(c->right->proc->kind == Process::Prefix);
}

TEST_CASE("canonicalize keeps positive delays and stops at prefix leaves") {
  Spec s = make_spec("durations a=1;\nmain m;\nprocess m := delay{3} a{2}; stop endproc");
  ConfigPtr c = initial_config(s);
  REQUIRE(c->kind == TimedConfig::Delay);
  CHECK(c->delay == Rat(3));
  CHECK(c->left->kind == TimedConfig::Leaf);
}

TEST_CASE("unguarded programmatic recursion trips the node budget") {
  Spec s;
  s.durations["a"] = Rat(1);
  // x := x ||| x  diverges under unfolding
  s.processes["x"] = Process::par(Process::ref("x"), {}, Process::ref("x"));
  s.main = "x";
  CHECK_THROWS_AS(initial_config(s), EngineError);
}

TEST_CASE("psi hides the anchor copy on the right of partial sequencing") {
  auto l = TimedConfig::leaf(TimedEventSet::single(2, Action::visible("c"), Rat(0)),
                             Process::stop());
  TimedEventSet re;
  re.insert({0, Action::visible("a"), Rat(1)});  // inherited anchor copy
  re.insert({1, Action::visible("b"), Rat(0)});
  auto r = TimedConfig::leaf(re, Process::stop());
  auto c = TimedConfig::partial_seq(l, 0, r);
  CHECK(psi_ids(c) == (std::set<EventId>{1, 2}));
  CHECK(all_ids(c) == (std::set<EventId>{0, 1, 2}));
}

TEST_CASE("fresh_event returns the least unused id") {
  CHECK(fresh_event({}) == 0);
  CHECK(fresh_event({0, 1, 3}) == 2);
  CHECK(fresh_event({1, 2}) == 0);
}

TEST_CASE("substitute_event renames ids in sets and anchors") {
  auto l = TimedConfig::leaf(TimedEventSet::single(0, Action::visible("a"), Rat(2)),
                             Process::stop());
  auto r = TimedConfig::leaf(TimedEventSet(), Process::stop());
  auto c = TimedConfig::partial_seq(l, 0, r);
  auto c2 = substitute_event(c, 0, 5);
  CHECK(c2->anchor == 5);
  CHECK(c2->left->events.contains(5));
  CHECK_FALSE(c2->left->events.contains(0));
  CHECK(c2->left->events.find(5)->stamp == Rat(2));
}

TEST_CASE("advance is structural: it raises stamps inside delay nodes too") {
  auto leaf = TimedConfig::leaf(TimedEventSet::single(0, Action::visible("a"), Rat(0)),
                                Process::stop());
  auto frozen = TimedConfig::delay_node(Rat(5), leaf);
  auto moved = durcsp::advance(frozen, Rat(2));
  REQUIRE(moved->kind == TimedConfig::Delay);
  CHECK(moved->delay == Rat(5));  // the remainder is not consumed here
  CHECK(moved->left->events.find(0)->stamp == Rat(2));
}

TEST_CASE("strict completion needs stamps strictly above the duration") {
  Spec s = make_spec("durations a=2;\nmain m;\nprocess m := stop endproc");
  auto at = TimedEventSet::single(0, Action::visible("a"), Rat(2));
  auto past = TimedEventSet::single(0, Action::visible("a"), Rat(5, 2));
  CHECK_FALSE(is_finished(at, s));
  CHECK(is_finished(past, s));
  CHECK(is_finished(TimedEventSet(), s));
  CHECK(time_to_finish(at, s) == Rat(0));  // any positive delay finishes it
  CHECK(time_to_finish(TimedEventSet::single(0, Action::visible("a"), Rat(1, 2)), s) ==
        Rat(3, 2));
  CHECK(time_to_finish(past, s) == Rat(0));
}

TEST_CASE("structural equality and hashing agree") {
  Spec s = make_spec("durations a=1 b=2;\nmain m;\nprocess m := a{1}; stop ||| b{2}; stop endproc");
  auto c1 = initial_config(s);
  auto c2 = initial_config(s);
  CHECK(equal(c1, c2));
  CHECK(hash_value(c1) == hash_value(c2));

  auto stamped = TimedConfig::par(
      TimedConfig::leaf(TimedEventSet::single(0, Action::visible("a"), Rat(0)), Process::stop()),
      {}, c1->right);
  auto moved = durcsp::advance(stamped, Rat(1));
  CHECK_FALSE(equal(stamped, moved));  // the stamp moved from 0 to 1
  CHECK(equal(durcsp::advance(stamped, Rat(1)), moved));
}

TEST_CASE("canonical_renumber is order-stable and returns the mapping") {
  auto l = TimedConfig::leaf(TimedEventSet::single(7, Action::visible("a"), Rat(1)),
                             Process::stop());
  auto r = TimedConfig::leaf(TimedEventSet::single(3, Action::visible("b"), Rat(2)),
                             Process::stop());
  auto c = TimedConfig::par(l, {}, r);
  auto [canon, mapping] = canonical_renumber(c);
  CHECK(mapping.at(7) == 0);
  CHECK(mapping.at(3) == 1);
  CHECK(canon->left->events.contains(0));
  CHECK(canon->right->events.contains(1));

  // different original ids, same shape: renumbering makes them equal
  auto l2 = TimedConfig::leaf(TimedEventSet::single(2, Action::visible("a"), Rat(1)),
                              Process::stop());
  auto r2 = TimedConfig::leaf(TimedEventSet::single(8, Action::visible("b"), Rat(2)),
                              Process::stop());
  auto c2 = TimedConfig::par(l2, {}, r2);
  CHECK(equal(canonical_renumber(c2).first, canon));
}

TEST_CASE("config rendering shows cause sets and residuals") {
  auto leaf = TimedConfig::leaf(TimedEventSet::single(0, Action::visible("a"), Rat(3, 2)),
                                parse_spec("process m := b{2}; stop endproc").processes.at("m"));
  CHECK(render(leaf) == "_{e0:a:1.5}[b{2}; stop]");
}
