#include "durcsp/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace durcsp {

namespace {
ConstraintPtr make(Constraint&& c) { return std::make_shared<const Constraint>(std::move(c)); }
}  // namespace

ConstraintPtr Constraint::conj(ConstraintPtr l, ConstraintPtr r) {
  return make({.kind = And, .left = std::move(l), .right = std::move(r)});
}
ConstraintPtr Constraint::disj(ConstraintPtr l, ConstraintPtr r) {
  return make({.kind = Or, .left = std::move(l), .right = std::move(r)});
}
ConstraintPtr Constraint::lower(EventId clock, Rat bound, bool strict) {
  if (bound < Rat(0)) throw EngineError("negative constraint bound");
  return make({.kind = Lower, .clock = clock, .bound = std::move(bound), .strict = strict});
}
ConstraintPtr Constraint::upper(EventId clock, Rat bound, bool strict) {
  if (bound < Rat(0)) throw EngineError("negative constraint bound");
  return make({.kind = Upper, .clock = clock, .bound = std::move(bound), .strict = strict});
}

bool equal(const ConstraintPtr& a, const ConstraintPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Constraint::And:
    case Constraint::Or:
      return equal(a->left, b->left) && equal(a->right, b->right);
    default:
      return a->clock == b->clock && a->bound == b->bound && a->strict == b->strict;
  }
}

ConstraintPtr make_window(const Rat& u, const std::vector<std::pair<EventId, Action>>& E,
                          const Spec& spec) {
  if (E.empty()) throw EngineError("caused window needs a nonempty cause set");
  ConstraintPtr lowers, uppers;
  for (const auto& [x, a] : E) {
    Rat d = spec.duration_of(a);
    auto lo = Constraint::lower(x, d);
    auto hi = Constraint::upper(x, d + u);
    lowers = lowers ? Constraint::conj(lowers, lo) : lo;
    uppers = uppers ? Constraint::disj(uppers, hi) : hi;
  }
  return Constraint::conj(lowers, uppers);
}

ConstraintPtr make_plain_window(EventId x, const Rat& u) {
  return Constraint::conj(Constraint::lower(x, Rat(0)), Constraint::upper(x, u));
}

ConstraintPtr shift(const ConstraintPtr& phi, const Rat& d) {
  if (d == Rat(0)) return phi;
  switch (phi->kind) {
    case Constraint::And:
      return Constraint::conj(shift(phi->left, d), shift(phi->right, d));
    case Constraint::Or:
      return Constraint::disj(shift(phi->left, d), shift(phi->right, d));
    case Constraint::Lower:
      return Constraint::lower(phi->clock, phi->bound + d, phi->strict);
    case Constraint::Upper:
      return Constraint::upper(phi->clock, phi->bound + d, phi->strict);
  }
  throw EngineError("unreachable constraint kind");
}

ConstraintPtr rename_clock(const ConstraintPtr& phi, EventId to, EventId from) {
  if (to == from) return phi;
  switch (phi->kind) {
    case Constraint::And:
      return Constraint::conj(rename_clock(phi->left, to, from),
                              rename_clock(phi->right, to, from));
    case Constraint::Or:
      return Constraint::disj(rename_clock(phi->left, to, from),
                              rename_clock(phi->right, to, from));
    default: {
      if (phi->clock != from) return phi;
      Constraint copy = *phi;
      copy.clock = to;
      return make(std::move(copy));
    }
  }
}

bool evaluate(const ConstraintPtr& phi, const ClockValuation& nu) {
  switch (phi->kind) {
    case Constraint::And: return evaluate(phi->left, nu) && evaluate(phi->right, nu);
    case Constraint::Or: return evaluate(phi->left, nu) || evaluate(phi->right, nu);
    default: {
      auto it = nu.find(phi->clock);
      if (it == nu.end())
        throw EngineError("valuation missing clock c_e" + std::to_string(phi->clock));
      const Rat& v = it->second;
      if (phi->kind == Constraint::Lower)
        return phi->strict ? phi->bound < v : phi->bound <= v;
      return phi->strict ? v < phi->bound : v <= phi->bound;
    }
  }
}

std::set<EventId> clocks_of(const ConstraintPtr& phi) {
  std::set<EventId> out;
  std::function<void(const ConstraintPtr&)> walk = [&](const ConstraintPtr& c) {
    if (c->kind == Constraint::And || c->kind == Constraint::Or) {
      walk(c->left);
      walk(c->right);
    } else {
      out.insert(c->clock);
    }
  };
  walk(phi);
  return out;
}

// ---------------------------------------------------------------------------
// Interval arithmetic over elapsed time

bool Interval::contains(const Rat& t) const {
  if (lo_strict ? t <= lo : t < lo) return false;
  if (hi_unbounded) return true;
  return hi_strict ? t < hi : t <= hi;
}

namespace {

bool interval_empty(const Interval& iv) {
  if (iv.hi_unbounded) return false;
  if (iv.lo < iv.hi) return false;
  if (iv.lo > iv.hi) return true;
  return iv.lo_strict || iv.hi_strict;  // point interval needs both weak
}

// True when a's upper touches or overlaps b's lower (a.lo <= b.lo assumed).
bool intervals_joinable(const Interval& a, const Interval& b) {
  if (a.hi_unbounded) return true;
  if (a.hi > b.lo) return true;
  if (a.hi < b.lo) return false;
  return !(a.hi_strict && b.lo_strict);  // (x,y)(y,z) leaves a gap at y
}

IntervalSet normalize(IntervalSet set) {
  IntervalSet in;
  for (auto& iv : set)
    if (!interval_empty(iv)) in.push_back(iv);
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_strict < b.lo_strict;
  });
  IntervalSet out;
  for (auto& iv : in) {
    if (!out.empty() && intervals_joinable(out.back(), iv)) {
      Interval& last = out.back();
      if (last.hi_unbounded || iv.hi_unbounded) {
        last.hi_unbounded = true;
      } else if (iv.hi > last.hi || (iv.hi == last.hi && !iv.hi_strict)) {
        last.hi = iv.hi;
        last.hi_strict = iv.hi_strict;
      }
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

Interval intersect_two(const Interval& a, const Interval& b) {
  Interval out = a;
  if (b.lo > out.lo || (b.lo == out.lo && b.lo_strict)) {
    out.lo = b.lo;
    out.lo_strict = b.lo_strict;
  }
  if (!b.hi_unbounded) {
    if (out.hi_unbounded || b.hi < out.hi || (b.hi == out.hi && b.hi_strict)) {
      out.hi = b.hi;
      out.hi_strict = b.hi_strict;
      out.hi_unbounded = false;
    }
  }
  return out;
}

}  // namespace

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet all = a;
  all.insert(all.end(), b.begin(), b.end());
  return normalize(std::move(all));
}

IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Interval iv = intersect_two(x, y);
      if (!interval_empty(iv)) out.push_back(iv);
    }
  return normalize(std::move(out));
}

std::string to_string(const IntervalSet& s) {
  if (s.empty()) return "empty";
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += " u ";
    const Interval& iv = s[i];
    out += iv.lo_strict ? "(" : "[";
    out += to_string(iv.lo) + ", ";
    if (iv.hi_unbounded)
      out += "inf)";
    else
      out += to_string(iv.hi) + (iv.hi_strict ? ")" : "]");
  }
  return out;
}

IntervalSet enabling_window(const ConstraintPtr& phi, const ClockValuation& nu0) {
  switch (phi->kind) {
    case Constraint::And:
      return interval_intersection(enabling_window(phi->left, nu0),
                                   enabling_window(phi->right, nu0));
    case Constraint::Or:
      return interval_union(enabling_window(phi->left, nu0), enabling_window(phi->right, nu0));
    default: {
      auto it = nu0.find(phi->clock);
      if (it == nu0.end())
        throw EngineError("valuation missing clock c_e" + std::to_string(phi->clock));
      const Rat& v = it->second;
      if (phi->kind == Constraint::Lower) {
        // bound rel v + t  <=>  t rel-inverse bound - v
        Rat lo = phi->bound - v;
        if (lo < Rat(0)) lo = Rat(0);
        return normalize({Interval{.lo = lo, .lo_strict = phi->strict && phi->bound - v >= Rat(0),
                                   .hi_unbounded = true}});
      }
      // v + t rel bound  <=>  t rel bound - v
      Rat hi = phi->bound - v;
      if (hi < Rat(0)) return {};
      return normalize({Interval{.lo = Rat(0), .hi = hi, .hi_strict = phi->strict}});
    }
  }
}

bool future_satisfiable(const ConstraintPtr& phi, const ClockValuation& nu) {
  return !enabling_window(phi, nu).empty();
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

bool is_lower_conj(const ConstraintPtr& c) {
  if (c->kind == Constraint::Lower) return true;
  return c->kind == Constraint::And && is_lower_conj(c->left) && is_lower_conj(c->right);
}
bool is_upper_disj(const ConstraintPtr& c) {
  if (c->kind == Constraint::Upper) return true;
  return c->kind == Constraint::Or && is_upper_disj(c->left) && is_upper_disj(c->right);
}
bool is_block(const ConstraintPtr& c) {
  return c->kind == Constraint::And && is_lower_conj(c->left) && is_upper_disj(c->right);
}

}  // namespace

bool is_normal_form(const ConstraintPtr& phi) {
  if (is_block(phi)) return true;
  return phi->kind == Constraint::And && is_normal_form(phi->left) && is_normal_form(phi->right);
}

void collect_constants(const ConstraintPtr& phi, std::vector<Rat>& out) {
  if (phi->kind == Constraint::And || phi->kind == Constraint::Or) {
    collect_constants(phi->left, out);
    collect_constants(phi->right, out);
  } else {
    out.push_back(phi->bound);
  }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string clock_name(EventId x) { return "c_e" + std::to_string(x); }

void render_pretty(const ConstraintPtr& c, std::string& out, Constraint::Kind parent) {
  // Window sugar: And(Lower(x,A), Upper(x,B)) over the same clock.
  if (c->kind == Constraint::And && c->left->kind == Constraint::Lower &&
      c->right->kind == Constraint::Upper && c->left->clock == c->right->clock) {
    out += to_string(c->left->bound) + (c->left->strict ? " < " : " <= ") +
           clock_name(c->left->clock) + (c->right->strict ? " < " : " <= ") +
           to_string(c->right->bound);
    return;
  }
  switch (c->kind) {
    case Constraint::And:
    case Constraint::Or: {
      bool parens = parent != c->kind && parent != Constraint::Lower;
      if (parens) out += "(";
      render_pretty(c->left, out, c->kind);
      out += c->kind == Constraint::And ? " ∧ " : " ∨ ";
      render_pretty(c->right, out, c->kind);
      if (parens) out += ")";
      break;
    }
    case Constraint::Lower:
      out += to_string(c->bound) + (c->strict ? " < " : " <= ") + clock_name(c->clock);
      break;
    case Constraint::Upper:
      out += clock_name(c->clock) + (c->strict ? " < " : " <= ") + to_string(c->bound);
      break;
  }
}

}  // namespace

std::string to_string(const ConstraintPtr& phi) {
  std::string out;
  render_pretty(phi, out, Constraint::Lower);  // Lower acts as "no parens needed"
  return out;
}

std::string write_constraint(const ConstraintPtr& phi) {
  switch (phi->kind) {
    case Constraint::And:
      return "and(" + write_constraint(phi->left) + "," + write_constraint(phi->right) + ")";
    case Constraint::Or:
      return "or(" + write_constraint(phi->left) + "," + write_constraint(phi->right) + ")";
    case Constraint::Lower:
      return std::string(phi->strict ? "gt" : "ge") + "(e" + std::to_string(phi->clock) + "," +
             to_string(phi->bound) + ")";
    case Constraint::Upper:
      return std::string(phi->strict ? "lt" : "le") + "(e" + std::to_string(phi->clock) + "," +
             to_string(phi->bound) + ")";
  }
  throw EngineError("unreachable constraint kind");
}

namespace {

struct ConstraintParser {
  const std::string& text;
  size_t at = 0;

  void skip_ws() {
    while (at < text.size() && (text[at] == ' ' || text[at] == '\t')) ++at;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("bad constraint: " + why + " at offset " + std::to_string(at), {1, 1});
  }
  void expect(char c) {
    skip_ws();
    if (at >= text.size() || text[at] != c) fail(std::string("expected '") + c + "'");
    ++at;
  }
  std::string word() {
    skip_ws();
    size_t start = at;
    while (at < text.size() && std::isalpha(static_cast<unsigned char>(text[at]))) ++at;
    if (start == at) fail("expected a word");
    return text.substr(start, at - start);
  }
  ConstraintPtr parse() {
    std::string op = word();
    expect('(');
    ConstraintPtr result;
    if (op == "and" || op == "or") {
      auto l = parse();
      expect(',');
      auto r = parse();
      result = op == "and" ? Constraint::conj(l, r) : Constraint::disj(l, r);
    } else if (op == "ge" || op == "gt" || op == "le" || op == "lt") {
      skip_ws();
      if (at >= text.size() || text[at] != 'e') fail("expected clock eN");
      ++at;
      size_t start = at;
      while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
      if (start == at) fail("expected clock index");
      EventId clock = static_cast<EventId>(std::stoul(text.substr(start, at - start)));
      expect(',');
      skip_ws();
      size_t nstart = at;
      while (at < text.size() && (std::isdigit(static_cast<unsigned char>(text[at])) ||
                                  text[at] == '/' || text[at] == '.'))
        ++at;
      auto bound = parse_rat(text.substr(nstart, at - nstart));
      if (!bound) fail("malformed bound");
      bool strict = op == "gt" || op == "lt";
      result = (op == "ge" || op == "gt") ? Constraint::lower(clock, *bound, strict)
                                          : Constraint::upper(clock, *bound, strict);
    } else {
      fail("unknown operator '" + op + "'");
    }
    expect(')');
    return result;
  }
};

}  // namespace

ConstraintPtr parse_constraint(const std::string& text) {
  ConstraintParser p{text};
  auto c = p.parse();
  p.skip_ws();
  if (p.at != text.size()) p.fail("trailing input");
  return c;
}

}  // namespace durcsp
