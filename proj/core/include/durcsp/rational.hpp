#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace durcsp {

/// Exact non-negative time arithmetic. All engine quantities (durations,
/// window bounds, elapsed stamps, clock values, grids) are rationals; no
/// floating point enters any comparison, so guard evaluation is decidable.
using Rat = boost::rational<long long>;

inline Rat rat(long long n) { return Rat(n); }
inline Rat rat(long long n, long long d) { return Rat(n, d); }

/// Parses "7", "3/2" or a finite decimal like "0.25". Returns nullopt on
/// malformed input or a zero denominator. Negative values are rejected:
/// the surface language has no negative time literals.
std::optional<Rat> parse_rat(const std::string& text);

/// Canonical rendering: integers without a denominator, otherwise "p/q".
std::string to_string(const Rat& r);

/// Decimal rendering when the denominator is 2^a*5^b (e.g. "1.5"),
/// otherwise falls back to "p/q". Used by configuration debug output.
std::string to_decimal_string(const Rat& r);

/// gcd extended to rationals: largest g with r1 = m*g, r2 = n*g for
/// integers m, n. gcd(x, 0) = x.
Rat rat_gcd(const Rat& a, const Rat& b);

struct RatHash {
  size_t operator()(const Rat& r) const {
    std::hash<long long> h;
    return h(r.numerator()) * 1000003u ^ h(r.denominator());
  }
};

inline void hash_combine(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

/// A supremum (or infimum) together with whether it is attained.
/// `unbounded` suprema carry no value.
struct TimeBound {
  enum Kind { Finite, Unbounded } kind = Finite;
  Rat value{0};
  bool attained = true;  // closed bound; false = open (approached, not reached)

  static TimeBound unbounded() { return {Unbounded, Rat(0), false}; }
  static TimeBound closed(Rat v) { return {Finite, v, true}; }
  static TimeBound open(Rat v) { return {Finite, v, false}; }

  bool operator==(const TimeBound&) const = default;
};

std::string to_string(const TimeBound& b);

}  // namespace durcsp
