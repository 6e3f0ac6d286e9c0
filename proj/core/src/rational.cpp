#include "durcsp/rational.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <cctype>
#include <sstream>

namespace durcsp {

std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '.')
      return std::nullopt;

  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string::npos && dot != std::string::npos) return std::nullopt;

  // stoll alone accepts digit prefixes; every piece must consume fully.
  auto whole_number = [](const std::string& s) -> std::optional<long long> {
    if (s.empty()) return std::nullopt;
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  };

  try {
    if (slash != std::string::npos) {
      auto n = whole_number(text.substr(0, slash));
      auto d = whole_number(text.substr(slash + 1));
      if (!n || !d || *d == 0) return std::nullopt;
      return Rat(*n, *d);
    }
    if (dot != std::string::npos) {
      std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
      if (ip.empty() && fp.empty()) return std::nullopt;
      for (char c : fp)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      long long whole = 0;
      if (!ip.empty()) {
        auto w = whole_number(ip);
        if (!w) return std::nullopt;
        whole = *w;
      }
      long long num = 0, den = 1;
      for (char c : fp) {
        num = num * 10 + (c - '0');
        den *= 10;
      }
      return Rat(whole) + Rat(num, den);
    }
    auto v = whole_number(text);
    if (!v) return std::nullopt;
    return Rat(*v);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal_string(const Rat& r) {
  long long d = r.denominator();
  int pow = 0;
  while (d % 2 == 0) { d /= 2; ++pow; }
  while (d % 5 == 0) { d /= 5; ++pow; }
  if (d != 1) return to_string(r);
  if (r.denominator() == 1) return std::to_string(r.numerator());
  // Scale to 10^k so the fraction prints exactly.
  long long scale = 1;
  long long den = r.denominator();
  int k = 0;
  while (scale % den != 0) { scale *= 10; ++k; }
  long long scaled = r.numerator() * (scale / den);
  std::string digits = std::to_string(scaled);
  while ((int)digits.size() <= k) digits.insert(digits.begin(), '0');
  digits.insert(digits.end() - k, '.');
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return digits;
}

Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a.numerator() == 0) return b;
  if (b.numerator() == 0) return a;
  long long den = a.denominator() * b.denominator();
  long long n1 = a.numerator() * b.denominator();
  long long n2 = b.numerator() * a.denominator();
  return Rat(boost::integer::gcd(n1 < 0 ? -n1 : n1, n2 < 0 ? -n2 : n2), den);
}

std::string to_string(const TimeBound& b) {
  if (b.kind == TimeBound::Unbounded) return "unbounded";
  return to_string(b.value) + (b.attained ? " (closed)" : " (open)");
}

}  // namespace durcsp
