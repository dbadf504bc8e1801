#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace zq {

// Framing coefficient: a reduced rational p/q with q >= 0, extended by the
// two infinities +1/0 and -1/0.  Infinity framings arise on components that
// the calculus can delete outright, and they absorb integer twists, so the
// arithmetic here is deliberately small: normalization, integer shifts, and
// the two denominator twists q -> q +- p used by the rational twist move.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  static Rational integer(std::int64_t n) { return Rational(n, 1); }
  static Rational infinity(int sign) { return Rational(sign >= 0 ? 1 : -1, 0); }

  bool is_infinite() const { return q == 0; }
  bool is_integer() const { return q == 1; }

  // Adds k full twists: p/q + k = (p + k*q)/q.  Infinity absorbs shifts.
  Rational plus_int(std::int64_t k) const;

  // Denominator twist of the rational move: p/q -> p/(q + dir*p), dir = +-1.
  // Keeps the fraction reduced (gcd(p, q+p) = gcd(p, q)) and may legitimately
  // produce an infinite or negative-denominator value, which renormalizes.
  Rational denominator_twist(int dir) const;

  bool operator==(const Rational& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  std::string str() const;
};

// Parses "7", "-3/2", "inf", "-inf".  Returns nullopt on malformed input
// (including 0/0 and unreduced-only failures like "4/0").
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace zq
