#include "zq/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace zq {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (num == 0 && den == 0) throw std::invalid_argument("0/0 framing");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den == 0) {
    num = num > 0 ? 1 : -1;  // the two infinities
  } else {
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  p = num;
  q = den;
}

Rational Rational::plus_int(std::int64_t k) const {
  if (is_infinite()) return *this;
  return Rational(p + k * q, q);
}

Rational Rational::denominator_twist(int dir) const {
  if (is_infinite()) {
    // 1/0 -> 1/(0 + dir*1): becomes the integer dir^-1... i.e. p/(q+dir*p)
    return Rational(p, dir * p);
  }
  return Rational(p, q + dir * p);
}

std::string Rational::str() const {
  if (is_infinite()) return p > 0 ? "inf" : "-inf";
  if (q == 1) return std::to_string(p);
  return std::to_string(p) + "/" + std::to_string(q);
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text == "inf" || text == "+inf") return Rational::infinity(+1);
  if (text == "-inf") return Rational::infinity(-1);
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) return std::nullopt;
      return Rational::integer(n);
    }
    std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
    if (ns.empty() || ds.empty()) return std::nullopt;
    std::int64_t n = std::stoll(ns, &used);
    if (used != ns.size()) return std::nullopt;
    std::int64_t d = std::stoll(ds, &used);
    if (used != ds.size()) return std::nullopt;
    if (d == 0 && (n != 1 && n != -1)) return std::nullopt;  // only 1/0, -1/0 name infinity
    if (n == 0 && d == 0) return std::nullopt;
    return Rational(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace zq
