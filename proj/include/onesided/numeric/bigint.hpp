#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

#include "onesided/errors.hpp"

namespace onesided {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline BigInt numerator_of(const BigRational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const BigRational& x) { return boost::multiprecision::denominator(x); }

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(Errc::zero_denominator, "rational with zero denominator");
  return BigRational(num, den);
}

/// Floor of a / b for b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

inline BigInt floor(const BigRational& x) { return floor_div(numerator_of(x), denominator_of(x)); }
inline BigInt ceil(const BigRational& x) { return ceil_div(numerator_of(x), denominator_of(x)); }

/// Largest s with s*s <= n; n >= 0.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw Error(Errc::negative_discriminant, "isqrt of a negative integer");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt s = isqrt(n);
  return s * s == n;
}

inline BigInt ipow(const BigInt& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

inline int sign(const BigInt& x) { return x.sign(); }
inline int sign(const BigRational& x) { return x.sign(); }

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const BigRational& x) {
  if (denominator_of(x) == 1) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

/// Parses an optionally signed decimal integer; throws on anything else.
inline BigInt parse_bigint(const std::string& text) {
  std::size_t i = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (i == text.size()) throw Error(Errc::parse_error, "expected an integer, got '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') throw Error(Errc::parse_error, "expected an integer, got '" + text + "'");
  }
  BigInt v(text.substr(i));
  return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace onesided
