#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>
#include <algorithm>

#include "onesided/errors.hpp"
#include "onesided/numeric/bigint.hpp"

namespace onesided {

/// n = root^2 * core with core squarefree (n >= 0).
struct SquarefreeSplit {
  BigInt root;
  BigInt core;
};

namespace detail {

inline SquarefreeSplit squarefree_split_small(std::uint64_t n) {
  std::uint64_t root = 1, core = 1;
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) core *= p;
  };
  take(2);
  for (std::uint64_t p = 3; static_cast<unsigned __int128>(p) * p * p <= n; p += 2) take(p);
  // What is left has at most two prime factors, both larger than every trial divisor.
  std::uint64_t s = static_cast<std::uint64_t>(isqrt(BigInt(n)));
  if (s * s == n) {
    root *= s;
  } else {
    core *= n;
  }
  return {BigInt(root), BigInt(core)};
}

}  // namespace detail

namespace detail {

inline bool probably_prime(const BigInt& n) { return mpz_probab_prime_p(n.backend().data(), 40) > 0; }

/// Nontrivial factor of an odd composite n (Brent's variant of Pollard rho).
inline BigInt rho_factor(const BigInt& n) {
  for (BigInt c = 1;; ++c) {
    auto f = [&](const BigInt& x) { return BigInt((x * x + c) % n); };
    BigInt y = 2, x, ys, g = 1, q = 1;
    const unsigned long m = 128;
    for (unsigned long r = 1; g == 1; r *= 2) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(BigInt(x - y))) % n;
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(BigInt(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

/// Multiplies the prime factorization of n (> 1, no factors below the trial bound) into root and core.
inline void split_large(const BigInt& n, BigInt& root, BigInt& core) {
  std::vector<BigInt> pending{n}, primes;
  while (!pending.empty()) {
    BigInt x = std::move(pending.back());
    pending.pop_back();
    if (x == 1) continue;
    if (is_perfect_square(x)) {
      BigInt s = isqrt(x);
      pending.push_back(s);
      pending.push_back(s);
    } else if (probably_prime(x)) {
      primes.push_back(std::move(x));
    } else {
      BigInt f = rho_factor(x);
      pending.push_back(x / f);
      pending.push_back(std::move(f));
    }
  }
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    for (std::size_t e = 0; e < (j - i) / 2; ++e) root *= primes[i];
    if ((j - i) % 2) core *= primes[i];
    i = j;
  }
}

}  // namespace detail

inline SquarefreeSplit squarefree_split(const BigInt& n) {
  if (n < 0) throw Error(Errc::negative_discriminant, "squarefree_split of a negative integer");
  if (n == 0) return {BigInt(0), BigInt(0)};
  if (n <= BigInt(std::numeric_limits<std::uint64_t>::max() >> 20)) {
    return detail::squarefree_split_small(static_cast<std::uint64_t>(n));
  }
  BigInt rest = n, root = 1, core = 1;
  auto take = [&](unsigned long p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) core *= p;
  };
  take(2);
  for (unsigned long p = 3; p < 20000; p += 2) take(p);
  if (rest > 1) detail::split_large(rest, root, core);
  return {root, core};
}

/// Exact real quadratic number (p + q*sqrt(d)) / r.
///
/// Canonical form: r > 0, gcd(p, q, r) = 1, d squarefree and >= 2 whenever
/// q != 0. Rationals are stored with q = 0 and d = 0. Arithmetic is closed
/// inside one field Q(sqrt(d)); mixing two different radicands throws
/// Errc::mixed_radicand.
class QuadraticSurd {
 public:
  QuadraticSurd() : p_(0), q_(0), d_(0), r_(1) {}
  QuadraticSurd(long long v) : p_(v), q_(0), d_(0), r_(1) {}  // NOLINT: implicit by design of the numeric tower
  QuadraticSurd(const BigInt& v) : p_(v), q_(0), d_(0), r_(1) {}  // NOLINT
  QuadraticSurd(const BigRational& v)  // NOLINT
      : p_(numerator_of(v)), q_(0), d_(0), r_(denominator_of(v)) {}

  static QuadraticSurd canonicalize(BigInt p, BigInt q, BigInt d, BigInt r) {
    if (r == 0) throw Error(Errc::zero_denominator, "surd with r = 0");
    if (d < 0) throw Error(Errc::negative_discriminant, "surd with d = " + d.str());
    if (q == 0 || d == 0) {
      q = 0;
      d = 0;
    } else {
      SquarefreeSplit split = squarefree_split(d);
      q *= split.root;
      d = split.core;
      if (d == 1) {
        p += q;
        q = 0;
        d = 0;
      }
    }
    if (r < 0) {
      p = -p;
      q = -q;
      r = -r;
    }
    BigInt g = gcd(gcd(abs(p), abs(q)), r);
    if (g > 1) {
      p /= g;
      q /= g;
      r /= g;
    }
    QuadraticSurd s;
    s.p_ = std::move(p);
    s.q_ = std::move(q);
    s.d_ = std::move(d);
    s.r_ = std::move(r);
    return s;
  }

  static QuadraticSurd sqrt(const BigInt& d) { return canonicalize(0, 1, d, 1); }

  const BigInt& p() const noexcept { return p_; }
  const BigInt& q() const noexcept { return q_; }
  const BigInt& d() const noexcept { return d_; }
  const BigInt& r() const noexcept { return r_; }

  bool is_rational() const noexcept { return q_ == 0; }

  BigRational to_rational() const {
    if (!is_rational()) throw Error(Errc::not_quadratic, "irrational surd has no rational value");
    return BigRational(p_, r_);
  }

  int sign() const { return sign_of(p_, q_, d_); }

  QuadraticSurd conjugate() const { return canonicalize(p_, -q_, d_, r_); }

  QuadraticSurd operator-() const {
    QuadraticSurd s = *this;
    s.p_ = -s.p_;
    s.q_ = -s.q_;
    return s;
  }

  friend QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b) {
    BigInt d = common_radicand(a, b);
    return canonicalize(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, d, a.r_ * b.r_);
  }
  friend QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b) { return a + (-b); }
  friend QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b) {
    BigInt d = common_radicand(a, b);
    return canonicalize(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d, a.r_ * b.r_);
  }
  friend QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b) { return a * b.reciprocal(); }

  QuadraticSurd& operator+=(const QuadraticSurd& o) { return *this = *this + o; }
  QuadraticSurd& operator-=(const QuadraticSurd& o) { return *this = *this - o; }
  QuadraticSurd& operator*=(const QuadraticSurd& o) { return *this = *this * o; }
  QuadraticSurd& operator/=(const QuadraticSurd& o) { return *this = *this / o; }

  QuadraticSurd reciprocal() const {
    BigInt norm = p_ * p_ - q_ * q_ * d_;
    if (norm == 0) throw Error(Errc::zero_denominator, "division by zero surd");
    return canonicalize(r_ * p_, -r_ * q_, d_, norm);
  }

  /// Exact three-way comparison; no floating point involved.
  friend std::strong_ordering compare(const QuadraticSurd& a, const QuadraticSurd& b) {
    BigInt d = common_radicand(a, b);
    int s = sign_of(a.p_ * b.r_ - b.p_ * a.r_, a.q_ * b.r_ - b.q_ * a.r_, d);
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b); }
  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_ && a.r_ == b.r_;
  }

  BigInt floor() const {
    if (is_rational()) return floor_div(p_, r_);
    // q*sqrt(d) is irrational, so p + q*sqrt(d) lies strictly between F and F + 1.
    BigInt root = isqrt(q_ * q_ * d_);
    BigInt f = p_ + (q_ > 0 ? root : BigInt(-root - 1));
    return floor_div(f, r_);
  }

  BigInt ceil() const {
    if (is_rational()) return ceil_div(p_, r_);
    return floor() + 1;
  }

  /// Nearest integer to value * 10^digits, ties to even.
  BigInt round_scaled(unsigned digits) const {
    BigInt scale = ipow(BigInt(10), digits);
    QuadraticSurd scaled = canonicalize(p_ * scale, q_ * scale, d_, r_);
    BigInt fl = scaled.floor();
    QuadraticSurd frac = scaled - QuadraticSurd(fl);
    auto c = compare(frac, QuadraticSurd(BigRational(1, 2)));
    if (c == std::strong_ordering::greater) return fl + 1;
    if (c == std::strong_ordering::equal) return (fl % 2 == 0) ? fl : BigInt(fl + 1);
    return fl;
  }

  /// Exact rendering in the textual grammar "(p+q*sqrt(d))/r"; rationals render as "p" or "p/r".
  std::string str() const {
    if (is_rational()) return r_ == 1 ? p_.str() : p_.str() + "/" + r_.str();
    return "(" + p_.str() + (q_ < 0 ? "-" : "+") + abs(q_).str() + "*sqrt(" + d_.str() + "))/" + r_.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadraticSurd& s) { return os << s.str(); }

 private:
  static int sign_of(const BigInt& a, const BigInt& b, const BigInt& d) {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0 || d == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    BigInt lhs = a * a, rhs = b * b * d;
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
  }

  static BigInt common_radicand(const QuadraticSurd& a, const QuadraticSurd& b) {
    if (a.q_ == 0) return b.d_;
    if (b.q_ == 0) return a.d_;
    if (a.d_ != b.d_) {
      throw Error(Errc::mixed_radicand, "sqrt(" + a.d_.str() + ") and sqrt(" + b.d_.str() + ") in one expression");
    }
    return a.d_;
  }

  BigInt p_, q_, d_, r_;
};

/// Decimal rendering rounded half-even at `digits` places (no error bound).
inline std::string to_decimal(const QuadraticSurd& x, unsigned digits) {
  BigInt n = x.round_scaled(digits);
  bool negative = n < 0;
  std::string s = abs(n).str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

inline bool is_exact_decimal(const QuadraticSurd& x, unsigned digits) {
  if (!x.is_rational()) return false;
  BigInt scale = ipow(BigInt(10), digits);
  return (x.p() * scale) % x.r() == 0;
}

}  // namespace onesided
