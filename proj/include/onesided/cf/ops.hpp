#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "onesided/cf/expansion.hpp"
#include "onesided/errors.hpp"
#include "onesided/numeric/interval.hpp"

namespace onesided {

/// Rows (n, p_n, q_n) for n = -1, 0, 1, ...
class ConvergentTable {
 public:
  struct Row {
    long n;
    BigInt p, q;
  };

  ConvergentTable() { rows_.push_back({-1, 1, 0}); }

  /// Appends the next row if a_{n+1} is available.
  bool extend(const CFExpansion& cf) {
    const long n = last_index() + 1;
    auto a = cf.term(static_cast<std::size_t>(n));
    if (!a) return false;
    if (n == 0) {
      rows_.push_back({0, *a, 1});
    } else {
      const Row& r1 = rows_[rows_.size() - 1];
      const Row& r2 = rows_[rows_.size() - 2];
      rows_.push_back({n, *a * r1.p + r2.p, *a * r1.q + r2.q});
    }
    return true;
  }

  long last_index() const noexcept { return rows_.back().n; }
  const Row& row(long n) const { return rows_.at(static_cast<std::size_t>(n + 1)); }
  const BigInt& p(long n) const { return row(n).p; }
  const BigInt& q(long n) const { return row(n).q; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

 private:
  std::vector<Row> rows_;
};

/// Rows -1..n_max, clamped to the terms the expansion can supply.
inline ConvergentTable convergents(const CFExpansion& cf, long n_max) {
  ConvergentTable t;
  while (t.last_index() < n_max && t.extend(cf)) {
  }
  return t;
}

enum class OriginKind { convergent, semiconvergent, ceil_unit };

struct Origin {
  OriginKind kind = OriginKind::convergent;
  long n = 0;
  BigInt r = 0;  // semiconvergent multiplier

  std::string str() const {
    switch (kind) {
      case OriginKind::convergent: return "convergent(" + std::to_string(n) + ")";
      case OriginKind::semiconvergent: return "semiconvergent(" + std::to_string(n) + "," + r.str() + ")";
      case OriginKind::ceil_unit: return "ceil_unit";
    }
    return "?";
  }
};

struct FractionRecord {
  BigInt p, q;
  Origin origin;

  BigRational value() const { return BigRational(p, q); }
  friend bool operator==(const FractionRecord& a, const FractionRecord& b) { return a.p == b.p && a.q == b.q; }
};

/// (p_n r + p_{n-1}) / (q_n r + q_{n-1}) for r = 1 .. a_{n+1} - 1, optionally
/// stopping once the denominator exceeds q_max.
inline std::vector<FractionRecord> semiconvergents(const CFExpansion& cf, long n,
                                                   const std::optional<BigInt>& q_max = std::nullopt) {
  ConvergentTable t = convergents(cf, n);
  if (t.last_index() < n) throw Error(Errc::insufficient_terms, "convergent " + std::to_string(n) + " unavailable");
  auto next = cf.term(static_cast<std::size_t>(n + 1));
  if (!next) {
    if (cf.state_at(static_cast<std::size_t>(n + 1)) == TermState::ended) return {};
    throw Error(Errc::insufficient_terms, "term a_" + std::to_string(n + 1) + " unavailable");
  }
  std::vector<FractionRecord> out;
  for (BigInt r = 1; r < *next; ++r) {
    BigInt q = t.q(n) * r + t.q(n - 1);
    if (q_max && q > *q_max) break;
    out.push_back({t.p(n) * r + t.p(n - 1), q, {OriginKind::semiconvergent, n, r}});
  }
  return out;
}

/// [0; a_n, ..., a_1] = q_{n-1} / q_n.
inline BigRational back_value(const ConvergentTable& t, long n) {
  if (n < 0) throw Error(Errc::invalid_argument, "back_value needs n >= 0");
  return BigRational(t.q(n - 1), t.q(n));
}

inline BigRational back_value(const CFExpansion& cf, long n) {
  ConvergentTable t = convergents(cf, n);
  if (t.last_index() < n) throw Error(Errc::insufficient_terms, "convergent " + std::to_string(n) + " unavailable");
  return back_value(t, n);
}

namespace detail {

/// Bracket of [t_0; t_1, ..., ] knowing only t_0..t_k: between [t_0; ..., t_k] and [t_0; ..., t_k + 1].
inline RationalInterval truncation_bracket(const std::vector<BigInt>& t) {
  BigInt p_prev = 1, q_prev = 0, p = t.front(), q = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    BigInt pn = t[i] * p + p_prev, qn = t[i] * q + q_prev;
    p_prev = std::exchange(p, pn);
    q_prev = std::exchange(q, qn);
  }
  return {BigRational(p, q), BigRational(p + p_prev, q + q_prev)};
}

}  // namespace detail

/// [a_{n+1}; a_{n+2}, ...]: exact for finite/periodic expansions, a refinable
/// enclosure for streams.
inline RealValue tail_value(const CFExpansion& cf, long n) {
  if (n < 0) throw Error(Errc::invalid_argument, "tail_value needs n >= 0");
  const auto j = static_cast<std::size_t>(n + 1);
  if (cf.is_finite() && j > cf.periodicity().last_index) {
    throw Error(Errc::no_tail, "expansion ends at a_" + std::to_string(cf.periodicity().last_index));
  }
  if (cf.is_exact()) return RealValue(cf.complete_quotient(j));
  if (!cf.term(j)) throw Error(Errc::insufficient_terms, "stream exhausted before a_" + std::to_string(j));
  return RealValue::enclosure([cf, j](std::size_t level) -> std::optional<RationalInterval> {
    std::vector<BigInt> t;
    for (std::size_t i = 0; i <= level; ++i) {
      auto a = cf.term(j + i);
      if (!a) return std::nullopt;
      t.push_back(std::move(*a));
    }
    return detail::truncation_bracket(t);
  });
}

/// P(n) = [a_{n+1}; a_{n+2}, ...] + [0; a_n, ..., a_1].
inline RealValue p_quantity(const CFExpansion& cf, long n) { return tail_value(cf, n) + back_value(cf, n); }

/// alpha - p_n/q_n. For n >= 1 this evaluates (-1)^n / (q_n^2 P(n)); n = 0 is
/// computed directly as alpha - a_0. An exact hit (last convergent of a
/// finite expansion) gives 0.
inline RealValue approx_error(const CFExpansion& cf, long n) {
  if (n < 0) throw Error(Errc::invalid_argument, "approx_error needs n >= 0");
  if (cf.is_finite()) {
    const auto last = static_cast<long>(cf.periodicity().last_index);
    if (n > last) throw Error(Errc::insufficient_terms, "convergent " + std::to_string(n) + " does not exist");
    if (n == last) return RealValue(BigRational(0));
  }
  if (n == 0) {
    if (cf.is_exact()) return RealValue(cf.value() - QuadraticSurd(cf.term_or_throw(0)));
    return tail_value(cf, 0).reciprocal();
  }
  ConvergentTable t = convergents(cf, n);
  const BigInt& q = t.q(n);
  RealValue denom = p_quantity(cf, n).scaled(BigRational(q * q));
  RealValue err = denom.reciprocal();
  return n % 2 == 0 ? err : -err;
}

/// Exact value of x when it has one.
inline std::optional<QuadraticSurd> exact_value(const CFExpansion& cf) {
  if (!cf.is_exact()) return std::nullopt;
  return cf.value();
}

/// Orders two reals. Exact inputs sharing a quadratic field are compared
/// algebraically; otherwise terms are compared one by one: at the first
/// index n with a_n != b_n, x < y iff (n even and a_n < b_n) or (n odd and
/// a_n > b_n). When streams agree on `budget` terms the result is undecided.
inline Ordering compare_reals(const CFExpansion& x, const CFExpansion& y, std::size_t budget = 64) {
  if (x.is_exact() && y.is_exact()) {
    const QuadraticSurd &vx = x.value(), &vy = y.value();
    if (vx.is_rational() || vy.is_rational() || vx.d() == vy.d()) return to_ordering(compare(vx, vy));
  }
  const bool bounded = !(x.is_exact() && y.is_exact());
  for (std::size_t j = 0;; ++j) {
    if (bounded && j >= budget) return Ordering::undecided;
    TermState sx = x.state_at(j), sy = y.state_at(j);
    if (sx == TermState::exhausted || sy == TermState::exhausted) return Ordering::undecided;
    if (sx == TermState::ended && sy == TermState::ended) return Ordering::equal;
    const bool even_last = (j - 1) % 2 == 0;  // parity of the last index of the shorter one
    if (sx == TermState::ended) return even_last ? Ordering::less : Ordering::greater;
    if (sy == TermState::ended) return even_last ? Ordering::greater : Ordering::less;
    BigInt a = *x.term(j), b = *y.term(j);
    if (a == b) continue;
    const bool x_smaller = (j % 2 == 0) ? a < b : a > b;
    return x_smaller ? Ordering::less : Ordering::greater;
  }
}

inline Ordering compare_reals(const AlphaSource& x, const AlphaSource& y, std::size_t budget = 64) {
  return compare_reals(CFExpansion(x), CFExpansion(y), budget);
}

}  // namespace onesided
