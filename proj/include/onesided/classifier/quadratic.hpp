#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "onesided/classifier/enumerate.hpp"
#include "onesided/classifier/types.hpp"

namespace onesided {

/// Behaviour of P(n) over the indices n of one parity for an eventually
/// periodic expansion with preperiod m and period h.
///
/// For n >= m the tail x_{n+1} repeats with period h, so P(n) and P(n + 2h)
/// differ only in their backward parts; these first differ at position
/// n - m + 1 (a_m against a_{m+h}), which fixes the direction of every
/// residue class of this parity at once. An increasing class approaches the
/// limit tail + [0; reversed period, ...]; a decreasing class peaks at its
/// first index.
struct ParityClassAnalysis {
  int parity = 0;
  bool increasing = false;
  QuadraticSurd early_max;  // max P(n), n of this parity, n < m + 2h
  long early_argmax = -1;
  QuadraticSurd limit_sup;  // max over residue classes of lim P(n)
  long limit_class = -1;    // representative index of the maximizing class

  /// Infinitely many new records of P(n): the classes climb above every early value.
  bool unbounded_records() const { return increasing && limit_sup > early_max; }
  /// sup P(n) over this parity.
  QuadraticSurd supremum() const { return increasing && limit_sup > early_max ? limit_sup : early_max; }
};

namespace detail {

inline void require_periodic(const CFExpansion& cf) {
  if (!cf.is_periodic()) {
    throw Error(Errc::not_quadratic, cf.is_finite() ? "alpha is rational" : "alpha has no known periodic expansion");
  }
}

}  // namespace detail

inline ParityClassAnalysis analyse_parity_classes(const CFExpansion& cf, int parity) {
  detail::require_periodic(cf);
  const std::size_t m = cf.periodicity().preperiod, h = cf.periodicity().period;
  ParityClassAnalysis out;
  out.parity = parity;
  if (m == 0) {
    // Backward parts extend each other; the shorter is smaller iff its length n is even.
    out.increasing = parity == 0;
  } else {
    const BigInt a_m = cf.term_or_throw(m), a_mh = cf.term_or_throw(m + h);
    const bool j_even = (parity + 1 + static_cast<int>(m % 2)) % 2 == 0;  // j = n - m + 1
    out.increasing = j_even ? a_m < a_mh : a_m > a_mh;
  }

  ConvergentTable t = convergents(cf, static_cast<long>(m + 2 * h));
  bool first = true;
  for (long n = parity; n < static_cast<long>(m + 2 * h); n += 2) {
    QuadraticSurd v = cf.complete_quotient(static_cast<std::size_t>(n + 1)) + QuadraticSurd(back_value(t, n));
    if (first || v > out.early_max) {
      out.early_max = v;
      out.early_argmax = n;
      first = false;
    }
  }

  first = true;
  for (std::size_t r = m + 1; r <= m + 2 * h; ++r) {
    if (static_cast<int>(r % 2) != parity) continue;
    std::vector<BigInt> reversed;
    for (std::size_t i = 0; i < h; ++i) {
      const std::size_t offset = (r - m - 1 + h - i) % h;
      reversed.push_back(cf.term_or_throw(m + 1 + offset));
    }
    QuadraticSurd lim = cf.complete_quotient(r + 1) + detail::purely_periodic_value(reversed, cf.value().d()).reciprocal();
    if (first || lim > out.limit_sup) {
      out.limit_sup = lim;
      out.limit_class = static_cast<long>(r);
      first = false;
    }
  }
  return out;
}

enum class QuadraticClause { i, ii };

constexpr std::string_view to_string(QuadraticClause c) noexcept { return c == QuadraticClause::i ? "i" : "ii"; }

/// Finiteness of the 3rd-kind sets for a quadratic irrational.
///
/// The clause table picks the side that is finite: (i) when m = 0, or m odd
/// with a_m < a_{m+h}, or m even nonzero with a_m > a_{m+h}, the upper side,
/// with at most 1 + ceil(m/2) + h members; (ii) otherwise the lower side, with
/// at most floor(m/2) + h. The other side is not automatically infinite: its
/// status is decided exactly from the class limits of P(n) and reported in
/// `lower` / `upper` together with exact member counts of finite sides.
struct QuadraticVerdict {
  QuadraticClause clause = QuadraticClause::i;
  std::string rule;
  Side finite_side = Side::upper;
  std::size_t bound = 0;
  std::size_t preperiod = 0, period = 0;
  ParityClassAnalysis lower_classes, upper_classes;
  Finiteness lower, upper;

  const Finiteness& side(Side s) const { return s == Side::lower ? lower : upper; }
};

namespace detail {

inline Finiteness kind3_side_finiteness(const CFExpansion& cf, Side side, const ParityClassAnalysis& a) {
  if (a.unbounded_records()) {
    return {FinitenessKind::proven_infinite, std::nullopt, 0,
            "P(n) records recur: class limit " + a.limit_sup.str() + " exceeds every early value"};
  }
  // Every member has n < m + 2h, so enumerating up to that index is exhaustive.
  const auto& per = cf.periodicity();
  ConvergentTable t = convergents(cf, static_cast<long>(per.preperiod + 2 * per.period));
  Query q{cf, 3, side, t.q(static_cast<long>(per.preperiod + 2 * per.period)), 64};
  const std::size_t count = convergent_members(q).members.size();
  return {FinitenessKind::proven_finite, count, 0, "no P(n) record beyond n = m + 2h"};
}

}  // namespace detail

inline QuadraticVerdict quadratic_kind3_verdict(const CFExpansion& cf) {
  detail::require_periodic(cf);
  QuadraticVerdict v;
  const std::size_t m = cf.periodicity().preperiod, h = cf.periodicity().period;
  v.preperiod = m;
  v.period = h;
  if (m == 0) {
    v.clause = QuadraticClause::i;
    v.rule = "m = 0";
  } else {
    const BigInt a_m = cf.term_or_throw(m), a_mh = cf.term_or_throw(m + h);
    if (m % 2 == 1 && a_m < a_mh) {
      v.clause = QuadraticClause::i;
      v.rule = "m odd and a_m < a_{m+h}";
    } else if (m % 2 == 0 && a_m > a_mh) {
      v.clause = QuadraticClause::i;
      v.rule = "m even nonzero and a_m > a_{m+h}";
    } else {
      v.clause = QuadraticClause::ii;
      v.rule = m % 2 == 1 ? "m odd and a_m > a_{m+h}" : "m even nonzero and a_m < a_{m+h}";
    }
  }
  if (v.clause == QuadraticClause::i) {
    v.finite_side = Side::upper;
    v.bound = 1 + (m + 1) / 2 + h;
  } else {
    v.finite_side = Side::lower;
    v.bound = m / 2 + h;
  }
  v.lower_classes = analyse_parity_classes(cf, 0);
  v.upper_classes = analyse_parity_classes(cf, 1);
  v.lower = detail::kind3_side_finiteness(cf, Side::lower, v.lower_classes);
  v.upper = detail::kind3_side_finiteness(cf, Side::upper, v.upper_classes);
  return v;
}

inline QuadraticVerdict quadratic_kind3_verdict(const AlphaSource& alpha) {
  return quadratic_kind3_verdict(CFExpansion(alpha));
}

}  // namespace onesided
