#pragma once

#include <cstddef>
#include <optional>

#include "onesided/classifier/enumerate.hpp"
#include "onesided/classifier/oracle.hpp"
#include "onesided/classifier/quadratic.hpp"
#include "onesided/classifier/types.hpp"

namespace onesided {

namespace detail {

inline Finiteness unknown_beyond(const Query& query, std::string reason) {
  return {FinitenessKind::unknown_beyond, std::nullopt, query.q_max, std::move(reason)};
}

/// Members of a rational alpha over all denominators (its last convergent bounds them).
template <class Members>
std::size_t rational_total(const Query& query, Members members) {
  ConvergentTable t = convergents(query.alpha, static_cast<long>(query.alpha.periodicity().last_index));
  Query all = query;
  all.q_max = t.q(t.last_index());
  return members(all).members.size();
}

}  // namespace detail

/// Best approximations of the 1st and 2nd kind (the two sets coincide).
inline ClassificationResult enumerate_kind_1_2(const Query& query) {
  query.validate();
  if (query.kind > 2) throw Error(Errc::invalid_argument, "enumerate_kind_1_2 needs kind 1 or 2");
  ClassificationResult out = detail::kind12_members(query);
  const CFExpansion& cf = query.alpha;
  if (cf.is_finite()) {
    // Count without listing: a_{n+1} fractions per admissible n, plus the boundary cases.
    const auto last = cf.periodicity().last_index;
    BigInt total = 1;  // alpha itself
    for (std::size_t n = query.side == Side::lower ? 1 : 0; n <= last; n += 2) {
      total += n < last ? cf.term_or_throw(n + 1) : BigInt(1);
      if (n == 0) total -= 1;
    }
    out.finiteness = {FinitenessKind::proven_finite, static_cast<std::size_t>(total), 0, "alpha is rational"};
  } else if (cf.is_periodic()) {
    out.finiteness = {FinitenessKind::proven_infinite, std::nullopt, 0, "alpha is irrational"};
  } else {
    out.finiteness = detail::unknown_beyond(query, "stream-backed alpha");
  }
  return out;
}

/// Best approximations of the 3rd kind.
inline ClassificationResult enumerate_kind_3(const Query& query) {
  query.validate();
  if (query.kind != 3) throw Error(Errc::invalid_argument, "enumerate_kind_3 needs kind 3");
  ClassificationResult out = detail::convergent_members(query);
  const CFExpansion& cf = query.alpha;
  if (cf.is_finite()) {
    out.finiteness = {FinitenessKind::proven_finite, detail::rational_total(query, detail::convergent_members), 0,
                      "alpha is rational"};
  } else if (cf.is_periodic()) {
    auto classes = analyse_parity_classes(cf, query.side == Side::lower ? 0 : 1);
    out.finiteness = detail::kind3_side_finiteness(cf, query.side, classes);
  } else {
    out.finiteness = detail::unknown_beyond(query, out.complete ? "stream-backed alpha" : "stream comparison undecided");
  }
  return out;
}

/// Sufficient condition for finitely many best approximations of kind
/// ell >= 4: limsup log(a_{2n+1})/(2n+1) < (ell-3) log(golden ratio), which
/// holds whenever the terms are bounded. Never computes a count.
inline Finiteness finiteness_kind_ge4(const CFExpansion& cf, unsigned kind, Side side) {
  (void)side;
  if (kind < 4) throw Error(Errc::invalid_argument, "finiteness_kind_ge4 needs kind >= 4");
  if (cf.is_exact()) return {FinitenessKind::proven_finite, std::nullopt, 0, "bounded terms"};
  if (cf.term_bound()) {
    return {FinitenessKind::proven_finite, std::nullopt, 0, "declared term bound " + cf.term_bound()->str()};
  }
  return {FinitenessKind::unknown_beyond, std::nullopt, 0, "term growth of the stream is unknown"};
}

/// Best approximations of kind ell >= 4.
inline ClassificationResult enumerate_kind_ge4(const Query& query) {
  query.validate();
  if (query.kind < 4) throw Error(Errc::invalid_argument, "enumerate_kind_ge4 needs kind >= 4");
  ClassificationResult out = detail::convergent_members(query);
  const CFExpansion& cf = query.alpha;
  if (cf.is_finite()) {
    out.finiteness = {FinitenessKind::proven_finite, detail::rational_total(query, detail::convergent_members), 0,
                      "alpha is rational"};
  } else if (cf.is_periodic()) {
    // C_n(ell) >= q_n^(ell-3) / (A + 2) with A the largest term, so once that
    // exceeds the first candidate's error no later convergent can be a member.
    const auto& per = cf.periodicity();
    BigInt big = 0;
    for (std::size_t j = 1; j <= per.preperiod + per.period; ++j) big = std::max(big, cf.term_or_throw(j));
    const bool lower = query.side == Side::lower;
    QuadraticSurd first_error = lower ? cf.value() - QuadraticSurd(cf.term_or_throw(0))
                                      : QuadraticSurd(cf.value().ceil()) - cf.value();
    ConvergentTable t;
    long n = 0;
    while (true) {
      detail::ensure_row(t, cf, n);
      if (QuadraticSurd(BigRational(ipow(t.q(n), query.kind - 3), big + 2)) > first_error) break;
      ++n;
    }
    Query all = query;
    all.q_max = t.q(n);
    out.finiteness = {FinitenessKind::proven_finite, detail::convergent_members(all).members.size(), 0,
                      "bounded terms; no member beyond q = " + t.q(n).str()};
  } else {
    Finiteness f = finiteness_kind_ge4(cf, query.kind, query.side);
    if (f.kind == FinitenessKind::unknown_beyond) f.beyond = query.q_max;
    out.finiteness = std::move(f);
  }
  if (!out.complete && out.finiteness.kind != FinitenessKind::proven_finite) {
    out.finiteness = detail::unknown_beyond(query, "stream comparison undecided");
  }
  return out;
}

/// Dispatches on the kind.
inline ClassificationResult classify(const Query& query) {
  query.validate();
  if (query.kind <= 2) return enumerate_kind_1_2(query);
  if (query.kind == 3) return enumerate_kind_3(query);
  return enumerate_kind_ge4(query);
}

}  // namespace onesided
