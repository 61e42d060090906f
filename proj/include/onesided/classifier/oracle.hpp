#pragma once

#include <optional>

#include "onesided/classifier/types.hpp"

namespace onesided {

/// Definition-level check: scans every denominator q <= q_max, takes the
/// closest fraction on the requested side (p = floor(q alpha) or
/// ceil(q alpha)) and keeps it when it is reduced and its weighted error
/// q^(ell-1) |alpha - p/q| is strictly below the error of every fraction with
/// a smaller denominator. Needs an exact alpha.
inline ClassificationResult brute_force_oracle(const Query& query) {
  query.validate();
  if (!query.alpha.is_exact()) {
    throw Error(Errc::exactness_required, "the brute-force oracle needs a rational or quadratic alpha");
  }
  const QuadraticSurd& alpha = query.alpha.value();
  ClassificationResult out;
  std::optional<QuadraticSurd> best;
  for (BigInt q = 1; q <= query.q_max; ++q) {
    QuadraticSurd scaled = alpha * QuadraticSurd(q);
    BigInt p = query.side == Side::lower ? scaled.floor() : scaled.ceil();
    QuadraticSurd gap = query.side == Side::lower ? scaled - QuadraticSurd(p) : QuadraticSurd(p) - scaled;
    // gap = q |alpha - p/q|, so the weighted error is gap * q^(ell-2).
    QuadraticSurd weighted = query.kind == 1 ? gap / QuadraticSurd(q) : gap * QuadraticSurd(ipow(q, query.kind - 2));
    const bool beats = !best || weighted < *best;
    if (beats && gcd(abs(p), q) == 1) {
      out.add({p, q, {OriginKind::convergent, -1, 0}}, "definition: smallest weighted error so far");
    }
    if (beats) best = weighted;
  }
  out.finiteness = {FinitenessKind::unknown_beyond, std::nullopt, query.q_max, "exhaustive scan stops at q_max"};
  return out;
}

}  // namespace onesided
