#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "onesided/cf/expansion.hpp"
#include "onesided/cf/ops.hpp"
#include "onesided/errors.hpp"
#include "onesided/numeric/interval.hpp"

namespace onesided {

enum class Side { lower, upper };

constexpr std::string_view to_string(Side s) noexcept { return s == Side::lower ? "lower" : "upper"; }

/// Which best one-sided approximations to look for: kind ell, one side,
/// denominators up to q_max. `budget` bounds enclosure refinements when
/// alpha is stream-backed.
struct Query {
  CFExpansion alpha;
  unsigned kind = 1;
  Side side = Side::lower;
  BigInt q_max = 1;
  std::size_t budget = 64;

  void validate() const {
    if (kind < 1) throw Error(Errc::invalid_argument, "kind must be >= 1");
    if (q_max < 1) throw Error(Errc::invalid_argument, "q_max must be >= 1");
  }
};

enum class FinitenessKind { proven_finite, proven_infinite, unknown_beyond };

constexpr std::string_view to_string(FinitenessKind k) noexcept {
  switch (k) {
    case FinitenessKind::proven_finite: return "ProvenFinite";
    case FinitenessKind::proven_infinite: return "ProvenInfinite";
    case FinitenessKind::unknown_beyond: return "UnknownBeyond";
  }
  return "?";
}

struct Finiteness {
  FinitenessKind kind = FinitenessKind::unknown_beyond;
  std::optional<std::size_t> total;  // exact member count when known
  BigInt beyond = 0;                 // q bound for UnknownBeyond
  std::string reason;
};

struct ClassificationResult {
  std::vector<FractionRecord> members;  // ascending q
  std::vector<std::string> witnesses;   // parallel to members
  Finiteness finiteness;
  std::vector<std::string> diagnostics;
  bool complete = true;  // every candidate with q <= q_max was decided

  void add(FractionRecord f, std::string witness) {
    members.push_back(std::move(f));
    witnesses.push_back(std::move(witness));
  }
};

/// alpha itself: exact, or a0 + 1/[a1; a2, ...] as an enclosure.
inline RealValue alpha_value(const CFExpansion& cf) {
  if (cf.is_exact()) return RealValue(cf.value());
  return tail_value(cf, 0).reciprocal() + BigRational(cf.term_or_throw(0));
}

/// q^(ell-1) * |alpha - p/q| on the requested side (negative when p/q is on the wrong side).
inline RealValue weighted_error(const CFExpansion& cf, const FractionRecord& f, unsigned kind, Side side) {
  RealValue diff = alpha_value(cf) + BigRational(-f.p, f.q);
  if (side == Side::upper) diff = -diff;
  BigRational weight = kind >= 1 ? BigRational(ipow(f.q, kind - 1)) : BigRational(1);
  return diff.scaled(weight);
}

}  // namespace onesided
