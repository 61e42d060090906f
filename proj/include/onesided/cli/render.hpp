#pragma once

#include <string>

#include "json.hpp"
#include "onesided/cf/expansion.hpp"
#include "onesided/cf/ops.hpp"
#include "onesided/classifier/types.hpp"
#include "onesided/numeric/interval.hpp"
#include "onesided/numeric/surd.hpp"

namespace onesided::cli {

using Json = nlohmann::ordered_json;

namespace detail {

inline BigRational pow10(int e) {
  BigInt p = ipow(BigInt(10), static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? BigRational(BigInt(1), p) : BigRational(p);
}

/// Smallest "Ne<k>" (1 <= N <= 9) that is >= b > 0.
inline std::string bound_string(const BigRational& b) {
  if (b <= 0) return "0";
  int e = 0;
  while (pow10(e) > b) --e;
  while (pow10(e + 1) <= b) ++e;
  BigInt n = ceil(b / pow10(e));
  if (n >= 10) {
    n = 1;
    ++e;
  }
  return n.str() + "e" + std::to_string(e);
}

}  // namespace detail

/// Round-half-even at `digits` places, with the rounding error as a "±" bound.
inline std::string decimal(const QuadraticSurd& x, unsigned digits) {
  std::string s = to_decimal(x, digits);
  if (is_exact_decimal(x, digits)) return s + "±0";
  return s + "±" + detail::bound_string(BigRational(5) * detail::pow10(-static_cast<int>(digits) - 1));
}

/// Midpoint rounded half-even at `digits` places; the bound covers the whole interval.
inline std::string decimal(const RationalInterval& x, unsigned digits) {
  if (x.lo() == x.hi()) return decimal(QuadraticSurd(x.lo()), digits);
  const BigRational mid = (x.lo() + x.hi()) / 2;
  const BigRational scale = detail::pow10(static_cast<int>(digits));
  const QuadraticSurd rounded(BigRational(QuadraticSurd(mid).round_scaled(digits)) / scale);
  const BigRational r = rounded.to_rational();
  const BigRational reach = std::max(BigRational(x.hi() - r), BigRational(r - x.lo()));
  return to_decimal(rounded, digits) + "±" + detail::bound_string(reach);
}

inline std::string decimal(const RealValue& x, unsigned digits) {
  if (x.is_exact()) return decimal(x.exact(), digits);
  return decimal(x.interval(), digits);
}

inline Json string_list(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

/// "[a0;a1,...]" for finite or streamed terms, "[a0;a1,...,(b1,...)]" for periodic ones.
inline std::string cf_text(const CFExpansion& cf, const std::vector<BigInt>& terms, bool more) {
  const Periodicity& per = cf.periodicity();
  std::vector<BigInt> shown = terms;
  if (per.kind == PeriodicityKind::periodic) shown = cf.prefix(per.preperiod + per.period + 1);
  std::string s = "[" + shown.front().str();
  for (std::size_t i = 1; i < shown.size(); ++i) {
    s += i == 1 ? ";" : ",";
    if (per.kind == PeriodicityKind::periodic && i == per.preperiod + 1) s += "(";
    s += shown[i].str();
  }
  if (per.kind == PeriodicityKind::periodic) s += ")";
  else if (more) s += shown.size() == 1 ? ";..." : ",...";
  return s + "]";
}

inline Json periodicity_json(const CFExpansion& cf) {
  const Periodicity& p = cf.periodicity();
  Json out;
  switch (p.kind) {
    case PeriodicityKind::finite:
      out["kind"] = "finite";
      out["last_index"] = p.last_index;
      break;
    case PeriodicityKind::periodic:
      out["kind"] = "periodic";
      out["preperiod"] = p.preperiod;
      out["period"] = p.period;
      break;
    case PeriodicityKind::unknown:
      out["kind"] = "unknown";
      if (cf.term_bound()) out["term_bound"] = cf.term_bound()->str();
      break;
  }
  return out;
}

/// Up to `count` leading terms (fewer when the expansion or stream ends).
inline Json cf_prefix_json(const CFExpansion& cf, std::size_t count) {
  std::vector<BigInt> terms;
  for (std::size_t j = 0; j < count; ++j) {
    auto t = cf.term(j);
    if (!t) break;
    terms.push_back(*t);
  }
  return string_list(terms);
}

inline Json finiteness_json(const Finiteness& f) {
  Json out;
  out["status"] = std::string(to_string(f.kind));
  out["total"] = f.total ? Json(*f.total) : Json(nullptr);
  out["beyond"] = f.kind == FinitenessKind::unknown_beyond ? Json(f.beyond.str()) : Json(nullptr);
  out["reason"] = f.reason;
  return out;
}

inline Json member_json(const CFExpansion& cf, const FractionRecord& f, unsigned kind, Side side, unsigned digits,
                        const std::string& witness) {
  Json out;
  out["p"] = f.p.str();
  out["q"] = f.q.str();
  out["origin"] = f.origin.str();
  RealValue err = weighted_error(cf, f, kind, side);
  out["weighted_error_exact"] = err.is_exact() ? Json(err.exact().str()) : Json(nullptr);
  out["weighted_error"] = decimal(err, digits);
  out["witness"] = witness;
  return out;
}

}  // namespace onesided::cli
