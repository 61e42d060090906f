#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "onesided/cf/expansion.hpp"
#include "onesided/cf/ops.hpp"
#include "onesided/classifier/quadratic.hpp"
#include "onesided/classifier/types.hpp"
#include "onesided/errors.hpp"
#include "onesided/numeric/interval.hpp"
#include "onesided/numeric/mpfr_interval.hpp"
#include "onesided/numeric/surd.hpp"

namespace onesided {

enum class GapAnswer { yes, no, undecided };

constexpr std::string_view to_string(GapAnswer a) noexcept {
  switch (a) {
    case GapAnswer::yes: return "Yes";
    case GapAnswer::no: return "No";
    case GapAnswer::undecided: return "Undecided";
  }
  return "?";
}

constexpr unsigned kMinBits = 64;
constexpr unsigned kMaxBits = 4096;

/// Right-hand side of a gap condition: either a fixed rational enclosure, or
/// c / pi^2 for an exact c (such as u*a), enclosed at whatever precision is asked.
class Rho {
 public:
  static Rho enclosed(RationalInterval r) { return Rho(std::move(r)); }
  static Rho over_pi_squared(QuadraticSurd c) { return Rho(std::move(c)); }

  MpfrInterval at(unsigned bits) const {
    if (auto* r = std::get_if<RationalInterval>(&v_)) return MpfrInterval::of(*r, bits);
    const MpfrInterval pi = MpfrInterval::pi(bits);
    return MpfrInterval::of(std::get<QuadraticSurd>(v_), bits) / (pi * pi);
  }

  /// A rational upper bound, for cheap rejections (pi^2 > 9.8696).
  BigRational upper_bound() const {
    if (auto* r = std::get_if<RationalInterval>(&v_)) return r->hi();
    const QuadraticSurd c = std::get<QuadraticSurd>(v_) * QuadraticSurd(BigRational(10000, 98696));
    return RealValue::bracket(c, 64).hi();
  }

  bool over_pi_squared() const { return std::holds_alternative<QuadraticSurd>(v_); }
  const QuadraticSurd& coefficient() const { return std::get<QuadraticSurd>(v_); }

 private:
  explicit Rho(RationalInterval r) : v_(std::move(r)) {}
  explicit Rho(QuadraticSurd c) : v_(std::move(c)) {}
  std::variant<RationalInterval, QuadraticSurd> v_;
};

struct GapCheck {
  GapAnswer answer = GapAnswer::undecided;
  RationalInterval lhs;  // certified enclosure of (2m/pi) tan((pi/2) frac(m theta))
  RationalInterval rho;  // enclosure used on the right-hand side
  unsigned bits = 0;     // precision that settled it (0: decided exactly)
};

namespace detail {

/// frac(m theta): exact for exact theta, otherwise an enclosure whose floor is
/// settled, refined until narrower than 2^-bits or the stream runs out.
inline std::variant<QuadraticSurd, RationalInterval> fractional_part(const BigInt& bm, const CFExpansion& theta,
                                                                     std::size_t budget, unsigned bits = 0) {
  if (theta.is_exact()) {
    QuadraticSurd x = theta.value() * QuadraticSurd(bm);
    return x - QuadraticSurd(x.floor());
  }
  RealValue t = alpha_value(theta);
  for (std::size_t step = 0;; ++step) {
    RationalInterval box = t.interval() * BigRational(bm);
    BigInt f_lo = floor(box.lo()), f_hi = floor(box.hi());
    const bool narrow = bits == 0 || box.width() * BigRational(BigInt(1) << bits) <= BigRational(1);
    if (f_lo == f_hi && (narrow || !t.refine())) return box + BigRational(-f_lo);
    if (f_lo == f_hi) continue;
    if (step >= budget || !t.refine()) {
      throw Error(Errc::floor_undecided, "floor(m theta) undecided for m = " + bm.str());
    }
  }
}

/// (2m/pi) tan((pi/2) f) at `bits` bits; empty when the argument cannot be kept below pi/2.
inline std::optional<MpfrInterval> gap_lhs(const BigInt& m, const std::variant<QuadraticSurd, RationalInterval>& frac,
                                           unsigned bits) {
  const MpfrInterval f = std::holds_alternative<QuadraticSurd>(frac)
                             ? MpfrInterval::of(std::get<QuadraticSurd>(frac), bits)
                             : MpfrInterval::of(std::get<RationalInterval>(frac), bits);
  const MpfrInterval pi = MpfrInterval::pi(bits);
  const MpfrInterval x = (pi * f).halved();
  if (!x.certainly_less(pi.halved())) return std::nullopt;
  return (x.tan() * MpfrInterval::of(BigRational(m * 2), bits)) / pi;
}

}  // namespace detail

/// Certified enclosure of (2m/pi) tan((pi/2) frac(m theta)) at `bits` bits.
inline std::optional<RationalInterval> gap_lhs(const BigInt& m, const CFExpansion& theta, unsigned bits) {
  auto lhs = detail::gap_lhs(m, detail::fractional_part(m, theta, 64), bits);
  if (!lhs) return std::nullopt;
  return lhs->to_rational();
}

/// Gap condition for one m: (2m/pi) tan((pi/2) frac(m theta)) < rho.
///
/// Decided exactly when frac(m theta) = 0 and by tan(x) >= x when
/// m frac(m theta) already reaches rho; otherwise by outward-rounded interval
/// evaluation at 64, 128, ... up to `max_bits` bits.
inline GapCheck gap_present(std::uint64_t m, const CFExpansion& theta, const Rho& rho, unsigned max_bits = kMaxBits) {
  if (m == 0) throw Error(Errc::invalid_argument, "gap_present needs m >= 1");
  const BigInt big_m(m);
  auto frac = detail::fractional_part(big_m, theta, 64);
  GapCheck out;
  const QuadraticSurd bm{big_m};
  if (auto* f = std::get_if<QuadraticSurd>(&frac)) {
    if (f->sign() == 0) {
      out.answer = GapAnswer::yes;
      out.lhs = RationalInterval(BigRational(0));
      out.rho = rho.at(kMinBits).to_rational();
      return out;
    }
    if (bm * *f >= QuadraticSurd(rho.upper_bound())) {
      out.answer = GapAnswer::no;
      out.lhs = RationalInterval(QuadraticSurd(bm * *f).floor(), QuadraticSurd(bm * *f).ceil());
      out.rho = rho.at(kMinBits).to_rational();
      return out;
    }
  } else {
    const auto& box = std::get<RationalInterval>(frac);
    if (box.lo() * BigRational(BigInt(m)) >= rho.upper_bound()) {
      out.answer = GapAnswer::no;
      out.lhs = box * BigRational(BigInt(m));
      out.rho = rho.at(kMinBits).to_rational();
      return out;
    }
  }
  for (unsigned bits = kMinBits; bits <= max_bits; bits *= 2) {
    out.bits = bits;
    out.rho = rho.at(bits).to_rational();
    if (!theta.is_exact()) frac = detail::fractional_part(big_m, theta, 64 + bits, bits);
    auto lhs = detail::gap_lhs(big_m, frac, bits);
    if (!lhs) continue;  // too close to pi/2 at this precision
    const MpfrInterval r = rho.at(bits);
    out.lhs = lhs->to_rational();
    if (lhs->certainly_less(r)) {
      out.answer = GapAnswer::yes;
      return out;
    }
    if (lhs->certainly_geq(r)) {
      out.answer = GapAnswer::no;
      return out;
    }
  }
  out.answer = GapAnswer::undecided;
  return out;
}

inline GapCheck gap_present(std::uint64_t m, const AlphaSource& theta, const RationalInterval& rho,
                            unsigned max_bits = kMaxBits) {
  return gap_present(m, CFExpansion(theta), Rho::enclosed(rho), max_bits);
}

/// L = lim m_n (m_n theta - floor(m_n theta)) along the denominators of the
/// best lower approximations of the 3rd kind, i.e. 1 / sup over even n of P(n).
inline QuadraticSurd gap_threshold_L(const CFExpansion& theta) {
  if (!theta.is_periodic()) throw Error(Errc::not_quadratic, "threshold needs a quadratic irrational");
  ParityClassAnalysis even = analyse_parity_classes(theta, 0);
  if (!even.unbounded_records()) {
    throw Error(Errc::no_limit_structure, "only finitely many best lower approximations of the 3rd kind");
  }
  return even.limit_sup.reciprocal();
}

inline QuadraticSurd gap_threshold_L(const AlphaSource& theta) { return gap_threshold_L(CFExpansion(theta)); }

/// Exact order of c / pi^2 against a positive exact threshold; BoundaryUndecided past max_bits.
inline Ordering compare_over_pi_squared(const QuadraticSurd& c, const QuadraticSurd& threshold,
                                        unsigned max_bits = kMaxBits) {
  for (unsigned bits = kMinBits; bits <= max_bits; bits *= 2) {
    const MpfrInterval pi = MpfrInterval::pi(bits);
    const MpfrInterval lhs = MpfrInterval::of(c, bits);
    const MpfrInterval rhs = MpfrInterval::of(threshold, bits) * (pi * pi);
    if (lhs.certainly_less(rhs)) return Ordering::less;
    if (mpfr_greater_p(lhs.lo().get(), rhs.hi().get())) return Ordering::greater;
  }
  throw Error(Errc::boundary_undecided, c.str() + "/pi^2 and " + threshold.str() + " agree to " +
                                            std::to_string(max_bits) + " bits");
}

/// Rectangle with edges a, b and a repulsive delta coupling u > 0 at the vertices.
struct LatticeParams {
  QuadraticSurd a, b, u;
};

enum class GapFamily { a, b };
enum class GapClassification { infinite, zero, unknown };

constexpr std::string_view to_string(GapFamily f) noexcept { return f == GapFamily::a ? "A" : "B"; }
constexpr std::string_view to_string(GapClassification c) noexcept {
  switch (c) {
    case GapClassification::infinite: return "Infinite";
    case GapClassification::zero: return "Zero";
    case GapClassification::unknown: return "Unknown";
  }
  return "?";
}

struct GapSolution {
  std::uint64_t m = 0;
  GapFamily family = GapFamily::a;
  GapCheck check;
};

struct GapReport {
  std::vector<GapSolution> solutions;  // by family, then m
  std::vector<GapSolution> undecided;
  GapClassification classification = GapClassification::unknown;
  QuadraticSurd theta;
  std::optional<QuadraticSurd> L_a, L_b;
  RationalInterval rho_a, rho_b;  // enclosures of u a / pi^2 and u b / pi^2
  std::optional<Ordering> rho_a_vs_L_a, rho_b_vs_L_b;
  std::vector<std::string> diagnostics;
};

/// Gaps adjacent to (m pi / a)^2 (family A: theta = b/a, rho = u a / pi^2) and
/// (m pi / b)^2 (family B: theta = a/b, rho = u b / pi^2). With L_a, L_b the
/// thresholds of b/a and a/b, there are infinitely many gaps when some rho
/// exceeds its threshold and none when neither does.
inline GapReport classify_gaps(const LatticeParams& params, std::uint64_t m_max, unsigned max_bits = kMaxBits) {
  if (params.a.sign() <= 0 || params.b.sign() <= 0 || params.u.sign() <= 0) {
    throw Error(Errc::invalid_argument, "a, b and u must be positive");
  }
  GapReport report;
  report.theta = params.b / params.a;
  const QuadraticSurd ca = params.u * params.a, cb = params.u * params.b;
  const Rho rho_a = Rho::over_pi_squared(ca), rho_b = Rho::over_pi_squared(cb);
  report.rho_a = rho_a.at(128).to_rational();
  report.rho_b = rho_b.at(128).to_rational();

  const CFExpansion theta_a(report.theta), theta_b(report.theta.reciprocal());
  if (report.theta.is_rational()) {
    report.diagnostics.push_back("b/a is rational: the infinite-or-zero dichotomy does not apply");
  } else {
    auto threshold = [&](const CFExpansion& t, std::string_view name) -> std::optional<QuadraticSurd> {
      try {
        return gap_threshold_L(t);
      } catch (const Error& e) {
        if (e.code() != Errc::no_limit_structure) throw;
        report.diagnostics.push_back(std::string(name) + ": " + e.what());
        return std::nullopt;
      }
    };
    report.L_a = threshold(theta_a, "b/a");
    report.L_b = threshold(theta_b, "a/b");
    if (report.L_a) report.rho_a_vs_L_a = compare_over_pi_squared(ca, *report.L_a, max_bits);
    if (report.L_b) report.rho_b_vs_L_b = compare_over_pi_squared(cb, *report.L_b, max_bits);
    const bool above = report.rho_a_vs_L_a == Ordering::greater || report.rho_b_vs_L_b == Ordering::greater;
    if (above) {
      report.classification = GapClassification::infinite;
    } else if (report.L_a && report.L_b) {
      report.classification = GapClassification::zero;
    } else {
      report.diagnostics.push_back("a threshold is missing and no rho exceeds the other: classification unknown");
    }
  }

  for (auto [family, theta, rho] : {std::tuple{GapFamily::a, &theta_a, &rho_a}, std::tuple{GapFamily::b, &theta_b, &rho_b}}) {
    for (std::uint64_t m = 1; m <= m_max; ++m) {
      GapCheck c = gap_present(m, *theta, *rho, max_bits);
      if (c.answer == GapAnswer::yes) report.solutions.push_back({m, family, std::move(c)});
      else if (c.answer == GapAnswer::undecided) report.undecided.push_back({m, family, std::move(c)});
    }
  }
  if (!report.undecided.empty()) {
    report.diagnostics.push_back(std::to_string(report.undecided.size()) + " gap conditions undecided at " +
                                 std::to_string(max_bits) + " bits");
  }
  return report;
}

}  // namespace onesided
