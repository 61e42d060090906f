#pragma once

#include <mpfr.h>

#include <algorithm>

#include "onesided/numeric/bigint.hpp"
#include "onesided/numeric/interval.hpp"
#include "onesided/numeric/surd.hpp"

namespace onesided {

/// Owning mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  /// Exact rational value of the stored binary float.
  BigRational to_rational() const {
    BigRational q;
    mpfr_get_q(q.backend().data(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] of binary floats, maintained with outward rounding.
class MpfrInterval {
 public:
  explicit MpfrInterval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

  static MpfrInterval of(const BigRational& x, mpfr_prec_t prec) {
    MpfrInterval out(prec);
    mpfr_set_q(out.lo_.get(), x.backend().data(), MPFR_RNDD);
    mpfr_set_q(out.hi_.get(), x.backend().data(), MPFR_RNDU);
    return out;
  }

  static MpfrInterval of(const RationalInterval& x, mpfr_prec_t prec) {
    MpfrInterval out(prec);
    mpfr_set_q(out.lo_.get(), x.lo().backend().data(), MPFR_RNDD);
    mpfr_set_q(out.hi_.get(), x.hi().backend().data(), MPFR_RNDU);
    return out;
  }

  /// Encloses an exact surd via a rational bracket of width 2^-(prec + 8).
  static MpfrInterval of(const QuadraticSurd& x, mpfr_prec_t prec) {
    if (x.is_rational()) return of(x.to_rational(), prec);
    return of(RealValue::bracket(x, static_cast<unsigned>(prec) + 8), prec);
  }

  static MpfrInterval pi(mpfr_prec_t prec) {
    MpfrInterval out(prec);
    mpfr_const_pi(out.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(out.hi_.get(), MPFR_RNDU);
    return out;
  }

  const Mpfr& lo() const noexcept { return lo_; }
  const Mpfr& hi() const noexcept { return hi_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(lo_.get()); }

  RationalInterval to_rational() const { return {lo_.to_rational(), hi_.to_rational()}; }

  /// Strictly below / at-or-above comparisons that hold for every enclosed pair.
  bool certainly_less(const MpfrInterval& o) const { return mpfr_less_p(hi_.get(), o.lo_.get()) != 0; }
  bool certainly_geq(const MpfrInterval& o) const { return mpfr_greaterequal_p(lo_.get(), o.hi_.get()) != 0; }
  bool nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }

  friend MpfrInterval operator*(const MpfrInterval& a, const MpfrInterval& b) {
    // Only used on nonnegative operands.
    MpfrInterval out(std::max(a.precision(), b.precision()));
    mpfr_mul(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_mul(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return out;
  }

  friend MpfrInterval operator/(const MpfrInterval& a, const MpfrInterval& b) {
    // Nonnegative numerator, strictly positive denominator.
    MpfrInterval out(std::max(a.precision(), b.precision()));
    mpfr_div(out.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_div(out.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return out;
  }

  MpfrInterval halved() const {
    MpfrInterval out = *this;
    mpfr_div_2ui(out.lo_.get(), lo_.get(), 1, MPFR_RNDD);
    mpfr_div_2ui(out.hi_.get(), hi_.get(), 1, MPFR_RNDU);
    return out;
  }

  /// tan on an argument interval inside [0, pi/2); tan is increasing there.
  MpfrInterval tan() const {
    MpfrInterval out(precision());
    mpfr_tan(out.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_tan(out.hi_.get(), hi_.get(), MPFR_RNDU);
    return out;
  }

 private:
  Mpfr lo_, hi_;
};

}  // namespace onesided
