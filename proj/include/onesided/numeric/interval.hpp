#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "onesided/errors.hpp"
#include "onesided/numeric/bigint.hpp"
#include "onesided/numeric/surd.hpp"

namespace onesided {

/// Closed interval [lo, hi] with rational endpoints.
class RationalInterval {
 public:
  RationalInterval() = default;
  explicit RationalInterval(BigRational point) : lo_(point), hi_(std::move(point)) {}
  RationalInterval(BigRational a, BigRational b) {
    if (a > b) std::swap(a, b);
    lo_ = std::move(a);
    hi_ = std::move(b);
  }

  const BigRational& lo() const noexcept { return lo_; }
  const BigRational& hi() const noexcept { return hi_; }
  BigRational width() const { return hi_ - lo_; }
  BigRational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const BigRational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const QuadraticSurd& x) const { return QuadraticSurd(lo_) <= x && x <= QuadraticSurd(hi_); }
  bool strictly_positive() const { return lo_ > 0; }

  RationalInterval operator-() const { return {-hi_, -lo_}; }
  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend RationalInterval operator+(const RationalInterval& a, const BigRational& c) { return {a.lo_ + c, a.hi_ + c}; }
  friend RationalInterval operator*(const RationalInterval& a, const BigRational& c) { return {a.lo_ * c, a.hi_ * c}; }

  /// 1/x for an interval not containing zero.
  RationalInterval reciprocal() const {
    if (lo_.sign() <= 0 && hi_.sign() >= 0) throw Error(Errc::zero_denominator, "reciprocal of an interval containing 0");
    return {1 / hi_, 1 / lo_};
  }

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

  std::string str() const { return "[" + to_string(lo_) + ", " + to_string(hi_) + "]"; }

 private:
  BigRational lo_{0}, hi_{0};
};

/// Either an exact quadratic value or a lazily refined rational enclosure.
///
/// Enclosures come from stream-backed continued fractions: level k encloses
/// the value using k additional terms, and each level at least halves the
/// width. A level returns nullopt once the underlying stream is exhausted.
class RealValue {
 public:
  using Refiner = std::function<std::optional<RationalInterval>(std::size_t level)>;

  RealValue() : state_(QuadraticSurd()) {}
  RealValue(QuadraticSurd exact) : state_(std::move(exact)) {}  // NOLINT
  RealValue(const BigRational& exact) : state_(QuadraticSurd(exact)) {}  // NOLINT

  static RealValue enclosure(Refiner refiner) {
    auto e = std::make_shared<Enclosure>();
    e->refiner = std::move(refiner);
    auto first = e->refiner(0);
    if (!first) throw Error(Errc::insufficient_terms, "enclosure has no initial bracket");
    e->current = *first;
    return RealValue(std::move(e));
  }

  bool is_exact() const { return std::holds_alternative<QuadraticSurd>(state_); }
  const QuadraticSurd& exact() const {
    if (!is_exact()) throw Error(Errc::exactness_required, "value is only known as an enclosure");
    return std::get<QuadraticSurd>(state_);
  }

  /// Current enclosure; a point interval for exact rationals. Irrational exact
  /// values are bracketed by consecutive integers scaled by `2^-bits`.
  RationalInterval interval(unsigned bits = 64) const {
    if (is_exact()) return bracket(exact(), bits);
    return std::get<std::shared_ptr<Enclosure>>(state_)->current;
  }

  /// Pulls one more level; false once exhausted (or for exact values).
  bool refine() const {
    if (is_exact()) return false;
    auto& e = *std::get<std::shared_ptr<Enclosure>>(state_);
    auto next = e.refiner(e.level + 1);
    if (!next) return false;
    ++e.level;
    e.current = *next;
    return true;
  }

  /// Applies a map given both as an exact function and as its image on intervals.
  RealValue map(const std::function<QuadraticSurd(const QuadraticSurd&)>& exact_fn,
                const std::function<RationalInterval(const RationalInterval&)>& interval_fn) const {
    if (is_exact()) return RealValue(exact_fn(exact()));
    auto inner = std::get<std::shared_ptr<Enclosure>>(state_);
    auto e = std::make_shared<Enclosure>();
    e->level = inner->level;
    e->current = interval_fn(inner->current);
    e->refiner = [inner, interval_fn](std::size_t level) -> std::optional<RationalInterval> {
      while (inner->level < level) {
        auto next = inner->refiner(inner->level + 1);
        if (!next) return std::nullopt;
        ++inner->level;
        inner->current = *next;
      }
      return interval_fn(inner->current);
    };
    return RealValue(std::move(e));
  }

  RealValue operator+(const BigRational& c) const {
    return map([&](const QuadraticSurd& x) { return x + QuadraticSurd(c); },
               [c](const RationalInterval& i) { return i + c; });
  }
  RealValue operator-() const {
    return map([](const QuadraticSurd& x) { return -x; }, [](const RationalInterval& i) { return -i; });
  }
  /// Multiplication by an exact rational.
  RealValue scaled(const BigRational& c) const {
    return map([&](const QuadraticSurd& x) { return x * QuadraticSurd(c); },
               [c](const RationalInterval& i) { return i * c; });
  }
  RealValue reciprocal() const {
    return map([](const QuadraticSurd& x) { return x.reciprocal(); },
               [](const RationalInterval& i) { return i.reciprocal(); });
  }

  static RationalInterval bracket(const QuadraticSurd& x, unsigned bits) {
    if (x.is_rational()) return RationalInterval(x.to_rational());
    BigInt scale = BigInt(1) << bits;
    BigInt f = (x * QuadraticSurd(scale)).floor();
    return {BigRational(f, scale), BigRational(f + 1, scale)};
  }

 private:
  struct Enclosure {
    Refiner refiner;
    std::size_t level = 0;
    RationalInterval current;
  };

  explicit RealValue(std::shared_ptr<Enclosure> e) : state_(std::move(e)) {}

  std::variant<QuadraticSurd, std::shared_ptr<Enclosure>> state_;
};

enum class Ordering { less, equal, greater, undecided };

constexpr std::string_view to_string(Ordering o) noexcept {
  switch (o) {
    case Ordering::less: return "LT";
    case Ordering::equal: return "EQ";
    case Ordering::greater: return "GT";
    case Ordering::undecided: return "Undecided";
  }
  return "?";
}

inline Ordering to_ordering(std::strong_ordering o) {
  return o < 0 ? Ordering::less : o > 0 ? Ordering::greater : Ordering::equal;
}

/// Compares two values; exact when both are exact, otherwise refines the
/// enclosures (at most `budget` refinements) until they separate.
inline Ordering compare(const RealValue& a, const RealValue& b, std::size_t budget = 64) {
  if (a.is_exact() && b.is_exact()) return to_ordering(compare(a.exact(), b.exact()));
  unsigned bits = 64;
  for (std::size_t step = 0;; ++step) {
    RationalInterval ia = a.interval(bits), ib = b.interval(bits);
    if (ia.hi() < ib.lo()) return Ordering::less;
    if (ib.hi() < ia.lo()) return Ordering::greater;
    if (step >= budget) return Ordering::undecided;
    // Refine whichever side is wider; fall back to the other when it is exhausted.
    bool a_first = ia.width() >= ib.width();
    bool progressed = a_first ? (a.refine() || b.refine()) : (b.refine() || a.refine());
    if (a.is_exact() || b.is_exact()) {
      bits += 64;
      progressed = true;
    }
    if (!progressed) return Ordering::undecided;
  }
}

}  // namespace onesided
