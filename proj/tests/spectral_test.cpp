#include <gtest/gtest.h>

#include <random>

#include "onesided/classifier/classify.hpp"
#include "onesided/spectral/gaps.hpp"
#include "test_support.hpp"

using namespace onesided;
using namespace testsupport;

namespace {

RationalInterval point(long long num, long long den) { return RationalInterval(BigRational(num, den)); }

QuadraticSurd surd(long long p, long long q, long long d, long long r) { return QuadraticSurd::canonicalize(p, q, d, r); }

double to_double(const BigRational& x) { return static_cast<double>(x); }

// (2m/pi) tan((pi/2) frac(m theta)) in long double, for cross-checks away from the boundary.
long double naive_lhs(std::uint64_t m, long double theta) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double x = static_cast<long double>(m) * theta;
  long double f = x - std::floor(x);
  return 2.0L * static_cast<long double>(m) / pi * std::tan(pi / 2.0L * f);
}

}  // namespace

TEST(GapPresent, Root5AtSeventeen) {
  CFExpansion theta(sqrt_of(5));
  GapCheck yes = gap_present(17, theta, Rho::enclosed(point(30, 100)));
  EXPECT_EQ(yes.answer, GapAnswer::yes);
  EXPECT_TRUE(yes.lhs.hi() < BigRational(30, 100));
  EXPECT_EQ(gap_present(17, theta, Rho::enclosed(point(20, 100))).answer, GapAnswer::no);
  // frac(17 sqrt 5) = 0.01315..., so the left side is a little above 0.2236.
  EXPECT_NEAR(to_double(yes.lhs.lo()), 0.22361, 1e-4);
}

TEST(GapPresent, RationalThetaHitsZero) {
  GapCheck c = gap_present(2, AlphaSource(BigRational(1, 2)), point(1, 1000));
  EXPECT_EQ(c.answer, GapAnswer::yes);
  EXPECT_EQ(c.lhs, point(0, 1));
  EXPECT_EQ(c.bits, 0u);
  EXPECT_EQ(gap_present(1, AlphaSource(BigRational(1, 2)), point(1, 1000)).answer, GapAnswer::no);
}

TEST(GapPresent, LinearBoundRejectsWithoutFloatingPoint) {
  // m frac(m theta) already exceeds rho, so tan(x) >= x settles it.
  GapCheck c = gap_present(1, CFExpansion(sqrt_of(2)), Rho::enclosed(point(1, 10)));
  EXPECT_EQ(c.answer, GapAnswer::no);
  EXPECT_EQ(c.bits, 0u);
}

TEST(GapPresent, RhoOverPiSquared) {
  // u a / pi^2 with u = 2.9608, a = 1: just above 0.3.
  CFExpansion theta(sqrt_of(5));
  Rho rho = Rho::over_pi_squared(QuadraticSurd(BigRational(29608, 10000)));
  EXPECT_NEAR(to_double(rho.at(128).to_rational().lo()), 0.29999, 1e-4);
  EXPECT_EQ(gap_present(17, theta, rho).answer, GapAnswer::yes);
  EXPECT_EQ(gap_present(16, theta, rho).answer, GapAnswer::no);
}

TEST(GapPresent, ArgumentNearQuarterTurnIsUndecidedNotWrong) {
  // frac(m theta) within 2^-200 of 1 keeps the tangent argument next to pi/2.
  BigInt big = BigInt(1) << 200;
  AlphaSource theta(BigRational(big - 1, big));
  GapCheck c = gap_present(1, CFExpansion(theta), Rho::enclosed(point(1000, 1)), 128);
  EXPECT_EQ(c.answer, GapAnswer::undecided);
  EXPECT_EQ(gap_present(1, CFExpansion(theta), Rho::enclosed(point(1000, 1)), 1024).answer, GapAnswer::no);
}

TEST(GapPresent, StreamThetaUsesEnclosure) {
  // sqrt 5 = [2; 4, 4, ...] as a bare stream.
  std::vector<long long> terms{2};
  for (int i = 0; i < 40; ++i) terms.push_back(4);
  CFExpansion stream(stream_of(terms));
  EXPECT_EQ(gap_present(17, stream, Rho::enclosed(point(30, 100))).answer, GapAnswer::yes);
  EXPECT_EQ(gap_present(17, stream, Rho::enclosed(point(20, 100))).answer, GapAnswer::no);
}

TEST(GapPresent, FloorUndecidedOnShortStream) {
  CFExpansion stream(stream_of({0, 1}));  // only [0; 1]: theta somewhere near 1
  try {
    gap_present(1, stream, Rho::enclosed(point(1, 10)));
    FAIL() << "expected FloorUndecided";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::floor_undecided);
  }
}

TEST(GapPresent, RejectsZeroM) {
  EXPECT_THROW(gap_present(0, CFExpansion(sqrt_of(2)), Rho::enclosed(point(1, 1))), Error);
}

TEST(GapThreshold, KnownValues) {
  EXPECT_EQ(gap_threshold_L(CFExpansion(sqrt_of(5))), surd(0, 1, 5, 10));  // 1/(2 sqrt 5)
  EXPECT_EQ(gap_threshold_L(CFExpansion(golden())), surd(0, 1, 5, 5));    // 1/sqrt 5
  EXPECT_EQ(gap_threshold_L(CFExpansion(sqrt_of(2) - QuadraticSurd(BigInt(1)))), surd(0, 1, 2, 4));
  EXPECT_EQ(gap_threshold_L(CFExpansion(sqrt_of(5).reciprocal())), surd(0, 1, 5, 10));
}

TEST(GapThreshold, Errors) {
  try {
    gap_threshold_L(CFExpansion(AlphaSource(BigRational(3, 7))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_quadratic);
  }
  // [0; 100, 2, (1)] has finitely many best lower approximations of the 3rd kind.
  try {
    gap_threshold_L(CFExpansion(AlphaSource(cf_of({0, 100, 2}, {1}))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::no_limit_structure);
  }
}

TEST(GapThreshold, ProductsApproachThreshold) {
  CFExpansion theta(sqrt_of(5));
  const QuadraticSurd L = gap_threshold_L(theta);
  ConvergentTable t = convergents(theta, 80);
  Query q{theta, 3, Side::lower, t.q(80), 64};
  auto members = enumerate_kind_3(q).members;
  ASSERT_GE(members.size(), 20u);
  const FractionRecord& m20 = members[19];
  QuadraticSurd product = QuadraticSurd(m20.q) * (QuadraticSurd(m20.q) * theta.value() - QuadraticSurd(m20.p));
  EXPECT_TRUE(product > L);
  EXPECT_TRUE(product - L < QuadraticSurd(BigRational(1, 1000000)));
}

TEST(GapThreshold, TangentSequenceStrictlyDecreases) {
  for (QuadraticSurd theta_value : {sqrt_of(5), golden(), sqrt_of(2) - QuadraticSurd(BigInt(1)), sqrt_of(7)}) {
    CFExpansion theta(theta_value);
    ConvergentTable t = convergents(theta, 90);
    auto members = enumerate_kind_3(Query{theta, 3, Side::lower, t.q(90), 64}).members;
    ASSERT_GE(members.size(), 21u) << theta_value;
    const QuadraticSurd L = gap_threshold_L(theta);
    std::optional<RationalInterval> prev;
    for (std::size_t i = 0; i < 20; ++i) {
      auto lhs = gap_lhs(members[i].q, theta, 1024);
      ASSERT_TRUE(lhs);
      EXPECT_TRUE(lhs->lo() > RealValue::bracket(L, 256).hi()) << theta_value << " i = " << i;
      if (prev) EXPECT_TRUE(lhs->hi() < prev->lo()) << theta_value << " i = " << i;
      prev = lhs;
    }
  }
}

TEST(GapPresent, AgreesWithLongDoubleAwayFromBoundary) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick_m(1, 500);
  std::uniform_int_distribution<int> pick_rho(1, 400);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    QuadraticSurd theta = random_surd(rng, 10);
    std::uint64_t m = pick_m(rng);
    BigRational rho(pick_rho(rng), 1000);
    long double approx = naive_lhs(m, static_cast<long double>(to_double(RealValue::bracket(theta, 80).lo())));
    long double r = static_cast<long double>(to_double(rho));
    if (std::fabs(approx - r) < 1e-6L * (1 + std::fabs(approx))) continue;
    GapCheck c = gap_present(m, CFExpansion(theta), Rho::enclosed(RationalInterval(rho)));
    EXPECT_EQ(c.answer, approx < r ? GapAnswer::yes : GapAnswer::no) << theta << " m = " << m;
    ++checked;
  }
  EXPECT_GT(checked, 350);
}

TEST(ClassifyGaps, ZeroScenario) {
  LatticeParams p{QuadraticSurd(BigInt(1)), sqrt_of(5), QuadraticSurd(BigRational(9869, 10000))};
  GapReport r = classify_gaps(p, 3000);
  EXPECT_EQ(r.classification, GapClassification::zero);
  EXPECT_TRUE(r.solutions.empty());
  EXPECT_TRUE(r.undecided.empty());
  ASSERT_TRUE(r.L_a && r.L_b);
  EXPECT_EQ(*r.L_a, surd(0, 1, 5, 10));
  EXPECT_EQ(*r.L_b, surd(0, 1, 5, 10));
  EXPECT_EQ(r.rho_a_vs_L_a, Ordering::less);
  EXPECT_EQ(r.rho_b_vs_L_b, Ordering::less);
}

TEST(ClassifyGaps, JustAboveTheBoundary) {
  LatticeParams p{QuadraticSurd(BigInt(1)), sqrt_of(5), QuadraticSurd(BigRational(9870, 10000))};
  GapReport r = classify_gaps(p, 10);
  EXPECT_EQ(r.classification, GapClassification::infinite);
  EXPECT_EQ(r.rho_b_vs_L_b, Ordering::greater);
}

TEST(ClassifyGaps, InfiniteScenario) {
  LatticeParams p{QuadraticSurd(BigInt(1)), sqrt_of(5), QuadraticSurd(BigRational(29608, 10000))};
  GapReport r = classify_gaps(p, 20000);
  EXPECT_EQ(r.classification, GapClassification::infinite);
  std::vector<std::uint64_t> a, b;
  for (const auto& s : r.solutions) (s.family == GapFamily::a ? a : b).push_back(s.m);
  EXPECT_EQ(a, (std::vector<std::uint64_t>{1, 17, 305, 5473}));
  EXPECT_EQ(b, (std::vector<std::uint64_t>{1, 9, 161, 2889}));
  EXPECT_TRUE(r.undecided.empty());
}

TEST(ClassifyGaps, SolutionsAreBestLowerApproximationDenominators) {
  // Every gap sits at a denominator of a best lower approximation of the 3rd kind.
  LatticeParams p{QuadraticSurd(BigInt(1)), sqrt_of(5), QuadraticSurd(BigRational(29608, 10000))};
  GapReport r = classify_gaps(p, 20000);
  CFExpansion ta(sqrt_of(5)), tb(sqrt_of(5).reciprocal());
  auto denominators = [](const CFExpansion& t) {
    std::set<BigInt> out;
    for (const auto& f : enumerate_kind_3(Query{t, 3, Side::lower, BigInt(20000), 64}).members) out.insert(f.q);
    return out;
  };
  auto da = denominators(ta), db = denominators(tb);
  for (const auto& s : r.solutions) {
    const auto& d = s.family == GapFamily::a ? da : db;
    EXPECT_TRUE(d.count(BigInt(s.m))) << to_string(s.family) << " m = " << s.m;
  }
}

TEST(ClassifyGaps, RationalRatioIsUnknown) {
  LatticeParams p{QuadraticSurd(BigInt(2)), QuadraticSurd(BigInt(3)), QuadraticSurd(BigInt(1))};
  GapReport r = classify_gaps(p, 50);
  EXPECT_EQ(r.classification, GapClassification::unknown);
  EXPECT_FALSE(r.diagnostics.empty());
  // m = 3 in family A: 3 * 3/2 has fractional part 1/2, tan(pi/4) = 1, lhs = 6/pi.
  for (const auto& s : r.solutions) EXPECT_NE(s.m, 0u);
}

TEST(ClassifyGaps, RejectsNonPositive) {
  EXPECT_THROW(classify_gaps({QuadraticSurd(BigInt(1)), sqrt_of(2), QuadraticSurd(BigInt(0))}, 5), Error);
  EXPECT_THROW(classify_gaps({QuadraticSurd(BigInt(-1)), sqrt_of(2), QuadraticSurd(BigInt(1))}, 5), Error);
}

TEST(ClassifyGaps, MixedRadicands) {
  try {
    classify_gaps({sqrt_of(2), sqrt_of(3), QuadraticSurd(BigInt(1))}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::mixed_radicand);
  }
}
