#include <gtest/gtest.h>

#include <random>

#include "dispersal/numerics.hpp"

using namespace dispersal;

namespace {

Scalar sqrt_interval(long n) {
  // Refinable enclosure of sqrt(n) built from MPFR directly.
  Interval::Source src = [n](mpfr_prec_t prec) {
    BigFloat lo(prec), hi(prec);
    mpfr_set_si(lo.get(), n, MPFR_RNDD);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_set_si(hi.get(), n, MPFR_RNDU);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
  };
  Interval base = src(8);
  return Scalar(Interval(base.lo(), base.hi(), src));
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 12);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST(Numerics, CompareEqualRationals) {
  EXPECT_EQ(compare(Rational(3), Rational(3)), Ordering::equal);
}

TEST(Numerics, CompareRootThreeAgainstTwo) {
  EXPECT_EQ(compare(QuadExt::make(0, 1, 3), Rational(2)), Ordering::less);
}

TEST(Numerics, CompareDistinctRadicands) {
  EXPECT_EQ(compare(QuadExt::make(1, 1, 2), QuadExt::make(1, 1, 3)), Ordering::less);
  EXPECT_EQ(compare(QuadExt::make(1, 1, 3), QuadExt::make(1, 1, 2)), Ordering::greater);
}

TEST(Numerics, QuadNormalisesRadicand) {
  QuadExt a = QuadExt::make(0, 1, 12);
  EXPECT_EQ(a.c(), 3);
  EXPECT_EQ(a.q(), 2);
  EXPECT_EQ(compare(a, QuadExt::make(0, 2, 3)), Ordering::equal);
  QuadExt b = QuadExt::make(1, 1, Rational(9, 4));
  EXPECT_TRUE(b.is_rational());
  EXPECT_EQ(compare(b, Rational(5, 2)), Ordering::equal);
}

TEST(Numerics, QuadSignCases) {
  EXPECT_EQ(QuadExt::make(-2, 1, 3).sign(), -1);
  EXPECT_EQ(QuadExt::make(2, -1, 3).sign(), 1);
  EXPECT_EQ(QuadExt::make(-2, 1, 5).sign(), 1);
  EXPECT_EQ(QuadExt::make(0, 0, 5).sign(), 0);
}

TEST(Numerics, RefineNarrowsRootThree) {
  Scalar s = sqrt_interval(3);
  Interval r = refine(*s.interval(), 128);
  EXPECT_LT(r.width(), Rational(1) / (Integer(1) << 120));
  Interval q = Interval::enclose(QuadExt::make(0, 1, 3), 64);
  Interval qr = refine(q, 256);
  EXPECT_LT(qr.width(), Rational(1) / (Integer(1) << 240));
}

TEST(Numerics, RefineExactRationalIsPoint) {
  Interval r = refine(Interval::enclose(Rational(1, 4), 64), 200);
  EXPECT_EQ(r.width(), 0);
  Interval z = refine(Interval::raw(0, 0), 64);
  EXPECT_EQ(z.width(), 0);
  EXPECT_EQ(z.midpoint(), 0);
}

TEST(Numerics, RefineRawIsUnchanged) {
  Interval raw = Interval::raw(Rational(17, 10), Rational(18, 10));
  Interval r = refine(raw, 512);
  EXPECT_EQ(r.lo().to_rational(), raw.lo().to_rational());
  EXPECT_EQ(r.hi().to_rational(), raw.hi().to_rational());
}

TEST(Numerics, SqrtBoundsExamples) {
  SqrtBounds a = sqrt_lower_upper(4, 100);
  EXPECT_EQ(a.lo, 2);
  EXPECT_EQ(a.hi, 2);
  SqrtBounds b = sqrt_lower_upper(3, 1000);
  EXPECT_LE(b.lo * b.lo, 3);
  EXPECT_GE(b.hi * b.hi, 3);
  EXPECT_LE(b.hi - b.lo, Rational(1, 1000));
  SqrtBounds c = sqrt_lower_upper(0, 10);
  EXPECT_EQ(c.lo, 0);
  EXPECT_EQ(c.hi, 0);
  EXPECT_THROW(sqrt_lower_upper(-1, 10), NumericError);
}

TEST(Numerics, SqrtBoundsProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(0, 100000), den(1, 1000), bound(1, 5000);
  for (int i = 0; i < 500; ++i) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    Integer b = bound(rng);
    SqrtBounds s = sqrt_lower_upper(x, b);
    ASSERT_LE(s.lo * s.lo, x);
    ASSERT_GE(s.hi * s.hi, x);
    ASSERT_LE(s.hi - s.lo, Rational(1) / Rational(b));
    ASSERT_LE(Integer(s.lo.get_den()), 2 * b);
    ASSERT_LE(Integer(s.hi.get_den()), 2 * b);
  }
}

TEST(Numerics, RationalOrderProperties) {
  std::mt19937_64 rng(11);
  auto flip = [](Ordering o) {
    return o == Ordering::less ? Ordering::greater : o == Ordering::greater ? Ordering::less : o;
  };
  for (int i = 0; i < 1000; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    ASSERT_EQ(compare(a, a), Ordering::equal);
    ASSERT_EQ(compare(a, b), flip(compare(b, a)));
    if (compare(a, b) != Ordering::greater && compare(b, c) != Ordering::greater) {
      ASSERT_NE(compare(a, c), Ordering::greater);
    }
  }
}

TEST(Numerics, QuadOrderAgreesWithDoubles) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> rad(2, 40);
  for (int i = 0; i < 1000; ++i) {
    QuadExt a = QuadExt::make(random_rational(rng), random_rational(rng), rad(rng));
    QuadExt b = QuadExt::make(random_rational(rng), random_rational(rng), rad(rng));
    Ordering o = compare(a, b);
    ASSERT_NE(o, Ordering::indeterminate);
    double da = Scalar(a).approx(), db = Scalar(b).approx();
    if (std::abs(da - db) > 1e-9) ASSERT_EQ(o, da < db ? Ordering::less : Ordering::greater);
  }
}

TEST(Numerics, IrrationalNeverEqualsRational) {
  std::mt19937_64 rng(17);
  const long nonsquares[] = {2, 3, 5, 6, 7, 8, 10, 11, 12, 13};
  for (int i = 0; i < 1000; ++i) {
    Rational q = random_rational(rng);
    if (sgn(q) == 0) continue;
    QuadExt v = QuadExt::make(random_rational(rng), q, nonsquares[i % 10]);
    ASSERT_FALSE(v.is_rational());
    ASSERT_NE(compare(v, random_rational(rng)), Ordering::equal);
    ASSERT_NE(compare(v, v.p()), Ordering::equal);
  }
}

TEST(Numerics, RefineIsNested) {
  Scalar s = sqrt_interval(2) * sqrt_interval(5) + Scalar(Rational(1, 3));
  const Interval& base = *s.interval();
  Interval prev = refine(base, 64);
  for (mpfr_prec_t p : {96, 128, 256, 512}) {
    Interval next = refine(prev, p);
    ASSERT_GE(next.lo().to_rational(), prev.lo().to_rational());
    ASSERT_LE(next.hi().to_rational(), prev.hi().to_rational());
    prev = next;
  }
  EXPECT_LT(prev.width(), Rational(1) / (Integer(1) << 500));
}

TEST(Numerics, MixedRadicandsCompareThroughIntervals) {
  Scalar sum = Scalar(QuadExt::make(0, 1, 2)) + Scalar(QuadExt::make(0, 1, 3));
  EXPECT_EQ(sum.kind(), Scalar::Kind::interval);
  EXPECT_EQ(compare(sum, Rational(314, 100)), Ordering::greater);
  EXPECT_EQ(compare(sum, Rational(315, 100)), Ordering::less);
  // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 exactly; equality stays undecidable for intervals.
  Scalar sq = sum * sum;
  EXPECT_EQ(compare(sq, QuadExt::make(5, 2, 6)), Ordering::indeterminate);
}

TEST(Numerics, SameRadicandStaysExact) {
  Scalar a = QuadExt::make(1, 2, 3);
  Scalar b = QuadExt::make(Rational(1, 2), -1, 3);
  Scalar prod = a * b;
  ASSERT_TRUE(prod.is_rational());
  Scalar sum = a + b;
  ASSERT_EQ(sum.kind(), Scalar::Kind::quad);
  EXPECT_EQ(compare(sum, QuadExt::make(Rational(3, 2), 1, 3)), Ordering::equal);
  // (1 + 2r)(1/2 - r) = 1/2 - r + r - 2*3 = -11/2
  EXPECT_EQ(compare(prod, Rational(-11, 2)), Ordering::equal);
}

TEST(Numerics, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), NumericError);
  EXPECT_THROW(parse_rational("1.5"), NumericError);
  EXPECT_THROW(parse_rational("/3"), NumericError);
  Scalar q = parse_scalar("0+1*sqrt(3)");
  ASSERT_EQ(q.kind(), Scalar::Kind::quad);
  EXPECT_EQ(to_string(q), "0+1*sqrt(3)");
  EXPECT_EQ(to_string(parse_scalar("1/2-3/4*sqrt(12)")), "1/2-3/2*sqrt(3)");
  Scalar t = parse_scalar("1.7320508~");
  ASSERT_EQ(t.kind(), Scalar::Kind::interval);
  EXPECT_EQ(compare(t, QuadExt::make(0, 1, 3)), Ordering::indeterminate);
  EXPECT_EQ(compare(t, Rational(17320509, 10000000)), Ordering::less);
  EXPECT_EQ(to_string(t), "1.7320508~");
  EXPECT_EQ(to_string(parse_scalar("7")), "7");
}
