#include <gtest/gtest.h>

#include <random>

#include "dispersal/geometry.hpp"

using namespace dispersal;

namespace {

Point P(long x, long y) { return make_point(x, y); }

Rational rnd(std::mt19937_64& rng, long span = 20) {
  std::uniform_int_distribution<long> num(-span * 4, span * 4);
  std::uniform_int_distribution<long> den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Geometry, Dist2Examples) {
  EXPECT_EQ(compare(dist2(P(0, 0), P(3, 4)), Rational(25)), Ordering::equal);
  EXPECT_EQ(compare(dist2(make_point(Rational(1, 2), 0), make_point(0, Rational(1, 2))), Rational(1, 2)),
            Ordering::equal);
  Point r3{Scalar(1), Scalar(QuadExt::make(0, 1, 3))};
  Scalar d = dist2(P(1, 0), r3);
  EXPECT_TRUE(d.is_exact());
  EXPECT_EQ(compare(d, Rational(3)), Ordering::equal);
}

TEST(Geometry, OverlapIsStrict) {
  EXPECT_EQ(overlap(Disk{P(0, 0)}, Disk{P(2, 0)}), Tri::no);
  EXPECT_EQ(overlap(Disk{P(0, 0)}, Disk{P(1, 0)}), Tri::yes);
  EXPECT_EQ(overlap(Disk{P(0, 0)}, Disk{P(2, 1)}), Tri::no);
}

TEST(Geometry, PackingExamples) {
  std::vector<Disk> chain{{P(0, 0)}, {P(2, 0)}, {P(4, 0)}};
  EXPECT_TRUE(is_packing(chain).ok());
  std::vector<Disk> bad{{P(0, 0)}, {P(1, 0)}};
  PackingCheck c = is_packing(bad);
  EXPECT_EQ(c.status, PackingCheck::Status::violation);
  EXPECT_EQ(c.first, 0u);
  EXPECT_EQ(c.second, 1u);
  EXPECT_TRUE(is_packing(std::vector<Disk>{}).ok());
}

TEST(Geometry, WithinMoveExamples) {
  Point r3{Scalar(1), Scalar(QuadExt::make(0, 1, 3))};
  EXPECT_EQ(within_move(P(1, 0), r3, 3, Variant::euclidean), Tri::yes);
  EXPECT_EQ(within_move(P(1, 0), r3, Rational(299, 100), Variant::euclidean), Tri::no);
  EXPECT_EQ(within_move(P(5, 5), P(5, 5), 0, Variant::euclidean), Tri::yes);
  EXPECT_EQ(within_move(P(5, 5), P(5, 5), 0, Variant::rectilinear), Tri::yes);
  EXPECT_EQ(within_move(P(0, 0), P(1, 1), 100, Variant::rectilinear), Tri::no);
  EXPECT_EQ(within_move(P(0, 0), P(0, 10), 100, Variant::rectilinear), Tri::yes);
  EXPECT_EQ(within_move(P(0, 0), P(-11, 0), 100, Variant::rectilinear), Tri::no);
}

TEST(Geometry, CircleCandidatesExamples) {
  auto two = circle_circle_candidates(P(0, 0), 2, P(2, 0), 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(compare(two[0].x, Rational(1)), Ordering::equal);
  EXPECT_EQ(compare(two[0].y * two[0].y, Rational(3)), Ordering::equal);
  EXPECT_EQ(compare(two[0].y, -two[1].y), Ordering::equal);
  EXPECT_TRUE(circle_circle_candidates(P(0, 0), 2, P(5, 0), 2).empty());
  auto one = circle_circle_candidates(P(0, 0), 2, P(4, 0), 2);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(exactly_equal(one[0], P(2, 0)));
  EXPECT_THROW(circle_circle_candidates(P(1, 1), 2, P(1, 1), 3), NumericError);
  EXPECT_TRUE(circle_circle_candidates(P(0, 0), 5, P(1, 0), 1).empty());
}

TEST(Geometry, Dist2Symmetric) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    Point a = make_point(rnd(rng), rnd(rng)), b = make_point(rnd(rng), rnd(rng));
    ASSERT_EQ(compare(dist2(a, b), dist2(b, a)), Ordering::equal);
  }
}

TEST(Geometry, OverlapMatchesExpandedPolynomial) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    Rational x1 = rnd(rng, 2), y1 = rnd(rng, 2), x2 = rnd(rng, 2), y2 = rnd(rng, 2);
    Rational expanded = x1 * x1 - 2 * x1 * x2 + x2 * x2 + y1 * y1 - 2 * y1 * y2 + y2 * y2;
    Tri t = overlap(Disk{make_point(x1, y1)}, Disk{make_point(x2, y2)});
    ASSERT_EQ(t, tri_of(expanded < 4));
  }
}

TEST(Geometry, PackingSubsetsAndTranslation) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 20; ++round) {
    std::vector<Point> pts;
    for (int i = 0; i < 120; ++i) {
      Point p = make_point(rnd(rng, 40), rnd(rng, 40));
      bool clash = false;
      for (const Point& q : pts) clash = clash || compare(dist2(p, q), Rational(4)) == Ordering::less;
      if (!clash) pts.push_back(p);
    }
    ASSERT_TRUE(is_packing(pts).ok());
    std::vector<Point> sub;
    for (std::size_t i = 0; i < pts.size(); i += 3) sub.push_back(pts[i]);
    ASSERT_TRUE(is_packing(sub).ok());
    Rational vx = rnd(rng), vy = rnd(rng);
    std::vector<Point> moved;
    for (const Point& p : pts) moved.push_back(make_point(*p.x.rational() + vx, *p.y.rational() + vy));
    ASSERT_TRUE(is_packing(moved).ok());
  }
}

TEST(Geometry, BucketedScanMatchesPairScan) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 30; ++round) {
    std::vector<Point> pts;
    for (int i = 0; i < 150; ++i) pts.push_back(make_point(rnd(rng, 60), rnd(rng, 60)));
    std::optional<std::pair<std::size_t, std::size_t>> first;
    for (std::size_t i = 0; i < pts.size() && !first; ++i)
      for (std::size_t j = i + 1; j < pts.size() && !first; ++j)
        if (compare(dist2(pts[i], pts[j]), Rational(4)) == Ordering::less) first = {i, j};
    PackingCheck c = is_packing(pts);
    ASSERT_EQ(c.ok(), !first.has_value());
    if (first) {
      ASSERT_EQ(c.first, first->first);
      ASSERT_EQ(c.second, first->second);
    }
  }
}

TEST(Geometry, CandidatesSatisfyBothCircles) {
  std::mt19937_64 rng(31);
  int produced = 0;
  for (int i = 0; i < 400; ++i) {
    Point c1 = make_point(rnd(rng, 3), rnd(rng, 3)), c2 = make_point(rnd(rng, 3), rnd(rng, 3));
    if (exactly_equal(c1, c2)) continue;
    Rational r1 = rnd(rng, 2), r2 = rnd(rng, 2);
    r1 = abs(r1);
    r2 = abs(r2);
    for (const Point& p : circle_circle_candidates(c1, r1, c2, r2)) {
      ++produced;
      ASSERT_TRUE(p.x.is_exact() && p.y.is_exact());
      ASSERT_EQ(compare(dist2(p, c1), Rational(r1 * r1)), Ordering::equal);
      ASSERT_EQ(compare(dist2(p, c2), Rational(r2 * r2)), Ordering::equal);
    }
  }
  EXPECT_GT(produced, 50);
}
