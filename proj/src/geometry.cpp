#include "dispersal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace dispersal {

Point make_point(const Rational& x, const Rational& y) { return Point{Scalar(x), Scalar(y)}; }

bool is_rational(const Point& p) { return p.x.is_rational() && p.y.is_rational(); }

bool exactly_equal(const Point& a, const Point& b) {
  return compare(a.x, b.x) == Ordering::equal && compare(a.y, b.y) == Ordering::equal;
}

Scalar dist2(const Point& a, const Point& b) {
  if (is_rational(a) && is_rational(b)) {
    Rational dx = *a.x.rational() - *b.x.rational();
    Rational dy = *a.y.rational() - *b.y.rational();
    return Scalar(Rational(dx * dx + dy * dy));
  }
  Scalar dx = a.x - b.x;
  Scalar dy = a.y - b.y;
  return dx * dx + dy * dy;
}

namespace {

// Tri for "dist2(a, b) < sep2".
Tri closer_than(const Point& a, const Point& b, const Scalar& sep2) {
  switch (compare(dist2(a, b), sep2)) {
    case Ordering::less:
      return Tri::yes;
    case Ordering::indeterminate:
      return Tri::unknown;
    default:
      return Tri::no;
  }
}

bool pair_less(std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) { return a < b; }

}  // namespace

Tri overlap(const Disk& a, const Disk& b) { return closer_than(a.center, b.center, Scalar(4)); }

PackingCheck first_conflict(std::span<const Point> centers, const Scalar& sep2) {
  PackingCheck best;
  std::optional<std::pair<std::size_t, std::size_t>> worst;
  auto consider = [&](std::size_t i, std::size_t j) {
    if (worst && !pair_less({i, j}, *worst)) return;
    Tri t = closer_than(centers[i], centers[j], sep2);
    if (t == Tri::no) return;
    worst = {i, j};
    best.status = t == Tri::yes ? PackingCheck::Status::violation : PackingCheck::Status::indeterminate;
    best.first = i;
    best.second = j;
  };

  const std::size_t n = centers.size();
  if (n < 64) {
    for (std::size_t i = 0; i < n && !worst; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        consider(i, j);
        if (worst) break;
      }
    return best;
  }

  // Bucket side covers the separation radius with room for rounding.
  const double reach = std::sqrt(std::max(sep2.approx(), 0.0));
  const double side = std::max(4.0, 2.0 * reach + 1.0);
  struct Key {
    long long x, y;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<long long>()(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
    }
  };
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets;
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = Key{static_cast<long long>(std::floor(centers[i].x.approx() / side)),
                  static_cast<long long>(std::floor(centers[i].y.approx() / side))};
    buckets[keys[i]].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(Key{keys[i].x + dx, keys[i].y + dy});
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second) {
          if (j > i) consider(i, j);
        }
      }
    }
  }
  return best;
}

PackingCheck is_packing(std::span<const Point> centers) { return first_conflict(centers, Scalar(4)); }

PackingCheck is_packing(std::span<const Disk> disks) {
  std::vector<Point> centers;
  centers.reserve(disks.size());
  for (const Disk& d : disks) centers.push_back(d.center);
  return is_packing(centers);
}

namespace {

Tri leq(const Scalar& a, const Scalar& b) {
  switch (compare(a, b)) {
    case Ordering::less:
    case Ordering::equal:
      return Tri::yes;
    case Ordering::greater:
      return Tri::no;
    default:
      return Tri::unknown;
  }
}

Tri eq(const Scalar& a, const Scalar& b) {
  switch (compare(a, b)) {
    case Ordering::equal:
      return Tri::yes;
    case Ordering::indeterminate:
      return Tri::unknown;
    default:
      return Tri::no;
  }
}

Tri both(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::unknown || b == Tri::unknown) return Tri::unknown;
  return Tri::yes;
}

Tri either(Tri a, Tri b) {
  if (a == Tri::yes || b == Tri::yes) return Tri::yes;
  if (a == Tri::unknown || b == Tri::unknown) return Tri::unknown;
  return Tri::no;
}

}  // namespace

Tri within_move(const Point& origin, const Point& target, const Rational& d2, Variant variant) {
  if (sgn(d2) < 0) throw NumericError("negative move radius");
  const Scalar bound(d2);
  if (variant == Variant::euclidean) return leq(dist2(origin, target), bound);
  Scalar dx = target.x - origin.x;
  Scalar dy = target.y - origin.y;
  Tri vertical = both(eq(origin.x, target.x), leq(dy * dy, bound));
  Tri horizontal = both(eq(origin.y, target.y), leq(dx * dx, bound));
  return either(vertical, horizontal);
}

std::vector<Point> circle_circle_candidates_sq(const Point& c1, const Rational& r1sq, const Point& c2,
                                               const Rational& r2sq) {
  if (!is_rational(c1) || !is_rational(c2)) throw NumericError("circle intersection needs rational centers");
  const Rational& x1 = *c1.x.rational();
  const Rational& y1 = *c1.y.rational();
  Rational dx = *c2.x.rational() - x1;
  Rational dy = *c2.y.rational() - y1;
  Rational len2 = dx * dx + dy * dy;
  if (sgn(len2) == 0) throw NumericError("circle intersection with coincident centers");
  // Foot of the radical axis at c1 + a*D; offset along the normal is
  // sqrt(s) * perp(D) with s = r1^2/|D|^2 - a^2.
  Rational a = (r1sq - r2sq + len2) / (2 * len2);
  Rational s = r1sq / len2 - a * a;
  std::vector<Point> out;
  if (sgn(s) < 0) return out;
  Rational fx = x1 + a * dx;
  Rational fy = y1 + a * dy;
  if (sgn(s) == 0) {
    out.push_back(make_point(fx, fy));
    return out;
  }
  out.push_back(Point{Scalar(QuadExt::make(fx, -dy, s)), Scalar(QuadExt::make(fy, dx, s))});
  out.push_back(Point{Scalar(QuadExt::make(fx, dy, s)), Scalar(QuadExt::make(fy, -dx, s))});
  return out;
}

std::vector<Point> circle_circle_candidates(const Point& c1, const Rational& r1, const Point& c2,
                                            const Rational& r2) {
  return circle_circle_candidates_sq(c1, r1 * r1, c2, r2 * r2);
}

}  // namespace dispersal
