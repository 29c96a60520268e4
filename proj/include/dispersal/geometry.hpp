#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dispersal/numerics.hpp"

namespace dispersal {

/// Plane point; unit = one disk radius.
struct Point {
  Scalar x;
  Scalar y;
};

Point make_point(const Rational& x, const Rational& y);
bool is_rational(const Point& p);
bool exactly_equal(const Point& a, const Point& b);

/// Open unit disk.
struct Disk {
  Point center;
};

/// Three-valued predicate outcome.
enum class Tri { no, yes, unknown };

inline Tri tri_of(bool b) { return b ? Tri::yes : Tri::no; }

enum class Variant { euclidean, rectilinear };

Scalar dist2(const Point& a, const Point& b);

/// Disks overlap iff their centers are closer than 2; touching is fine.
Tri overlap(const Disk& a, const Disk& b);

struct PackingCheck {
  enum class Status { ok, violation, indeterminate };
  Status status = Status::ok;
  std::size_t first = 0;
  std::size_t second = 0;

  bool ok() const { return status == Status::ok; }
};

/// Lexicographically first pair at squared distance < sep2 (or undecidable).
/// Large inputs are bucketed on a coarse grid; the result is identical to
/// the all-pairs scan.
PackingCheck first_conflict(std::span<const Point> centers, const Scalar& sep2);

PackingCheck is_packing(std::span<const Disk> disks);
PackingCheck is_packing(std::span<const Point> centers);

/// Euclidean: |target - origin|^2 <= d2. Rectilinear: the move is axis
/// parallel and its squared length is <= d2.
Tri within_move(const Point& origin, const Point& target, const Rational& d2, Variant variant);

/// Intersection points of the circles |p - c1|^2 = r1sq and |p - c2|^2 = r2sq
/// for rational centers and squared radii. Both coordinates of a returned
/// point share one radicand. Throws on coincident or non-rational centers.
std::vector<Point> circle_circle_candidates_sq(const Point& c1, const Rational& r1sq, const Point& c2,
                                               const Rational& r2sq);

std::vector<Point> circle_circle_candidates(const Point& c1, const Rational& r1, const Point& c2,
                                            const Rational& r2);

}  // namespace dispersal
