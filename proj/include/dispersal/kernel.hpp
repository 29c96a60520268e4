#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dispersal/instance.hpp"
#include "dispersal/udg.hpp"

namespace dispersal {

/// sqrt(d2) when d2 is a rational square, else an upper bound with
/// denominator 2^32.
struct MoveRadius {
  Rational d;
  bool exact = true;
};
MoveRadius move_radius_upper(const Rational& d2);

/// 2k + 2k * ceil(((d+2)(k+1)+2)^2)
Integer size_bound(long long k, const Rational& d);

struct KernelReport {
  std::vector<std::size_t> cover;
  Rational d;                 // value used for d
  bool d_exact = true;
  Rational threshold;         // (d+2)(k+1)
  std::vector<std::size_t> kept;     // input indices, ascending
  std::vector<std::size_t> removed;  // input indices, ascending
  Integer size_bound;
  // Filled by full_kernel only.
  std::size_t parts = 0;
  Rational m;
  Rational r;
  Integer coordinate_n;  // max(b + c) over coordinates written a + b/c
};

struct KernelResult {
  bool trivially_no = false;
  Instance instance;
  KernelReport report;
};

/// Drops disks farther than (d+2)(k+1) from every cover centre. Throws on
/// instances that still carry lattice blocks.
KernelResult kernelize(const Instance& inst);

/// Parts are the components of "centre distance <= 2d + 2"; centres in
/// different parts are farther apart than that.
std::vector<std::vector<std::size_t>> halo_partition(std::span<const Point> centers, const Rational& d);

struct ShrinkResult {
  std::vector<Point> images;  // aligned with the input indices
  Rational m;
};

/// Translates part i (1-based) by (-x_left_i + (i-1)(m+r), -y_bottom_i + (i-1)(m+r)),
/// where m bounds every intra-part centre distance from above.
ShrinkResult shrink_parts(std::span<const Point> centers, const std::vector<std::vector<std::size_t>>& parts,
                          const Rational& r);

/// kernelize, then halo_partition and shrink_parts with r = 2d + 2.
KernelResult full_kernel(const Instance& inst);

/// max(b + c) over coordinates written as a + b/c with 0 <= b < c.
Integer coordinate_statistic(std::span<const Point> centers);

}  // namespace dispersal
