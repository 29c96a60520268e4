#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dispersal/geometry.hpp"

namespace dispersal {

/// Closed axis-aligned rectangle.
struct Rect {
  Rational x0, y0, x1, y1;

  bool contains(const Rational& x, const Rational& y) const { return x0 <= x && x <= x1 && y0 <= y && y <= y1; }
};

/// Implicit fixed disks at (x0 + i*step, y0 + j*step) inside [x0,x1]x[y0,y1]
/// and outside every (closed) hole.
struct LatticeBlock {
  Rational x0, y0, x1, y1;
  Rational step{2};
  std::vector<Rect> holes;

  long long columns() const;  // number of grid columns
  long long rows() const;
  bool is_member(long long i, long long j) const;
  Point point(long long i, long long j) const;
  /// Grid points whose distance to c may be below `reach`.
  std::vector<Point> points_near(const Point& c, const Rational& reach) const;
  std::vector<Point> materialize() const;
};

struct Instance {
  Variant variant = Variant::euclidean;
  long long k = 0;
  Rational d2{0};
  std::vector<Disk> disks;
  std::vector<LatticeBlock> blocks;
};

/// Moved disks only, keyed by explicit-disk index.
struct Witness {
  std::map<std::size_t, Point> moves;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& inst);
Witness parse_witness(std::string_view text);
std::string write_witness(const Witness& w);

Instance read_instance_file(const std::string& path);
Witness read_witness_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string variant_name(Variant v);

struct ValidationMode {
  bool tolerant = false;
  Rational eps{0};

  static ValidationMode exact() { return {}; }
  static ValidationMode tolerance(const Rational& eps) { return {true, eps}; }
};

/// Default tolerance, 1e-9.
Rational default_tolerance();

struct ValidationResult {
  enum class Verdict { accept, reject, indeterminate, error };
  Verdict verdict = Verdict::accept;
  std::string reason;  // short tag, e.g. "budget", "move", "packing"
  std::string detail;

  bool accepted() const { return verdict == Verdict::accept; }
  /// "accept", "accept(1e-09)", "reject(packing, 0 1)", ...
  std::string describe(const ValidationMode& mode) const;
};

ValidationResult validate_witness(const Instance& inst, const Witness& w, const ValidationMode& mode);

/// Final explicit positions after applying w; indices are not checked.
std::vector<Point> apply_moves(const Instance& inst, const Witness& w);
Instance apply_witness(const Instance& inst, const Witness& w);

/// Replaces every block by its explicit disks (small blocks only).
Instance materialize_blocks(const Instance& inst);

/// Block points overlapping explicit disk centre c.
std::vector<Point> blocking_points(const Instance& inst, const Point& c, const Rational& reach = 2);

}  // namespace dispersal
