#pragma once

// Exact and certified-approximate scalars used by every geometric predicate.
//
// Three representations are supported:
//   Rational  exact, arbitrary precision (GMP)
//   QuadExt   p + q*sqrt(c) with rational p, q, c; one radical per value
//   Interval  outward-rounded MPFR enclosure, optionally refinable
// A Scalar is a tagged union of the three. Arithmetic stays exact whenever
// the operands share a radicand and falls back to refinable intervals
// otherwise.

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace dispersal {

using Integer = mpz_class;
using Rational = mpq_class;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" (q > 0). The result is in lowest terms.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

/// True when r is the square of a rational; the root is written to *root.
bool is_perfect_square(const Rational& r, Rational* root = nullptr);

struct SqrtBounds {
  Rational lo;
  Rational hi;
};

/// Rational bracket lo <= sqrt(x) <= hi with hi - lo <= 1/denom_bound.
/// Both ends have denominators dividing denom_bound; perfect squares give
/// a degenerate bracket.
SqrtBounds sqrt_lower_upper(const Rational& x, const Integer& denom_bound);

// ---------------------------------------------------------------------------

/// p + q*sqrt(c). Values built through make() have an integer radicand with
/// small square factors pulled out, so equal radicals compare as equal.
class QuadExt {
 public:
  QuadExt() = default;

  static QuadExt make(const Rational& p, const Rational& q, const Rational& c);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  const Rational& c() const { return c_; }

  /// True when the value is rational (q == 0 or c == 0).
  bool is_rational() const { return sgn(q_) == 0 || sgn(c_) == 0; }

  /// Exact sign via squaring with case analysis.
  int sign() const;

  friend bool same_radicand(const QuadExt& a, const QuadExt& b) { return a.c_ == b.c_; }

 private:
  QuadExt(Rational p, Rational q, Rational c) : p_(std::move(p)), q_(std::move(q)), c_(std::move(c)) {}
  friend class Scalar;

  Rational p_{0};
  Rational q_{0};
  Rational c_{0};
};

// ---------------------------------------------------------------------------

/// Owning wrapper around mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  Rational to_rational() const;

 private:
  mpfr_t value_;
};

class Interval {
 public:
  /// Recomputes the defining expression at the requested precision.
  using Source = std::function<Interval(mpfr_prec_t)>;

  Interval(BigFloat lo, BigFloat hi, Source source = {});

  static Interval enclose(const Rational& r, mpfr_prec_t precision);
  static Interval enclose(const QuadExt& v, mpfr_prec_t precision);
  /// [lo, hi] with rational ends, no defining expression.
  static Interval raw(const Rational& lo, const Rational& hi, mpfr_prec_t precision = 128);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }
  bool has_source() const { return static_cast<bool>(source_); }
  const Source& source() const { return source_; }

  /// Exact midpoint of the two bounds.
  Rational midpoint() const;
  Rational width() const;
  double approx() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

 private:
  BigFloat lo_;
  BigFloat hi_;
  Source source_;
};

/// Recomputes x at a higher precision and intersects with x. Intervals
/// without a defining expression are returned unchanged.
Interval refine(const Interval& x, mpfr_prec_t precision);

// ---------------------------------------------------------------------------

enum class Ordering { less, equal, greater, indeterminate };

class Scalar {
 public:
  enum class Kind { rational, quad, interval };

  Scalar() : value_(Rational(0)) {}
  Scalar(long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : value_(Rational(v)) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const QuadExt& v);  // NOLINT(google-explicit-constructor)
  Scalar(Interval v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_exact() const { return kind() != Kind::interval; }
  bool is_rational() const { return kind() == Kind::rational; }

  const Rational* rational() const { return std::get_if<Rational>(&value_); }
  const QuadExt* quad() const { return std::get_if<QuadExt>(&value_); }
  const Interval* interval() const { return std::get_if<Interval>(&value_); }

  /// Enclosure at the given precision; exact values enclose tightly.
  Interval enclose(mpfr_prec_t precision) const;
  double approx() const;
  /// Rational nominal value: exact for Rational, a 256-bit approximation
  /// of a QuadExt, the midpoint of an Interval.
  Rational nominal() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);

 private:
  std::variant<Rational, QuadExt, Interval> value_;
};

/// Exact whenever the difference a - b is exact; interval differences are
/// refined geometrically (64, 128, ... bits up to precision_cap()).
Ordering compare(const Scalar& a, const Scalar& b);

/// -1, 0, +1, or nullopt when undecidable at the precision cap.
std::optional<int> sign_of(const Scalar& x);

/// Upper bound for interval escalation. Defaults to 1024 bits or the value
/// of DISPERSAL_PRECISION_CAP when set.
mpfr_prec_t precision_cap();
void set_precision_cap(mpfr_prec_t bits);

/// Parses a rational, a "p+q*sqrt(c)" literal, or a tilde decimal such as
/// "1.7320508~" (an interval of half a unit in the last digit).
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& s);
/// Decimal approximation with the given number of significant digits.
std::string to_decimal(const Scalar& s, int digits = 12);

}  // namespace dispersal
