#include "dispersal/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dispersal {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Integer pow10(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

mpfr_prec_t initial_cap() {
  if (const char* env = std::getenv("DISPERSAL_PRECISION_CAP")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 64) return static_cast<mpfr_prec_t>(v);
  }
  return 1024;
}

std::atomic<mpfr_prec_t>& cap_storage() {
  static std::atomic<mpfr_prec_t> cap{initial_cap()};
  return cap;
}

void set_rational(BigFloat& out, const Rational& r, mpfr_rnd_t rnd) {
  mpfr_set_q(out.get(), r.get_mpq_t(), rnd);
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational helpers

Rational parse_rational(std::string_view text) {
  text = trim(text);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw NumericError("bad rational: '" + std::string(text) + "'");
  }
  Rational r;
  r.get_num() = Integer(std::string(num));
  r.get_den() = Integer(std::string(den));
  if (r.get_den() == 0) throw NumericError("zero denominator: '" + std::string(text) + "'");
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor_of(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

bool is_perfect_square(const Rational& r, Rational* root) {
  if (sgn(r) < 0) return false;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return false;
  if (root != nullptr) {
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    *root = Rational(n, d);
    root->canonicalize();
  }
  return true;
}

SqrtBounds sqrt_lower_upper(const Rational& x, const Integer& denom_bound) {
  if (sgn(x) < 0) throw NumericError("sqrt_lower_upper: negative argument " + to_string(x));
  if (denom_bound <= 0) throw NumericError("sqrt_lower_upper: denominator bound must be positive");
  // floor(sqrt(r)) == isqrt(floor(r)) for r >= 0.
  Rational scaled = x * Rational(denom_bound * denom_bound);
  Integer a;
  Integer fl = floor_of(scaled);
  mpz_sqrt(a.get_mpz_t(), fl.get_mpz_t());
  Rational lo(a, denom_bound);
  lo.canonicalize();
  if (lo * lo == x) return {lo, lo};
  Rational hi(a + 1, denom_bound);
  hi.canonicalize();
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// QuadExt

QuadExt QuadExt::make(const Rational& p, const Rational& q, const Rational& c) {
  if (sgn(c) < 0) throw NumericError("negative radicand " + to_string(c));
  if (sgn(q) == 0 || sgn(c) == 0) return QuadExt(p, Rational(0), Rational(0));
  // sqrt(n/d) = sqrt(n*d)/d
  Integer radicand = c.get_num() * c.get_den();
  Rational coeff = q / Rational(c.get_den());
  Integer factor = 1;
  for (unsigned long f = 2; f <= 1000; ++f) {
    unsigned long f2 = f * f;
    if (mpz_cmp_ui(radicand.get_mpz_t(), f2) < 0) break;
    while (mpz_divisible_ui_p(radicand.get_mpz_t(), f2)) {
      mpz_divexact_ui(radicand.get_mpz_t(), radicand.get_mpz_t(), f2);
      factor *= f;
    }
  }
  coeff *= Rational(factor);
  if (mpz_perfect_square_p(radicand.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    return QuadExt(p + coeff * Rational(root), Rational(0), Rational(0));
  }
  return QuadExt(p, coeff, Rational(radicand));
}

int QuadExt::sign() const {
  int sp = sgn(p_);
  int sq = is_rational() ? 0 : sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  Rational lhs = p_ * p_;
  Rational rhs = q_ * q_ * c_;
  int cmpv = cmp(lhs, rhs);
  if (cmpv == 0) return 0;
  return cmpv > 0 ? sp : sq;
}

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

Rational BigFloat::to_rational() const {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), value_);
  return out;
}

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(BigFloat lo, BigFloat hi, Source source)
    : lo_(std::move(lo)), hi_(std::move(hi)), source_(std::move(source)) {
  if (mpfr_cmp(lo_.get(), hi_.get()) > 0) throw NumericError("interval with lo > hi");
}

Interval Interval::enclose(const Rational& r, mpfr_prec_t precision) {
  BigFloat lo(precision), hi(precision);
  set_rational(lo, r, MPFR_RNDD);
  set_rational(hi, r, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi), [r](mpfr_prec_t p) { return Interval::enclose(r, p); });
}

Interval Interval::enclose(const QuadExt& v, mpfr_prec_t precision) {
  if (v.is_rational()) return enclose(v.p(), precision);
  BigFloat clo(precision), chi(precision);
  set_rational(clo, v.c(), MPFR_RNDD);
  set_rational(chi, v.c(), MPFR_RNDU);
  BigFloat slo(precision), shi(precision);
  mpfr_sqrt(slo.get(), clo.get(), MPFR_RNDD);
  mpfr_sqrt(shi.get(), chi.get(), MPFR_RNDU);
  Interval root(std::move(slo), std::move(shi));
  Interval value = enclose(v.p(), precision) + enclose(v.q(), precision) * root;
  return Interval(value.lo(), value.hi(), [v](mpfr_prec_t p) { return Interval::enclose(v, p); });
}

Interval Interval::raw(const Rational& lo, const Rational& hi, mpfr_prec_t precision) {
  BigFloat l(precision), h(precision);
  set_rational(l, lo, MPFR_RNDD);
  set_rational(h, hi, MPFR_RNDU);
  return Interval(std::move(l), std::move(h));
}

Rational Interval::midpoint() const { return (lo_.to_rational() + hi_.to_rational()) / 2; }

Rational Interval::width() const { return hi_.to_rational() - lo_.to_rational(); }

double Interval::approx() const { return midpoint().get_d(); }

namespace {

Interval::Source combine(const Interval& a, const Interval& b,
                         Interval (*op)(const Interval&, const Interval&)) {
  if (!a.has_source() || !b.has_source()) return {};
  return [sa = a.source(), sb = b.source(), op](mpfr_prec_t p) { return op(sa(p), sb(p)); };
}

Interval add_impl(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  BigFloat lo(p), hi(p);
  mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval sub_impl(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval mul_impl(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  const BigFloat* xs[2] = {&a.lo(), &a.hi()};
  const BigFloat* ys[2] = {&b.lo(), &b.hi()};
  BigFloat lo(p), hi(p), t(p);
  bool first = true;
  for (auto* x : xs) {
    for (auto* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval with_source(Interval value, Interval::Source source) {
  return Interval(value.lo(), value.hi(), std::move(source));
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  return with_source(add_impl(a, b), combine(a, b, add_impl));
}

Interval operator-(const Interval& a, const Interval& b) {
  return with_source(sub_impl(a, b), combine(a, b, sub_impl));
}

Interval operator*(const Interval& a, const Interval& b) {
  return with_source(mul_impl(a, b), combine(a, b, mul_impl));
}

Interval operator-(const Interval& a) {
  BigFloat lo(a.precision()), hi(a.precision());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDU);
  Interval::Source src;
  if (a.has_source()) src = [s = a.source()](mpfr_prec_t p) { return -s(p); };
  return Interval(std::move(lo), std::move(hi), std::move(src));
}

Interval refine(const Interval& x, mpfr_prec_t precision) {
  if (!x.has_source()) return x;
  Interval fresh = x.source()(precision);
  BigFloat lo = fresh.lo(), hi = fresh.hi();
  if (mpfr_cmp(x.lo().get(), lo.get()) > 0) {
    mpfr_set_prec(lo.get(), std::max(precision, x.precision()));
    mpfr_set(lo.get(), x.lo().get(), MPFR_RNDD);
  }
  if (mpfr_cmp(x.hi().get(), hi.get()) < 0) {
    mpfr_set_prec(hi.get(), std::max(precision, x.precision()));
    mpfr_set(hi.get(), x.hi().get(), MPFR_RNDU);
  }
  return Interval(std::move(lo), std::move(hi), x.source());
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const QuadExt& v) {
  if (v.is_rational()) {
    value_ = v.p();
  } else {
    value_ = v;
  }
}

Interval Scalar::enclose(mpfr_prec_t precision) const {
  switch (kind()) {
    case Kind::rational:
      return Interval::enclose(*rational(), precision);
    case Kind::quad:
      return Interval::enclose(*quad(), precision);
    case Kind::interval:
      break;
  }
  const Interval& iv = *interval();
  if (iv.has_source() && precision > iv.precision()) return refine(iv, precision);
  return iv;
}

double Scalar::approx() const {
  switch (kind()) {
    case Kind::rational:
      return rational()->get_d();
    case Kind::quad: {
      const QuadExt& v = *quad();
      return v.p().get_d() + v.q().get_d() * std::sqrt(v.c().get_d());
    }
    case Kind::interval:
      break;
  }
  return interval()->approx();
}

Rational Scalar::nominal() const {
  switch (kind()) {
    case Kind::rational:
      return *rational();
    case Kind::quad:
      return Interval::enclose(*quad(), 256).midpoint();
    case Kind::interval:
      break;
  }
  return interval()->midpoint();
}

namespace {

std::optional<QuadExt> as_quad(const Scalar& s) {
  if (const Rational* r = s.rational()) return QuadExt::make(*r, Rational(0), Rational(0));
  if (const QuadExt* q = s.quad()) return *q;
  return std::nullopt;
}

// Radicand shared by two exact values, or nullopt when they disagree.
std::optional<Rational> common_radicand(const QuadExt& a, const QuadExt& b) {
  if (a.is_rational()) return b.c();
  if (b.is_rational()) return a.c();
  if (a.c() == b.c()) return a.c();
  return std::nullopt;
}

constexpr mpfr_prec_t kBasePrecision = 64;

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(*a.rational() + *b.rational());
  auto qa = as_quad(a), qb = as_quad(b);
  if (qa && qb) {
    if (auto c = common_radicand(*qa, *qb)) {
      return Scalar(QuadExt::make(qa->p() + qb->p(), qa->q() + qb->q(), *c));
    }
  }
  return Scalar(a.enclose(kBasePrecision) + b.enclose(kBasePrecision));
}

Scalar operator-(const Scalar& a) {
  if (const Rational* r = a.rational()) return Scalar(Rational(-*r));
  if (const QuadExt* q = a.quad()) return Scalar(QuadExt::make(-q->p(), -q->q(), q->c()));
  return Scalar(-*a.interval());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(*a.rational() - *b.rational());
  return a + (-b);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(*a.rational() * *b.rational());
  auto qa = as_quad(a), qb = as_quad(b);
  if (qa && qb) {
    if (auto c = common_radicand(*qa, *qb)) {
      Rational p = qa->p() * qb->p() + qa->q() * qb->q() * *c;
      Rational q = qa->p() * qb->q() + qb->p() * qa->q();
      return Scalar(QuadExt::make(p, q, *c));
    }
  }
  return Scalar(a.enclose(kBasePrecision) * b.enclose(kBasePrecision));
}

mpfr_prec_t precision_cap() { return cap_storage().load(); }

void set_precision_cap(mpfr_prec_t bits) { cap_storage().store(std::max<mpfr_prec_t>(bits, 64)); }

namespace {

std::optional<int> interval_sign(const Interval& iv) {
  if (mpfr_sgn(iv.lo().get()) > 0) return 1;
  if (mpfr_sgn(iv.hi().get()) < 0) return -1;
  if (mpfr_zero_p(iv.lo().get()) && mpfr_zero_p(iv.hi().get())) return 0;
  return std::nullopt;
}

}  // namespace

std::optional<int> sign_of(const Scalar& x) {
  if (const Rational* r = x.rational()) return sgn(*r);
  if (const QuadExt* q = x.quad()) return q->sign();
  const Interval& iv = *x.interval();
  if (auto s = interval_sign(iv)) return s;
  if (!iv.has_source()) return std::nullopt;
  const mpfr_prec_t cap = precision_cap();
  for (mpfr_prec_t p = std::max<mpfr_prec_t>(kBasePrecision, iv.precision() * 2); p <= cap; p *= 2) {
    if (auto s = interval_sign(iv.source()(p))) return s;
  }
  return std::nullopt;
}

Ordering compare(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) {
    int c = cmp(*a.rational(), *b.rational());
    return c < 0 ? Ordering::less : (c > 0 ? Ordering::greater : Ordering::equal);
  }
  auto s = sign_of(a - b);
  if (!s) return Ordering::indeterminate;
  return *s < 0 ? Ordering::less : (*s > 0 ? Ordering::greater : Ordering::equal);
}

// ---------------------------------------------------------------------------
// Text forms

namespace {

Scalar parse_tilde(std::string_view text) {
  std::string_view body = text.substr(0, text.size() - 1);
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view() : body.substr(dot + 1);
  if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(frac))) {
    throw NumericError("bad approximate value: '" + std::string(text) + "'");
  }
  unsigned digits = static_cast<unsigned>(frac.size());
  Integer scale = pow10(digits);
  Integer mant(std::string(whole) + std::string(frac));
  Rational value(mant, scale);
  value.canonicalize();
  if (negative) value = -value;
  Rational half(1, 2 * scale);
  half.canonicalize();
  mpfr_prec_t prec = 64 + static_cast<mpfr_prec_t>(4 * digits);
  return Scalar(Interval::raw(value - half, value + half, prec));
}

Scalar parse_quad(std::string_view text, std::size_t marker) {
  std::string_view prefix = text.substr(0, marker);
  std::string_view rest = text.substr(marker + 6);
  if (rest.empty() || rest.back() != ')') throw NumericError("bad radical literal: '" + std::string(text) + "'");
  Rational c = parse_rational(rest.substr(0, rest.size() - 1));
  std::size_t split = std::string_view::npos;
  for (std::size_t i = prefix.size(); i-- > 1;) {
    if (prefix[i] == '+' || prefix[i] == '-') {
      split = i;
      break;
    }
  }
  Rational p(0), q;
  if (split == std::string_view::npos) {
    q = parse_rational(prefix);
  } else {
    p = parse_rational(prefix.substr(0, split));
    std::string_view qtext = prefix.substr(split);
    if (qtext.front() == '+') qtext.remove_prefix(1);
    q = parse_rational(qtext);
  }
  if (sgn(c) < 0) throw NumericError("negative radicand in '" + std::string(text) + "'");
  return Scalar(QuadExt::make(p, q, c));
}

std::string fixed_decimal(const Rational& value, unsigned digits) {
  Integer scale = pow10(digits);
  Rational scaled = value * Rational(scale);
  // round half away from zero
  Rational half(1, 2);
  Integer n = sgn(scaled) < 0 ? Integer(-floor_of(-scaled + half)) : floor_of(scaled + half);
  bool negative = n < 0;
  if (negative) n = -n;
  std::string s = n.get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw NumericError("empty scalar");
  if (text.back() == '~') return parse_tilde(text);
  if (auto marker = text.find("*sqrt("); marker != std::string_view::npos) return parse_quad(text, marker);
  return Scalar(parse_rational(text));
}

std::string to_string(const Scalar& s) {
  if (const Rational* r = s.rational()) return to_string(*r);
  if (const QuadExt* q = s.quad()) {
    std::string out = to_string(q->p());
    out += sgn(q->q()) < 0 ? "-" : "+";
    out += to_string(Rational(abs(q->q())));
    out += "*sqrt(" + to_string(q->c()) + ")";
    return out;
  }
  const Interval& iv = *s.interval();
  Rational w = iv.width();
  unsigned digits = 0;
  if (sgn(w) > 0) {
    // largest f with 10^-f >= width, so the written digits stay meaningful
    double lw = std::log10(w.get_d());
    digits = lw >= 0 ? 0u : static_cast<unsigned>(std::min(60.0, std::floor(-lw + 1e-9)));
  } else {
    digits = 30;
  }
  return fixed_decimal(iv.midpoint(), digits) + "~";
}

std::string to_decimal(const Scalar& s, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, s.approx());
  return buf;
}

}  // namespace dispersal
