#include <algorithm>

#include "dispersal/generators.hpp"

namespace dispersal {

namespace {

Rational R(long long v) { return Rational(static_cast<long>(v)); }

bool even_integer(const Rational& q) { return q.get_den() == 1 && mpz_even_p(q.get_num().get_mpz_t()); }

ClaimFourReport evaluate(long long t, long long a, const Rational& d, const Rational& s, const Rational& h) {
  ClaimFourReport rep;
  rep.d = d;
  rep.s = s;
  rep.h = h;
  rep.d_sq = d * d;
  const Rational A = R(a);
  Rational horiz = R(t - 1) / 2 * (A + s) + A / 2;
  rep.l1_sq = (d / 2) * (d / 2) + horiz * horiz;
  Rational l2 = h - 6 + d / 2;
  rep.l2_sq = l2 * l2;
  rep.l3_sq = (A + h) * (A + h) + A * A;
  rep.l4_sq = s * s + (h - 6) * (h - 6);
  rep.l1_ok = rep.l1_sq <= rep.d_sq;
  rep.l2_ok = sgn(l2) > 0 && rep.l2_sq > rep.d_sq;
  rep.l3_ok = rep.l3_sq <= rep.d_sq;
  rep.l4_ok = h >= 6 && rep.l4_sq > rep.d_sq;
  return rep;
}

}  // namespace

ClaimFourReport claim_four(long long t, long long a) {
  if (t < 1 || t % 2 == 0) throw GeneratorError("t must be odd and positive");
  if (a <= 0) throw GeneratorError("side must be positive");
  const Rational A = R(a);
  const Rational d = Rational(9, 4) * R(t) * R(t) * A * A;
  const Rational hh = d * d - A * A;
  ClaimFourReport last;
  // Even integers first so the squares and gadgets sit on the fill lattice.
  for (Integer D = 1; D <= Integer(1) << 40; D *= 256) {
    Rational h = sqrt_lower_upper(hh, D).lo - A;
    if (D == 1 && !even_integer(h)) h -= 1;
    const Rational ss = d * d - (h - 6) * (h - 6);
    Rational s = sqrt_lower_upper(ss, D).hi;
    if (s * s <= ss) s += Rational(Integer(1), D);
    if (D == 1 && !even_integer(s)) s += 1;
    last = evaluate(t, a, d, s, h);
    if (last.all()) return last;
  }
  throw GeneratorError("no rational s, h satisfy the distance bounds");
}

Composition gen_crosscompose(const std::vector<AppendingInstance>& instances) {
  if (instances.empty()) throw GeneratorError("need at least one instance");
  const long long t = static_cast<long long>(instances.size());
  if (t % 2 == 0) throw GeneratorError("number of instances must be odd");
  const long long a = instances.front().a, kappa = instances.front().kappa;
  for (const AppendingInstance& ai : instances)
    if (ai.a != a || ai.kappa != kappa) throw GeneratorError("instances must share side and kappa");
  if (a % 2 != 0 || a < std::max<long long>(10 * kappa, 216)) throw GeneratorError("side must be even and at least max(10 kappa, 216)");

  Composition out;
  out.report = claim_four(t, a);
  const Rational& s = out.report.s;
  const Rational& h = out.report.h;
  const Rational& d = out.report.d;
  const bool aligned = even_integer(s) && even_integer(h);
  const Rational A = R(a);
  Instance& inst = out.instance;
  inst.variant = Variant::euclidean;
  inst.k = 2 * kappa + 1;
  inst.d2 = d * d;

  auto add = [&](const Rational& x, const Rational& y) {
    inst.disks.push_back(Disk{make_point(x, y)});
    return inst.disks.size() - 1;
  };
  std::vector<Rect> boxes;
  const Rational gb = A + h - 6;  // bottom edge of every gadget
  const long long p = a / 2 - kappa - 3;
  for (long long i = 0; i < t; ++i) {
    const Rational xi = R(i) * (A + s);
    for (const Disk& dk : instances[i].packing) add(xi + *dk.center.x.rational(), *dk.center.y.rational());
    boxes.push_back(Rect{xi, 0, xi + A, A});

    // Gadget G_i in local coordinates (lx, ly) with origin (xi, gb).
    auto local = [&](long long lx, long long ly) { return add(xi + R(lx), gb + R(ly)); };
    for (long long x = p + 1; x <= p + 2 * kappa + 5; x += 2) {
      local(x, 1);
      local(x, 5);
    }
    local(p + 1, 3);
    local(p + 2 * kappa + 5, 3);
    std::vector<std::size_t> mine;
    for (long long x = p + 4; x <= p + 2 * kappa + 2; x += 2) mine.push_back(local(x, 3));
    out.interesting.push_back(std::move(mine));
    for (long long x = 1; x <= p - 1; x += 2)
      for (long long y : {1, 3, 5}) local(x, y);
    for (long long x = a - 1; x >= p + 2 * kappa + 7; x -= 2)
      for (long long y : {1, 3, 5}) local(x, y);
    boxes.push_back(Rect{xi, gb, xi + A, gb + 6});
  }

  const Rational xc = R((t - 1) / 2) * (A + s) + A / 2;
  const Rational yc = gb + d / 2;
  for (long long c = 0; c < kappa + 2; ++c) out.stack.push_back(add(xc, yc));

  // Lattice fill over the enclosing rectangle.
  const Rational X1 = R(t - 1) * (A + s) + A;
  Rational Y1 = A + h;
  if (Y1 < yc + 2) Y1 = Rational(ceil_of(yc) + 2);
  LatticeBlock fill;
  fill.x0 = 1;
  fill.y0 = 1;
  fill.x1 = X1 - 1;
  fill.y1 = Y1 - 1;
  const Rational margin = aligned ? 0 : 2;
  for (const Rect& b : boxes) fill.holes.push_back(Rect{b.x0 - margin, b.y0 - margin, b.x1 + margin, b.y1 + margin});
  const Rational cm = xc.get_den() == 1 && yc.get_den() == 1 ? 1 : 2;
  fill.holes.push_back(Rect{xc - cm, yc - cm, xc + cm, yc + cm});
  inst.blocks.push_back(std::move(fill));
  return out;
}

}  // namespace dispersal
