#include "dispersal/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace dispersal {

namespace {

Rational R(long long v) { return Rational(static_cast<long>(v)); }

Disk disk_at(const Rational& x, const Rational& y) { return Disk{make_point(x, y)}; }

}  // namespace

Instance gen_random(std::size_t n, const Rational& side, std::uint64_t seed, long long k, const Rational& d2,
                    Variant variant) {
  Instance inst;
  inst.variant = variant;
  inst.k = k;
  inst.d2 = d2;
  const long long cells = std::max<long long>(0, floor_of(side * 4).get_si());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> pick(0, cells);
  for (std::size_t i = 0; i < n; ++i) {
    long long u = pick(rng), v = pick(rng);
    inst.disks.push_back(disk_at(R(u) / 4, R(v) / 4));
  }
  return inst;
}

Instance gen_colocated(std::size_t m, long long k, const Rational& d2, Variant variant) {
  Instance inst;
  inst.variant = variant;
  inst.k = k;
  inst.d2 = d2;
  inst.disks.assign(m, disk_at(0, 0));
  return inst;
}

AppendingInstance gen_appending_frame(long long a, long long kappa, const std::vector<Disk>& interior) {
  if (a <= 0 || a % 2 != 0) throw GeneratorError("side must be a positive even integer");
  if (kappa < 0) throw GeneratorError("kappa must be non-negative");
  if (a < std::max<long long>(10 * kappa, 216)) throw GeneratorError("side must be at least max(10 kappa, 216)");
  AppendingInstance out;
  out.a = a;
  out.kappa = kappa;
  std::set<std::pair<long long, long long>> seen;
  auto add = [&](long long x, long long y) {
    if (seen.emplace(x, y).second) out.packing.push_back(disk_at(R(x), R(y)));
  };
  for (long long i = 1; i <= a / 2; ++i) {
    add(2 * i - 1, 1);
    add(2 * i - 1, a - 1);
    add(1, 2 * i - 1);
    add(a - 1, 2 * i - 1);
  }
  out.border = out.packing.size();
  for (const Disk& d : interior) {
    if (!is_rational(d.center)) throw GeneratorError("interior centres must be rational");
    const Rational& x = *d.center.x.rational();
    const Rational& y = *d.center.y.rational();
    if (sgn(x) < 0 || sgn(y) < 0 || x > R(a) || y > R(a)) throw GeneratorError("interior disk outside the square");
    out.packing.push_back(d);
  }
  PackingCheck pc = is_packing(std::span<const Disk>(out.packing));
  if (pc.status != PackingCheck::Status::ok)
    throw GeneratorError("interior overlaps: disks " + std::to_string(pc.first) + " and " + std::to_string(pc.second));
  return out;
}

}  // namespace dispersal
