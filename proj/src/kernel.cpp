#include "dispersal/kernel.hpp"

#include <algorithm>
#include <numeric>

namespace dispersal {

namespace {

const Integer& sqrt_denominator() {
  static const Integer b = Integer(1) << 32;
  return b;
}

bool within(const Point& a, const Point& b, const Scalar& limit2) {
  switch (compare(dist2(a, b), limit2)) {
    case Ordering::less:
    case Ordering::equal:
      return true;
    case Ordering::greater:
      return false;
    default:
      throw NumericError("indeterminate distance comparison in kernel");
  }
}

Rational sqrt_upper(const Rational& x) {
  Rational root;
  if (is_perfect_square(x, &root)) return root;
  return sqrt_lower_upper(x, sqrt_denominator()).hi;
}

}  // namespace

MoveRadius move_radius_upper(const Rational& d2) {
  Rational root;
  if (is_perfect_square(d2, &root)) return {root, true};
  return {sqrt_lower_upper(d2, sqrt_denominator()).hi, false};
}

Integer size_bound(long long k, const Rational& d) {
  Integer kk(static_cast<long>(k));
  Rational t = (d + 2) * Rational(kk + 1) + 2;
  return 2 * kk + 2 * kk * ceil_of(t * t);
}

KernelResult kernelize(const Instance& inst) {
  if (!inst.blocks.empty()) throw NumericError("kernelize needs an instance without lattice blocks");
  KernelResult out;
  MoveRadius mr = move_radius_upper(inst.d2);
  KernelReport& rep = out.report;
  rep.d = mr.d;
  rep.d_exact = mr.exact;
  rep.threshold = (mr.d + 2) * Rational(static_cast<long>(inst.k + 1));
  rep.size_bound = size_bound(inst.k, mr.d);

  IntersectionGraph g = build_graph(inst.disks);
  std::optional<VertexCover> vc = approx_vc(g, inst.k);
  if (!vc) {
    out.trivially_no = true;
    out.instance = inst;
    return out;
  }
  rep.cover = vc->cover;

  const Scalar t2(Rational(rep.threshold * rep.threshold));
  out.instance = inst;
  out.instance.disks.clear();
  for (std::size_t i = 0; i < inst.disks.size(); ++i) {
    bool keep = std::any_of(rep.cover.begin(), rep.cover.end(), [&](std::size_t u) {
      return within(inst.disks[i].center, inst.disks[u].center, t2);
    });
    (keep ? rep.kept : rep.removed).push_back(i);
    if (keep) out.instance.disks.push_back(inst.disks[i]);
  }
  return out;
}

std::vector<std::vector<std::size_t>> halo_partition(std::span<const Point> centers, const Rational& d) {
  const Rational reach = 2 * d + 2;
  const Scalar reach2(Rational(reach * reach));
  IntersectionGraph g;
  g.vertices = centers.size();
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      if (within(centers[i], centers[j], reach2)) g.edges.emplace_back(i, j);
  return components(g);
}

ShrinkResult shrink_parts(std::span<const Point> centers, const std::vector<std::vector<std::size_t>>& parts,
                          const Rational& r) {
  for (const Point& p : centers)
    if (!is_rational(p)) throw NumericError("shrink_parts needs rational coordinates");
  auto rx = [&](std::size_t i) -> const Rational& { return *centers[i].x.rational(); };
  auto ry = [&](std::size_t i) -> const Rational& { return *centers[i].y.rational(); };

  Rational widest2(0);
  for (const auto& part : parts)
    for (std::size_t a = 0; a < part.size(); ++a)
      for (std::size_t b = a + 1; b < part.size(); ++b) {
        Rational dx = rx(part[a]) - rx(part[b]), dy = ry(part[a]) - ry(part[b]);
        widest2 = std::max(widest2, Rational(dx * dx + dy * dy));
      }

  ShrinkResult out;
  out.m = sqrt_upper(widest2);
  out.images.resize(centers.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    if (part.empty()) continue;
    Rational left = rx(part[0]), bottom = ry(part[0]);
    for (std::size_t v : part) {
      left = std::min(left, rx(v));
      bottom = std::min(bottom, ry(v));
    }
    Rational offset = Rational(static_cast<long>(i)) * (out.m + r);
    for (std::size_t v : part) out.images[v] = make_point(rx(v) - left + offset, ry(v) - bottom + offset);
  }
  return out;
}

Integer coordinate_statistic(std::span<const Point> centers) {
  Integer best(0);
  auto visit = [&](const Rational& v) {
    Integer c = v.get_den();
    Integer b = v.get_num() - floor_of(v) * c;
    if (c == 1) b = 0;
    best = std::max(best, Integer(b + c));
  };
  for (const Point& p : centers) {
    if (!is_rational(p)) continue;
    visit(*p.x.rational());
    visit(*p.y.rational());
  }
  return best;
}

KernelResult full_kernel(const Instance& inst) {
  KernelResult out = kernelize(inst);
  if (out.trivially_no) return out;
  std::vector<Point> centers;
  for (const Disk& d : out.instance.disks) centers.push_back(d.center);
  auto parts = halo_partition(centers, out.report.d);
  Rational r = 2 * out.report.d + 2;
  ShrinkResult shrunk = shrink_parts(centers, parts, r);
  for (std::size_t i = 0; i < centers.size(); ++i) out.instance.disks[i].center = shrunk.images[i];
  out.report.parts = parts.size();
  out.report.m = shrunk.m;
  out.report.r = r;
  out.report.coordinate_n = coordinate_statistic(shrunk.images);
  return out;
}

}  // namespace dispersal
