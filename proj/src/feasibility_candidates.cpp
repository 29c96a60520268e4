#include <algorithm>
#include <cmath>
#include <map>

#include "feasibility_detail.hpp"

namespace dispersal::detail {

bool separated(const Point& a, const Point& b) {
  Ordering o = compare(dist2(a, b), Scalar(4));
  return o == Ordering::greater || o == Ordering::equal;
}

bool move_allowed(const Problem& pb, std::size_t i, const Point& p) {
  return within_move(pb.origins[i], p, pb.d2, pb.variant) == Tri::yes;
}

bool verify(const Problem& pb, const std::vector<Point>& pos) {
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (!move_allowed(pb, i, pos[i])) return false;
    for (const Point& f : pb.obstacles[i])
      if (!separated(pos[i], f)) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!separated(pos[i], pos[j])) return false;
  }
  return true;
}

Problem make_problem(const std::vector<Point>& fixed, const std::vector<Point>& origins, const Rational& d2,
                     Variant variant) {
  Problem pb;
  pb.origins = origins;
  pb.d2 = d2;
  pb.variant = variant;
  Rational root;
  if (is_perfect_square(d2, &root)) {
    pb.d_up = root;
  } else {
    pb.d_up = sqrt_lower_upper(d2, Integer(1) << 32).hi;
    pb.d_exact = false;
  }
  // A fixed disk can only interfere when its centre is closer than d + 2.
  const Rational reach = pb.d_up + 2;
  const Scalar reach2(Rational(reach * reach));
  pb.obstacles.resize(origins.size());
  for (std::size_t i = 0; i < origins.size(); ++i)
    for (const Point& f : fixed) {
      Ordering o = compare(dist2(origins[i], f), reach2);
      if (o == Ordering::less || o == Ordering::indeterminate) pb.obstacles[i].push_back(f);
    }
  return pb;
}

namespace {

const Rational& rx(const Point& p) { return *p.x.rational(); }
const Rational& ry(const Point& p) { return *p.y.rational(); }

// Unit step from f towards o scaled to length 2; both coordinates share the radicand |o - f|^2.
void push_away(const Point& f, const Point& o, std::vector<Point>& out) {
  Rational dx = rx(o) - rx(f), dy = ry(o) - ry(f);
  Rational len2 = dx * dx + dy * dy;
  if (sgn(len2) == 0) {
    for (auto [ax, ay] : {std::pair{2, 0}, {-2, 0}, {0, 2}, {0, -2}})
      out.push_back(make_point(rx(f) + ax, ry(f) + ay));
    return;
  }
  out.push_back(Point{Scalar(QuadExt::make(rx(f), 2 * dx / len2, len2)), Scalar(QuadExt::make(ry(f), 2 * dy / len2, len2))});
}

void circles(const Point& a, const Rational& ra2, const Point& b, const Rational& rb2, std::vector<Point>& out) {
  if (rx(a) == rx(b) && ry(a) == ry(b)) return;
  for (Point& p : circle_circle_candidates_sq(a, ra2, b, rb2)) out.push_back(std::move(p));
}

// Positions on the movable's axis lines where it touches the anchor.
void axis_touch(const Point& f, const Point& o, std::vector<Point>& out) {
  Rational dy = ry(o) - ry(f);
  Rational rest = 4 - dy * dy;
  if (sgn(rest) >= 0) {
    out.push_back(Point{Scalar(QuadExt::make(rx(f), 1, rest)), o.y});
    out.push_back(Point{Scalar(QuadExt::make(rx(f), -1, rest)), o.y});
  }
  Rational dx = rx(o) - rx(f);
  rest = 4 - dx * dx;
  if (sgn(rest) >= 0) {
    out.push_back(Point{o.x, Scalar(QuadExt::make(ry(f), 1, rest))});
    out.push_back(Point{o.x, Scalar(QuadExt::make(ry(f), -1, rest))});
  }
}

// Candidates induced by one anchor disk for movable i.
void anchor_candidates(const Problem& pb, std::size_t i, const Point& f, std::vector<Point>& out) {
  if (!is_rational(f)) return;
  const Point& o = pb.origins[i];
  if (pb.variant == Variant::rectilinear) {
    axis_touch(f, o, out);
    return;
  }
  push_away(f, o, out);
  if (sgn(pb.d2) > 0) circles(f, 4, o, pb.d2, out);
}

// Exact filter plus canonical ordering by displacement.
std::vector<Point> finalize(const Problem& pb, std::size_t i, std::vector<Point> raw) {
  std::vector<std::pair<double, Point>> keyed;
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> seen;
  const Point& o = pb.origins[i];
  for (Point& p : raw) {
    double px = p.x.approx(), py = p.y.approx();
    std::pair<long long, long long> key{std::llround(px * 1e6), std::llround(py * 1e6)};
    auto& bucket = seen[key];
    if (std::any_of(bucket.begin(), bucket.end(), [&](std::size_t k) { return exactly_equal(keyed[k].second, p); }))
      continue;
    if (!move_allowed(pb, i, p)) continue;
    if (!std::all_of(pb.obstacles[i].begin(), pb.obstacles[i].end(), [&](const Point& f) { return separated(p, f); }))
      continue;
    double dx = px - o.x.approx(), dy = py - o.y.approx();
    bucket.push_back(keyed.size());
    keyed.emplace_back(dx * dx + dy * dy, std::move(p));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Point> out;
  out.reserve(keyed.size());
  for (auto& kp : keyed) out.push_back(std::move(kp.second));
  return out;
}

std::vector<Point> static_candidates(const Problem& pb, std::size_t i) {
  const Point& o = pb.origins[i];
  std::vector<Point> raw{o};
  if (!is_rational(o)) return finalize(pb, i, std::move(raw));
  const auto& obs = pb.obstacles[i];
  for (const Point& f : obs) anchor_candidates(pb, i, f, raw);
  if (pb.variant == Variant::euclidean) {
    for (std::size_t a = 0; a < obs.size(); ++a)
      for (std::size_t b = a + 1; b < obs.size(); ++b)
        if (is_rational(obs[a]) && is_rational(obs[b])) circles(obs[a], 4, obs[b], 4, raw);
  }
  if (sgn(pb.d2) > 0) {
    for (int s : {1, -1}) {
      raw.push_back(Point{Scalar(QuadExt::make(rx(o), s, pb.d2)), o.y});
      raw.push_back(Point{o.x, Scalar(QuadExt::make(ry(o), s, pb.d2))});
    }
  }
  return finalize(pb, i, std::move(raw));
}

struct Search {
  const Problem& pb;
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<std::vector<Point>> fixed_cands;
  std::vector<Point> placed;

  bool run(std::size_t i) {
    if (i == pb.origins.size()) return true;
    if (pb.expired()) return false;
    std::vector<Point> raw = fixed_cands[i];
    if (is_rational(pb.origins[i])) {
      // Positions touching disks placed earlier in this branch.
      for (const Point& p : placed) {
        if (!is_rational(p)) continue;
        anchor_candidates(pb, i, p, raw);
        if (pb.variant == Variant::euclidean) {
          for (const Point& f : pb.obstacles[i])
            if (is_rational(f)) circles(p, 4, f, 4, raw);
          for (const Point& q : placed)
            if (&q != &p && is_rational(q)) circles(p, 4, q, 4, raw);
        }
      }
    }
    std::vector<Point> cands = placed.empty() ? std::move(raw) : finalize(pb, i, std::move(raw));
    for (const Point& c : cands) {
      if (++nodes > budget) return false;
      if (!std::all_of(placed.begin(), placed.end(), [&](const Point& q) { return separated(c, q); })) continue;
      placed.push_back(c);
      if (run(i + 1)) return true;
      placed.pop_back();
      if (nodes > budget) return false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Point>> candidate_search(const Problem& pb, std::size_t node_budget) {
  Search s{pb, node_budget, 0, {}, {}};
  for (std::size_t i = 0; i < pb.origins.size(); ++i) {
    s.fixed_cands.push_back(static_candidates(pb, i));
    if (s.fixed_cands.back().empty() && pb.origins.size() == 1) return std::nullopt;
  }
  if (s.run(0)) return s.placed;
  return std::nullopt;
}

}  // namespace dispersal::detail
