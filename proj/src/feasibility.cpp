#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "feasibility_detail.hpp"

namespace dispersal::detail {

namespace {

struct Vec {
  double x = 0, y = 0;
};

double norm(Vec v) { return std::hypot(v.x, v.y); }

// Grid used when turning numeric positions into exact rationals.
constexpr double kSnap = 1073741824.0;  // 2^30
constexpr double kSeparationMargin = 1e-6;

Rational snapped(double v) {
  double s = std::nearbyint(v * kSnap);
  Rational r(Integer(s), Integer(1) << 30);
  r.canonicalize();
  return r;
}

struct NumericContext {
  const Problem& pb;
  std::vector<Vec> origin;
  std::vector<std::vector<Vec>> obstacle;
  double radius = 0;  // move radius shrunk by a margin

  explicit NumericContext(const Problem& p) : pb(p) {
    for (std::size_t i = 0; i < pb.origins.size(); ++i) {
      origin.push_back({pb.origins[i].x.approx(), pb.origins[i].y.approx()});
      obstacle.emplace_back();
      for (const Point& f : pb.obstacles[i]) obstacle.back().push_back({f.x.approx(), f.y.approx()});
    }
    radius = std::sqrt(pb.d2.get_d()) - kSeparationMargin;
  }

  // axis: bit i set means movable i slides vertically (rectilinear only).
  void project(std::vector<Vec>& p, unsigned axis) const {
    for (std::size_t i = 0; i < p.size(); ++i) {
      Vec o = origin[i];
      if (pb.variant == Variant::euclidean) {
        Vec v{p[i].x - o.x, p[i].y - o.y};
        double n = norm(v);
        if (n > radius) p[i] = {o.x + v.x * radius / n, o.y + v.y * radius / n};
      } else if ((axis >> i) & 1u) {
        p[i] = {o.x, std::clamp(p[i].y, o.y - radius, o.y + radius)};
      } else {
        p[i] = {std::clamp(p[i].x, o.x - radius, o.x + radius), o.y};
      }
    }
  }

  bool relax(std::vector<Vec>& p, std::mt19937_64& rng) const {
    const double target = 2 + kSeparationMargin;
    bool clean = true;
    std::uniform_real_distribution<double> angle(0, 6.283185307179586);
    auto away = [&](Vec v) {
      double n = norm(v);
      if (n > 1e-12) return Vec{v.x / n, v.y / n};
      double a = angle(rng);
      return Vec{std::cos(a), std::sin(a)};
    };
    for (std::size_t i = 0; i < p.size(); ++i)
      for (const Vec& f : obstacle[i]) {
        Vec v{p[i].x - f.x, p[i].y - f.y};
        if (norm(v) >= target) continue;
        Vec u = away(v);
        p[i] = {f.x + u.x * target, f.y + u.y * target};
        clean = false;
      }
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        Vec v{p[i].x - p[j].x, p[i].y - p[j].y};
        double n = norm(v);
        if (n >= target) continue;
        Vec u = away(v);
        double push = (target - n) / 2;
        p[i] = {p[i].x + u.x * push, p[i].y + u.y * push};
        p[j] = {p[j].x - u.x * push, p[j].y - u.y * push};
        clean = false;
      }
    return clean;
  }

  std::optional<std::vector<Point>> exact_of(const std::vector<Vec>& p, unsigned axis) const {
    std::vector<Point> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point& o = pb.origins[i];
      if (pb.variant == Variant::rectilinear && ((axis >> i) & 1u)) {
        out.push_back(Point{o.x, Scalar(snapped(p[i].y))});
      } else if (pb.variant == Variant::rectilinear) {
        out.push_back(Point{Scalar(snapped(p[i].x)), o.y});
      } else {
        out.push_back(make_point(snapped(p[i].x), snapped(p[i].y)));
      }
    }
    if (verify(pb, out)) return out;
    return std::nullopt;
  }

  std::optional<std::vector<Point>> descend(std::vector<Vec> p, unsigned axis, std::mt19937_64& rng) const {
    for (int iter = 0; iter < 3000; ++iter) {
      project(p, axis);
      std::vector<Vec> before = p;
      if (relax(p, rng)) return exact_of(before, axis);
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<std::vector<Point>> numeric_search(const Problem& pb, const std::vector<std::vector<double>>& seeds,
                                                 int random_starts) {
  const std::size_t t = pb.origins.size();
  if (t == 0 || t > 16) return std::nullopt;
  NumericContext ctx(pb);
  if (ctx.radius <= 0) return std::nullopt;
  for (const Point& o : pb.origins)
    if (!o.x.is_rational() || !o.y.is_rational()) return std::nullopt;

  std::mt19937_64 rng(0x5eed + t);
  std::uniform_real_distribution<double> unit(-1, 1);
  const unsigned masks = pb.variant == Variant::rectilinear ? (1u << t) : 1u;

  std::vector<std::vector<Vec>> starts;
  for (const auto& s : seeds) {
    std::vector<Vec> v;
    for (std::size_t i = 0; i < t; ++i) v.push_back({s[2 * i], s[2 * i + 1]});
    starts.push_back(std::move(v));
  }
  starts.push_back(ctx.origin);
  for (int r = 0; r < random_starts; ++r) {
    std::vector<Vec> v = ctx.origin;
    for (Vec& x : v) {
      x.x += unit(rng) * ctx.radius;
      x.y += unit(rng) * ctx.radius;
    }
    starts.push_back(std::move(v));
  }
  for (const auto& start : starts) {
    if (pb.expired()) return std::nullopt;
    for (unsigned axis = 0; axis < masks; ++axis) {
      if (auto sol = ctx.descend(start, axis, rng)) return sol;
    }
  }
  return std::nullopt;
}

namespace {

// Rational upper bound of sqrt(2).
const Rational& sqrt2_up() {
  static const Rational r(1414213563, 1000000000);
  return r;
}

struct GridPoint {
  Rational x, y;
  double dx, dy;
};

// "dist2 >= thr" for rational p against an arbitrary point, double fast path.
bool far_enough(const GridPoint& g, const Point& f, double fx, double fy, const Rational& thr, double thr_d) {
  double ex = g.dx - fx, ey = g.dy - fy;
  double dd = ex * ex + ey * ey;
  double slack = 1e-9 * (1 + dd + thr_d) + 1e-12 * (std::abs(g.dx) + std::abs(g.dy) + std::abs(fx) + std::abs(fy));
  if (dd > thr_d + slack) return true;
  if (dd < thr_d - slack) return false;
  Ordering o = compare(dist2(make_point(g.x, g.y), f), Scalar(thr));
  // Undecidable counts as compatible: keeping points only weakens a refutation.
  return o != Ordering::less;
}

bool pair_ok(const GridPoint& a, const GridPoint& b, const Rational& thr, double thr_d) {
  double ex = a.dx - b.dx, ey = a.dy - b.dy;
  double dd = ex * ex + ey * ey;
  double slack = 1e-9 * (1 + dd + thr_d) + 1e-12 * (std::abs(a.dx) + std::abs(a.dy) + std::abs(b.dx) + std::abs(b.dy));
  if (dd > thr_d + slack) return true;
  if (dd < thr_d - slack) return false;
  Rational rx = a.x - b.x, ry = a.y - b.y;
  return rx * rx + ry * ry >= thr;
}

}  // namespace

GridOutcome grid_refute(const Problem& pb, const Rational& delta, std::size_t node_budget) {
  GridOutcome out;
  const std::size_t t = pb.origins.size();
  for (const Point& o : pb.origins)
    if (!is_rational(o)) return out;

  const Rational slack = delta * sqrt2_up();
  const Rational reach = pb.d_up + slack;
  const Rational q = (reach / delta) * (reach / delta);
  const long long extent = floor_of(reach / delta).get_si();
  const Rational fixed_gap = 2 - slack;
  const Rational pair_gap = 2 - 2 * slack;
  const bool fixed_active = sgn(fixed_gap) > 0;
  const bool pair_active = sgn(pair_gap) > 0;
  const Rational fixed_thr = fixed_gap * fixed_gap, pair_thr = pair_gap * pair_gap;
  const double fixed_thr_d = fixed_thr.get_d(), pair_thr_d = pair_thr.get_d();

  std::size_t work = 0;
  std::vector<std::vector<GridPoint>> lists(t);
  for (std::size_t i = 0; i < t; ++i) {
    const Rational& ox = *pb.origins[i].x.rational();
    const Rational& oy = *pb.origins[i].y.rational();
    std::vector<std::pair<double, double>> obs;
    for (const Point& f : pb.obstacles[i]) obs.emplace_back(f.x.approx(), f.y.approx());
    auto consider = [&](long long a, long long b) {
      GridPoint g{ox + delta * Rational(static_cast<long>(a)), oy + delta * Rational(static_cast<long>(b)), 0, 0};
      g.dx = g.x.get_d();
      g.dy = g.y.get_d();
      if (fixed_active)
        for (std::size_t k = 0; k < obs.size(); ++k)
          if (!far_enough(g, pb.obstacles[i][k], obs[k].first, obs[k].second, fixed_thr, fixed_thr_d)) return;
      lists[i].push_back(std::move(g));
    };
    if (pb.variant == Variant::euclidean) {
      for (long long a = -extent; a <= extent; ++a) {
        Rational rest = q - Rational(static_cast<long>(a * a));
        if (sgn(rest) < 0) continue;
        long long span = Integer(sqrt(floor_of(rest))).get_si();
        for (long long b = -span; b <= span; ++b) {
          if (++work > node_budget) return out;
          consider(a, b);
        }
      }
    } else {
      for (long long a = -extent; a <= extent; ++a) {
        if ((work += 2) > node_budget) return out;
        consider(a, 0);
        if (a != 0) consider(0, a);
      }
    }
    if (lists[i].empty()) {
      out.kind = GridOutcome::Kind::refuted;
      return out;
    }
    if (pb.expired()) return out;
  }

  // Most constrained movable first.
  std::vector<std::size_t> order(t);
  for (std::size_t i = 0; i < t; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lists[a].size() < lists[b].size(); });

  std::vector<const GridPoint*> chosen(t, nullptr);
  bool exhausted = false;
  std::function<bool(std::size_t)> dfs = [&](std::size_t depth) -> bool {
    if (depth == t) return true;
    std::size_t i = order[depth];
    for (const GridPoint& g : lists[i]) {
      bool ok = true;
      for (std::size_t e = 0; e < depth && ok; ++e) {
        if (++work > node_budget) {
          exhausted = true;
          return false;
        }
        ok = !pair_active || pair_ok(g, *chosen[order[e]], pair_thr, pair_thr_d);
      }
      if (!ok) continue;
      chosen[i] = &g;
      if (dfs(depth + 1)) return true;
      if (exhausted) return false;
      if ((work & 0xFFFF) == 0 && pb.expired()) {
        exhausted = true;
        return false;
      }
    }
    return false;
  };
  if (dfs(0)) {
    out.kind = GridOutcome::Kind::relaxed_solution;
    std::vector<double> seed;
    for (std::size_t i = 0; i < t; ++i) {
      seed.push_back(chosen[i]->dx);
      seed.push_back(chosen[i]->dy);
    }
    out.seed.push_back(std::move(seed));
    return out;
  }
  if (exhausted) return out;
  out.kind = GridOutcome::Kind::refuted;
  return out;
}

namespace {

std::vector<Rational> delta_schedule(const Rational& finest) {
  std::vector<Rational> out;
  for (Rational d(1, 2); d > finest; d /= 2) out.push_back(d);
  out.push_back(finest);
  return out;
}

Feasibility feasible(std::vector<Point> pos, const char* stage) {
  Feasibility f;
  f.status = Feasibility::Status::feasible;
  f.assignment = std::move(pos);
  f.stage = stage;
  return f;
}

}  // namespace

Feasibility run_pipeline(const Problem& pb, const SolverConfig& cfg) {
  const std::size_t t = pb.origins.size();
  if (t == 0) return feasible({}, "empty");
  if (sgn(pb.d2) == 0) {
    if (verify(pb, pb.origins)) return feasible(pb.origins, "static");
    Feasibility f;
    f.status = Feasibility::Status::infeasible;
    f.stage = "static";
    return f;
  }
  if (cfg.use_candidates)
    if (auto sol = candidate_search(pb, cfg.candidate_nodes)) return feasible(std::move(*sol), "candidates");
  if (cfg.use_numeric)
    if (auto sol = numeric_search(pb, {}, cfg.numeric_starts)) return feasible(std::move(*sol), "numeric");
  Feasibility f;
  f.stage = "undecided";
  if (!cfg.use_refutation) return f;
  for (const Rational& delta : delta_schedule(cfg.delta)) {
    if (pb.expired()) {
      f.stage = "time";
      return f;
    }
    GridOutcome g = grid_refute(pb, delta, cfg.grid_nodes);
    if (g.kind == GridOutcome::Kind::refuted) {
      f.status = Feasibility::Status::infeasible;
      f.delta = delta;
      f.stage = "grid";
      return f;
    }
    if (g.kind == GridOutcome::Kind::budget) {
      f.stage = "grid budget";
      return f;
    }
    if (cfg.use_numeric)
      if (auto sol = numeric_search(pb, g.seed, 0)) return feasible(std::move(*sol), "numeric");
  }
  f.stage = "grid resolution";
  return f;
}

}  // namespace dispersal::detail

namespace dispersal {

Feasibility feasibility(const std::vector<Point>& fixed, const std::vector<Point>& origins, const Rational& d2,
                        Variant variant, const SolverConfig& cfg) {
  detail::Problem pb = detail::make_problem(fixed, origins, d2, variant);
  if (cfg.time_budget > 0)
    pb.deadline = detail::Clock::now() + std::chrono::duration_cast<detail::Clock::duration>(
                                             std::chrono::duration<double>(cfg.time_budget));
  return detail::run_pipeline(pb, cfg);
}

}  // namespace dispersal
