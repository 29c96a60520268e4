#include <algorithm>
#include <functional>

#include "dispersal/solver.hpp"

namespace dispersal {

namespace {

struct Q2 {
  Rational x, y;
};

Rational sq_dist(const Q2& a, const Q2& b) {
  Rational dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Searches one displacement per chosen disk over the delta-grid.
class GridSearch {
 public:
  GridSearch(std::vector<std::vector<Q2>> options, std::vector<Rational> pair_min, std::size_t n)
      : options_(std::move(options)), pair_min_(std::move(pair_min)), n_(n), pick_(n) {}

  bool run(std::size_t i = 0) {
    if (i == n_) return true;
    for (const Q2& p : options_[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = sq_dist(p, pick_[j]) >= pair_min_[0];
      if (!ok) continue;
      pick_[i] = p;
      if (run(i + 1)) return true;
    }
    return false;
  }

  const std::vector<Q2>& pick() const { return pick_; }

 private:
  std::vector<std::vector<Q2>> options_;
  std::vector<Rational> pair_min_;
  std::size_t n_;
  std::vector<Q2> pick_;
};

}  // namespace

Answer oracle(const Instance& inst, const Rational& delta) {
  const std::size_t n = inst.disks.size();
  if (n > 12) throw OracleGuardError("oracle handles at most 12 disks");
  if (inst.k > 3) throw OracleGuardError("oracle handles k <= 3");
  if (sgn(delta) <= 0) throw OracleGuardError("delta must be positive");
  std::vector<Q2> c;
  for (const Disk& d : inst.disks) {
    if (!is_rational(d.center)) throw OracleGuardError("oracle needs rational centres");
    c.push_back({*d.center.x.rational(), *d.center.y.rational()});
  }

  // Upper bounds for sqrt(d2) and for the rounding slack delta*sqrt(2).
  Rational d_hi;
  if (!is_perfect_square(inst.d2, &d_hi)) d_hi = sqrt_lower_upper(inst.d2, 1 << 20).hi;
  const Rational slack = delta * Rational(99, 70);
  const Rational relaxed_reach = d_hi + slack;
  const Rational fixed_relaxed = sgn(2 - slack) > 0 ? Rational((2 - slack) * (2 - slack)) : Rational(0);
  const Rational pair_relaxed = sgn(2 - 2 * slack) > 0 ? Rational((2 - 2 * slack) * (2 - 2 * slack)) : Rational(0);

  auto lattice_near = [&](const Q2& p, const Rational& reach) {
    std::vector<Q2> out;
    for (const LatticeBlock& b : inst.blocks)
      for (const Point& q : b.points_near(make_point(p.x, p.y), reach))
        out.push_back({*q.x.rational(), *q.y.rational()});
    return out;
  };

  Answer ans;
  bool all_refuted = true;
  const long long limit = std::min<long long>(inst.k, static_cast<long long>(n));
  std::vector<std::size_t> chosen;

  // Grid options of disk `v` for the exact (reach2 = d2) or relaxed search.
  auto options = [&](std::size_t v, const std::vector<bool>& moving, bool relaxed) {
    const Rational bound = relaxed ? Rational(relaxed_reach * relaxed_reach) : inst.d2;
    const Rational sep = relaxed ? fixed_relaxed : Rational(4);
    const long long m = floor_of((relaxed ? relaxed_reach : d_hi) / delta).get_si();
    std::vector<Q2> fixed;
    for (std::size_t u = 0; u < n; ++u)
      if (!moving[u]) fixed.push_back(c[u]);
    for (Q2& q : lattice_near(c[v], relaxed_reach + 2)) fixed.push_back(std::move(q));
    std::vector<Q2> out;
    for (long long a = -m; a <= m; ++a)
      for (long long b = -m; b <= m; ++b) {
        if (inst.variant == Variant::rectilinear && a != 0 && b != 0) continue;
        Rational ox = delta * Rational(static_cast<long>(a)), oy = delta * Rational(static_cast<long>(b));
        if (ox * ox + oy * oy > bound) continue;
        Q2 p{c[v].x + ox, c[v].y + oy};
        bool clear = std::all_of(fixed.begin(), fixed.end(), [&](const Q2& f) { return sq_dist(p, f) >= sep; });
        if (clear) out.push_back(std::move(p));
      }
    return out;
  };

  auto try_subset = [&](const std::vector<std::size_t>& set) -> bool {
    std::vector<bool> moving(n, false);
    for (std::size_t v : set) moving[v] = true;
    // The unmoved disks must already form a packing, lattice included.
    for (std::size_t u = 0; u < n; ++u) {
      if (moving[u]) continue;
      for (std::size_t w = u + 1; w < n; ++w)
        if (!moving[w] && sq_dist(c[u], c[w]) < 4) return false;
      for (const Q2& q : lattice_near(c[u], 2))
        if (sq_dist(c[u], q) < 4) return false;
    }
    std::vector<std::vector<Q2>> relaxed_opts;
    for (std::size_t v : set) relaxed_opts.push_back(options(v, moving, true));
    GridSearch relaxed(relaxed_opts, {pair_relaxed}, set.size());
    if (!relaxed.run()) return false;
    all_refuted = false;
    std::vector<std::vector<Q2>> exact_opts;
    for (std::size_t v : set) exact_opts.push_back(options(v, moving, false));
    GridSearch exact(exact_opts, {Rational(4)}, set.size());
    if (!exact.run()) return false;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Q2& p = exact.pick()[i];
      if (p.x != c[set[i]].x || p.y != c[set[i]].y) ans.witness.moves.emplace(set[i], make_point(p.x, p.y));
    }
    return true;
  };

  std::function<bool(std::size_t, std::size_t)> subsets = [&](std::size_t size, std::size_t next) -> bool {
    if (chosen.size() == size) {
      ++ans.sets_tried;
      return try_subset(chosen);
    }
    for (std::size_t v = next; v < n; ++v) {
      chosen.push_back(v);
      if (subsets(size, v + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (long long size = 0; size <= limit; ++size) {
    if (subsets(static_cast<std::size_t>(size), 0)) {
      ans.verdict = Answer::Verdict::yes;
      return ans;
    }
  }
  if (all_refuted) {
    ans.verdict = Answer::Verdict::no;
  } else {
    ans.verdict = Answer::Verdict::unknown;
    ans.reason = "grid too coarse";
  }
  return ans;
}

}  // namespace dispersal
