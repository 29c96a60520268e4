#include "dispersal/udg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace dispersal {

IndeterminateError::IndeterminateError(std::size_t a, std::size_t b)
    : std::runtime_error("indeterminate overlap between disks " + std::to_string(a) + " and " + std::to_string(b)),
      first(a),
      second(b) {}

std::vector<std::vector<std::size_t>> IntersectionGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

namespace {

void test_pair(std::span<const Point> c, std::size_t i, std::size_t j, const Scalar& sep2, std::vector<Edge>& out) {
  switch (compare(dist2(c[i], c[j]), sep2)) {
    case Ordering::less:
      out.emplace_back(i, j);
      break;
    case Ordering::indeterminate:
      throw IndeterminateError(i, j);
    default:
      break;
  }
}

}  // namespace

IntersectionGraph build_graph(std::span<const Point> centers, const Rational& radius, bool accelerate) {
  IntersectionGraph g;
  g.vertices = centers.size();
  const Rational diameter = 2 * radius;
  const Scalar sep2(Rational(diameter * diameter));
  const std::size_t n = centers.size();
  if (!accelerate || n < 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) test_pair(centers, i, j, sep2, g.edges);
    return g;
  }
  // Cells wider than the diameter: candidates lie in the 3x3 neighbourhood.
  const double side = std::max(1.0, diameter.get_d() * 1.01 + 1e-6);
  auto cell = [&](const Point& p) {
    return std::pair<long long, long long>{static_cast<long long>(std::floor(p.x.approx() / side)),
                                           static_cast<long long>(std::floor(p.y.approx() / side))};
  };
  struct Hash {
    std::size_t operator()(const std::pair<long long, long long>& k) const {
      return std::hash<long long>()(k.first * 0x9E3779B97F4A7C15LL ^ k.second);
    }
  };
  std::unordered_map<std::pair<long long, long long>, std::vector<std::size_t>, Hash> buckets;
  std::vector<std::pair<long long, long long>> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = cell(centers[i]);
    buckets[keys[i]].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({keys[i].first + dx, keys[i].second + dy});
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second)
          if (j > i) test_pair(centers, i, j, sep2, g.edges);
      }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

IntersectionGraph build_graph(std::span<const Disk> disks, const Rational& radius, bool accelerate) {
  std::vector<Point> centers;
  centers.reserve(disks.size());
  for (const Disk& d : disks) centers.push_back(d.center);
  return build_graph(centers, radius, accelerate);
}

std::optional<VertexCover> approx_vc(const IntersectionGraph& g, long long k) {
  VertexCover vc;
  std::vector<bool> used(g.vertices, false);
  for (auto [a, b] : g.edges) {
    if (used[a] || used[b]) continue;
    used[a] = used[b] = true;
    vc.matching.emplace_back(a, b);
    if (static_cast<long long>(vc.matching.size()) > k) return std::nullopt;
  }
  for (std::size_t v = 0; v < g.vertices; ++v)
    if (used[v]) vc.cover.push_back(v);
  return vc;
}

std::vector<std::vector<std::size_t>> components(const IntersectionGraph& g) {
  std::vector<std::size_t> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [a, b] : g.edges) {
    std::size_t ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> slot(g.vertices, SIZE_MAX);
  for (std::size_t v = 0; v < g.vertices; ++v) {
    std::size_t r = find(v);
    if (slot[r] == SIZE_MAX) {
      slot[r] = parts.size();
      parts.emplace_back();
    }
    parts[slot[r]].push_back(v);
  }
  return parts;
}

}  // namespace dispersal
