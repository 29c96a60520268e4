#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dispersal/geometry.hpp"

namespace dispersal {

using Edge = std::pair<std::size_t, std::size_t>;

struct IntersectionGraph {
  std::size_t vertices = 0;
  std::vector<Edge> edges;  // sorted, first < second

  std::vector<std::vector<std::size_t>> adjacency() const;
};

class IndeterminateError : public std::runtime_error {
 public:
  IndeterminateError(std::size_t a, std::size_t b);
  std::size_t first, second;
};

/// Edge iff the disks of the given radius overlap: dist2 < (2 radius)^2.
/// Throws IndeterminateError when a pair cannot be decided.
IntersectionGraph build_graph(std::span<const Point> centers, const Rational& radius = 1,
                              bool accelerate = true);
IntersectionGraph build_graph(std::span<const Disk> disks, const Rational& radius = 1, bool accelerate = true);

struct VertexCover {
  std::vector<Edge> matching;
  std::vector<std::size_t> cover;  // sorted
};

/// Greedy maximal matching over edges in ascending order; nullopt once the
/// matching has more than k edges.
std::optional<VertexCover> approx_vc(const IntersectionGraph& g, long long k);

/// Connected components, each sorted, listed by smallest member.
std::vector<std::vector<std::size_t>> components(const IntersectionGraph& g);

}  // namespace dispersal
