#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "dispersal/solver.hpp"

namespace dispersal::detail {

using Clock = std::chrono::steady_clock;

/// One feasibility query with obstacles already restricted per movable.
struct Problem {
  std::vector<Point> origins;
  std::vector<std::vector<Point>> obstacles;  // per movable
  Rational d2;
  Rational d_up;  // rational upper bound of sqrt(d2)
  bool d_exact = true;
  Variant variant = Variant::euclidean;
  std::optional<Clock::time_point> deadline;

  bool expired() const { return deadline && Clock::now() > *deadline; }
};

Problem make_problem(const std::vector<Point>& fixed, const std::vector<Point>& origins, const Rational& d2,
                     Variant variant);

/// dist2(a, b) >= 4, decided exactly; undecidable counts as false.
bool separated(const Point& a, const Point& b);
bool move_allowed(const Problem& pb, std::size_t i, const Point& p);
/// Complete exact check of an assignment.
bool verify(const Problem& pb, const std::vector<Point>& pos);

/// Tangency candidates searched depth-first.
std::optional<std::vector<Point>> candidate_search(const Problem& pb, std::size_t node_budget);

/// Projection descent from the given starts; solutions are verified exactly.
std::optional<std::vector<Point>> numeric_search(const Problem& pb, const std::vector<std::vector<double>>& seeds,
                                                 int random_starts);

struct GridOutcome {
  enum class Kind { refuted, relaxed_solution, budget } kind = Kind::budget;
  std::vector<std::vector<double>> seed;  // xy per movable when a relaxed solution exists
};

/// Searches the delta-grid for an assignment satisfying the constraints
/// relaxed by the rounding slack; none means the query is infeasible.
GridOutcome grid_refute(const Problem& pb, const Rational& delta, std::size_t node_budget);

Feasibility run_pipeline(const Problem& pb, const SolverConfig& cfg);

}  // namespace dispersal::detail
