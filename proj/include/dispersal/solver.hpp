#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dispersal/instance.hpp"
#include "dispersal/udg.hpp"

namespace dispersal {

struct SolverConfig {
  /// Largest candidate set tried; negative means k.
  long long max_candidate_set_size = -1;
  /// Finest grid resolution for refutation; coarser grids are tried first.
  Rational delta{1, 16};
  bool use_candidates = true;
  bool use_numeric = true;
  bool use_refutation = true;
  /// Interval precision cap in bits; 0 keeps the process-wide setting.
  mpfr_prec_t precision_cap = 0;
  /// Wall-clock budget in seconds; <= 0 means unlimited.
  double time_budget = 120;
  unsigned jobs = 1;
  /// Depth-first nodes per candidate set in the tangency search.
  std::size_t candidate_nodes = 200000;
  /// Grid assignments per candidate set and resolution in the refutation.
  std::size_t grid_nodes = 20000000;
  /// Random restarts for the numeric stage.
  int numeric_starts = 24;
};

struct Answer {
  enum class Verdict { yes, no, unknown };
  Verdict verdict = Verdict::unknown;
  Witness witness;          // yes only; indices of the input instance
  std::string reason;       // unknown only
  std::vector<std::string> log;
  std::size_t sets_tried = 0;
};

std::string verdict_name(Answer::Verdict v);

struct Feasibility {
  enum class Status { feasible, infeasible, unknown };
  Status status = Status::unknown;
  std::vector<Point> assignment;  // aligned with the movables
  Rational delta;                 // resolution of an infeasibility proof
  std::string stage;              // which stage decided
};

/// Positions for the movables, each within the move radius of its origin,
/// pairwise and against `fixed` at distance >= 2. `fixed` must be a packing.
Feasibility feasibility(const std::vector<Point>& fixed, const std::vector<Point>& origins, const Rational& d2,
                        Variant variant, const SolverConfig& cfg);

/// Every vertex cover of g with at most k vertices, by size then
/// lexicographically. Returning false from the callback stops the stream.
void enumerate_candidate_sets(const IntersectionGraph& g, long long k,
                              const std::function<bool(const std::vector<std::size_t>&)>& visit);
std::vector<std::vector<std::size_t>> candidate_sets(const IntersectionGraph& g, long long k);

Answer solve(const Instance& inst, const SolverConfig& cfg = {});

class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute force over all subsets of at most k disks and all delta-grid
/// displacements. At most 12 explicit disks and k <= 3.
Answer oracle(const Instance& inst, const Rational& delta);

}  // namespace dispersal
