#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dispersal/instance.hpp"

namespace dispersal {

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n disks on the 1/4-grid inside [0, side]^2, reproducible per seed.
Instance gen_random(std::size_t n, const Rational& side, std::uint64_t seed, long long k = 1,
                    const Rational& d2 = Rational(1), Variant variant = Variant::euclidean);

/// m disks stacked at the origin.
Instance gen_colocated(std::size_t m, long long k, const Rational& d2, Variant variant = Variant::euclidean);

// --- Disk Appending frames and the OR-composition ---------------------------

struct AppendingInstance {
  long long a = 0;  // side of the square [0,a]^2
  std::vector<Disk> packing;
  long long kappa = 0;
  std::size_t border = 0;  // leading entries of `packing` that form the frame
};

/// Frame disks at (2i-1,1), (2i-1,a-1), (1,2i-1), (a-1,2i-1) followed by `interior`.
/// Corners are shared, so the frame has 2a-4 disks.
AppendingInstance gen_appending_frame(long long a, long long kappa, const std::vector<Disk>& interior = {});

struct ClaimFourReport {
  Rational d, s, h;
  Rational l1_sq, l2_sq, l3_sq, l4_sq, d_sq;
  bool l1_ok = false;  // l1 <= d
  bool l2_ok = false;  // l2 > d
  bool l3_ok = false;  // l3 <= d
  bool l4_ok = false;  // l4 > d

  bool all() const { return l1_ok && l2_ok && l3_ok && l4_ok; }
};

struct Composition {
  Instance instance;
  ClaimFourReport report;
  std::vector<std::size_t> stack;                   // indices of the co-located set C
  std::vector<std::vector<std::size_t>> interesting;  // per gadget
};

/// Computes s and h for (t, a) and checks the four distance bounds exactly.
ClaimFourReport claim_four(long long t, long long a);

Composition gen_crosscompose(const std::vector<AppendingInstance>& instances);

// --- Grid Tiling reduction ---------------------------------------------------

struct GridTilingInstance {
  long long n = 0;
  long long kappa = 0;
  std::map<std::pair<long long, long long>, std::set<std::pair<long long, long long>>> sets;  // (i,j) -> S_ij

  void check() const;
};

/// "n kappa" on the first line, then lines "i j: a,b a,b ...".
GridTilingInstance parse_gridtiling(std::string_view text);
std::string write_gridtiling(const GridTilingInstance& gt);

struct GridTilingParams {
  long long n = 0, kappa = 0;
  long long L = 0, d = 0;
  long long V = 0, H = 0;  // gaps between cell gadgets
  long long Gc = 0;        // gap between the grid and the column gadgets
  long long N1 = 0;
  long long k = 0;

  long long m(long long i, long long j) const { return 3 * kappa - i - 2 * j + 2; }
  long long r(long long i) const { return 2 * kappa - i; }
  long long c(long long j) const { return kappa - j + 2; }
  long long er(long long i) const { return kappa - i; }
  long long ec(long long j) const { return kappa - j + 2; }
  long long Gr(long long i) const { return 4 + 6 * (i - 1); }
};

GridTilingParams gridtiling_params(const GridTilingInstance& gt);

/// Tall gadget record; exposed for tests and rendering.
struct GadgetInfo {
  std::string name;                  // e.g. "PG(2,1,1,1)"
  long long gx = 0, gy = 0;          // bottom-left corner, box is 6 x 2L
  bool odd = true;                   // slot parity type
  std::vector<std::size_t> interesting;  // bottom to top
  long long room = 0;                    // free slots of an emptying star gadget
};

struct GridTilingBuild {
  Instance instance;
  GridTilingParams params;
  std::vector<GadgetInfo> gadgets;
  std::vector<std::size_t> stacked;  // disks of the co-located stacks
};

GridTilingBuild build_gridtiling(const GridTilingInstance& gt);
Instance gen_gridtiling(const GridTilingInstance& gt);

/// Moves realising a Grid Tiling solution rows[i-1] = r*_i, cols[j-1] = c*_j.
Witness gridtiling_witness(const GridTilingInstance& gt, const Instance& inst, const std::vector<long long>& rows,
                           const std::vector<long long>& cols);

}  // namespace dispersal
