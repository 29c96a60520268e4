#include <algorithm>
#include <cstdio>

#include "dispersal/instance.hpp"

namespace dispersal {

Rational default_tolerance() { return Rational(1, 1000000000); }

std::string ValidationResult::describe(const ValidationMode& mode) const {
  std::string tail = detail.empty() ? "" : ", " + detail;
  switch (verdict) {
    case Verdict::accept: {
      if (!mode.tolerant) return "accept";
      char buf[64];
      std::snprintf(buf, sizeof buf, "accept(%g)", mode.eps.get_d());
      return buf;
    }
    case Verdict::reject:
      return "reject(" + reason + tail + ")";
    case Verdict::indeterminate:
      return "indeterminate(" + reason + tail + ")";
    case Verdict::error:
      return "error(" + reason + tail + ")";
  }
  return "error";
}

std::vector<Point> apply_moves(const Instance& inst, const Witness& w) {
  std::vector<Point> pos;
  pos.reserve(inst.disks.size());
  for (const Disk& d : inst.disks) pos.push_back(d.center);
  for (const auto& [idx, p] : w.moves)
    if (idx < pos.size()) pos[idx] = p;
  return pos;
}

Instance apply_witness(const Instance& inst, const Witness& w) {
  Instance out = inst;
  std::vector<Point> pos = apply_moves(inst, w);
  for (std::size_t i = 0; i < pos.size(); ++i) out.disks[i].center = pos[i];
  return out;
}

Instance materialize_blocks(const Instance& inst) {
  Instance out = inst;
  out.blocks.clear();
  for (const LatticeBlock& b : inst.blocks)
    for (Point& p : b.materialize()) out.disks.push_back(Disk{std::move(p)});
  return out;
}

std::vector<Point> blocking_points(const Instance& inst, const Point& c, const Rational& reach) {
  std::vector<Point> out;
  const Scalar r2(Rational(reach * reach));
  for (const LatticeBlock& b : inst.blocks)
    for (Point& p : b.points_near(c, reach))
      if (compare(dist2(c, p), r2) != Ordering::greater) out.push_back(std::move(p));
  return out;
}

namespace {

using Verdict = ValidationResult::Verdict;

ValidationResult make(Verdict v, std::string reason, std::string detail = {}) {
  return ValidationResult{v, std::move(reason), std::move(detail)};
}

// Strict-closeness test under the mode. Returns Tri for "dist2 < 4".
Tri too_close(const Point& a, const Point& b, const ValidationMode& mode) {
  if (!mode.tolerant) return overlap(Disk{a}, Disk{b});
  Rational dx = a.x.nominal() - b.x.nominal();
  Rational dy = a.y.nominal() - b.y.nominal();
  return tri_of(dx * dx + dy * dy < 4 - mode.eps);
}

Tri move_ok(const Point& from, const Point& to, const Instance& inst, const ValidationMode& mode) {
  if (!mode.tolerant) return within_move(from, to, inst.d2, inst.variant);
  Rational dx = to.x.nominal() - from.x.nominal();
  Rational dy = to.y.nominal() - from.y.nominal();
  Rational dx2 = dx * dx, dy2 = dy * dy;
  Rational bound = inst.d2 + mode.eps;
  if (inst.variant == Variant::euclidean) return tri_of(dx2 + dy2 <= bound);
  return tri_of((dx2 <= mode.eps && dy2 <= bound) || (dy2 <= mode.eps && dx2 <= bound));
}

std::string pair_text(std::size_t a, std::size_t b) { return std::to_string(a) + " " + std::to_string(b); }

// Grid points of one block closer than 2 to each other.
bool self_overlapping(const LatticeBlock& b) {
  if (b.step >= 2) return false;
  const long long reach = ceil_of(Rational(2) / b.step).get_si();
  for (long long i = 0; i < b.columns(); ++i)
    for (long long j = 0; j < b.rows(); ++j) {
      if (!b.is_member(i, j)) continue;
      for (long long di = 0; di <= reach; ++di)
        for (long long dj = -reach; dj <= reach; ++dj) {
          if (di == 0 && dj <= 0) continue;
          if (Rational(static_cast<long>(di * di + dj * dj)) * b.step * b.step < 4 && b.is_member(i + di, j + dj)) return true;
        }
    }
  return false;
}

Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Some disk of block a overlaps some disk of block b.
bool block_pair_conflict(const LatticeBlock& a, const LatticeBlock& b) {
  Rect zone{rmax(a.x0, b.x0 - 2), rmax(a.y0, b.y0 - 2), rmin(a.x1, b.x1 + 2), rmin(a.y1, b.y1 + 2)};
  if (zone.x0 > zone.x1 || zone.y0 > zone.y1) return false;
  long long i0 = std::max<long long>(0, ceil_of((zone.x0 - a.x0) / a.step).get_si());
  long long i1 = std::min<long long>(a.columns() - 1, floor_of((zone.x1 - a.x0) / a.step).get_si());
  long long j0 = std::max<long long>(0, ceil_of((zone.y0 - a.y0) / a.step).get_si());
  long long j1 = std::min<long long>(a.rows() - 1, floor_of((zone.y1 - a.y0) / a.step).get_si());
  for (long long i = i0; i <= i1; ++i)
    for (long long j = j0; j <= j1; ++j) {
      if (!a.is_member(i, j)) continue;
      Point p = a.point(i, j);
      for (const Point& q : b.points_near(p, 2))
        if (overlap(Disk{p}, Disk{q}) == Tri::yes) return true;
    }
  return false;
}

}  // namespace

ValidationResult validate_witness(const Instance& inst, const Witness& w, const ValidationMode& mode) {
  for (const auto& [idx, p] : w.moves)
    if (idx >= inst.disks.size()) return make(Verdict::error, "index", std::to_string(idx));

  if (static_cast<long long>(w.moves.size()) > inst.k) return make(Verdict::reject, "budget");

  for (const auto& [idx, p] : w.moves) {
    Tri t = move_ok(inst.disks[idx].center, p, inst, mode);
    if (t == Tri::no) return make(Verdict::reject, "move", std::to_string(idx));
    if (t == Tri::unknown) return make(Verdict::indeterminate, "move", std::to_string(idx));
  }

  std::vector<Point> pos = apply_moves(inst, w);
  PackingCheck pc;
  if (mode.tolerant) {
    std::vector<Point> nominal;
    nominal.reserve(pos.size());
    for (const Point& p : pos) nominal.push_back(make_point(p.x.nominal(), p.y.nominal()));
    pc = first_conflict(nominal, Scalar(Rational(4 - mode.eps)));
  } else {
    pc = is_packing(pos);
  }
  if (pc.status == PackingCheck::Status::violation)
    return make(Verdict::reject, "packing", pair_text(pc.first, pc.second));
  if (pc.status == PackingCheck::Status::indeterminate)
    return make(Verdict::indeterminate, "packing", pair_text(pc.first, pc.second));

  for (std::size_t bi = 0; bi < inst.blocks.size(); ++bi) {
    if (self_overlapping(inst.blocks[bi])) return make(Verdict::reject, "block", "block " + std::to_string(bi));
    for (std::size_t bj = bi + 1; bj < inst.blocks.size(); ++bj)
      if (block_pair_conflict(inst.blocks[bi], inst.blocks[bj]))
        return make(Verdict::reject, "block", "blocks " + pair_text(bi, bj));
  }

  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (const LatticeBlock& b : inst.blocks) {
      for (const Point& q : b.points_near(pos[i], 2)) {
        Tri t = too_close(pos[i], q, mode);
        if (t == Tri::yes) return make(Verdict::reject, "block", std::to_string(i));
        if (t == Tri::unknown) return make(Verdict::indeterminate, "block", std::to_string(i));
      }
    }
  }
  return make(Verdict::accept, "");
}

}  // namespace dispersal
