#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "dispersal/generators.hpp"

namespace dispersal {

// --- text format ---------------------------------------------------------------

void GridTilingInstance::check() const {
  if (n < 1 || kappa < 1) throw GeneratorError("n and kappa must be positive");
  for (long long i = 1; i <= kappa; ++i)
    for (long long j = 1; j <= kappa; ++j) {
      auto it = sets.find({i, j});
      if (it == sets.end() || it->second.empty())
        throw GeneratorError("cell " + std::to_string(i) + " " + std::to_string(j) + " has an empty set");
      for (auto [a, b] : it->second)
        if (a < 1 || b < 1 || a > n || b > n) throw GeneratorError("pair outside [n]x[n]");
    }
  if (static_cast<long long>(sets.size()) != kappa * kappa) throw GeneratorError("cell outside the grid");
}

namespace {

long long to_ll(std::string_view s, int line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "bad integer '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

GridTilingInstance parse_gridtiling(std::string_view text) {
  GridTilingInstance gt;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (words(raw).empty()) continue;
    if (!header) {
      auto w = words(raw);
      if (w.size() != 2) throw ParseError(line, "expected 'n kappa'");
      gt.n = to_ll(w[0], line);
      gt.kappa = to_ll(w[1], line);
      header = true;
      continue;
    }
    auto colon = raw.find(':');
    if (colon == std::string::npos) throw ParseError(line, "expected 'i j: a,b ...'");
    auto cell = words(raw.substr(0, colon));
    if (cell.size() != 2) throw ParseError(line, "expected two cell indices");
    std::pair<long long, long long> key{to_ll(cell[0], line), to_ll(cell[1], line)};
    if (gt.sets.count(key)) throw ParseError(line, "duplicate cell");
    auto& set = gt.sets[key];
    for (const std::string& w : words(raw.substr(colon + 1))) {
      auto comma = w.find(',');
      if (comma == std::string::npos) throw ParseError(line, "expected 'a,b'");
      set.emplace(to_ll(std::string_view(w).substr(0, comma), line), to_ll(std::string_view(w).substr(comma + 1), line));
    }
  }
  if (!header) throw ParseError(line + 1, "missing header");
  try {
    gt.check();
  } catch (const GeneratorError& e) {
    throw ParseError(line + 1, e.what());
  }
  return gt;
}

std::string write_gridtiling(const GridTilingInstance& gt) {
  std::ostringstream out;
  out << gt.n << " " << gt.kappa << "\n";
  for (const auto& [cell, set] : gt.sets) {
    out << cell.first << " " << cell.second << ":";
    for (auto [a, b] : set) out << " " << a << "," << b;
    out << "\n";
  }
  return out.str();
}

// --- parameters ------------------------------------------------------------------

GridTilingParams gridtiling_params(const GridTilingInstance& gt) {
  gt.check();
  GridTilingParams p;
  p.n = gt.n;
  p.kappa = gt.kappa;
  p.L = 100 * std::max(gt.n, gt.kappa);
  p.d = 6 * gt.n * p.L;
  p.V = 2 * gt.n * p.L + p.L;
  p.H = 6 * gt.n * p.L - 12 * gt.n;
  p.Gc = 2 * gt.n * p.L;
  p.N1 = p.L / 3;
  long long k = 0;
  for (long long i = 1; i <= gt.kappa; ++i) k += 2 * p.r(i) + 1 + p.er(i);
  for (long long j = 1; j <= gt.kappa; ++j) k += 3 * p.c(j) + 3 + 2 * p.ec(j);
  for (long long i = 1; i <= gt.kappa; ++i)
    for (long long j = 1; j <= gt.kappa; ++j) k += p.m(i, j);
  p.k = k;
  return p;
}

// --- layout ----------------------------------------------------------------------

namespace {

std::string tag(const char* kind, std::initializer_list<long long> xs) {
  std::string s = kind;
  s += "(";
  bool first = true;
  for (long long x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

enum class Kind { tall, absent, stack, hollow };

struct Plan {
  std::string name;
  Kind kind;
  long long gx, gy;
  bool odd = true;
  long long count = 0;  // interesting disks, stack size or empty slots
};

std::vector<Plan> plan_layout(const GridTilingInstance& gt, const GridTilingParams& p) {
  const long long n = gt.n, K = gt.kappa, L = p.L;
  auto cell_left = [&](long long j) { return (j - 1) * (6 * n + p.H); };
  auto cell_top = [&](long long i) { return -(i - 1) * (2 * n * L + p.V); };
  const long long grid_right = cell_left(K) + 6 * n;
  const long long grid_bottom = cell_top(K) - 2 * n * L;
  std::vector<Plan> out;

  for (long long i = 1; i <= K; ++i)
    for (long long j = 1; j <= K; ++j)
      for (long long a = 1; a <= n; ++a)
        for (long long b = 1; b <= n; ++b) {
          const long long gx = cell_left(j) + 6 * (b - 1), gy = cell_top(i) - 2 * L * a;
          if (gt.sets.at({i, j}).count({a, b}))
            out.push_back({tag("PG", {a, b, i, j}), Kind::tall, gx, gy, j % 2 == 1, p.m(i, j)});
          else
            out.push_back({tag("APG", {a, b, i, j}), Kind::absent, gx, gy});
        }

  // Row gadgets sit left of the grid; R*(i) stacks on top of RC(i,1).
  for (long long i = 1; i <= K; ++i) {
    const long long gx = -p.Gr(i) - 6;
    for (long long a = 1; a <= n; ++a)
      out.push_back({tag("RC", {i, a}), Kind::tall, gx, cell_top(i) - 2 * L * a, false, p.r(i)});
    out.push_back({tag("R*", {i}), Kind::stack, gx, cell_top(i), true, p.r(i) + 2});
  }
  // Emptying rows mirror them on the right; their parity feeds from column kappa.
  for (long long i = 1; i < K; ++i) {
    const long long gx = grid_right + p.Gr(i);
    for (long long a = 1; a <= n; ++a)
      out.push_back({tag("ERC", {i, a}), Kind::tall, gx, cell_top(i) - 2 * L * a, K % 2 == 0, p.er(i)});
    out.push_back({tag("ER*", {i}), Kind::hollow, gx, cell_top(i), true, p.er(i)});
  }
  // Column gadgets above the grid, C*(j) on top of CC(j,n+1).
  for (long long j = 1; j <= K; ++j) {
    const long long gy = p.Gc;
    for (long long b = 1; b <= n; ++b)
      out.push_back({tag("CC", {j, b}), Kind::tall, cell_left(j) + 6 * (b - 1), gy, false, p.c(j)});
    out.push_back({tag("CC", {j, n + 1}), Kind::tall, cell_left(j) + 6 * n, gy, true, p.c(j) + 1});
    out.push_back({tag("C*", {j}), Kind::stack, cell_left(j) + 6 * n, gy + 2 * L, true, p.c(j) + 3});
  }
  // Emptying columns below the grid, EC*(j) under ECC(j,n+1).
  for (long long j = 1; j <= K; ++j) {
    const long long gy = grid_bottom - p.Gc - 2 * L;
    for (long long b = 1; b <= n; ++b)
      out.push_back({tag("ECC", {j, b}), Kind::tall, cell_left(j) + 6 * (b - 1), gy, false, p.ec(j)});
    out.push_back({tag("ECC", {j, n + 1}), Kind::tall, cell_left(j) + 6 * n, gy, true, p.ec(j)});
    out.push_back({tag("EC*", {j}), Kind::hollow, cell_left(j) + 6 * n, gy - 2 * L, true, p.ec(j)});
  }
  return out;
}

struct Builder {
  const GridTilingParams& p;
  Instance& inst;

  std::size_t add(long long x, long long y) {
    inst.disks.push_back(Disk{make_point(Rational(static_cast<long>(x)), Rational(static_cast<long>(y)))});
    return inst.disks.size() - 1;
  }

  void ring(long long gx, long long gy) {
    for (long long t = 0; t < p.L; ++t) {
      add(gx + 1, gy + 1 + 2 * t);
      add(gx + 5, gy + 1 + 2 * t);
    }
    add(gx + 3, gy + 1);
    add(gx + 3, gy + 2 * p.L - 1);
  }

  // Middle column: runs of touching disks separated by the given gaps.
  // Returns the y of the last centre placed.
  long long column(long long gx, long long y, long long count, std::vector<std::size_t>* record = nullptr) {
    for (long long c = 0; c < count; ++c) {
      y += 2;
      std::size_t id = add(gx + 3, y);
      if (record) record->push_back(id);
    }
    return y;
  }
};

}  // namespace

GridTilingBuild build_gridtiling(const GridTilingInstance& gt) {
  GridTilingBuild out;
  out.params = gridtiling_params(gt);
  const GridTilingParams& p = out.params;
  std::vector<Plan> plan = plan_layout(gt, p);

  long long minx = plan.front().gx, miny = plan.front().gy, maxx = minx + 6, maxy = miny + 2 * p.L;
  for (const Plan& g : plan) {
    minx = std::min(minx, g.gx);
    miny = std::min(miny, g.gy);
    maxx = std::max(maxx, g.gx + 6);
    maxy = std::max(maxy, g.gy + 2 * p.L);
  }

  Instance& inst = out.instance;
  inst.variant = Variant::rectilinear;
  inst.k = p.k;
  inst.d2 = Rational(static_cast<long>(p.d)) * Rational(static_cast<long>(p.d));
  Builder bld{p, inst};
  LatticeBlock fill;
  fill.x0 = 1;
  fill.y0 = 1;
  fill.x1 = Rational(static_cast<long>(maxx - minx - 1));
  fill.y1 = Rational(static_cast<long>(maxy - miny - 1));

  for (const Plan& g : plan) {
    const long long gx = g.gx - minx, gy = g.gy - miny;
    GadgetInfo info{g.name, gx, gy, g.odd, {}, 0};
    fill.holes.push_back(Rect{Rational(static_cast<long>(gx)), Rational(static_cast<long>(gy)),
                              Rational(static_cast<long>(gx + 6)), Rational(static_cast<long>(gy + 2 * p.L))});
    if (g.kind == Kind::absent) {
      for (long long t = 0; t < p.L; ++t)
        for (long long x : {1, 3, 5}) bld.add(gx + x, gy + 1 + 2 * t);
      out.gadgets.push_back(std::move(info));
      continue;
    }
    bld.ring(gx, gy);
    long long y = gy + 1;
    switch (g.kind) {
      case Kind::tall: {
        // Odd type: gaps 0,1,1,0 around the interesting run; even type: 1,1,1,1.
        const long long g0 = g.odd ? 0 : 1, g3 = g.odd ? 0 : 1;
        const long long n2 = p.L - (g.odd ? 3 : 4) - p.N1 - g.count;
        y = bld.column(gx, y + g0, p.N1);
        y = bld.column(gx, y + 1, g.count, &info.interesting);
        y = bld.column(gx, y + 1, n2);
        if (y + 2 + g3 != gy + 2 * p.L - 1) throw GeneratorError("bad fill in " + g.name);
        break;
      }
      case Kind::stack: {
        y = bld.column(gx, y, p.N1);
        for (long long c = 0; c < g.count; ++c) {
          std::size_t id = bld.add(gx + 3, y + 2);
          info.interesting.push_back(id);
          out.stacked.push_back(id);
        }
        y = bld.column(gx, y + 2, p.L - 3 - p.N1);
        if (y + 2 != gy + 2 * p.L - 1) throw GeneratorError("bad fill in " + g.name);
        break;
      }
      case Kind::hollow: {
        info.room = g.count;
        y = bld.column(gx, y, p.N1);
        y = bld.column(gx, y + 2 * g.count, p.L - 2 - p.N1 - g.count);
        if (y + 2 != gy + 2 * p.L - 1) throw GeneratorError("bad fill in " + g.name);
        break;
      }
      case Kind::absent:
        break;
    }
    out.gadgets.push_back(std::move(info));
  }
  inst.blocks.push_back(std::move(fill));
  return out;
}

Instance gen_gridtiling(const GridTilingInstance& gt) { return build_gridtiling(gt).instance; }

// --- witness ---------------------------------------------------------------------

namespace {

struct Flow {
  const GridTilingParams& p;
  const Instance& inst;
  std::map<std::string, const GadgetInfo*> by_name;
  std::map<std::string, std::vector<bool>> used;  // filled slots per target
  Witness w;

  const GadgetInfo& get(const std::string& name) const {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw GeneratorError("no gadget " + name);
    return *it->second;
  }

  // y of slot 0 and the number of slots a gadget offers once emptied.
  std::pair<long long, long long> slots(const GadgetInfo& g) const {
    if (g.name.find('*') != std::string::npos) return {g.gy + 3 + 2 * p.N1, g.room};
    const long long p1 = g.gy + 1 + (g.odd ? 0 : 1) + 2 * p.N1;
    return {p1 + 2, static_cast<long long>(g.interesting.size()) + 1};
  }

  long long coord(const Scalar& s) const { return s.rational()->get_num().get_si(); }

  void place(std::size_t disk, const GadgetInfo& to, long long slot) {
    auto [y0, count] = slots(to);
    auto& fill = used[to.name];
    fill.resize(count, false);
    if (slot < 0 || slot >= count || fill[slot]) throw GeneratorError("slot clash in " + to.name);
    fill[slot] = true;
    const Point& from = inst.disks.at(disk).center;
    const long long x = to.gx + 3, y = y0 + 2 * slot;
    const long long fx = coord(from.x), fy = coord(from.y);
    if ((fx != x && fy != y) || std::max(std::llabs(fx - x), std::llabs(fy - y)) > p.d)
      throw GeneratorError("move into " + to.name + " is not a legal axis move");
    if (!w.moves.emplace(disk, make_point(Rational(static_cast<long>(x)), Rational(static_cast<long>(y)))).second)
      throw GeneratorError("disk moved twice");
  }

  // Keeps the y coordinate.
  void horizontal(std::size_t disk, const GadgetInfo& to) {
    const long long y = coord(inst.disks.at(disk).center.y);
    const long long y0 = slots(to).first;
    if ((y - y0) % 2 != 0) throw GeneratorError("parity mismatch entering " + to.name);
    place(disk, to, (y - y0) / 2);
  }

  // Takes the lowest free slot.
  void vertical(std::size_t disk, const GadgetInfo& to) {
    auto [y0, count] = slots(to);
    auto& fill = used[to.name];
    fill.resize(count, false);
    long long s = 0;
    while (s < count && fill[s]) ++s;
    place(disk, to, s);
  }
};

std::string name(const char* kind, std::initializer_list<long long> xs) { return tag(kind, xs); }

}  // namespace

Witness gridtiling_witness(const GridTilingInstance& gt, const Instance& inst, const std::vector<long long>& rows,
                           const std::vector<long long>& cols) {
  GridTilingBuild build = build_gridtiling(gt);
  const GridTilingParams& p = build.params;
  const long long K = gt.kappa, n = gt.n;
  if (static_cast<long long>(rows.size()) != K || static_cast<long long>(cols.size()) != K)
    throw GeneratorError("solution needs kappa row and kappa column values");
  for (long long i = 1; i <= K; ++i)
    for (long long j = 1; j <= K; ++j)
      if (!gt.sets.at({i, j}).count({rows[i - 1], cols[j - 1]}))
        throw GeneratorError("(" + std::to_string(rows[i - 1]) + "," + std::to_string(cols[j - 1]) + ") is not in S(" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
  if (inst.disks.size() != build.instance.disks.size()) throw GeneratorError("instance does not match the grid tiling");

  Flow f{p, inst, {}, {}, {}};
  for (const GadgetInfo& g : build.gadgets) f.by_name[g.name] = &g;
  auto pg = [&](long long i, long long j) { return name("PG", {rows[i - 1], cols[j - 1], i, j}); };

  // (disk, target) pairs; horizontal moves go first so vertical ones fill what is left.
  std::vector<std::pair<std::size_t, std::string>> hor, ver;
  for (long long i = 1; i <= K; ++i) {
    const GadgetInfo& star = f.get(name("R*", {i}));
    const std::string rc = name("RC", {i, rows[i - 1]});
    for (long long c = 0; c <= p.r(i); ++c) ver.emplace_back(star.interesting[c], rc);
    for (std::size_t d : f.get(rc).interesting) hor.emplace_back(d, pg(i, 1));
  }
  for (long long j = 1; j <= K; ++j) {
    const GadgetInfo& star = f.get(name("C*", {j}));
    const std::string top = name("CC", {j, n + 1}), cc = name("CC", {j, cols[j - 1]});
    for (long long c = 0; c <= p.c(j) + 1; ++c) ver.emplace_back(star.interesting[c], top);
    for (std::size_t d : f.get(top).interesting) hor.emplace_back(d, cc);
    for (std::size_t d : f.get(cc).interesting) ver.emplace_back(d, pg(1, j));
  }
  for (long long i = 1; i <= K; ++i)
    for (long long j = 1; j <= K; ++j) {
      const GadgetInfo& g = f.get(pg(i, j));
      const long long right = 2 * K - i - j;
      const std::string east = j < K ? pg(i, j + 1) : name("ERC", {i, rows[i - 1]});
      const std::string south = i < K ? pg(i + 1, j) : name("ECC", {j, cols[j - 1]});
      for (long long t = 0; t < static_cast<long long>(g.interesting.size()); ++t)
        (t < right ? hor : ver).emplace_back(g.interesting[t], t < right ? east : south);
    }
  for (long long i = 1; i < K; ++i)
    for (std::size_t d : f.get(name("ERC", {i, rows[i - 1]})).interesting) ver.emplace_back(d, name("ER*", {i}));
  for (long long j = 1; j <= K; ++j) {
    const std::string bottom = name("ECC", {j, n + 1});
    for (std::size_t d : f.get(name("ECC", {j, cols[j - 1]})).interesting) hor.emplace_back(d, bottom);
    for (std::size_t d : f.get(bottom).interesting) ver.emplace_back(d, name("EC*", {j}));
  }

  for (const auto& [d, to] : hor) f.horizontal(d, f.get(to));
  for (const auto& [d, to] : ver) f.vertical(d, f.get(to));
  if (static_cast<long long>(f.w.moves.size()) != p.k) throw GeneratorError("move count differs from the budget");
  return f.w;
}

}  // namespace dispersal
