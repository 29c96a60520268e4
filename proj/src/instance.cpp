#include "dispersal/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dispersal {

// --- lattice blocks --------------------------------------------------------

long long LatticeBlock::columns() const { return floor_of((x1 - x0) / step).get_si() + 1; }
long long LatticeBlock::rows() const { return floor_of((y1 - y0) / step).get_si() + 1; }

Point LatticeBlock::point(long long i, long long j) const {
  return make_point(x0 + Rational(static_cast<long>(i)) * step, y0 + Rational(static_cast<long>(j)) * step);
}

bool LatticeBlock::is_member(long long i, long long j) const {
  if (i < 0 || j < 0 || i >= columns() || j >= rows()) return false;
  Rational x = x0 + Rational(static_cast<long>(i)) * step;
  Rational y = y0 + Rational(static_cast<long>(j)) * step;
  return std::none_of(holes.begin(), holes.end(), [&](const Rect& h) { return h.contains(x, y); });
}

namespace {

// Index range [lo, hi] of grid lines within `reach` of the coordinate range
// [vlo, vhi], clipped to [0, count).
std::pair<long long, long long> index_range(const Rational& vlo, const Rational& vhi, const Rational& reach,
                                            const Rational& origin, const Rational& step, long long count) {
  long long lo = ceil_of((vlo - reach - origin) / step).get_si();
  long long hi = floor_of((vhi + reach - origin) / step).get_si();
  return {std::max(lo, 0LL), std::min(hi, count - 1)};
}

}  // namespace

std::vector<Point> LatticeBlock::points_near(const Point& c, const Rational& reach) const {
  Interval ex = c.x.enclose(64), ey = c.y.enclose(64);
  auto [i0, i1] = index_range(ex.lo().to_rational(), ex.hi().to_rational(), reach, x0, step, columns());
  auto [j0, j1] = index_range(ey.lo().to_rational(), ey.hi().to_rational(), reach, y0, step, rows());
  std::vector<Point> out;
  for (long long i = i0; i <= i1; ++i)
    for (long long j = j0; j <= j1; ++j)
      if (is_member(i, j)) out.push_back(point(i, j));
  return out;
}

std::vector<Point> LatticeBlock::materialize() const {
  std::vector<Point> out;
  for (long long j = 0; j < rows(); ++j)
    for (long long i = 0; i < columns(); ++i)
      if (is_member(i, j)) out.push_back(point(i, j));
  return out;
}

// --- text format -----------------------------------------------------------

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view raw = text.substr(pos, end - pos);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      std::istringstream in{std::string(raw)};
      Line line{number, {}};
      for (std::string tok; in >> tok;) line.tokens.push_back(tok);
      if (!line.tokens.empty()) lines_.push_back(std::move(line));
      pos = end + 1;
    }
    last_ = number;
  }

  bool done() const { return next_ >= lines_.size(); }

  const Line& take(const char* expecting) {
    if (done()) throw ParseError(last_, std::string("unexpected end of input, expected ") + expecting);
    return lines_[next_++];
  }

  const Line* peek() const { return done() ? nullptr : &lines_[next_]; }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  int last_ = 0;
};

const std::string& field(const Line& line, const char* key, std::size_t arity = 1) {
  std::string want = std::string(key) + ":";
  if (line.tokens.size() != arity + 1 || line.tokens[0] != want)
    throw ParseError(line.number, "expected '" + want + " <value>'");
  return line.tokens[1];
}

Rational rational_at(const Line& line, const std::string& tok) {
  try {
    return parse_rational(tok);
  } catch (const NumericError& e) {
    throw ParseError(line.number, "bad rational '" + tok + "'");
  }
}

Scalar scalar_at(const Line& line, const std::string& tok) {
  try {
    return parse_scalar(tok);
  } catch (const NumericError& e) {
    throw ParseError(line.number, "bad number '" + tok + "'");
  }
}

long long count_at(const Line& line, const std::string& tok, const char* what) {
  Rational r = rational_at(line, tok);
  if (r.get_den() != 1) throw ParseError(line.number, std::string(what) + " must be an integer");
  if (sgn(r) < 0) throw ParseError(line.number, std::string(what) + " must be nonnegative");
  if (!r.get_num().fits_slong_p()) throw ParseError(line.number, std::string(what) + " too large");
  return r.get_num().get_si();
}

void expect_header(LineReader& in, const char* magic) {
  const Line& h = in.take("header");
  if (h.tokens.size() != 2 || h.tokens[0] != magic || h.tokens[1] != "v1")
    throw ParseError(h.number, std::string("expected header '") + magic + " v1'");
}

std::string point_text(const Point& p) { return to_string(p.x) + " " + to_string(p.y); }

}  // namespace

std::string variant_name(Variant v) { return v == Variant::euclidean ? "euclidean" : "rectilinear"; }

Instance parse_instance(std::string_view text) {
  LineReader in(text);
  expect_header(in, "DISKDISPERSAL");
  Instance inst;

  const Line& vl = in.take("variant");
  const std::string& v = field(vl, "variant");
  if (v == "euclidean") {
    inst.variant = Variant::euclidean;
  } else if (v == "rectilinear") {
    inst.variant = Variant::rectilinear;
  } else {
    throw ParseError(vl.number, "unknown variant '" + v + "'");
  }

  const Line& kl = in.take("k");
  inst.k = count_at(kl, field(kl, "k"), "k");

  const Line& dl = in.take("d2");
  inst.d2 = rational_at(dl, field(dl, "d2"));
  if (sgn(inst.d2) < 0) throw ParseError(dl.number, "d2 must be nonnegative");

  const Line& nl = in.take("disks");
  long long n = count_at(nl, field(nl, "disks"), "disk count");
  inst.disks.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const Line& l = in.take("disk centre");
    if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'x y'");
    inst.disks.push_back(Disk{Point{scalar_at(l, l.tokens[0]), scalar_at(l, l.tokens[1])}});
  }

  if (in.done()) return inst;
  const Line& bl = in.take("blocks");
  long long nb = count_at(bl, field(bl, "blocks"), "block count");
  for (long long b = 0; b < nb; ++b) {
    const Line& l = in.take("block");
    if (l.tokens.size() != 8 || l.tokens[4] != "step" || l.tokens[6] != "holes")
      throw ParseError(l.number, "expected 'x0 y0 x1 y1 step S holes H'");
    LatticeBlock blk;
    blk.x0 = rational_at(l, l.tokens[0]);
    blk.y0 = rational_at(l, l.tokens[1]);
    blk.x1 = rational_at(l, l.tokens[2]);
    blk.y1 = rational_at(l, l.tokens[3]);
    blk.step = rational_at(l, l.tokens[5]);
    if (blk.x0 > blk.x1 || blk.y0 > blk.y1) throw ParseError(l.number, "empty block rectangle");
    if (sgn(blk.step) <= 0) throw ParseError(l.number, "step must be positive");
    long long nh = count_at(l, l.tokens[7], "hole count");
    for (long long h = 0; h < nh; ++h) {
      const Line& hl = in.take("hole");
      if (hl.tokens.size() != 4) throw ParseError(hl.number, "expected 'x0 y0 x1 y1'");
      Rect r{rational_at(hl, hl.tokens[0]), rational_at(hl, hl.tokens[1]), rational_at(hl, hl.tokens[2]),
             rational_at(hl, hl.tokens[3])};
      if (r.x0 > r.x1 || r.y0 > r.y1) throw ParseError(hl.number, "empty hole rectangle");
      blk.holes.push_back(std::move(r));
    }
    inst.blocks.push_back(std::move(blk));
  }
  if (!in.done()) throw ParseError(in.peek()->number, "trailing content");
  return inst;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "DISKDISPERSAL v1\n";
  out << "variant: " << variant_name(inst.variant) << "\n";
  out << "k: " << inst.k << "\n";
  out << "d2: " << to_string(inst.d2) << "\n";
  out << "disks: " << inst.disks.size() << "\n";
  for (const Disk& d : inst.disks) out << point_text(d.center) << "\n";
  out << "blocks: " << inst.blocks.size() << "\n";
  for (const LatticeBlock& b : inst.blocks) {
    out << to_string(b.x0) << " " << to_string(b.y0) << " " << to_string(b.x1) << " " << to_string(b.y1)
        << " step " << to_string(b.step) << " holes " << b.holes.size() << "\n";
    for (const Rect& h : b.holes)
      out << to_string(h.x0) << " " << to_string(h.y0) << " " << to_string(h.x1) << " " << to_string(h.y1)
          << "\n";
  }
  return out.str();
}

Witness parse_witness(std::string_view text) {
  LineReader in(text);
  expect_header(in, "DISPERSALMOVES");
  const Line& ml = in.take("moves");
  long long n = count_at(ml, field(ml, "moves"), "move count");
  Witness w;
  for (long long i = 0; i < n; ++i) {
    const Line& l = in.take("move");
    if (l.tokens.size() != 4 || l.tokens[1] != "->") throw ParseError(l.number, "expected 'i -> x y'");
    long long idx = count_at(l, l.tokens[0], "disk index");
    auto [it, fresh] = w.moves.emplace(static_cast<std::size_t>(idx),
                                       Point{scalar_at(l, l.tokens[2]), scalar_at(l, l.tokens[3])});
    if (!fresh) throw ParseError(l.number, "duplicate disk index " + l.tokens[0]);
  }
  if (!in.done()) throw ParseError(in.peek()->number, "trailing content");
  return w;
}

std::string write_witness(const Witness& w) {
  std::ostringstream out;
  out << "DISPERSALMOVES v1\n";
  out << "moves: " << w.moves.size() << "\n";
  for (const auto& [idx, p] : w.moves) out << idx << " -> " << point_text(p) << "\n";
  return out.str();
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Instance read_instance_file(const std::string& path) { return parse_instance(slurp(path)); }
Witness read_witness_file(const std::string& path) { return parse_witness(slurp(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace dispersal
