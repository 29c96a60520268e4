#include "dispersal/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace dispersal {

namespace {

constexpr const char* kFixed = "#4a7bb7";
constexpr const char* kMoved = "#d1495b";
constexpr const char* kFill = "#9a9a9a";
constexpr const char* kArrow = "#333333";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
  return buf;
}

struct Frame {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool empty = true;

  void add(double x, double y) {
    if (empty) {
      x0 = x1 = x;
      y0 = y1 = y;
      empty = false;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

}  // namespace

std::string render_svg(const Instance& inst, const std::optional<Witness>& w, const RenderOptions& opts) {
  if (sgn(opts.scale) <= 0) throw std::invalid_argument("scale must be positive");
  const bool moves = opts.show_moves && w.has_value();
  Frame f;
  for (const Disk& d : inst.disks) f.add(d.center.x.approx(), d.center.y.approx());
  if (moves)
    for (const auto& [i, p] : w->moves) f.add(p.x.approx(), p.y.approx());
  for (const LatticeBlock& b : inst.blocks) {
    f.add(b.x0.get_d(), b.y0.get_d());
    f.add(b.x1.get_d(), b.y1.get_d());
  }
  // One unit of margin for the disk radius, one more for breathing room.
  const double pad = 2;
  const double left = f.x0 - pad, top = f.y1 + pad;
  const double width = f.x1 - f.x0 + 2 * pad, height = f.y1 - f.y0 + 2 * pad;
  const double scale = opts.scale.get_d();
  auto X = [&](double x) { return num(x - left); };
  auto Y = [&](double y) { return num(top - y); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width * scale) << "\" height=\""
      << num(height * scale) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<defs>\n"
      << "<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"2\" height=\"2\">"
      << "<path d=\"M0,2 L2,0\" stroke=\"" << kFill << "\" stroke-width=\"0.2\"/></pattern>\n"
      << "<marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
         "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\""
      << kArrow << "\"/></marker>\n"
      << "</defs>\n";
  auto rect = [&](double x0, double y0, double x1, double y1, const std::string& cls, const std::string& style) {
    out << "<rect class=\"" << cls << "\" x=\"" << X(x0) << "\" y=\"" << Y(y1) << "\" width=\"" << num(x1 - x0)
        << "\" height=\"" << num(y1 - y0) << "\" " << style << "/>\n";
  };
  for (const LatticeBlock& b : inst.blocks) {
    // Block disks reach one unit beyond their centres.
    rect(b.x0.get_d() - 1, b.y0.get_d() - 1, b.x1.get_d() + 1, b.y1.get_d() + 1, "block",
         std::string("fill=\"url(#hatch)\" stroke=\"") + kFill + "\" stroke-width=\"0.1\"");
    for (const Rect& h : b.holes)
      rect(h.x0.get_d(), h.y0.get_d(), h.x1.get_d(), h.y1.get_d(), "hole", "fill=\"white\" stroke=\"none\"");
  }
  auto circle = [&](double x, double y, const std::string& cls, const std::string& style) {
    out << "<circle class=\"" << cls << "\" cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"1\" " << style << "/>\n";
  };
  for (std::size_t i = 0; i < inst.disks.size(); ++i) {
    const Point& c = inst.disks[i].center;
    const double cx = c.x.approx(), cy = c.y.approx();
    auto it = moves ? w->moves.find(i) : std::map<std::size_t, Point>::const_iterator{};
    if (!moves || it == w->moves.end()) {
      circle(cx, cy, "fixed", std::string("fill=\"") + kFixed + "\" fill-opacity=\"0.5\" stroke=\"" + kFixed + "\" stroke-width=\"0.05\"");
      continue;
    }
    const double tx = it->second.x.approx(), ty = it->second.y.approx();
    circle(cx, cy, "origin", std::string("fill=\"none\" stroke=\"") + kMoved + "\" stroke-width=\"0.05\" stroke-dasharray=\"0.2,0.2\"");
    circle(tx, ty, "moved", std::string("fill=\"") + kMoved + "\" fill-opacity=\"0.5\" stroke=\"" + kMoved + "\" stroke-width=\"0.05\"");
    out << "<line class=\"arrow\" x1=\"" << X(cx) << "\" y1=\"" << Y(cy) << "\" x2=\"" << X(tx) << "\" y2=\"" << Y(ty)
        << "\" stroke=\"" << kArrow << "\" stroke-width=\"0.08\" marker-end=\"url(#head)\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dispersal
