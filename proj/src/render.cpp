// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace shardflow {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string rgb(double r, double g, double b) {
  auto c = [](double v) { return static_cast<int>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))); };
  char buf[32];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
  return buf;
}

std::string hsv(double h, double s, double v) {
  h = h - std::floor(h);
  double i = std::floor(h * 6.0);
  double f = h * 6.0 - i;
  double p = v * (1 - s), q = v * (1 - f * s), t = v * (1 - (1 - f) * s);
  switch (static_cast<int>(i) % 6) {
    case 0: return rgb(v, t, p);
    case 1: return rgb(q, v, p);
    case 2: return rgb(p, v, t);
    case 3: return rgb(p, q, v);
    case 4: return rgb(t, p, v);
    default: return rgb(v, p, q);
  }
}

// World-to-pixel map preserving aspect ratio; y points up.
struct Frame {
  BoundingBox box;
  double scale = 1.0, width = 0.0, height = 0.0, margin = 20.0;

  Frame(BoundingBox b, double w, double h, double m = 20.0) : box(b), width(w), height(h), margin(m) {
    double bw = std::max(b.hi.x - b.lo.x, 1e-12);
    double bh = std::max(b.hi.y - b.lo.y, 1e-12);
    scale = std::min((w - 2 * m) / bw, (h - 2 * m) / bh);
  }
  double x(double wx) const { return margin + (wx - box.lo.x) * scale; }
  double y(double wy) const { return height - margin - (wy - box.lo.y) * scale; }
};

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string title_text(const std::string &title, double w) {
  if (title.empty()) return {};
  return "<text x=\"" + num(w / 2) + "\" y=\"16\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" +
         escape(title) + "</text>\n";
}

BoundingBox merge(BoundingBox a, BoundingBox b) {
  return {{std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y)}, {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y)}};
}

}  // namespace

std::string render_shards_svg(std::span<const ConvexPolygon> shards, std::span<const Vec2> velocities,
                              const std::string &title, double size) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundingBox bb{{inf, inf}, {-inf, -inf}};
  for (const auto &s : shards)
    if (!s.empty()) bb = merge(bb, s.bounds());
  if (!(bb.lo.x <= bb.hi.x)) bb = {{0, 0}, {1, 1}};
  Frame fr(bb, size, size, 24.0);
  std::string out = header(size, size) + title_text(title, size);
  for (std::size_t i = 0; i < shards.size(); ++i) {
    if (shards[i].size() < 3) continue;
    Vec2 v = i < velocities.size() ? velocities[i] : Vec2{};
    double hue = (std::atan2(v.y, v.x) + std::numbers::pi) / (2.0 * std::numbers::pi);
    double sat = std::clamp(0.35 + 0.5 * norm(v), 0.35, 0.85);
    out += "<polygon points=\"";
    for (const Vec2 &p : shards[i].vertices()) out += num(fr.x(p.x)) + "," + num(fr.y(p.y)) + " ";
    out += "\" fill=\"" + hsv(hue, sat, 0.9) + "\" stroke=\"#222\" stroke-width=\"0.4\"/>\n";
  }
  return out + "</svg>\n";
}

std::string render_curves_svg(std::span<const Curve> curves, const std::string &title, double width,
                              double height) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundingBox bb{{inf, inf}, {-inf, -inf}};
  for (const auto &c : curves)
    for (Vec2 p : c.points) bb = merge(bb, {p, p});
  if (!(bb.lo.x <= bb.hi.x)) bb = {{0, 0}, {1, 1}};
  const double m = 50.0;
  double bw = std::max(bb.hi.x - bb.lo.x, 1e-12), bh = std::max(bb.hi.y - bb.lo.y, 1e-12);
  auto px = [&](double x) { return m + (x - bb.lo.x) / bw * (width - 2 * m); };
  auto py = [&](double y) { return height - m - (y - bb.lo.y) / bh * (height - 2 * m); };
  std::string out = header(width, height) + title_text(title, width);
  out += "<line x1=\"" + num(m) + "\" y1=\"" + num(height - m) + "\" x2=\"" + num(width - m) + "\" y2=\"" +
         num(height - m) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(m) + "\" y1=\"" + num(m) + "\" x2=\"" + num(m) + "\" y2=\"" + num(height - m) +
         "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double fx = bb.lo.x + bw * k / 4.0, fy = bb.lo.y + bh * k / 4.0;
    out += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(height - m + 16) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
    out += "<text x=\"" + num(m - 6) + "\" y=\"" + num(py(fy) + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + num(fy) + "</text>\n";
  }
  for (std::size_t c = 0; c < curves.size(); ++c) {
    std::string color = hsv(static_cast<double>(c) / std::max<std::size_t>(curves.size(), 1), 0.8, 0.75);
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.2\" points=\"";
    for (Vec2 p : curves[c].points) out += num(px(p.x)) + "," + num(py(p.y)) + " ";
    out += "\"/>\n";
    if (!curves[c].label.empty())
      out += "<text x=\"" + num(width - m - 4) + "\" y=\"" + num(m + 14.0 * static_cast<double>(c + 1)) +
             "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\"" + color + "\">" +
             escape(curves[c].label) + "</text>\n";
  }
  return out + "</svg>\n";
}

std::string render_packing_svg(const DiskPacking &packing, double size) {
  BoundingBox bb = packing.domain.empty() ? BoundingBox{{0, 0}, {1, 1}} : packing.domain.bounds();
  if (packing.enclosing) {
    const Disk &e = *packing.enclosing;
    bb = {{e.center.x - e.radius, e.center.y - e.radius}, {e.center.x + e.radius, e.center.y + e.radius}};
  }
  Frame fr(bb, size, size);
  std::string out = header(size, size);
  if (packing.enclosing) {
    const Disk &e = *packing.enclosing;
    out += "<circle cx=\"" + num(fr.x(e.center.x)) + "\" cy=\"" + num(fr.y(e.center.y)) + "\" r=\"" +
           num(e.radius * fr.scale) + "\" fill=\"none\" stroke=\"black\"/>\n";
  } else if (!packing.domain.empty()) {
    out += "<polygon points=\"";
    for (const Vec2 &p : packing.domain.vertices()) out += num(fr.x(p.x)) + "," + num(fr.y(p.y)) + " ";
    out += "\" fill=\"none\" stroke=\"black\"/>\n";
  }
  for (const Disk &d : packing.disks) {
    double shade = std::clamp(std::log2(1.0 + d.curvature) / 8.0, 0.0, 1.0);
    out += "<circle cx=\"" + num(fr.x(d.center.x)) + "\" cy=\"" + num(fr.y(d.center.y)) + "\" r=\"" +
           num(d.radius * fr.scale) + "\" fill=\"" + hsv(0.6 - 0.5 * shade, 0.6, 0.9) +
           "\" stroke=\"#333\" stroke-width=\"0.3\"/>\n";
  }
  return out + "</svg>\n";
}

std::string render_heightmap_svg(const std::function<double(Vec2)> &f, const ConvexPolygon &domain,
                                 std::size_t res, const std::string &title, double size) {
  BoundingBox bb = domain.bounds();
  Frame fr(bb, size, size, 24.0);
  res = std::max<std::size_t>(res, 2);
  const double hx = (bb.hi.x - bb.lo.x) / static_cast<double>(res);
  const double hy = (bb.hi.y - bb.lo.y) / static_cast<double>(res);
  std::vector<double> values(res * res, std::numeric_limits<double>::quiet_NaN());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < res; ++i)
    for (std::size_t j = 0; j < res; ++j) {
      Vec2 c{bb.lo.x + (i + 0.5) * hx, bb.lo.y + (j + 0.5) * hy};
      if (!contains(domain, c)) continue;
      double v = f(c);
      values[i * res + j] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  double span = hi > lo ? hi - lo : 1.0;
  std::string out = header(size, size) + title_text(title, size);
  for (std::size_t i = 0; i < res; ++i)
    for (std::size_t j = 0; j < res; ++j) {
      double v = values[i * res + j];
      if (std::isnan(v)) continue;
      double u = (v - lo) / span;
      double x0 = fr.x(bb.lo.x + i * hx), y1 = fr.y(bb.lo.y + (j + 1) * hy);
      out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(hx * fr.scale + 0.05) +
             "\" height=\"" + num(hy * fr.scale + 0.05) + "\" fill=\"" + rgb(u, 0.3 + 0.4 * u, 1.0 - u) + "\"/>\n";
    }
  return out + "</svg>\n";
}

}  // namespace shardflow
