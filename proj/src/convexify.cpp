// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/convexify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shardflow/error.hpp"
#include "shardflow/parallel.hpp"

namespace shardflow {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Conjugate of the samples f[i * stride] on axis z, evaluated on axis s:
// out[k * out_stride] = max_i s_k z_i - f_i. Runs in O(|z| + |s|) by walking
// the lower convex hull of the finite samples.
void conjugate_sweep(const Axis &z, const double *f, std::size_t stride, const Axis &s,
                     double *out, std::size_t out_stride, std::vector<std::size_t> &hull) {
  hull.clear();
  for (std::size_t i = 0; i < z.count; ++i) {
    double fi = f[i * stride];
    if (fi == kInf) continue;
    if (fi == -kInf) {
      for (std::size_t k = 0; k < s.count; ++k) out[k * out_stride] = kInf;
      return;
    }
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2];
      std::size_t b = hull.back();
      Vec2 pa{z.at(a), f[a * stride]};
      Vec2 pb{z.at(b), f[b * stride]};
      Vec2 pc{z.at(i), fi};
      if (cross(pb - pa, pc - pb) > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  if (hull.empty()) {
    for (std::size_t k = 0; k < s.count; ++k) out[k * out_stride] = -kInf;
    return;
  }
  std::size_t j = 0;
  for (std::size_t k = 0; k < s.count; ++k) {
    double sk = s.at(k);
    while (j + 1 < hull.size()) {
      std::size_t a = hull[j];
      std::size_t b = hull[j + 1];
      double slope = (f[b * stride] - f[a * stride]) / (z.at(b) - z.at(a));
      if (slope > sk) break;
      ++j;
    }
    std::size_t a = hull[j];
    out[k * out_stride] = sk * z.at(a) - f[a * stride];
  }
}

}  // namespace

Axis Axis::spanning(double lo, double hi, std::size_t count) {
  if (count < 2) return {lo, 1.0, count};
  return {lo, (hi - lo) / static_cast<double>(count - 1), count};
}

GridFunction GridFunction::sample(const Axis &ax, const std::function<double(double)> &f) {
  GridFunction g;
  g.axes = {ax};
  g.values.resize(ax.count);
  for (std::size_t i = 0; i < ax.count; ++i) g.values[i] = f(ax.at(i));
  return g;
}

GridFunction GridFunction::sample(const Axis &ax, const Axis &ay,
                                  const std::function<double(Vec2)> &f) {
  GridFunction g;
  g.axes = {ax, ay};
  g.values.resize(ax.count * ay.count);
  for (std::size_t i = 0; i < ax.count; ++i)
    for (std::size_t j = 0; j < ay.count; ++j) g.values[i * ay.count + j] = f({ax.at(i), ay.at(j)});
  return g;
}

namespace {

bool locate(const Axis &ax, double x, std::size_t &i, double &frac) {
  if (ax.count == 0) return false;
  double u = (x - ax.origin) / ax.spacing;
  double last = static_cast<double>(ax.count - 1);
  if (u < -1e-9 || u > last + 1e-9) return false;
  u = std::clamp(u, 0.0, last);
  if (ax.count == 1) {
    i = 0;
    frac = 0.0;
    return true;
  }
  i = std::min(static_cast<std::size_t>(u), ax.count - 2);
  frac = u - static_cast<double>(i);
  return true;
}

double lerp(double a, double b, double w) {
  if (w == 0.0) return a;
  if (w == 1.0) return b;
  if (a == kInf || b == kInf) return kInf;
  return a + w * (b - a);
}

}  // namespace

double interpolate(const GridFunction &f, double x) {
  std::size_t i;
  double w;
  if (!locate(f.axes[0], x, i, w)) return kInf;
  if (f.axes[0].count == 1) return f.values[0];
  return lerp(f.values[i], f.values[i + 1], w);
}

double interpolate(const GridFunction &f, Vec2 x) {
  std::size_t i, j;
  double wx, wy;
  if (!locate(f.axes[0], x.x, i, wx) || !locate(f.axes[1], x.y, j, wy)) return kInf;
  std::size_t i1 = std::min(i + 1, f.axes[0].count - 1);
  std::size_t j1 = std::min(j + 1, f.axes[1].count - 1);
  double lo = lerp(f(i, j), f(i, j1), wy);
  double hi = lerp(f(i1, j), f(i1, j1), wy);
  return lerp(lo, hi, wx);
}

Axis default_dual_axis(const GridFunction &f, int axis, double oversample) {
  const Axis &ax = f.axes[static_cast<std::size_t>(axis)];
  double smin = kInf;
  double smax = -kInf;
  auto scan_line = [&](std::size_t start, std::size_t stride, std::size_t n) {
    double prev = kInf;
    std::size_t prev_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = f.values[start + i * stride];
      if (v == kInf) continue;
      if (prev != kInf) {
        double s = (v - prev) / (ax.spacing * static_cast<double>(i - prev_i));
        smin = std::min(smin, s);
        smax = std::max(smax, s);
      }
      prev = v;
      prev_i = i;
    }
  };
  if (f.dims() == 1) {
    scan_line(0, 1, ax.count);
  } else if (axis == 0) {
    for (std::size_t j = 0; j < f.axes[1].count; ++j) scan_line(j, f.axes[1].count, ax.count);
  } else {
    for (std::size_t i = 0; i < f.axes[0].count; ++i) scan_line(i * ax.count, 1, ax.count);
  }
  if (!(smin <= smax)) {
    smin = ax.origin;
    smax = ax.back();
  }
  double h = ax.spacing / std::max(1.0, oversample);
  double span = smax - smin;
  // Coarsen by powers of two so dual lattices of related functions nest.
  const double cap = static_cast<double>(16 * ax.count);
  while (span / h > cap) h *= 2.0;
  // Snap to multiples of h so symmetric problems keep slope 0 on the grid.
  double origin = (std::floor(smin / h) - 1.0) * h;
  double top = (std::ceil(smax / h) + 1.0) * h;
  auto count = static_cast<std::size_t>(std::llround((top - origin) / h)) + 1;
  return {origin, h, count};
}

GridFunction legendre_1d(const GridFunction &f, std::optional<Axis> dual) {
  if (f.dims() != 1) throw Error(ErrorKind::InvalidArgument, "legendre_1d needs a 1D grid");
  Axis s = dual.value_or(default_dual_axis(f, 0));
  GridFunction out;
  out.axes = {s};
  out.values.resize(s.count);
  std::vector<std::size_t> hull;
  conjugate_sweep(f.axes[0], f.values.data(), 1, s, out.values.data(), 1, hull);
  return out;
}

GridFunction legendre_2d(const GridFunction &f, std::optional<std::array<Axis, 2>> dual) {
  if (f.dims() != 2) throw Error(ErrorKind::InvalidArgument, "legendre_2d needs a 2D grid");
  std::array<Axis, 2> s = dual.value_or(
      std::array<Axis, 2>{default_dual_axis(f, 0), default_dual_axis(f, 1)});
  const Axis &zx = f.axes[0];
  const Axis &zy = f.axes[1];
  const std::size_t ns2 = s[1].count;

  // inner[i, k2] = max_j s2_k2 y_j - f(x_i, y_j)
  std::vector<double> inner(zx.count * ns2);
  parallel_for(zx.count, [&](std::size_t i) {
    std::vector<std::size_t> hull;
    conjugate_sweep(zy, f.values.data() + i * zy.count, 1, s[1], inner.data() + i * ns2, 1, hull);
  });
  // f*(s1, s2) = max_i s1 x_i - (-inner[i, k2])
  std::vector<double> negated(inner.size());
  for (std::size_t n = 0; n < inner.size(); ++n)
    negated[n] = inner[n] == -kInf ? kInf : -inner[n];

  GridFunction out;
  out.axes = {s[0], s[1]};
  out.values.resize(s[0].count * ns2);
  parallel_for(ns2, [&](std::size_t k2) {
    std::vector<std::size_t> hull;
    conjugate_sweep(zx, negated.data() + k2, ns2, s[0], out.values.data() + k2, ns2, hull);
  });
  return out;
}

GridFunction legendre(const GridFunction &f) {
  return f.dims() == 1 ? legendre_1d(f) : legendre_2d(f);
}

GridFunction convexify(const GridFunction &f, double oversample) {
  GridFunction cc;
  if (f.dims() == 1) {
    GridFunction star = legendre_1d(f, default_dual_axis(f, 0, oversample));
    cc = legendre_1d(star, f.axes[0]);
  } else {
    GridFunction star = legendre_2d(
        f, std::array<Axis, 2>{default_dual_axis(f, 0, oversample),
                               default_dual_axis(f, 1, oversample)});
    cc = legendre_2d(star, std::array<Axis, 2>{f.axes[0], f.axes[1]});
  }
  // Outside the mask f** stays +inf; elsewhere clamp away rounding above f.
  for (std::size_t n = 0; n < cc.values.size(); ++n)
    cc.values[n] = std::min(cc.values[n], f.values[n]);
  return cc;
}

std::size_t TouchingClassification::count(Touching which) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), which));
}

TouchingClassification touching_set(const GridFunction &psi, const GridFunction &psi_cc,
                                    double eps_touch) {
  if (psi.values.size() != psi_cc.values.size())
    throw Error(ErrorKind::InvalidArgument, "touching_set needs matching grids");
  const std::size_t n = psi.values.size();
  std::vector<char> touch(n, 0);
  std::vector<char> inside(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    inside[k] = psi.values[k] != kInf;
    touch[k] = inside[k] && psi.values[k] - psi_cc.values[k] <= eps_touch;
  }
  TouchingClassification out;
  out.labels.assign(n, Touching::Outside);
  auto classify = [&](std::size_t k, std::initializer_list<std::ptrdiff_t> nbrs) {
    if (!inside[k]) return;
    if (!touch[k]) {
      out.labels[k] = Touching::NonTouching;
      return;
    }
    bool all = true;
    for (std::ptrdiff_t nb : nbrs)
      if (nb >= 0 && inside[static_cast<std::size_t>(nb)] && !touch[static_cast<std::size_t>(nb)])
        all = false;
    out.labels[k] = all ? Touching::Interior : Touching::Boundary;
  };
  if (psi.dims() == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      std::ptrdiff_t l = i > 0 ? static_cast<std::ptrdiff_t>(i - 1) : -1;
      std::ptrdiff_t r = i + 1 < n ? static_cast<std::ptrdiff_t>(i + 1) : -1;
      classify(i, {l, r});
    }
  } else {
    const std::size_t nx = psi.axes[0].count;
    const std::size_t ny = psi.axes[1].count;
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        auto id = [&](std::size_t a, std::size_t b) { return static_cast<std::ptrdiff_t>(a * ny + b); };
        classify(i * ny + j, {i > 0 ? id(i - 1, j) : -1, i + 1 < nx ? id(i + 1, j) : -1,
                              j > 0 ? id(i, j - 1) : -1, j + 1 < ny ? id(i, j + 1) : -1});
      }
    }
  }
  return out;
}

HopfLaxResult hopf_lax(const std::function<double(Vec2)> &phi, const ConvexPolygon &domain,
                       Vec2 x, double t, const HopfLaxOptions &options) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "Hopf-Lax needs t > 0");
  if (domain.size() < 3) throw Error(ErrorKind::InvalidArgument, "empty domain");
  auto objective = [&](Vec2 z) { return norm2(x - z) / (2.0 * t) + phi(z); };
  const BoundingBox bb = domain.bounds();
  const std::size_t n = std::max<std::size_t>(options.scan, 2);
  const Axis ax = Axis::spanning(bb.lo.x, bb.hi.x, n);
  const Axis ay = Axis::spanning(bb.lo.y, bb.hi.y, n);
  const double eps = 1e-12 * std::max(1.0, norm(bb.hi - bb.lo));

  HopfLaxResult best{kInf, centroid(domain)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec2 z{ax.at(i), ay.at(j)};
      if (!contains(domain, z, eps)) continue;
      double v = objective(z);
      if (v < best.value) best = {v, z};
    }
  }
  // Vertices of the domain are candidates too; the minimiser may sit on a corner.
  for (const Vec2 &z : domain.vertices()) {
    double v = objective(z);
    if (v < best.value) best = {v, z};
  }

  // Pattern search over the eight compass directions with step halving.
  double step = std::max(ax.spacing, ay.spacing);
  static constexpr std::array<Vec2, 8> kDirs{
      Vec2{1, 0}, Vec2{-1, 0}, Vec2{0, 1}, Vec2{0, -1},
      Vec2{M_SQRT1_2, M_SQRT1_2}, Vec2{-M_SQRT1_2, M_SQRT1_2},
      Vec2{M_SQRT1_2, -M_SQRT1_2}, Vec2{-M_SQRT1_2, -M_SQRT1_2}};
  for (int r = 0; r < options.refine_steps;) {
    bool moved = false;
    for (const Vec2 &d : kDirs) {
      Vec2 z = best.minimizer + step * d;
      if (!contains(domain, z, eps)) continue;
      double v = objective(z);
      if (v < best.value) {
        best = {v, z};
        moved = true;
      }
    }
    if (!moved) {
      step *= 0.5;
      ++r;
    }
  }
  return best;
}

}  // namespace shardflow
