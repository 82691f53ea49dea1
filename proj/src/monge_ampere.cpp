// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "shardflow/convexify.hpp"
#include "shardflow/error.hpp"
#include "shardflow/parallel.hpp"

namespace shardflow {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// psi(z) = z^2/2 + alpha z + beta on [lo, hi].
struct Arc {
  double lo, hi;
  double alpha, beta;
  double velocity;

  double value(double z) const { return 0.5 * z * z + alpha * z + beta; }
  double slope(double z) const { return z + alpha; }
};

// Portion [s, e] of an arc that lies on the lower hull, entered from the
// left with slope sigma_in.
struct HullElement {
  std::size_t arc;
  double s, e;
  double sigma_in;
};

// Conjugate of an arc restricted to [s, e] at slope sigma, and its maximiser.
double restricted_conjugate(const Arc &a, double s, double e, double sigma, double *argmax) {
  double z = std::clamp(sigma - a.alpha, s, e);
  if (argmax) *argmax = z;
  return sigma * z - a.value(z);
}

// Slope of the common supporting line of arc a on [s, e] and arc b on [l, r]
// with e < l. D(sigma) = a*(sigma) - b*(sigma) is nonincreasing with
// derivative (argmax_a - argmax_b) < 0 away from clamping on both sides.
double bridge_slope(const Arc &a, double s, double e, const Arc &b, double l, double r) {
  auto D = [&](double sigma) {
    return restricted_conjugate(a, s, e, sigma, nullptr) -
           restricted_conjugate(b, l, r, sigma, nullptr);
  };
  double breaks[4] = {s + a.alpha, e + a.alpha, l + b.alpha, r + b.alpha};
  std::sort(breaks, breaks + 4);
  double span = std::max(1.0, breaks[3] - breaks[0]);
  double lo = breaks[0] - span;
  double hi = breaks[3] + span;
  while (D(lo) < 0.0) lo -= span;
  while (D(hi) > 0.0) hi += span;
  // Narrow to a quadratic segment before bisecting.
  for (double x : breaks) {
    if (x <= lo || x >= hi) continue;
    if (D(x) > 0.0)
      lo = x;
    else
      hi = x;
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (D(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return D(lo) == 0.0 ? lo : hi;
}

}  // namespace

MeasureDecomposition monge_ampere_1d(std::span<const Piece1D> pieces, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be nonnegative");
  std::vector<Arc> arcs;
  double scale = 1.0;
  for (const auto &p : pieces) {
    if (!(p.hi >= p.lo)) throw Error(ErrorKind::InvalidArgument, "piece with hi < lo");
    scale = std::max({scale, std::abs(p.lo), std::abs(p.hi), std::abs(p.velocity)});
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto &p = pieces[i];
    if (i > 0) {
      const auto &q = pieces[i - 1];
      if (std::abs(q.hi - p.lo) > 1e-12 * scale)
        throw Error(ErrorKind::InconsistentPartition, "pieces are not contiguous");
      double left = q.velocity * q.hi + q.height;
      double right = p.velocity * p.lo + p.height;
      if (std::abs(left - right) > 1e-9 * scale) {
        std::ostringstream msg;
        msg << "potential jumps by " << right - left << " at x = " << p.lo;
        throw Error(ErrorKind::InconsistentPartition, msg.str());
      }
    }
    if (p.hi > p.lo) arcs.push_back({p.lo, p.hi, t * p.velocity, t * p.height, p.velocity});
  }
  if (arcs.empty()) throw Error(ErrorKind::InvalidArgument, "no pieces of positive length");
  // Snap shared endpoints so the arcs tile [a, b] exactly.
  for (std::size_t i = 1; i < arcs.size(); ++i) arcs[i].lo = arcs[i - 1].hi;

  std::vector<HullElement> hull;
  hull.push_back({0, arcs[0].lo, arcs[0].hi, -kInf});
  for (std::size_t j = 1; j < arcs.size(); ++j) {
    const Arc &b = arcs[j];
    while (true) {
      HullElement &top = hull.back();
      const Arc &a = arcs[top.arc];
      if (top.e == b.lo && a.slope(top.e) <= b.slope(b.lo)) {
        hull.push_back({j, b.lo, b.hi, a.slope(top.e)});
        break;
      }
      double sigma = bridge_slope(a, top.s, top.e, b, b.lo, b.hi);
      double p = std::clamp(sigma - a.alpha, top.s, top.e);
      double q = std::clamp(sigma - b.alpha, b.lo, b.hi);
      if (p == top.s && sigma < top.sigma_in && hull.size() > 1) {
        hull.pop_back();
        continue;
      }
      top.e = p;
      hull.push_back({j, q, b.hi, sigma});
      break;
    }
  }

  MeasureDecomposition out;
  out.dims = 1;
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const HullElement &el = hull[k];
    const Arc &a = arcs[el.arc];
    if (k > 0) {
      double gap = el.s - hull[k - 1].e;
      if (gap > 0.0) {
        if (!out.atoms.empty() && out.atoms.back().location.x == el.sigma_in)
          out.atoms.back().mass += gap;
        else
          out.atoms.push_back({{el.sigma_in, 0.0}, gap});
      }
    }
    if (el.e > el.s) {
      Interval iv{el.s + a.alpha, el.e + a.alpha};
      // Merge with the previous part when contiguous and equally fast.
      if (!out.ac_parts.empty() && k > 0 && el.s == hull[k - 1].e &&
          arcs[hull[k - 1].arc].velocity == a.velocity) {
        std::get<Interval>(out.ac_parts.back().support).hi = iv.hi;
      } else {
        out.ac_parts.push_back({iv, 1.0});
      }
    }
  }
  return out;
}

namespace {

struct MaskedGrid {
  Axis ax, ay;
  std::vector<char> inside;
  std::vector<double> weight;  // Lebesgue mass carried by each node
};

MaskedGrid build_grid(const ConvexPolygon &domain, std::size_t n) {
  const BoundingBox bb = domain.bounds();
  const double hx = (bb.hi.x - bb.lo.x) / static_cast<double>(n);
  const double hy = (bb.hi.y - bb.lo.y) / static_cast<double>(n);
  MaskedGrid g;
  g.ax = {bb.lo.x + 0.5 * hx, hx, n};
  g.ay = {bb.lo.y + 0.5 * hy, hy, n};
  g.inside.assign(n * n, 0);
  g.weight.assign(n * n, 0.0);
  std::vector<double> pixel(n * n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec2 c{g.ax.at(i), g.ay.at(j)};
      g.inside[i * n + j] = contains(domain, c, 0.0);
      Vec2 lo{c.x - 0.5 * hx, c.y - 0.5 * hy};
      Vec2 hi{c.x + 0.5 * hx, c.y + 0.5 * hy};
      bool full = contains(domain, lo) && contains(domain, hi) &&
                  contains(domain, {lo.x, hi.y}) && contains(domain, {hi.x, lo.y});
      pixel[i * n + j] = full ? hx * hy : area(intersect(box(lo, hi), domain));
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double w = pixel[i * n + j];
      if (w <= 0.0) continue;
      if (g.inside[i * n + j]) {
        g.weight[i * n + j] += w;
        continue;
      }
      // Hand the sliver to the nearest node inside the domain.
      Vec2 c{g.ax.at(i), g.ay.at(j)};
      std::size_t best = SIZE_MAX;
      double best_d = kInf;
      for (std::size_t r = 1; r < n && best == SIZE_MAX; ++r) {
        std::size_t i0 = i >= r ? i - r : 0, i1 = std::min(n - 1, i + r);
        std::size_t j0 = j >= r ? j - r : 0, j1 = std::min(n - 1, j + r);
        for (std::size_t a = i0; a <= i1; ++a) {
          for (std::size_t b = j0; b <= j1; ++b) {
            if (!g.inside[a * n + b]) continue;
            double d = norm2(Vec2{g.ax.at(a), g.ay.at(b)} - c);
            if (d < best_d) {
              best_d = d;
              best = a * n + b;
            }
          }
        }
      }
      if (best != SIZE_MAX) g.weight[best] += w;
    }
  }
  return g;
}

}  // namespace

GridMongeAmpere monge_ampere_grid(const std::function<double(Vec2)> &phi,
                                  const ConvexPolygon &domain, double t,
                                  const GridMongeAmpereOptions &options) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be nonnegative");
  if (options.grid < 8 || options.bins < 4)
    throw Error(ErrorKind::InvalidArgument, "grid needs >= 8 nodes and >= 4 bins per axis");
  if (area(domain) <= 0.0) throw Error(ErrorKind::InvalidArgument, "empty domain");
  const std::size_t n = options.grid;
  MaskedGrid g = build_grid(domain, n);

  GridFunction phis;
  phis.axes = {g.ax, g.ay};
  phis.values.assign(n * n, kInf);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      if (g.inside[i * n + j]) phis.values[i * n + j] = phi({g.ax.at(i), g.ay.at(j)});
  });
  GridFunction psi = phis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.inside[i * n + j])
        psi.values[i * n + j] = 0.5 * norm2({g.ax.at(i), g.ay.at(j)}) + t * phis.values[i * n + j];

  GridFunction cc = convexify(psi);

  // Gradient of f at node (i, j): central differences, one-sided at the mask edge.
  auto gradient = [&](const GridFunction &f, std::size_t i, std::size_t j) {
    auto partial = [&](bool along_x) {
      const Axis &ax = along_x ? g.ax : g.ay;
      std::size_t k = along_x ? i : j;
      auto at = [&](std::size_t m) {
        return along_x ? f.values[m * n + j] : f.values[i * n + m];
      };
      bool has_lo = k > 0 && at(k - 1) != kInf;
      bool has_hi = k + 1 < n && at(k + 1) != kInf;
      if (has_lo && has_hi) return (at(k + 1) - at(k - 1)) / (2.0 * ax.spacing);
      // second-order one-sided differences where two neighbours exist
      if (has_hi && k + 2 < n && at(k + 2) != kInf)
        return (-3.0 * at(k) + 4.0 * at(k + 1) - at(k + 2)) / (2.0 * ax.spacing);
      if (has_lo && k >= 2 && at(k - 2) != kInf)
        return (3.0 * at(k) - 4.0 * at(k - 1) + at(k - 2)) / (2.0 * ax.spacing);
      if (has_hi) return (at(k + 1) - at(k)) / ax.spacing;
      if (has_lo) return (at(k) - at(k - 1)) / ax.spacing;
      return 0.0;
    };
    return Vec2{partial(true), partial(false)};
  };

  std::vector<Vec2> grad(n * n);
  Vec2 vlo{kInf, kInf}, vhi{-kInf, -kInf};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.inside[i * n + j]) continue;
      grad[i * n + j] = gradient(cc, i, j);
      Vec2 v = gradient(phis, i, j);
      vlo = {std::min(vlo.x, v.x), std::min(vlo.y, v.y)};
      vhi = {std::max(vhi.x, v.x), std::max(vhi.y, v.y)};
    }
  }

  // Each node's pixel maps to an axis-aligned box around its gradient whose
  // half-widths come from the neighbouring gradients; mass is spread over
  // the bins by overlap so the histogram does not alias against the grid.
  std::vector<Vec2> half(n * n);
  Vec2 glo{kInf, kInf}, ghi{-kInf, -kInf};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = i * n + j;
      if (!g.inside[k]) continue;
      auto spread = [&](std::size_t a, std::size_t b, bool along_x) {
        double lo = along_x ? grad[k].x : grad[k].y, hi = lo;
        if (g.inside[a]) lo = along_x ? grad[a].x : grad[a].y;
        if (g.inside[b]) hi = along_x ? grad[b].x : grad[b].y;
        double w = std::abs(hi - lo);
        // one-sided at the mask edge: a single neighbour spans one full step
        return (g.inside[a] && g.inside[b]) ? 0.25 * w : 0.5 * w;
      };
      std::size_t il = i > 0 ? k - n : k, ir = i + 1 < n ? k + n : k;
      std::size_t jl = j > 0 ? k - 1 : k, jr = j + 1 < n ? k + 1 : k;
      half[k] = {spread(il, ir, true), spread(jl, jr, false)};
      glo = {std::min(glo.x, grad[k].x - half[k].x), std::min(glo.y, grad[k].y - half[k].y)};
      ghi = {std::max(ghi.x, grad[k].x + half[k].x), std::max(ghi.y, grad[k].y + half[k].y)};
    }
  }

  const std::size_t nb = options.bins;
  const double wx = ghi.x > glo.x ? (ghi.x - glo.x) / static_cast<double>(nb) : g.ax.spacing;
  const double wy = ghi.y > glo.y ? (ghi.y - glo.y) / static_cast<double>(nb) : g.ay.spacing;
  const double vspread = std::max(vhi.x - vlo.x, vhi.y - vlo.y);
  if (t > 0.0 && vspread > 0.0 && t * vspread < 4.0 * std::max(wx, wy)) {
    std::ostringstream msg;
    msg << "velocity range " << t * vspread << " spans fewer than 4 histogram bins of width "
        << std::max(wx, wy) << "; increase t or the bin count";
    throw Error(ErrorKind::GridTooCoarse, msg.str());
  }

  GridMongeAmpere out;
  out.histogram.x = {glo.x + 0.5 * wx, wx, nb};
  out.histogram.y = {glo.y + 0.5 * wy, wy, nb};
  out.histogram.mass.assign(nb * nb, 0.0);
  // Fractions of [c - r, c + r] falling in each bin along one axis.
  auto shares = [&](double c, double r, double lo, double w, std::vector<std::pair<std::size_t, double>> &out_shares) {
    out_shares.clear();
    auto clamp_bin = [&](double u) {
      return static_cast<std::size_t>(std::clamp(std::floor(u), 0.0, static_cast<double>(nb - 1)));
    };
    if (r <= 0.0) {
      out_shares.emplace_back(clamp_bin((c - lo) / w), 1.0);
      return;
    }
    std::size_t b0 = clamp_bin((c - r - lo) / w), b1 = clamp_bin((c + r - lo) / w);
    for (std::size_t b = b0; b <= b1; ++b) {
      double a = std::max(c - r, lo + static_cast<double>(b) * w);
      double e = std::min(c + r, lo + static_cast<double>(b + 1) * w);
      if (b == b0) a = c - r;
      if (b == b1) e = c + r;
      if (e > a) out_shares.emplace_back(b, (e - a) / (2.0 * r));
    }
    if (out_shares.empty()) out_shares.emplace_back(clamp_bin((c - lo) / w), 1.0);
  };
  std::vector<std::pair<std::size_t, double>> sx, sy;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!g.inside[k] || g.weight[k] <= 0.0) continue;
    shares(grad[k].x, half[k].x, glo.x, wx, sx);
    shares(grad[k].y, half[k].y, glo.y, wy, sy);
    for (const auto &[bx, fx] : sx)
      for (const auto &[by, fy] : sy) out.histogram.mass[bx * nb + by] += g.weight[k] * fx * fy;
    out.total_mass += g.weight[k];
  }
  out.touching = touching_set(psi, cc, options.eps_touch);

  const double bin_area = wx * wy;
  std::vector<char> singular(nb * nb, 0);
  for (std::size_t k = 0; k < nb * nb; ++k)
    singular[k] = out.histogram.mass[k] > options.singular_threshold * bin_area;

  MeasureDecomposition &dec = out.decomposition;
  dec.dims = 2;
  auto bin_box = [&](std::size_t bx, std::size_t by) {
    Vec2 lo{glo.x + wx * static_cast<double>(bx), glo.y + wy * static_cast<double>(by)};
    return box(lo, {lo.x + wx, lo.y + wy});
  };
  for (std::size_t bx = 0; bx < nb; ++bx) {
    for (std::size_t by = 0; by < nb; ++by) {
      double m = out.histogram.mass[bx * nb + by];
      if (m <= 0.0) continue;
      // Singular bins keep a unit-density share; the excess is singular.
      double dens = singular[bx * nb + by] ? 1.0 : m / bin_area;
      dec.ac_parts.push_back({bin_box(bx, by), dens});
    }
  }

  // 8-connected clusters of singular bins: small ones are atoms.
  std::vector<char> seen(nb * nb, 0);
  std::vector<std::size_t> stack, cluster;
  for (std::size_t start = 0; start < nb * nb; ++start) {
    if (!singular[start] || seen[start]) continue;
    cluster.clear();
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      std::size_t k = stack.back();
      stack.pop_back();
      cluster.push_back(k);
      std::size_t bx = k / nb, by = k % nb;
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          if (dx == 0 && dy == 0) continue;
          std::ptrdiff_t x = static_cast<std::ptrdiff_t>(bx) + dx;
          std::ptrdiff_t y = static_cast<std::ptrdiff_t>(by) + dy;
          if (x < 0 || y < 0 || x >= static_cast<std::ptrdiff_t>(nb) ||
              y >= static_cast<std::ptrdiff_t>(nb))
            continue;
          std::size_t m = static_cast<std::size_t>(x) * nb + static_cast<std::size_t>(y);
          if (singular[m] && !seen[m]) {
            seen[m] = 1;
            stack.push_back(m);
          }
        }
      }
    }
    std::sort(cluster.begin(), cluster.end());
    double excess = 0.0;
    Vec2 moment{};
    for (std::size_t k : cluster) {
      double e = out.histogram.mass[k] - bin_area;
      excess += e;
      moment += e * Vec2{out.histogram.x.at(k / nb), out.histogram.y.at(k % nb)};
    }
    if (cluster.size() <= options.max_atom_bins)
      dec.atoms.push_back({(1.0 / excess) * moment, excess});
    else
      dec.singular_diffuse_mass += excess;
  }
  return out;
}

}  // namespace shardflow
