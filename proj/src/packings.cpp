// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/packings.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "shardflow/convexify.hpp"
#include "shardflow/error.hpp"
#include "shardflow/parallel.hpp"

namespace shardflow {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double disk_area(const Disk &d) { return kPi * d.radius * d.radius; }

}  // namespace

double DiskPacking::container_area() const {
  return enclosing ? disk_area(*enclosing) : area(domain);
}

double DiskPacking::covered_fraction() const {
  double covered = 0.0;
  for (const Disk &d : disks) covered += disk_area(d);
  double total = container_area();
  return total > 0.0 ? covered / total : 0.0;
}

const Disk &DiskPacking::circle(std::size_t k) const {
  if (enclosing) return k == 0 ? *enclosing : disks.at(k - 1);
  return disks.at(k);
}

double packing_violation(const DiskPacking &packing) {
  const auto &d = packing.disks;
  double worst = -kInf;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (packing.enclosing) {
      const Disk &e = *packing.enclosing;
      worst = std::max(worst, norm(d[i].center - e.center) + d[i].radius - e.radius);
    } else {
      worst = std::max(worst, d[i].radius - boundary_clearance(packing.domain, d[i].center));
    }
    for (std::size_t j = i + 1; j < d.size(); ++j)
      worst = std::max(worst, d[i].radius + d[j].radius - norm(d[i].center - d[j].center));
  }
  return worst;
}

std::array<Disk, 4> default_apollonian_seed() {
  return {Disk::enclosing({0.0, 0.0}, 1.0), Disk::inner({-0.5, 0.0}, 0.5),
          Disk::inner({0.5, 0.0}, 0.5), Disk::inner({0.0, 2.0 / 3.0}, 1.0 / 3.0)};
}

DiskPacking apollonian(const std::array<Disk, 4> &seed, int generations, std::size_t sides) {
  if (generations < 0) throw Error(ErrorKind::InvalidArgument, "generations must be >= 0");
  if (sides < 3) throw Error(ErrorKind::InvalidArgument, "domain polygon needs >= 3 sides");
  std::vector<Disk> circles;
  for (const Disk &d : seed)
    if (d.curvature < 0.0) circles.push_back(d);
  if (circles.size() != 1)
    throw Error(ErrorKind::InvalidSeed, "the seed needs exactly one enclosing circle");
  for (const Disk &d : seed)
    if (d.curvature >= 0.0) circles.push_back(d);
  double sum = 0.0, sum_sq = 0.0;
  for (const Disk &d : circles) {
    if (!(d.radius > 0.0) || std::abs(d.radius * std::abs(d.curvature) - 1.0) > 1e-12)
      throw Error(ErrorKind::InvalidSeed, "seed radius and curvature disagree");
    sum += d.curvature;
    sum_sq += d.curvature * d.curvature;
  }
  if (std::abs(sum * sum - 2.0 * sum_sq) > 1e-9 * std::max(1.0, sum * sum)) {
    std::ostringstream msg;
    msg << "seed curvatures violate the Descartes relation: (sum b)^2 = " << sum * sum
        << ", 2 sum b^2 = " << 2.0 * sum_sq;
    throw Error(ErrorKind::InvalidSeed, msg.str());
  }

  DiskPacking out;
  out.enclosing = circles[0];
  out.domain = regular_polygon(circles[0].center, circles[0].radius, sides, true);

  using C = std::complex<double>;
  auto z = [&](std::size_t k) { return C(circles[k].center.x, circles[k].center.y); };
  struct Task {
    std::size_t a, b, c, opposite;
  };
  std::vector<Task> frontier{{1, 2, 3, 0}, {0, 2, 3, 1}, {0, 1, 3, 2}, {0, 1, 2, 3}};
  for (int gen = 0; gen < generations; ++gen) {
    std::vector<Task> next;
    next.reserve(frontier.size() * 3);
    for (const Task &task : frontier) {
      const double ba = circles[task.a].curvature, bb = circles[task.b].curvature,
                   bc = circles[task.c].curvature, bd = circles[task.opposite].curvature;
      double b5 = 2.0 * (ba + bb + bc) - bd;
      C z5 = (2.0 * (ba * z(task.a) + bb * z(task.b) + bc * z(task.c)) - bd * z(task.opposite)) / b5;
      std::size_t child = circles.size();
      // keep the exact integer curvature rather than 1 / (1 / b5)
      circles.push_back(Disk{{z5.real(), z5.imag()}, 1.0 / b5, b5});
      out.records.push_back({{task.a, task.b, task.c}, task.opposite, child});
      next.push_back({task.a, task.b, child, task.c});
      next.push_back({task.a, task.c, child, task.b});
      next.push_back({task.b, task.c, child, task.a});
    }
    frontier = std::move(next);
  }
  out.disks.assign(circles.begin() + 1, circles.end());
  return out;
}

namespace {

// Signed clearance constraints of the residual set: domain edges and disks.
struct Constraint {
  bool is_line;
  Vec2 a;           // line: edge start; disk: centre
  Vec2 dir;         // line: unit inward normal
  double radius;    // disk radius

  double distance(Vec2 p) const { return is_line ? dot(dir, p - a) : norm(p - a) - radius; }
  Vec2 gradient(Vec2 p) const {
    if (is_line) return dir;
    Vec2 d = p - a;
    double n = norm(d);
    return n > 0.0 ? (1.0 / n) * d : Vec2{1.0, 0.0};
  }
};

std::vector<Constraint> edge_constraints(const ConvexPolygon &domain) {
  std::vector<Constraint> out;
  const auto &v = domain.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 e = v[(i + 1) % v.size()] - v[i];
    double len = norm(e);
    if (len == 0.0) continue;
    out.push_back({true, v[i], {-e.y / len, e.x / len}, 0.0});
  }
  return out;
}

double clearance(const std::vector<Constraint> &cons, Vec2 p) {
  double best = kInf;
  for (const Constraint &c : cons) best = std::min(best, c.distance(p));
  return best;
}

// Point equidistant (distance r) from three constraints, by Newton's method.
bool tangent_circle(const Constraint &c0, const Constraint &c1, const Constraint &c2, Vec2 &p,
                    double &r) {
  const Constraint *cs[3] = {&c0, &c1, &c2};
  for (int it = 0; it < 50; ++it) {
    double m[3][4];
    for (int k = 0; k < 3; ++k) {
      Vec2 g = cs[k]->gradient(p);
      m[k][0] = g.x;
      m[k][1] = g.y;
      m[k][2] = -1.0;
      m[k][3] = -(cs[k]->distance(p) - r);
    }
    auto det3 = [](double a[3][3]) {
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double base[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) base[i][j] = m[i][j];
    double det = det3(base);
    if (!(std::abs(det) > 1e-14)) return false;
    double step[3];
    for (int col = 0; col < 3; ++col) {
      double tmp[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) tmp[i][j] = j == col ? m[i][3] : m[i][j];
      step[col] = det3(tmp) / det;
    }
    p = p + Vec2{step[0], step[1]};
    r += step[2];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(r)) return false;
    if (std::abs(step[0]) + std::abs(step[1]) + std::abs(step[2]) < 1e-15) break;
  }
  return r > 0.0;
}

}  // namespace

DiskPacking osculatory(const ConvexPolygon &domain, const DiskPacking &existing,
                       std::size_t count, const OsculatoryOptions &options) {
  if (area(domain) <= 0.0) throw Error(ErrorKind::InvalidArgument, "empty domain");
  if (options.grid < 8) throw Error(ErrorKind::InvalidArgument, "grid needs >= 8 nodes");
  DiskPacking out = existing;
  out.domain = domain;
  out.enclosing.reset();
  out.records.clear();

  std::vector<Constraint> cons = edge_constraints(domain);
  for (const Disk &d : out.disks) cons.push_back({false, d.center, {}, d.radius});

  const std::size_t n = options.grid;
  const BoundingBox bb = domain.bounds();
  const Axis ax{bb.lo.x + 0.5 * (bb.hi.x - bb.lo.x) / n, (bb.hi.x - bb.lo.x) / n, n};
  const Axis ay{bb.lo.y + 0.5 * (bb.hi.y - bb.lo.y) / n, (bb.hi.y - bb.lo.y) / n, n};
  const double h = std::max(ax.spacing, ay.spacing);
  std::vector<double> field(n * n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      double c = clearance(cons, {ax.at(i), ay.at(j)});
      field[i * n + j] = c > 0.0 ? c : -kInf;
    }
  });

  double previous = kInf;
  for (const Disk &d : out.disks) previous = std::min(previous, d.radius);
  std::vector<std::size_t> cand;
  for (std::size_t added = 0; added < count; ++added) {
    double top = *std::max_element(field.begin(), field.end());
    if (!(top > 0.0)) break;
    cand.clear();
    for (std::size_t k = 0; k < field.size(); ++k)
      if (field[k] >= top - h) cand.push_back(k);
    std::size_t keep = std::min(cand.size(), options.candidates);
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(keep), cand.end(),
                      [&](std::size_t a, std::size_t b) {
                        return field[a] > field[b] || (field[a] == field[b] && a < b);
                      });
    cand.resize(keep);

    Vec2 best_p{};
    double best_r = -kInf;
    std::vector<std::pair<double, std::size_t>> near(cons.size());
    for (std::size_t k : cand) {
      Vec2 p0{ax.at(k / n), ay.at(k % n)};
      double c0 = clearance(cons, p0);
      if (c0 > best_r) {
        best_r = c0;
        best_p = p0;
      }
      for (std::size_t m = 0; m < cons.size(); ++m) near[m] = {cons[m].distance(p0), m};
      std::size_t nn = std::min<std::size_t>(4, near.size());
      std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(nn), near.end());
      for (std::size_t a = 0; a < nn; ++a)
        for (std::size_t b = a + 1; b < nn; ++b)
          for (std::size_t c = b + 1; c < nn; ++c) {
            Vec2 p = p0;
            double r = c0;
            if (!tangent_circle(cons[near[a].second], cons[near[b].second], cons[near[c].second], p, r))
              continue;
            if (norm(p - p0) > 4.0 * h + c0) continue;
            double exact = clearance(cons, p);
            if (exact > best_r) {
              best_r = exact;
              best_p = p;
            }
          }
    }
    double r = std::min(best_r - options.shrink, previous);
    if (!(r > 0.0)) break;
    previous = r;
    Disk disk = Disk::inner(best_p, r);
    out.disks.push_back(disk);
    cons.push_back({false, disk.center, {}, disk.radius});

    // Only nodes within reach of the new disk can change.
    double reach = r + top;
    auto lo_index = [](const Axis &a, double v) {
      double u = std::floor((v - a.origin) / a.spacing);
      return static_cast<std::size_t>(std::clamp(u, 0.0, static_cast<double>(a.count - 1)));
    };
    std::size_t i0 = lo_index(ax, disk.center.x - reach), i1 = lo_index(ax, disk.center.x + reach) + 1;
    std::size_t j0 = lo_index(ay, disk.center.y - reach), j1 = lo_index(ay, disk.center.y + reach) + 1;
    i1 = std::min(i1, n - 1);
    j1 = std::min(j1, n - 1);
    for (std::size_t i = i0; i <= i1; ++i)
      for (std::size_t j = j0; j <= j1; ++j) {
        double &f = field[i * n + j];
        if (f == -kInf) continue;
        double d = norm(Vec2{ax.at(i), ay.at(j)} - disk.center) - disk.radius;
        if (d < f) f = d > 0.0 ? d : -kInf;
      }
  }
  return out;
}

DiskPacking vitali_random(const ConvexPolygon &domain, double target_fraction,
                          std::uint64_t seed, std::size_t budget) {
  if (!(target_fraction > 0.0 && target_fraction < 1.0))
    throw Error(ErrorKind::InvalidArgument, "target fraction must lie in (0, 1)");
  if (area(domain) <= 0.0) throw Error(ErrorKind::InvalidArgument, "empty domain");
  DiskPacking out;
  out.domain = domain;
  const double total = area(domain);
  const BoundingBox bb = domain.bounds();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(bb.lo.x, bb.hi.x);
  std::uniform_real_distribution<double> uy(bb.lo.y, bb.hi.y);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double covered = 0.0;
  for (std::size_t proposal = 0; proposal < budget; ++proposal) {
    Vec2 p{ux(rng), uy(rng)};
    double c = boundary_clearance(domain, p);
    for (const Disk &d : out.disks) {
      if (c <= 0.0) break;
      c = std::min(c, norm(p - d.center) - d.radius);
    }
    if (!(c > 0.0)) continue;
    double r = unit(rng) * c;
    if (!(r > 0.0)) continue;
    out.disks.push_back(Disk::inner(p, r));
    covered += kPi * r * r;
    if (covered / total >= target_fraction) return out;
  }
  std::ostringstream msg;
  msg << "covered fraction " << covered / total << " after " << budget
      << " proposals, target " << target_fraction;
  throw Error(ErrorKind::Timeout, msg.str());
}

PiecewiseAffinePotential packing_potential(const DiskPacking &packing) {
  PiecewiseAffinePotential pot;
  pot.domain = packing.domain;
  std::vector<PowerSite> sites;
  sites.reserve(packing.disks.size());
  for (const Disk &d : packing.disks) {
    pot.velocities.push_back(d.center);
    pot.heights.push_back(0.5 * (d.radius * d.radius - norm2(d.center)));
    sites.push_back({d.center, d.radius * d.radius});
  }
  pot.cells = power_diagram(packing.domain, sites);
  return pot;
}

std::vector<ConvexPolygon> disk_shards(const DiskPacking &packing, double t, std::size_t sides) {
  std::vector<ConvexPolygon> out;
  out.reserve(packing.disks.size());
  for (const Disk &d : packing.disks)
    out.push_back(regular_polygon(d.center + t * d.center, d.radius, sides, false));
  return out;
}

double ShardPotential::operator()(Vec2 x) const {
  double best = 0.0;
  for (const Stage &s : stages_) {
    double m = -kInf;
    for (std::size_t i = 0; i < s.directions.size(); ++i)
      m = std::max(m, dot(s.directions[i], x - s.support_points[i]));
    best = std::max(best, s.coefficient * m);
  }
  return best;
}

double distance_to(const ConvexPolygon &poly, Vec2 x) {
  if (contains(poly, x)) return 0.0;
  const auto &v = poly.vertices();
  double best = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 a = v[i];
    Vec2 e = v[(i + 1) % v.size()] - a;
    double len2 = norm2(e);
    double lam = len2 > 0.0 ? std::clamp(dot(x - a, e) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, norm(a + lam * e - x));
  }
  return best;
}

namespace {

// Radical inverse in base 2.
double van_der_corput(std::uint64_t i) {
  double v = 0.0, f = 0.5;
  while (i) {
    if (i & 1u) v += f;
    i >>= 1;
    f *= 0.5;
  }
  return v;
}

}  // namespace

ShardPotential arbitrary_shard_potential(const ConvexPolygon &domain, const ConvexPolygon &shape,
                                         int levels) {
  if (levels < 1) throw Error(ErrorKind::InvalidArgument, "levels must be >= 1");
  if (shape.size() < 3 || domain.size() < 3)
    throw Error(ErrorKind::InvalidArgument, "shape and domain must be polygons");
  for (const Vec2 &v : domain.vertices())
    if (norm(v) > 1.0 + 1e-12)
      throw Error(ErrorKind::InvalidArgument, "domain must lie in the closed unit ball");
  for (const Vec2 &v : shape.vertices())
    if (!contains(domain, v, 1e-12))
      throw Error(ErrorKind::InvalidArgument, "shape must lie inside the domain");
  if (!(boundary_clearance(shape, {0.0, 0.0}) > 1e-12))
    throw Error(ErrorKind::ShapeNotInterior, "the origin must be interior to the shape");

  auto support = [&](Vec2 sigma) {
    const auto &v = shape.vertices();
    Vec2 best = v[0];
    for (const Vec2 &p : v)
      if (dot(sigma, p) > dot(sigma, best)) best = p;
    return best;
  };

  const BoundingBox bb = domain.bounds();
  std::vector<ShardPotential::Stage> stages;
  double coefficient = 1.0;
  std::size_t directions = 4;
  for (int k = 1; k <= levels; ++k) {
    coefficient /= static_cast<double>(k);
    // Nodes fine enough that the 1-Lipschitz slack 2h stays below 1/(2k).
    const double h = 1.0 / (4.0 * k);
    const std::size_t nx = static_cast<std::size_t>(std::ceil((bb.hi.x - bb.lo.x) / h)) + 1;
    const std::size_t ny = static_cast<std::size_t>(std::ceil((bb.hi.y - bb.lo.y) / h)) + 1;
    std::vector<Vec2> nodes;
    std::vector<double> dist;
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        Vec2 p{std::min(bb.lo.x + h * static_cast<double>(i), bb.hi.x),
               std::min(bb.lo.y + h * static_cast<double>(j), bb.hi.y)};
        if (!contains(domain, p, 1e-12)) continue;
        nodes.push_back(p);
        dist.push_back(distance_to(shape, p));
      }
    while (true) {
      ShardPotential::Stage stage{coefficient, {}, {}};
      for (std::size_t i = 0; i < directions; ++i) {
        double a = 2.0 * kPi * van_der_corput(i);
        Vec2 sigma{std::cos(a), std::sin(a)};
        stage.directions.push_back(sigma);
        stage.support_points.push_back(support(sigma));
      }
      double err = 0.0;
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        double phi = 0.0;
        for (std::size_t i = 0; i < directions; ++i)
          phi = std::max(phi, dot(stage.directions[i], nodes[m] - stage.support_points[i]));
        err = std::max(err, std::abs(phi - dist[m]));
      }
      if (err + 2.0 * h < 1.0 / k) {
        stages.push_back(std::move(stage));
        break;
      }
      if (directions >= (std::size_t{1} << 20))
        throw Error(ErrorKind::NonConvergence, "direction budget exhausted");
      directions *= 2;
    }
  }
  return ShardPotential(std::move(stages));
}

}  // namespace shardflow
