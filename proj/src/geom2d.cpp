// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/geom2d.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>

#include "shardflow/parallel.hpp"

namespace shardflow {

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices)
    : vertices_(std::move(vertices)), tags_(vertices_.size(), -1) {}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices, std::vector<int> edge_tags)
    : vertices_(std::move(vertices)), tags_(std::move(edge_tags)) {
  tags_.resize(vertices_.size(), -1);
}

BoundingBox ConvexPolygon::bounds() const {
  if (vertices_.empty()) return {};
  BoundingBox b{vertices_.front(), vertices_.front()};
  for (const Vec2 &v : vertices_) {
    b.lo.x = std::min(b.lo.x, v.x);
    b.lo.y = std::min(b.lo.y, v.y);
    b.hi.x = std::max(b.hi.x, v.x);
    b.hi.y = std::max(b.hi.y, v.y);
  }
  return b;
}

ConvexPolygon ConvexPolygon::translated(Vec2 offset) const {
  std::vector<Vec2> moved(vertices_);
  for (Vec2 &v : moved) v += offset;
  return ConvexPolygon(std::move(moved), tags_);
}

double area(const ConvexPolygon &poly) {
  const auto &v = poly.vertices();
  if (v.size() < 3) return 0.0;
  // Shoelace about the first vertex keeps cancellation small for far-off polygons.
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) twice += cross(v[i] - v[0], v[i + 1] - v[0]);
  return std::max(0.0, 0.5 * twice);
}

double perimeter(const ConvexPolygon &poly) {
  const auto &v = poly.vertices();
  double p = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) p += norm(v[(i + 1) % v.size()] - v[i]);
  return p;
}

Vec2 first_moment(const ConvexPolygon &poly) {
  const auto &v = poly.vertices();
  if (v.size() < 3) return {};
  Vec2 acc{};
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    double a = 0.5 * cross(v[i] - v[0], v[i + 1] - v[0]);
    acc += (a / 3.0) * (v[0] + v[i] + v[i + 1]);
  }
  return acc;
}

Vec2 centroid(const ConvexPolygon &poly) {
  const auto &v = poly.vertices();
  if (v.empty()) return {};
  double a = area(poly);
  if (a > 0.0) return (1.0 / a) * first_moment(poly);
  Vec2 mean{};
  for (const Vec2 &p : v) mean += p;
  return (1.0 / static_cast<double>(v.size())) * mean;
}

namespace {

// Drops consecutive near-duplicate vertices. The zero-length edge between the
// pair disappears; the surviving edge keeps the tag of the edge leaving the pair.
void dedupe(std::vector<Vec2> &verts, std::vector<int> &tags, double eps) {
  if (verts.size() < 2) return;
  std::vector<Vec2> ov;
  std::vector<int> ot;
  ov.reserve(verts.size());
  ot.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (!ov.empty() && norm(verts[i] - ov.back()) <= eps) {
      // edge ov.back() -> verts[i] is degenerate; continue from ov.back()
      ot.back() = tags[i];
      continue;
    }
    ov.push_back(verts[i]);
    ot.push_back(tags[i]);
  }
  while (ov.size() > 1 && norm(ov.front() - ov.back()) <= eps) {
    ov.pop_back();
    ot.pop_back();
  }
  verts = std::move(ov);
  tags = std::move(ot);
}

}  // namespace

ConvexPolygon clip_halfplane(const ConvexPolygon &poly, const HalfPlane &hp, int tag,
                             const Tolerances &tol) {
  const auto &v = poly.vertices();
  const auto &t = poly.edge_tags();
  const std::size_t n = v.size();
  if (n == 0) return {};
  const double scale = norm(hp.normal);
  if (scale == 0.0) return poly;

  std::vector<double> s(n);
  bool any_out = false;
  bool any_in = false;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = (dot(hp.normal, v[i]) - hp.offset) / scale;
    if (s[i] > tol.geom) any_out = true;
    else any_in = true;
  }
  if (!any_out) return poly;
  if (!any_in) return {};

  std::vector<Vec2> ov;
  std::vector<int> ot;
  ov.reserve(n + 1);
  ot.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    bool in_a = s[i] <= tol.geom;
    bool in_b = s[j] <= tol.geom;
    if (in_a && in_b) {
      ov.push_back(v[i]);
      ot.push_back(t[i]);
    } else if (in_a) {
      if (s[i] < -tol.geom) {
        ov.push_back(v[i]);
        ot.push_back(t[i]);
        double lam = s[i] / (s[i] - s[j]);
        ov.push_back(v[i] + lam * (v[j] - v[i]));
        ot.push_back(tag);
      } else {
        ov.push_back(v[i]);
        ot.push_back(tag);
      }
    } else if (in_b && s[j] < -tol.geom) {
      double lam = s[i] / (s[i] - s[j]);
      ov.push_back(v[i] + lam * (v[j] - v[i]));
      ot.push_back(t[i]);
    }
  }
  dedupe(ov, ot, tol.geom);
  if (ov.size() < 3) return {};
  ConvexPolygon out(std::move(ov), std::move(ot));
  // Slivers thinner than the coordinate tolerance collapse to empty.
  if (area(out) <= tol.geom * perimeter(out)) return {};
  return out;
}

ConvexPolygon intersect(const ConvexPolygon &p, const ConvexPolygon &q,
                        const Tolerances &tol) {
  ConvexPolygon out = p;
  const auto &w = q.vertices();
  for (std::size_t i = 0; i < w.size() && !out.empty(); ++i) {
    Vec2 a = w[i];
    Vec2 b = w[(i + 1) % w.size()];
    Vec2 e = b - a;
    // interior of a ccw polygon lies to the left of each edge
    HalfPlane hp{{e.y, -e.x}, dot(Vec2{e.y, -e.x}, a)};
    out = clip_halfplane(out, hp, -1, tol);
  }
  return out;
}

bool polygons_overlap(const ConvexPolygon &p, const ConvexPolygon &q, const Tolerances &tol) {
  if (p.size() < 3 || q.size() < 3) return false;
  if (!p.bounds().intersects(q.bounds())) return false;
  return area(intersect(p, q, tol)) > tol.area;
}

bool contains(const ConvexPolygon &poly, Vec2 p, double eps) {
  const auto &v = poly.vertices();
  if (v.size() < 3) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 e = v[(i + 1) % v.size()] - v[i];
    double len = norm(e);
    if (len == 0.0) continue;
    if (cross(e, p - v[i]) / len < -eps) return false;
  }
  return true;
}

double boundary_clearance(const ConvexPolygon &poly, Vec2 p) {
  const auto &v = poly.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 e = v[(i + 1) % v.size()] - v[i];
    double len = norm(e);
    if (len == 0.0) continue;
    best = std::min(best, cross(e, p - v[i]) / len);
  }
  return best;
}

bool on_boundary(const ConvexPolygon &poly, Vec2 p, double eps) {
  const auto &v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 a = v[i];
    Vec2 b = v[(i + 1) % v.size()];
    Vec2 e = b - a;
    double len2 = norm2(e);
    double lam = len2 > 0.0 ? std::clamp(dot(p - a, e) / len2, 0.0, 1.0) : 0.0;
    if (norm(a + lam * e - p) <= eps) return true;
  }
  return false;
}

ConvexPolygon power_cell(const ConvexPolygon &domain, std::size_t i,
                         std::span<const PowerSite> sites, const Tolerances &tol) {
  const PowerSite &me = sites[i];
  std::vector<std::size_t> order;
  order.reserve(sites.size());
  double max_weight = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < sites.size(); ++j) {
    max_weight = std::max(max_weight, sites[j].weight);
    if (j != i) order.push_back(j);
  }
  std::vector<double> dist(sites.size());
  for (std::size_t j : order) dist[j] = norm(sites[j].site - me.site);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  });

  auto reach = [&](const ConvexPolygon &poly) {
    double r = 0.0;
    for (const Vec2 &p : poly.vertices()) r = std::max(r, norm(p - me.site));
    return r;
  };

  ConvexPolygon cell = domain;
  double radius = reach(cell);
  for (std::size_t j : order) {
    if (cell.empty()) break;
    // Bisector with any farther site cannot reach a vertex of the current cell:
    // 2u.y <= |u|^2 - w_j + w_i holds for |y| <= radius once |u| is this large.
    double slack = radius * radius + std::max(0.0, max_weight - me.weight);
    if (dist[j] >= radius + std::sqrt(slack)) break;
    const PowerSite &other = sites[j];
    HalfPlane hp{2.0 * (other.site - me.site),
                 norm2(other.site) - norm2(me.site) - other.weight + me.weight};
    ConvexPolygon next = clip_halfplane(cell, hp, static_cast<int>(j), tol);
    if (next.size() != cell.size() || next.vertices() != cell.vertices()) {
      cell = std::move(next);
      radius = reach(cell);
    }
  }
  return cell;
}

std::vector<ConvexPolygon> power_diagram(const ConvexPolygon &domain,
                                         std::span<const PowerSite> sites,
                                         const Tolerances &tol) {
  std::vector<ConvexPolygon> cells(sites.size());
  parallel_for(sites.size(), [&](std::size_t i) { cells[i] = power_cell(domain, i, sites, tol); });
  return cells;
}

ConvexPolygon unit_square() { return box({0.0, 0.0}, {1.0, 1.0}); }

ConvexPolygon box(Vec2 lo, Vec2 hi) {
  return ConvexPolygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

ConvexPolygon regular_polygon(Vec2 center, double radius, std::size_t n, bool circumscribed) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double r = circumscribed ? radius / std::cos(0.5 * step) : radius;
  std::vector<Vec2> v;
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double a = step * static_cast<double>(k);
    v.push_back(center + Vec2{r * std::cos(a), r * std::sin(a)});
  }
  return ConvexPolygon(std::move(v));
}

Vec2 sample_uniform(const ConvexPolygon &poly, std::mt19937_64 &rng) {
  const auto &v = poly.vertices();
  std::vector<double> cumulative;
  cumulative.reserve(v.size());
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    total += 0.5 * cross(v[i] - v[0], v[i + 1] - v[0]);
    cumulative.push_back(total);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double pick = unit(rng) * total;
  std::size_t tri = static_cast<std::size_t>(
      std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
  tri = std::min(tri, cumulative.size() - 1);
  double a = unit(rng);
  double b = unit(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return v[0] + a * (v[tri + 1] - v[0]) + b * (v[tri + 2] - v[0]);
}

bool is_valid_convex(const ConvexPolygon &poly, const Tolerances &tol) {
  const auto &v = poly.vertices();
  if (v.empty()) return true;
  if (v.size() < 3) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 a = v[i];
    Vec2 b = v[(i + 1) % v.size()];
    Vec2 c = v[(i + 2) % v.size()];
    if (norm(b - a) < tol.geom) return false;
    if (cross(b - a, c - b) < -tol.geom * std::max(1.0, norm(b - a) * norm(c - b))) return false;
  }
  return true;
}

}  // namespace shardflow
