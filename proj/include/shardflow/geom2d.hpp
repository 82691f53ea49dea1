// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Double-precision convex polygon kernel: half-plane clipping, shoelace
// areas and centroids, overlap tests and power (Laguerre) cells.

#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace shardflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
  Vec2 &operator+=(Vec2 b) {
    x += b.x;
    y += b.y;
    return *this;
  }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr double norm2(Vec2 a) { return dot(a, a); }

/// Comparison tolerances shared by the geometry routines.
struct Tolerances {
  double geom = 1e-12;  // coordinate comparisons
  double area = 1e-10;  // area comparisons
};

/// {x : normal . x <= offset}
struct HalfPlane {
  Vec2 normal;
  double offset = 0.0;

  HalfPlane complement() const { return {-normal, -offset}; }
};

struct BoundingBox {
  Vec2 lo;
  Vec2 hi;

  bool intersects(const BoundingBox &o, double eps = 0.0) const {
    return lo.x <= o.hi.x + eps && o.lo.x <= hi.x + eps && lo.y <= o.hi.y + eps &&
           o.lo.y <= hi.y + eps;
  }
};

/// Counterclockwise vertex loop. Edge i runs from vertex i to vertex i+1 and
/// carries an integer tag naming the constraint that produced it (-1 for the
/// original boundary). Power cells use the tag to record the neighbouring
/// site across each edge.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Vec2> vertices);
  ConvexPolygon(std::vector<Vec2> vertices, std::vector<int> edge_tags);

  const std::vector<Vec2> &vertices() const { return vertices_; }
  const std::vector<int> &edge_tags() const { return tags_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const Vec2 &operator[](std::size_t i) const { return vertices_[i]; }

  BoundingBox bounds() const;
  ConvexPolygon translated(Vec2 offset) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<int> tags_;
};

/// Site of a power diagram: cell i is where |x - site_i|^2 - weight_i is minimal.
struct PowerSite {
  Vec2 site;
  double weight = 0.0;
};

double area(const ConvexPolygon &poly);
double perimeter(const ConvexPolygon &poly);
/// Centroid of a nonempty polygon; the vertex mean for degenerate input.
Vec2 centroid(const ConvexPolygon &poly);
/// Integral of x over the polygon (area times centroid).
Vec2 first_moment(const ConvexPolygon &poly);

ConvexPolygon clip_halfplane(const ConvexPolygon &poly, const HalfPlane &hp,
                             int tag = -1, const Tolerances &tol = {});
ConvexPolygon intersect(const ConvexPolygon &p, const ConvexPolygon &q,
                        const Tolerances &tol = {});
bool polygons_overlap(const ConvexPolygon &p, const ConvexPolygon &q,
                      const Tolerances &tol = {});

/// Closed point-in-polygon test with tolerance eps on the edge distance.
bool contains(const ConvexPolygon &poly, Vec2 p, double eps = 0.0);
/// Distance from an interior point to the boundary (negative outside).
double boundary_clearance(const ConvexPolygon &poly, Vec2 p);
/// True if p lies within eps of some edge.
bool on_boundary(const ConvexPolygon &poly, Vec2 p, double eps);

/// Cell i of the power diagram of `sites`, clipped to `domain`. Edge tags
/// hold the index of the neighbouring site, -1 on the domain boundary.
ConvexPolygon power_cell(const ConvexPolygon &domain, std::size_t i,
                         std::span<const PowerSite> sites,
                         const Tolerances &tol = {});
std::vector<ConvexPolygon> power_diagram(const ConvexPolygon &domain,
                                         std::span<const PowerSite> sites,
                                         const Tolerances &tol = {});

ConvexPolygon unit_square();
ConvexPolygon box(Vec2 lo, Vec2 hi);
/// Regular n-gon. When circumscribed is true the polygon contains the circle.
ConvexPolygon regular_polygon(Vec2 center, double radius, std::size_t n,
                              bool circumscribed = false);

/// Uniform sample from a nonempty polygon.
Vec2 sample_uniform(const ConvexPolygon &poly, std::mt19937_64 &rng);

/// Validates the convexity/orientation invariants; returns false on violation.
bool is_valid_convex(const ConvexPolygon &poly, const Tolerances &tol = {});

}  // namespace shardflow
