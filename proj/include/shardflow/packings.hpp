// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Disk packings of convex domains (Apollonian, osculatory, random Vitali),
// the ball-shard potential of a packing, and shard potentials of arbitrary
// convex shape.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "shardflow/alexandrov.hpp"

namespace shardflow {

/// radius > 0 always; curvature is -1/radius for an enclosing circle.
struct Disk {
  Vec2 center;
  double radius = 0.0;
  double curvature = 0.0;

  static Disk inner(Vec2 center, double radius) { return {center, radius, 1.0 / radius}; }
  static Disk enclosing(Vec2 center, double radius) { return {center, radius, -1.0 / radius}; }
};

/// A Descartes quadruple: parents plus the sibling disk opposite the new
/// child. Indices refer to circle(): 0 is the enclosing circle.
struct DescartesRecord {
  std::array<std::size_t, 3> parents;
  std::size_t sibling;
  std::size_t child;
};

struct DiskPacking {
  ConvexPolygon domain;          // polygon used by the shard pipeline
  std::optional<Disk> enclosing; // curved container, when there is one
  std::vector<Disk> disks;
  std::vector<DescartesRecord> records;  // Apollonian packings only

  /// Area of the container: the enclosing disk if present, else the domain.
  double container_area() const;
  double covered_fraction() const;
  /// Circle k: the enclosing circle for k = 0 (when present), disks[k - 1] otherwise.
  const Disk &circle(std::size_t k) const;
};

/// Largest violation of pairwise disjointness and containment; <= 0 means valid.
double packing_violation(const DiskPacking &packing);

/// Standard integral seed (-1, 2, 2, 3) in the unit circle.
std::array<Disk, 4> default_apollonian_seed();

/// Breadth-first Descartes expansion. The seed holds one enclosing circle
/// (negative curvature) and three inner disks, all mutually tangent. The
/// polygon domain circumscribes the enclosing circle with `sides` edges.
/// Throws InvalidSeed when the curvatures violate the Descartes relation.
DiskPacking apollonian(const std::array<Disk, 4> &seed, int generations,
                       std::size_t sides = 256);

struct OsculatoryOptions {
  std::size_t grid = 512;       // distance-field nodes per axis
  std::size_t candidates = 32;  // field maxima polished per disk
  double shrink = 1e-9;         // certified radius = clearance - shrink
};

/// Greedily appends `count` disks, each of (near) maximal radius in the
/// residual set, located on a distance field and polished by tangency solves.
DiskPacking osculatory(const ConvexPolygon &domain, const DiskPacking &existing,
                       std::size_t count, const OsculatoryOptions &options = {});

/// Random centres with radius uniform in (0, clearance) until the covered
/// fraction reaches target. Throws Timeout after `budget` proposals.
DiskPacking vitali_random(const ConvexPolygon &domain, double target_fraction,
                          std::uint64_t seed, std::size_t budget = 10'000'000);

/// phi(x) = max_i x_i . x + (r_i^2 - |x_i|^2) / 2 over the disks, with
/// power cells in the packing domain. Cell i contains disk i.
PiecewiseAffinePotential packing_potential(const DiskPacking &packing);

/// Disk i as an inscribed `sides`-gon translated by t * centre.
std::vector<ConvexPolygon> disk_shards(const DiskPacking &packing, double t,
                                       std::size_t sides = 64);

/// phi(x) = max(0, max_k a_k max_i sigma_i . (x - x_i)) with directions
/// sigma_i on the unit circle and x_i the support points of the shape.
class ShardPotential {
 public:
  struct Stage {
    double coefficient = 0.0;
    std::vector<Vec2> directions;
    std::vector<Vec2> support_points;
  };

  explicit ShardPotential(std::vector<Stage> stages) : stages_(std::move(stages)) {}

  double operator()(Vec2 x) const;
  const std::vector<Stage> &stages() const { return stages_; }

 private:
  std::vector<Stage> stages_;
};

/// Stages k = 1..levels with a_k = 1/k! and N_k directions such that the
/// staged maximum is within 1/k of the distance to the shape on the domain.
/// The domain must lie in the closed unit ball. Throws ShapeNotInterior when
/// the origin is not interior to the shape.
ShardPotential arbitrary_shard_potential(const ConvexPolygon &domain, const ConvexPolygon &shape,
                                         int levels);

/// Euclidean distance from x to a convex polygon (0 inside).
double distance_to(const ConvexPolygon &poly, Vec2 x);

}  // namespace shardflow
