// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/breakflow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace shardflow {

namespace {

// Closed convex polygons intersect iff no edge normal of either separates them.
bool closed_polygons_meet(const ConvexPolygon &p, const ConvexPolygon &q, double eps) {
  auto separated_by = [&](const ConvexPolygon &a, const ConvexPolygon &b) {
    const auto &v = a.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      Vec2 e = v[(i + 1) % v.size()] - v[i];
      double len = norm(e);
      if (len == 0.0) continue;
      double gap = std::numeric_limits<double>::infinity();
      for (const Vec2 &w : b.vertices()) gap = std::min(gap, -cross(e, w - v[i]) / len);
      if (gap > eps) return true;
    }
    return false;
  };
  return !separated_by(p, q) && !separated_by(q, p);
}

}  // namespace

BreakingScene advance(const PiecewiseAffinePotential &pot, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "time must be nonnegative");
  BreakingScene scene;
  scene.time = t;
  scene.velocities = pot.velocities;
  scene.shards.reserve(pot.cells.size());
  for (std::size_t i = 0; i < pot.cells.size(); ++i)
    scene.shards.push_back(pot.cells[i].translated(t * pot.velocities[i]));
  return scene;
}

bool check_expansion(const PiecewiseAffinePotential &pot, double t, std::size_t samples,
                     std::uint64_t seed, double eps) {
  std::vector<double> cumulative;
  std::vector<std::size_t> index;
  double total = 0.0;
  for (std::size_t i = 0; i < pot.cells.size(); ++i) {
    double a = area(pot.cells[i]);
    if (a <= 0.0) continue;
    total += a;
    cumulative.push_back(total);
    index.push_back(i);
  }
  if (cumulative.empty()) return true;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&]() {
    double u = unit(rng) * total;
    std::size_t k = static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    return index[std::min(k, index.size() - 1)];
  };
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t a = pick();
    std::size_t b = pick();
    Vec2 x = sample_uniform(pot.cells[a], rng);
    Vec2 y = sample_uniform(pot.cells[b], rng);
    Vec2 xt = x + t * pot.velocities[a];
    Vec2 yt = y + t * pot.velocities[b];
    if (norm(xt - yt) < norm(x - y) - eps) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const BreakingScene &scene,
                                                                   const Tolerances &tol,
                                                                   std::size_t limit) {
  const auto &shards = scene.shards;
  std::vector<BoundingBox> boxes(shards.size());
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < shards.size(); ++i) {
    if (shards[i].size() < 3) continue;
    boxes[i] = shards[i].bounds();
    order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return boxes[a].lo.x < boxes[b].lo.x; });
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  // sweep along x: only boxes whose x-ranges intersect are compared
  for (std::size_t a = 0; a < order.size(); ++a) {
    const BoundingBox &ba = boxes[order[a]];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const BoundingBox &bb = boxes[order[b]];
      if (bb.lo.x > ba.hi.x) break;
      if (!ba.intersects(bb, tol.geom)) continue;
      std::size_t i = order[a], j = order[b];
      // Shards with distinct velocities come from distinct points, so at t > 0
      // even touching closures break injectivity. Equal velocities translate
      // both cells rigidly and only interior overlap counts.
      bool distinct = scene.time > 0.0 && i < scene.velocities.size() &&
                      j < scene.velocities.size() && !(scene.velocities[i] == scene.velocities[j]);
      bool hit = distinct ? closed_polygons_meet(shards[i], shards[j], tol.geom)
                          : polygons_overlap(shards[i], shards[j], tol);
      if (hit) {
        hits.emplace_back(std::min(order[a], order[b]), std::max(order[a], order[b]));
        if (hits.size() >= limit) return hits;
      }
    }
  }
  return hits;
}

bool check_injectivity(const BreakingScene &scene, const Tolerances &tol) {
  return overlapping_pairs(scene, tol, 1).empty();
}

std::vector<AffinePiece> pieces_of(const PiecewiseAffinePotential &pot) {
  std::vector<AffinePiece> pieces;
  pieces.reserve(pot.size());
  for (std::size_t i = 0; i < pot.size(); ++i)
    pieces.push_back({pot.cells[i], pot.velocities[i], pot.heights[i]});
  return pieces;
}

bool check_convexity(std::span<const AffinePiece> pieces, double eps) {
  double vmax = 0.0;
  for (const auto &p : pieces) vmax = std::max(vmax, norm(p.velocity));
  if (eps <= 0.0) eps = 1e-8 * std::max(1.0, vmax);
  const double touch = 1e-9;

  std::vector<BoundingBox> boxes(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) boxes[i] = pieces[i].region.bounds();
  auto value = [&](std::size_t i, Vec2 x) { return dot(pieces[i].velocity, x) + pieces[i].height; };

  // Continuity first: a discontinuous partition is not a potential at all.
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].region.size() < 3) continue;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (i == j || pieces[j].region.size() < 3) continue;
      if (!boxes[i].intersects(boxes[j], touch)) continue;
      for (const Vec2 &x : pieces[i].region.vertices()) {
        if (!on_boundary(pieces[j].region, x, touch)) continue;
        if (std::abs(value(i, x) - value(j, x)) > eps) {
          std::ostringstream msg;
          msg << "pieces " << i << " and " << j << " disagree by "
              << std::abs(value(i, x) - value(j, x)) << " on their shared boundary";
          throw Error(ErrorKind::InconsistentPartition, msg.str());
        }
      }
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (const Vec2 &x : pieces[i].region.vertices()) {
      double own = value(i, x);
      for (std::size_t j = 0; j < pieces.size(); ++j)
        if (j != i && value(j, x) > own + eps) return false;
    }
  }
  return true;
}

MeasureDecomposition transported_measure(const BreakingScene &scene, const Tolerances &tol) {
  auto hits = overlapping_pairs(scene, tol, 1);
  if (!hits.empty()) {
    std::ostringstream msg;
    msg << "shards " << hits[0].first << " and " << hits[0].second
        << " overlap; the velocity potential is not convex";
    throw Error(ErrorKind::OverlappingShards, msg.str());
  }
  MeasureDecomposition out;
  out.dims = 2;
  for (const auto &shard : scene.shards)
    if (shard.size() >= 3) out.ac_parts.push_back({shard, 1.0});
  return out;
}

}  // namespace shardflow
