// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Rigid breaking flow X_t(z) = z + t v(z) for piecewise-constant velocity
// fields, with geometric injectivity, expansion and convexity checks.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shardflow/alexandrov.hpp"
#include "shardflow/measure.hpp"

namespace shardflow {

/// Cells translated rigidly: shards[i] = cells[i] + time * velocities[i].
struct BreakingScene {
  double time = 0.0;
  std::vector<ConvexPolygon> shards;
  std::vector<Vec2> velocities;
};

BreakingScene advance(const PiecewiseAffinePotential &pot, double t);

/// Samples `samples` point pairs (area-weighted over the cells) and checks
/// |X_t(x) - X_t(y)| >= |x - y| - eps for each.
bool check_expansion(const PiecewiseAffinePotential &pot, double t, std::size_t samples,
                     std::uint64_t seed = 1, double eps = 1e-12);

/// True iff the map from closed cells to closed shards is one-to-one: shards
/// with distinct velocities at t > 0 must be disjoint, others must not overlap
/// in area.
bool check_injectivity(const BreakingScene &scene, const Tolerances &tol = {});

/// Index pairs of overlapping shards (bounding-box prefiltered).
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(
    const BreakingScene &scene, const Tolerances &tol = {}, std::size_t limit = SIZE_MAX);

/// One tile of an explicit partition carrying affine data phi = v . x + h.
struct AffinePiece {
  ConvexPolygon region;
  Vec2 velocity;
  double height = 0.0;
};

std::vector<AffinePiece> pieces_of(const PiecewiseAffinePotential &pot);

/// Max-representation test at the vertices of every piece. eps <= 0 selects
/// the default 1e-8 scaled by the velocity magnitude. Throws
/// InconsistentPartition when neighbouring pieces disagree on shared
/// boundary values.
bool check_convexity(std::span<const AffinePiece> pieces, double eps = 0.0);

/// Lebesgue measure restricted to the shards. Throws OverlappingShards when
/// the scene is not injective.
MeasureDecomposition transported_measure(const BreakingScene &scene,
                                         const Tolerances &tol = {});

}  // namespace shardflow
