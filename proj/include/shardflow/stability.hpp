// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Truncation of countable mass-velocity data and an empirical check that
// the transported measures converge as the truncation grows.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "shardflow/alexandrov.hpp"
#include "shardflow/measure.hpp"

namespace shardflow {

/// Countable data: generator(i) for i >= 1 returns an unnormalised mass and
/// a velocity. Truncations are rescaled to area(domain).
struct CountableDataSpec {
  ConvexPolygon domain;
  std::function<MassVelocityPair(std::size_t)> generator;

  double normalization_total() const { return area(domain); }
};

/// m_i = ratio^i (default 2^(-1/16)) with velocities on the 2D Halton sequence mapped to [-1, 1]^2.
CountableDataSpec geometric_spec(const ConvexPolygon &domain, double ratio = std::exp2(-1.0 / 16.0));

/// Element i >= 1 of the Halton sequence in bases 2 and 3.
Vec2 halton(std::size_t i);

/// First n pairs with masses rescaled to sum to area(domain).
MassVelocityData truncate(const CountableDataSpec &spec, std::size_t n);

/// Integral of f(x) = sin(omega . x + phase) against a measure: exact on
/// polygons (divergence theorem) and intervals, pointwise on atoms. 1D
/// measures live on the first axis.
struct PlaneWave {
  Vec2 omega;
  double phase = 0.0;

  double operator()(Vec2 x) const;
};

double integrate(const PlaneWave &f, const MeasureDecomposition &mu);

/// `count` plane waves with |omega| in [1/4, 1]: 1-Lipschitz and bounded by 1.
std::vector<PlaneWave> test_dictionary(std::size_t count, std::uint64_t seed);

/// max over the dictionary of |integral f da - integral f db|.
double bl_distance(const MeasureDecomposition &a, const MeasureDecomposition &b,
                   std::size_t test_functions = 64, std::uint64_t seed = 1);

struct StabilityRow {
  std::size_t n = 0;
  double distance = 0.0;         // to the largest-n measure
  double solver_residual = 0.0;
  double wall_time = 0.0;        // seconds
};

struct StabilityOptions {
  std::size_t test_functions = 64;
  std::uint64_t seed = 1;
  SolverOptions solver;
};

/// For each n: truncate, solve, advance to t and compare the transported
/// measure with the one for the largest n.
std::vector<StabilityRow> stability_experiment(const CountableDataSpec &spec,
                                               std::span<const std::size_t> ns, double t,
                                               const StabilityOptions &options = {});

}  // namespace shardflow
