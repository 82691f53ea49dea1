// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// One-dimensional theory: depth-n Cantor functions, the fat Cantor flow
// X_t(z) = z + t c(z), the Lax velocity profile and the density test for
// velocity sets.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shardflow/convexify.hpp"
#include "shardflow/measure.hpp"

namespace shardflow {

/// A removed middle third together with the value of the Cantor function on it.
struct CantorGap {
  Interval interval;
  double value = 0.0;
};

/// Depth-n construction: 2^n kept intervals of length 3^-n and the 2^n - 1
/// gaps between them, both ordered left to right.
struct CantorApprox {
  int depth = 0;
  std::vector<Interval> kept;
  std::vector<CantorGap> gaps;
};

CantorApprox cantor_approx(int depth);

/// c_n(z): affine on kept intervals, constant on gaps, |c_n - c| <= 2^-n.
/// Throws Domain outside [0, 1].
double cantor_function(double z, int depth);

struct CantorFlow {
  std::vector<CantorGap> translated_gaps;  // A_i + t v_i, in order
  double gap_total = 0.0;                  // 1 - (2/3)^n
  double fat_measure = 0.0;                // t + (2/3)^n
};

CantorFlow cantor_flow(int depth, double t);

/// f(x, t) = c_n(z) where x = z + t c_n(z), by exact self-similar inversion.
/// 0 for x <= 0 and 1 for x >= 1 + t.
double lax_velocity(double x, double t, int depth);

/// (x, f(x, t)) at `samples` equispaced x in [0, 1 + t].
std::vector<Vec2> lax_profile(double t, int depth, std::size_t samples);

/// Samples random pairs x < y in (0, 1 + t) and checks
/// 0 <= (f(y) - f(x)) / (y - x) <= 1/t + eps.
bool oleinik_check(int depth, double t, std::size_t pairs, std::uint64_t seed = 1,
                   double eps = 1e-9);

/// True iff the values inside [lo, hi] are delta-dense there: both ends
/// within delta of a value and consecutive values within 2 delta.
bool continuity_classifier_1d(std::span<const double> values, double lo, double hi,
                              double delta);

/// A convex piecewise-affine stand-in for phi(z) = integral of c_n on
/// [0, 1]: velocity c_n on each gap and the midpoint value of c_n on each
/// kept interval, heights chosen for continuity.
std::vector<Piece1D> cantor_pieces(int depth);

}  // namespace shardflow
