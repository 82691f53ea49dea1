// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Finite Alexandrov problem: given a convex domain and distinct velocities
// with masses, find heights h so that phi(x) = max_i (v_i . x + h_i) has a
// cell of area m_i for every i. Solved as a semi-discrete optimal transport
// dual by damped Newton iteration over power diagrams.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "shardflow/error.hpp"
#include "shardflow/geom2d.hpp"

namespace shardflow {

struct MassVelocityPair {
  double mass = 0.0;
  Vec2 velocity;
};

struct MassVelocityData {
  ConvexPolygon domain;
  std::vector<MassVelocityPair> pairs;

  /// Throws DegenerateData for coincident velocities and InvalidArgument for
  /// nonpositive masses or a mass total that misses area(domain) by more
  /// than mass_tol.
  void validate(double mass_tol = 1e-9, const Tolerances &tol = {}) const;
};

/// phi(x) = max_i (velocities[i] . x + heights[i]) together with its cells.
/// The cells need not come from the max representation: breakflow also
/// accepts explicit, possibly non-convex partitions in this form.
struct PiecewiseAffinePotential {
  ConvexPolygon domain;
  std::vector<Vec2> velocities;
  std::vector<double> heights;
  std::vector<ConvexPolygon> cells;

  std::size_t size() const { return velocities.size(); }
  /// Power weights w_i = 2 h_i + |v_i|^2.
  std::vector<PowerSite> power_sites() const;
};

double eval_potential(const PiecewiseAffinePotential &pot, Vec2 x);

struct DualEvaluation {
  double value = 0.0;
  std::vector<double> gradient;  // area(A_i) - m_i
  std::vector<ConvexPolygon> cells;
};

/// Phi(h) = integral over the domain of max_i (v_i . x + h_i) - sum_i h_i m_i,
/// integrated exactly cell by cell, and its gradient.
DualEvaluation dual_value_and_gradient(const MassVelocityData &data,
                                       std::span<const double> heights,
                                       const Tolerances &tol = {});

struct SolverOptions {
  double tol = 1e-9;             // max |area(A_i) - m_i|
  int max_newton = 100;
  double damping_floor = 0.1;
  int warmup_gradient_steps = 50;
  std::optional<std::vector<double>> initial_heights;
  /// Called after every accepted iterate with (iteration, max residual).
  std::function<void(int, double)> on_iteration;
  Tolerances geometry;
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;
  bool used_fallback_init = false;
};

/// Thrown when the Newton budget runs out; carries the best iterate.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string &what, PiecewiseAffinePotential best, double residual)
      : Error(ErrorKind::NonConvergence, what), best_(std::move(best)), residual_(residual) {}

  const PiecewiseAffinePotential &best() const { return best_; }
  double residual() const { return residual_; }

 private:
  PiecewiseAffinePotential best_;
  double residual_;
};

PiecewiseAffinePotential solve_weights(const MassVelocityData &data,
                                       const SolverOptions &options = {},
                                       SolveReport *report = nullptr);

/// Cells of the max representation for the given heights.
std::vector<ConvexPolygon> potential_cells(const ConvexPolygon &domain,
                                           std::span<const Vec2> velocities,
                                           std::span<const double> heights,
                                           const Tolerances &tol = {});

}  // namespace shardflow
