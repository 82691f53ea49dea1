// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Discrete Legendre transforms, convexification f** and the Monge-Ampere
// measure of psi_t(z) = |z|^2/2 + t phi(z): exact in 1D for piecewise-affine
// phi, histogram based on 2D grids. Also the Hopf-Lax inf-convolution.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "shardflow/geom2d.hpp"
#include "shardflow/measure.hpp"

namespace shardflow {

/// Uniform axis: node i sits at origin + i * spacing.
struct Axis {
  double origin = 0.0;
  double spacing = 1.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  double back() const { return at(count - 1); }
  /// count nodes from lo to hi inclusive.
  static Axis spanning(double lo, double hi, std::size_t count);
};

/// Samples of a function on a 1D or 2D tensor grid. Values are row-major
/// with the last axis fastest; +infinity marks nodes outside the domain.
struct GridFunction {
  std::vector<Axis> axes;
  std::vector<double> values;

  int dims() const { return static_cast<int>(axes.size()); }
  std::size_t size() const { return values.size(); }
  std::size_t index(std::size_t i, std::size_t j) const { return i * axes[1].count + j; }
  double &operator()(std::size_t i) { return values[i]; }
  double operator()(std::size_t i) const { return values[i]; }
  double &operator()(std::size_t i, std::size_t j) { return values[index(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const { return values[index(i, j)]; }
  Vec2 node(std::size_t i, std::size_t j) const { return {axes[0].at(i), axes[1].at(j)}; }

  static GridFunction sample(const Axis &ax, const std::function<double(double)> &f);
  static GridFunction sample(const Axis &ax, const Axis &ay,
                             const std::function<double(Vec2)> &f);
};

/// Linear or bilinear interpolation; +infinity outside the grid or when a
/// neighbouring node is infinite.
double interpolate(const GridFunction &f, double x);
double interpolate(const GridFunction &f, Vec2 x);

/// Dual axis covering the finite-difference slope range of f along `axis`
/// with spacing no coarser than the primal spacing / oversample.
Axis default_dual_axis(const GridFunction &f, int axis, double oversample = 1.0);

/// f*(s) = max over nodes of s z - f(z), by the linear-time hull sweep.
GridFunction legendre_1d(const GridFunction &f, std::optional<Axis> dual = std::nullopt);
/// The 2D transform as two nested 1D sweeps (the sup factorises per axis).
GridFunction legendre_2d(const GridFunction &f,
                         std::optional<std::array<Axis, 2>> dual = std::nullopt);
GridFunction legendre(const GridFunction &f);

/// f** on the grid of f: the largest convex minorant at grid resolution.
GridFunction convexify(const GridFunction &f, double oversample = 1.0);

enum class Touching : std::uint8_t { Interior, Boundary, NonTouching, Outside };

struct TouchingClassification {
  std::vector<Touching> labels;
  std::size_t count(Touching which) const;
};

/// A node touches when psi - psi** <= eps_touch; touching nodes whose grid
/// neighbours all touch are interior, the rest boundary.
TouchingClassification touching_set(const GridFunction &psi, const GridFunction &psi_cc,
                                    double eps_touch);

/// One affine piece of a 1D potential on [lo, hi].
struct Piece1D {
  double lo = 0.0;
  double hi = 0.0;
  double velocity = 0.0;
  double height = 0.0;
};

/// Exact decomposition of kappa_t = (grad psi_t**)_# Lebesgue for a
/// continuous piecewise-affine phi given as contiguous pieces. The hull of
/// the quadratic arcs of psi_t is built by a stack sweep; contact stretches
/// become unit-density translated intervals and hull bridges become atoms
/// carrying the length of the bridged gap.
MeasureDecomposition monge_ampere_1d(std::span<const Piece1D> pieces, double t);

struct GridMongeAmpereOptions {
  std::size_t grid = 512;             // nodes per axis over the domain's bounding box
  std::size_t bins = 256;             // histogram bins per axis
  double singular_threshold = 8.0;    // multiple of the Lebesgue density
  double eps_touch = 1e-9;
  std::size_t max_atom_bins = 4;      // larger singular clusters count as diffuse
};

struct Histogram2D {
  Axis x;  // bin centres
  Axis y;
  std::vector<double> mass;  // row-major, y fastest
};

struct GridMongeAmpere {
  MeasureDecomposition decomposition;
  Histogram2D histogram;
  TouchingClassification touching;
  double total_mass = 0.0;
};

/// Histogram approximation of kappa_t on a grid. Bins receiving more than
/// singular_threshold times the Lebesgue density are singular; their mass in
/// excess of unit density is atomic (small clusters) or diffuse.
GridMongeAmpere monge_ampere_grid(const std::function<double(Vec2)> &phi,
                                  const ConvexPolygon &domain, double t,
                                  const GridMongeAmpereOptions &options = {});

struct HopfLaxOptions {
  std::size_t scan = 256;   // coarse nodes per axis
  int refine_steps = 20;
};

struct HopfLaxResult {
  double value = 0.0;
  Vec2 minimizer;
};

/// u_t(x) = min over z in the domain of |x - z|^2 / (2t) + phi(z).
HopfLaxResult hopf_lax(const std::function<double(Vec2)> &phi, const ConvexPolygon &domain,
                       Vec2 x, double t, const HopfLaxOptions &options = {});

}  // namespace shardflow
