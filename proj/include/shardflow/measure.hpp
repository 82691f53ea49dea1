// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <variant>
#include <vector>

#include "shardflow/geom2d.hpp"

namespace shardflow {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi > lo ? hi - lo : 0.0; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Uniform density on an interval (1D) or a convex polygon (2D).
struct AcPiece {
  std::variant<Interval, ConvexPolygon> support;
  double density = 1.0;

  double measure() const;  // length or area of the support
  double mass() const { return density * measure(); }
};

/// A point mass. In 1D only location.x is meaningful.
struct Atom {
  Vec2 location;
  double mass = 0.0;
};

/// Lebesgue decomposition of a transported measure: an absolutely continuous
/// part made of uniform pieces, atoms, and (grid mode only) singular mass
/// that is concentrated but not isolated enough to count as atoms.
struct MeasureDecomposition {
  int dims = 2;
  std::vector<AcPiece> ac_parts;
  std::vector<Atom> atoms;
  double singular_diffuse_mass = 0.0;

  double ac_mass() const;
  double atom_mass() const;
  double singular_mass() const { return atom_mass() + singular_diffuse_mass; }
  double total_mass() const { return ac_mass() + singular_mass(); }
};

}  // namespace shardflow
