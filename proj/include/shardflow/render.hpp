// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Deterministic SVG figures: broken scenes, velocity profiles, packings and
// potential heightmaps.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shardflow/geom2d.hpp"
#include "shardflow/packings.hpp"

namespace shardflow {

/// Shards filled by a hue keyed to their velocity direction.
std::string render_shards_svg(std::span<const ConvexPolygon> shards, std::span<const Vec2> velocities,
                              const std::string &title, double size = 800.0);

struct Curve {
  std::vector<Vec2> points;
  std::string label;
};

/// Polyline plot of curves over their common bounding box with axes.
std::string render_curves_svg(std::span<const Curve> curves, const std::string &title,
                              double width = 800.0, double height = 500.0);

/// Disks of a packing with the enclosing circle (if any) outlined.
std::string render_packing_svg(const DiskPacking &packing, double size = 800.0);

/// f sampled on a res x res grid over the domain, shaded by value.
std::string render_heightmap_svg(const std::function<double(Vec2)> &f, const ConvexPolygon &domain,
                                 std::size_t res, const std::string &title, double size = 800.0);

}  // namespace shardflow
