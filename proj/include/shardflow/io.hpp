// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Text and binary interchange: problem/solution/scene/measure JSON, packing
// and histogram CSV, and grid functions as raw float64 plus a JSON header.
// Parse failures throw Error(Parse); file failures throw Error(Io).

#pragma once

#include <string>
#include <string_view>

#include "shardflow/alexandrov.hpp"
#include "shardflow/breakflow.hpp"
#include "shardflow/convexify.hpp"
#include "shardflow/measure.hpp"
#include "shardflow/packings.hpp"

namespace shardflow {

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

/// Polygon interchange: [[x, y], ...], counterclockwise, open loop.
ConvexPolygon parse_polygon(std::string_view json);

/// {"domain": polygon, "pairs": [{"m": mass, "v": [x, y]}, ...]}
MassVelocityData parse_problem(std::string_view json);
std::string problem_to_json(const MassVelocityData &data);

/// {"domain", "velocities", "heights", "cells", "residual"}. When "cells" is
/// missing they are rebuilt from the max representation.
std::string solution_to_json(const PiecewiseAffinePotential &pot, double residual);
PiecewiseAffinePotential parse_solution(std::string_view json);

/// {"t", "shards": [polygon, ...], "velocities": [[x, y], ...]}
std::string scene_to_json(const BreakingScene &scene);

/// {"dims", "ac_parts": [{"interval"|"polygon", "density"}], "atoms":
/// [{"location", "mass"}], "singular_diffuse_mass", summary masses}
std::string measure_to_json(const MeasureDecomposition &mu);

/// center_x,center_y,radius,curvature; an enclosing circle is written first
/// with negative curvature.
std::string packing_to_csv(const DiskPacking &packing);
/// Reads the CSV form back. Without an enclosing row the packing domain is
/// `fallback_domain`; with one it is the circumscribed `sides`-gon.
DiskPacking parse_packing_csv(std::string_view csv, const ConvexPolygon &fallback_domain,
                              std::size_t sides = 256);

/// bin_center_x,bin_center_y,mass for every bin.
std::string histogram_to_csv(const Histogram2D &hist);

/// prefix.bin holds the values (float64, little endian, row-major); prefix.json
/// holds {"origin", "spacing", "dims", "mask"} where mask is a 0/1 list.
void write_grid(const GridFunction &f, const std::string &prefix);
GridFunction read_grid(const std::string &prefix);

}  // namespace shardflow
