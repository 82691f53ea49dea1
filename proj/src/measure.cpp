// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/measure.hpp"

namespace shardflow {

double AcPiece::measure() const {
  if (const auto *iv = std::get_if<Interval>(&support)) return iv->length();
  return area(std::get<ConvexPolygon>(support));
}

double MeasureDecomposition::ac_mass() const {
  double m = 0.0;
  for (const auto &p : ac_parts) m += p.mass();
  return m;
}

double MeasureDecomposition::atom_mass() const {
  double m = 0.0;
  for (const auto &a : atoms) m += a.mass;
  return m;
}

}  // namespace shardflow
