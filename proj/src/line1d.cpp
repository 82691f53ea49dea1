// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/line1d.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shardflow/error.hpp"

namespace shardflow {
namespace {

void check_depth(int depth) {
  if (depth < 0 || depth > 40)
    throw Error(ErrorKind::InvalidArgument, "Cantor depth must lie in [0, 40]");
}

// Left to right: kept interval [a, a + len] gets split into two kept thirds
// with the middle third removed. Gap values come from the dyadic bracket
// [vlo, vhi] of the interval being split.
void build(double a, double len, double vlo, double vhi, int levels, CantorApprox &out) {
  if (levels == 0) {
    out.kept.push_back({a, a + len});
    return;
  }
  double third = len / 3.0;
  double mid = 0.5 * (vlo + vhi);
  build(a, third, vlo, mid, levels - 1, out);
  out.gaps.push_back({{a + third, a + 2.0 * third}, mid});
  build(a + 2.0 * third, third, mid, vhi, levels - 1, out);
}

}  // namespace

CantorApprox cantor_approx(int depth) {
  check_depth(depth);
  if (depth > 20) throw Error(ErrorKind::InvalidArgument, "enumeration depth must be <= 20");
  CantorApprox out;
  out.depth = depth;
  out.kept.reserve(std::size_t{1} << depth);
  out.gaps.reserve((std::size_t{1} << depth) - 1);
  build(0.0, 1.0, 0.0, 1.0, depth, out);
  return out;
}

double cantor_function(double z, int depth) {
  check_depth(depth);
  if (!(z >= 0.0 && z <= 1.0)) throw Error(ErrorKind::Domain, "Cantor function needs z in [0, 1]");
  double value = 0.0;
  double scale = 1.0;
  for (int level = 0; level < depth; ++level) {
    double z3 = 3.0 * z;
    if (z3 < 1.0) {
      z = z3;
    } else if (z3 <= 2.0) {
      return value + 0.5 * scale;
    } else {
      value += 0.5 * scale;
      z = std::min(1.0, z3 - 2.0);
    }
    scale *= 0.5;
  }
  return value + scale * z;
}

CantorFlow cantor_flow(int depth, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be nonnegative");
  CantorApprox approx = cantor_approx(depth);
  CantorFlow out;
  out.translated_gaps.reserve(approx.gaps.size());
  for (const auto &g : approx.gaps)
    out.translated_gaps.push_back({{g.interval.lo + t * g.value, g.interval.hi + t * g.value}, g.value});
  // Level m contributes 2^(m-1) gaps of length 3^-m.
  double total = 0.0;
  double count = 0.5;
  double len = 1.0;
  for (int m = 1; m <= depth; ++m) {
    count *= 2.0;
    len /= 3.0;
    total += count * len;
  }
  out.gap_total = total;
  out.fat_measure = (1.0 + t) - total;
  return out;
}

double lax_velocity(double x, double t, int depth) {
  check_depth(depth);
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be nonnegative");
  double value = 0.0;
  double scale = 1.0;
  for (int level = 0; level < depth; ++level) {
    if (x <= 0.0) return value;
    if (x >= 1.0 + t) return value + scale;
    double gap_lo = 1.0 / 3.0 + 0.5 * t;
    double gap_hi = 2.0 / 3.0 + 0.5 * t;
    if (x < gap_lo) {
      x = 3.0 * x;
    } else if (x <= gap_hi) {
      return value + 0.5 * scale;
    } else {
      value += 0.5 * scale;
      x = 3.0 * (x - gap_hi);
    }
    t *= 1.5;
    scale *= 0.5;
  }
  double z = std::clamp(x / (1.0 + t), 0.0, 1.0);
  return value + scale * z;
}

std::vector<Vec2> lax_profile(double t, int depth, std::size_t samples) {
  std::vector<Vec2> out;
  if (samples == 0) return out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    double x = samples == 1 ? 0.0 : (1.0 + t) * static_cast<double>(i) / static_cast<double>(samples - 1);
    out.push_back({x, lax_velocity(x, t, depth)});
  }
  return out;
}

bool oleinik_check(int depth, double t, std::size_t pairs, std::uint64_t seed, double eps) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0 + t);
  for (std::size_t k = 0; k < pairs; ++k) {
    double x = unit(rng);
    double y = unit(rng);
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    double q = (lax_velocity(y, t, depth) - lax_velocity(x, t, depth)) / (y - x);
    if (q < -eps || q > 1.0 / t + eps) return false;
  }
  return true;
}

bool continuity_classifier_1d(std::span<const double> values, double lo, double hi,
                              double delta) {
  std::vector<double> v;
  for (double x : values)
    if (x >= lo && x <= hi) v.push_back(x);
  if (v.empty()) return false;
  std::sort(v.begin(), v.end());
  if (v.front() - lo > delta || hi - v.back() > delta) return false;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] - v[i - 1] > 2.0 * delta) return false;
  return true;
}

std::vector<Piece1D> cantor_pieces(int depth) {
  CantorApprox approx = cantor_approx(depth);
  std::vector<Piece1D> pieces;
  pieces.reserve(approx.kept.size() + approx.gaps.size());
  double height = 0.0;
  auto append = [&](Interval iv, double v) {
    if (!pieces.empty()) {
      const Piece1D &prev = pieces.back();
      height = prev.velocity * prev.hi + prev.height - v * iv.lo;
    }
    pieces.push_back({iv.lo, iv.hi, v, height});
  };
  for (std::size_t i = 0; i < approx.kept.size(); ++i) {
    const Interval &k = approx.kept[i];
    append(k, cantor_function(0.5 * (k.lo + k.hi), depth));
    if (i < approx.gaps.size()) append(approx.gaps[i].interval, approx.gaps[i].value);
  }
  // Snap the shared endpoints so the pieces are exactly contiguous.
  for (std::size_t i = 1; i < pieces.size(); ++i) pieces[i].lo = pieces[i - 1].hi;
  return pieces;
}

}  // namespace shardflow
