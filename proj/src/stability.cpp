// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "shardflow/breakflow.hpp"
#include "shardflow/error.hpp"

namespace shardflow {
namespace {

double radical_inverse(std::size_t i, std::size_t base) {
  double v = 0.0;
  double f = 1.0 / static_cast<double>(base);
  double scale = f;
  while (i > 0) {
    v += static_cast<double>(i % base) * scale;
    i /= base;
    scale *= f;
  }
  return v;
}

// sin(x) / x, stable near 0.
double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

Vec2 halton(std::size_t i) { return {radical_inverse(i, 2), radical_inverse(i, 3)}; }

CountableDataSpec geometric_spec(const ConvexPolygon &domain, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error(ErrorKind::InvalidArgument, "geometric ratio must lie in (0, 1)");
  CountableDataSpec spec;
  spec.domain = domain;
  spec.generator = [ratio](std::size_t i) {
    Vec2 h = halton(i);
    return MassVelocityPair{std::pow(ratio, static_cast<double>(i)), {2.0 * h.x - 1.0, 2.0 * h.y - 1.0}};
  };
  return spec;
}

MassVelocityData truncate(const CountableDataSpec &spec, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "truncation needs n >= 1");
  if (!spec.generator) throw Error(ErrorKind::InvalidArgument, "spec has no generator");
  MassVelocityData data;
  data.domain = spec.domain;
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    MassVelocityPair p = spec.generator(i);
    if (!(p.mass > 0.0)) throw Error(ErrorKind::InvalidArgument, "generator produced a nonpositive mass");
    sum += p.mass;
    data.pairs.push_back(p);
  }
  const double scale = spec.normalization_total() / sum;
  for (auto &p : data.pairs) p.mass *= scale;
  return data;
}

double PlaneWave::operator()(Vec2 x) const { return std::sin(dot(omega, x) + phase); }

double integrate(const PlaneWave &f, const MeasureDecomposition &mu) {
  double total = 0.0;
  for (const AcPiece &part : mu.ac_parts) {
    if (part.density == 0.0) continue;
    if (const auto *iv = std::get_if<Interval>(&part.support)) {
      double len = iv->length();
      if (len <= 0.0) continue;
      double w = f.omega.x;
      double mid = 0.5 * (iv->lo + iv->hi);
      total += part.density * len * sinc(0.5 * w * len) * std::sin(w * mid + f.phase);
      continue;
    }
    // div(-omega cos(omega . x + phase) / |omega|^2) = sin(omega . x + phase)
    const auto &v = std::get<ConvexPolygon>(part.support).vertices();
    if (v.size() < 3) continue;
    const double w2 = norm2(f.omega);
    double flux = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Vec2 a = v[i];
      Vec2 e = v[(i + 1) % v.size()] - a;
      Vec2 normal_len{e.y, -e.x};  // outward normal times edge length
      double edge = sinc(0.5 * dot(f.omega, e)) * std::cos(dot(f.omega, a + 0.5 * e) + f.phase);
      flux -= dot(f.omega, normal_len) * edge;
    }
    total += part.density * flux / w2;
  }
  for (const Atom &a : mu.atoms) total += a.mass * f(a.location);
  return total;
}

std::vector<PlaneWave> test_dictionary(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> magnitude(0.25, 1.0);
  std::vector<PlaneWave> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double a = angle(rng);
    double m = magnitude(rng);
    double phase = angle(rng);
    out.push_back({{m * std::cos(a), m * std::sin(a)}, phase});
  }
  return out;
}

double bl_distance(const MeasureDecomposition &a, const MeasureDecomposition &b,
                   std::size_t test_functions, std::uint64_t seed) {
  double best = 0.0;
  for (const PlaneWave &f : test_dictionary(test_functions, seed))
    best = std::max(best, std::abs(integrate(f, a) - integrate(f, b)));
  return best;
}

std::vector<StabilityRow> stability_experiment(const CountableDataSpec &spec,
                                               std::span<const std::size_t> ns, double t,
                                               const StabilityOptions &options) {
  if (ns.empty()) throw Error(ErrorKind::InvalidArgument, "no truncation sizes given");
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be nonnegative");
  for (std::size_t k = 1; k < ns.size(); ++k)
    if (ns[k] < ns[k - 1]) throw Error(ErrorKind::InvalidArgument, "sizes must be nondecreasing");

  std::vector<StabilityRow> rows(ns.size());
  std::vector<MeasureDecomposition> measures(ns.size());
  for (std::size_t k = 0; k < ns.size(); ++k) {
    auto start = std::chrono::steady_clock::now();
    MassVelocityData data = truncate(spec, ns[k]);
    SolveReport report;
    PiecewiseAffinePotential pot = solve_weights(data, options.solver, &report);
    measures[k] = transported_measure(advance(pot, t));
    rows[k].n = ns[k];
    rows[k].solver_residual = report.residual;
    rows[k].wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const MeasureDecomposition &reference = measures.back();
  for (std::size_t k = 0; k < ns.size(); ++k)
    rows[k].distance = bl_distance(measures[k], reference, options.test_functions, options.seed);
  return rows;
}

}  // namespace shardflow
