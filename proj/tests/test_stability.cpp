// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "shardflow/stability.hpp"

namespace sf = shardflow;
using sf::Vec2;

namespace {

sf::MeasureDecomposition interval(double lo, double hi) {
  sf::MeasureDecomposition mu;
  mu.dims = 1;
  mu.ac_parts.push_back({sf::Interval{lo, hi}, 1.0});
  return mu;
}

sf::MeasureDecomposition atom(Vec2 x) {
  sf::MeasureDecomposition mu;
  mu.atoms.push_back({x, 1.0});
  return mu;
}

}  // namespace

TEST(Truncate, SinglePairTakesAllMass) {
  auto d = sf::truncate(sf::geometric_spec(sf::unit_square()), 1);
  ASSERT_EQ(d.pairs.size(), 1u);
  EXPECT_DOUBLE_EQ(d.pairs[0].mass, 1.0);
}

TEST(Truncate, GeometricHalves) {
  auto domain = sf::box({0, 0}, {2, 1.5});
  auto d = sf::truncate(sf::geometric_spec(domain, 0.5), 3);
  EXPECT_NEAR(d.pairs[0].mass, 4.0 / 7 * 3, 1e-15);
  EXPECT_NEAR(d.pairs[1].mass, 2.0 / 7 * 3, 1e-15);
  EXPECT_NEAR(d.pairs[2].mass, 1.0 / 7 * 3, 1e-15);
}

TEST(Truncate, NormalisedAndValid) {
  auto spec = sf::geometric_spec(sf::unit_square());
  for (std::size_t n : {2, 17, 256}) {
    auto d = sf::truncate(spec, n);
    double s = 0;
    for (const auto &p : d.pairs) s += p.mass;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NO_THROW(d.validate());
  }
}

TEST(Halton, FirstTerms) {
  EXPECT_DOUBLE_EQ(sf::halton(1).x, 0.5);
  EXPECT_DOUBLE_EQ(sf::halton(1).y, 1.0 / 3);
  EXPECT_DOUBLE_EQ(sf::halton(2).x, 0.25);
  EXPECT_DOUBLE_EQ(sf::halton(2).y, 2.0 / 3);
}

TEST(PlaneWave, ExactPolygonIntegral) {
  sf::PlaneWave f{{0.6, -0.3}, 0.4};
  sf::MeasureDecomposition mu;
  auto poly = sf::regular_polygon({0.2, 0.1}, 0.7, 7);
  mu.ac_parts.push_back({poly, 2.0});
  // Midpoint rule on a fine grid as reference.
  const int n = 1000;
  auto b = poly.bounds();
  double hx = (b.hi.x - b.lo.x) / n, hy = (b.hi.y - b.lo.y) / n, ref = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec2 x{b.lo.x + (i + 0.5) * hx, b.lo.y + (j + 0.5) * hy};
      if (sf::contains(poly, x)) ref += f(x) * hx * hy;
    }
  EXPECT_NEAR(sf::integrate(f, mu), 2.0 * ref, 2e-3);
}

TEST(PlaneWave, DictionaryIsLipschitzAndBounded) {
  for (const auto &f : sf::test_dictionary(64, 1)) {
    double w = sf::norm(f.omega);
    EXPECT_GE(w, 0.25 - 1e-15);
    EXPECT_LE(w, 1.0 + 1e-15);
  }
}

TEST(BlDistance, Basics) {
  auto a = interval(0, 1);
  EXPECT_EQ(sf::bl_distance(a, a), 0.0);
  for (double delta : {0.01, 0.001}) {
    double d = sf::bl_distance(a, interval(delta, 1 + delta));
    EXPECT_GE(d, delta / 4);
    EXPECT_LE(d, delta);
  }
  double d = sf::bl_distance(atom({0, 0}), atom({0.01, 0}));
  EXPECT_GT(d, 0.0);
  EXPECT_LE(d, 0.01);
}

TEST(BlDistance, PseudometricOnTriples) {
  auto a = interval(0, 1), b = interval(0.05, 1.02), c = interval(-0.03, 0.9);
  EXPECT_DOUBLE_EQ(sf::bl_distance(a, b), sf::bl_distance(b, a));
  EXPECT_LE(sf::bl_distance(a, c), sf::bl_distance(a, b) + sf::bl_distance(b, c) + 1e-12);
}

TEST(Stability, DuplicateSizesAndTimeZero) {
  auto spec = sf::geometric_spec(sf::unit_square());
  std::vector<std::size_t> dup = {12, 12};
  auto rows = sf::stability_experiment(spec, dup, 1.0);
  EXPECT_EQ(rows[0].distance, 0.0);
  std::vector<std::size_t> ns = {4, 16, 32};
  for (const auto &r : sf::stability_experiment(spec, ns, 0.0)) EXPECT_LE(r.distance, 1e-10);
}

TEST(Stability, DistancesDecrease) {
  auto spec = sf::geometric_spec(sf::unit_square());
  std::vector<std::size_t> ns = {4, 16, 64, 128};
  auto rows = sf::stability_experiment(spec, ns, 1.0);
  EXPECT_GE(rows[0].distance, rows[1].distance);
  EXPECT_GE(rows[1].distance, rows[2].distance);
  EXPECT_EQ(rows[3].distance, 0.0);
  for (const auto &r : rows) EXPECT_LE(r.solver_residual, 1e-9);
}
