// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "shardflow/geom2d.hpp"

namespace sf = shardflow;
using sf::Vec2;

namespace {

sf::ConvexPolygon triangle() { return sf::ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}); }

}  // namespace

TEST(Geom2d, AxisAlignedClip) {
  auto r = sf::clip_halfplane(sf::unit_square(), {{1, 0}, 0.5});
  EXPECT_NEAR(sf::area(r), 0.5, 1e-15);
  for (Vec2 v : r.vertices()) EXPECT_LE(v.x, 0.5 + 1e-15);
}

TEST(Geom2d, NonBindingClipKeepsPolygon) {
  auto sq = sf::unit_square();
  auto r = sf::clip_halfplane(sq, {{1, 0}, 2.0});
  ASSERT_EQ(r.size(), sq.size());
  EXPECT_DOUBLE_EQ(sf::area(r), 1.0);
}

TEST(Geom2d, DiagonalClipGivesTriangle) {
  auto r = sf::clip_halfplane(sf::unit_square(), {{1, 1}, 1.0});
  EXPECT_EQ(r.size(), 3u);
  EXPECT_NEAR(sf::area(r), 0.5, 1e-15);
}

TEST(Geom2d, Areas) {
  EXPECT_DOUBLE_EQ(sf::area(sf::unit_square()), 1.0);
  EXPECT_DOUBLE_EQ(sf::area(triangle()), 0.5);
  EXPECT_EQ(sf::area(sf::ConvexPolygon()), 0.0);
}

TEST(Geom2d, ClipIsIdempotentAndComplementary) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  auto poly = sf::regular_polygon({0.1, -0.2}, 0.8, 9);
  for (int trial = 0; trial < 200; ++trial) {
    Vec2 n{u(rng), u(rng)};
    sf::HalfPlane hp{n, 0.3 * u(rng)};
    auto once = sf::clip_halfplane(poly, hp);
    auto twice = sf::clip_halfplane(once, hp);
    ASSERT_EQ(once.size(), twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      EXPECT_NEAR(once[i].x, twice[i].x, 1e-12);
      EXPECT_NEAR(once[i].y, twice[i].y, 1e-12);
    }
    double total = sf::area(once) + sf::area(sf::clip_halfplane(poly, hp.complement()));
    EXPECT_NEAR(total, sf::area(poly), 1e-10);
  }
}

TEST(Geom2d, MonteCarloAreaOracle) {
  auto poly = sf::clip_halfplane(sf::regular_polygon({0.5, 0.5}, 0.45, 7), {{1, 2}, 1.4});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  const int n = 400000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += sf::contains(poly, {u(rng), u(rng)});
  double p = sf::area(poly);
  double sigma = std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(static_cast<double>(hits) / n, p, 4 * sigma);
}

TEST(Geom2d, CentroidOfTriangle) {
  Vec2 c = sf::centroid(triangle());
  EXPECT_NEAR(c.x, 1.0 / 3, 1e-15);
  EXPECT_NEAR(c.y, 1.0 / 3, 1e-15);
}

TEST(Geom2d, EqualWeightBisector) {
  std::vector<sf::PowerSite> s = {{{0.25, 0.5}, 0.0}, {{0.75, 0.5}, 0.0}};
  auto c = sf::power_cell(sf::unit_square(), 0, s);
  EXPECT_NEAR(sf::area(c), 0.5, 1e-14);
  for (Vec2 v : c.vertices()) EXPECT_LE(v.x, 0.5 + 1e-14);
}

TEST(Geom2d, WeightedPowerBoundary) {
  // |x|^2 - w1 = |x - e1|^2 - w2 gives x1 = (1 + w1 - w2) / 2.
  auto domain = sf::box({-2, -1}, {3, 1});
  for (double d : {-0.6, 0.0, 0.3, 1.2}) {
    std::vector<sf::PowerSite> s = {{{0, 0}, d}, {{1, 0}, 0.0}};
    auto c = sf::power_cell(domain, 0, s);
    double xb = (1 + d) / 2;
    EXPECT_NEAR(sf::area(c), 2.0 * (xb + 2.0), 1e-12) << d;
    // The edge shared with site 1 carries tag 1.
    bool tagged = false;
    for (int tag : c.edge_tags()) tagged |= tag == 1;
    EXPECT_TRUE(tagged);
  }
}

TEST(Geom2d, SingleSiteCellIsDomain) {
  std::vector<sf::PowerSite> s = {{{0.3, 0.9}, 0.2}};
  EXPECT_DOUBLE_EQ(sf::area(sf::power_cell(sf::unit_square(), 0, s)), 1.0);
}

TEST(Geom2d, PowerDiagramTiles) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<sf::PowerSite> s;
  for (int i = 0; i < 40; ++i) s.push_back({{u(rng), u(rng)}, 0.1 * u(rng)});
  auto cells = sf::power_diagram(sf::unit_square(), s);
  double total = 0.0;
  for (const auto &c : cells) total += sf::area(c);
  EXPECT_NEAR(total, 1.0, 1e-10);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      EXPECT_FALSE(sf::polygons_overlap(cells[i], cells[j])) << i << " " << j;
}

TEST(Geom2d, Overlap) {
  auto sq = sf::unit_square();
  EXPECT_FALSE(sf::polygons_overlap(sq, sq.translated({2, 0})));
  EXPECT_TRUE(sf::polygons_overlap(sq, sq));
  EXPECT_FALSE(sf::polygons_overlap(sq, sq.translated({1, 0})));
  EXPECT_TRUE(sf::polygons_overlap(sq, sq.translated({0.5, 0.5})));
}

TEST(Geom2d, ContainmentAndClearance) {
  auto sq = sf::unit_square();
  EXPECT_TRUE(sf::contains(sq, {0.5, 0.5}));
  EXPECT_TRUE(sf::contains(sq, {1.0, 0.5}));
  EXPECT_FALSE(sf::contains(sq, {1.1, 0.5}));
  EXPECT_NEAR(sf::boundary_clearance(sq, {0.5, 0.25}), 0.25, 1e-15);
  EXPECT_LT(sf::boundary_clearance(sq, {1.5, 0.5}), 0.0);
  EXPECT_TRUE(sf::on_boundary(sq, {0.0, 0.3}, 1e-12));
}

TEST(Geom2d, RegularPolygons) {
  auto inscribed = sf::regular_polygon({0, 0}, 1.0, 256);
  auto outer = sf::regular_polygon({0, 0}, 1.0, 256, true);
  EXPECT_LT(sf::area(inscribed), M_PI);
  EXPECT_GT(sf::area(outer), M_PI);
  EXPECT_TRUE(sf::is_valid_convex(outer));
  EXPECT_NEAR(sf::boundary_clearance(outer, {0, 0}), 1.0, 1e-12);
}

TEST(Geom2d, SamplesStayInside) {
  std::mt19937_64 rng(5);
  auto poly = sf::regular_polygon({2, -1}, 0.3, 5);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(sf::contains(poly, sf::sample_uniform(poly, rng), 1e-12));
}

TEST(Geom2d, RejectsClockwise) {
  EXPECT_FALSE(sf::is_valid_convex(sf::ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}})));
  EXPECT_TRUE(sf::is_valid_convex(sf::unit_square()));
}
