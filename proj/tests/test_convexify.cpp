// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "shardflow/convexify.hpp"
#include "shardflow/error.hpp"

namespace sf = shardflow;
using sf::Vec2;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double brute_conjugate_1d(const sf::GridFunction &f, double s) {
  double best = -kInf;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::isfinite(f(i))) best = std::max(best, s * f.axes[0].at(i) - f(i));
  return best;
}

double brute_conjugate_2d(const sf::GridFunction &f, Vec2 s) {
  double best = -kInf;
  for (std::size_t i = 0; i < f.axes[0].count; ++i)
    for (std::size_t j = 0; j < f.axes[1].count; ++j)
      if (std::isfinite(f(i, j))) best = std::max(best, sf::dot(s, f.node(i, j)) - f(i, j));
  return best;
}

}  // namespace

TEST(Legendre, QuadraticSelfDual1D) {
  auto ax = sf::Axis::spanning(-2, 2, 4096);
  auto f = sf::GridFunction::sample(ax, [](double z) { return 0.5 * z * z; });
  auto g = sf::legendre_1d(f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = g.axes[0].at(i);
    if (std::abs(s) > 1.9) continue;
    EXPECT_NEAR(g(i), 0.5 * s * s, ax.spacing * ax.spacing) << s;
  }
}

TEST(Legendre, MatchesBruteForce1D) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  auto ax = sf::Axis::spanning(-1, 1, 301);
  std::vector<double> c(6);
  for (double &x : c) x = u(rng);
  auto f = sf::GridFunction::sample(ax, [&](double z) {
    return c[0] * std::sin(3 * z) + c[1] * z * z + c[2] * std::abs(z - c[3]) + c[4] * z;
  });
  auto g = sf::legendre_1d(f);
  for (std::size_t i = 0; i < g.size(); ++i)
    EXPECT_NEAR(g(i), brute_conjugate_1d(f, g.axes[0].at(i)), 1e-12);
}

TEST(Legendre, IndicatorGivesAbsoluteValue) {
  auto ax = sf::Axis::spanning(-1, 1, 201);
  auto f = sf::GridFunction::sample(ax, [](double) { return 0.0; });
  auto g = sf::legendre_1d(f, sf::Axis::spanning(-3, 3, 61));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g(i), std::abs(g.axes[0].at(i)), 1e-12);
}

TEST(Legendre, AbsoluteValueGivesIndicator) {
  auto ax = sf::Axis::spanning(-4, 4, 801);
  auto f = sf::GridFunction::sample(ax, [](double z) { return std::abs(z); });
  auto g = sf::legendre_1d(f, sf::Axis::spanning(-2, 2, 41));
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = g.axes[0].at(i);
    if (std::abs(s) <= 1 + 1e-12)
      EXPECT_NEAR(g(i), 0.0, 1e-12);
    else
      EXPECT_NEAR(g(i), (std::abs(s) - 1) * 4, 1e-9);  // grows with the grid half-width
  }
}

TEST(Legendre, QuadraticSelfDual2D) {
  auto ax = sf::Axis::spanning(-1, 1, 512);
  auto f = sf::GridFunction::sample(ax, ax, [](Vec2 z) { return 0.5 * sf::norm2(z); });
  auto g = sf::legendre(f);
  ASSERT_EQ(g.dims(), 2);
  double worst = 0;
  for (std::size_t i = 0; i < g.axes[0].count; ++i)
    for (std::size_t j = 0; j < g.axes[1].count; ++j) {
      Vec2 s = g.node(i, j);
      if (std::abs(s.x) > 0.95 || std::abs(s.y) > 0.95) continue;
      worst = std::max(worst, std::abs(g(i, j) - 0.5 * sf::norm2(s)));
    }
  EXPECT_LE(worst, ax.spacing);
}

TEST(Legendre, AffineOnBoxMatchesBruteForce) {
  auto ax = sf::Axis::spanning(0, 1, 41);
  auto ay = sf::Axis::spanning(-0.5, 0.5, 31);
  Vec2 v{0.3, -0.7};
  auto f = sf::GridFunction::sample(ax, ay, [&](Vec2 z) { return sf::dot(v, z) + 0.2; });
  std::array<sf::Axis, 2> dual = {sf::Axis::spanning(-2, 2, 21), sf::Axis::spanning(-2, 2, 17)};
  auto g = sf::legendre_2d(f, dual);
  for (std::size_t i = 0; i < 21; ++i)
    for (std::size_t j = 0; j < 17; ++j) {
      Vec2 s = g.node(i, j);
      double support = std::max(0.0, s.x - v.x) + 0.5 * std::abs(s.y - v.y) - 0.2;
      EXPECT_NEAR(g(i, j), support, 1e-12);
      EXPECT_NEAR(g(i, j), brute_conjugate_2d(f, s), 1e-12);
    }
}

TEST(Legendre, RandomMatchesBruteForce2D) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  auto ax = sf::Axis::spanning(-1, 1, 23);
  auto f = sf::GridFunction::sample(ax, ax, [&](Vec2) { return u(rng); });
  f(3, 4) = kInf;
  std::array<sf::Axis, 2> dual = {sf::Axis::spanning(-3, 3, 19), sf::Axis::spanning(-2, 2, 13)};
  auto g = sf::legendre_2d(f, dual);
  for (std::size_t i = 0; i < 19; ++i)
    for (std::size_t j = 0; j < 13; ++j) EXPECT_NEAR(g(i, j), brute_conjugate_2d(f, g.node(i, j)), 1e-12);
}

TEST(Convexify, ConvexInputUnchanged) {
  auto ax = sf::Axis::spanning(-1, 1, 513);
  auto f = sf::GridFunction::sample(ax, [](double z) { return std::exp(z) + z * z; });
  auto g = sf::convexify(f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(g(i), f(i), 1e-12);
}

TEST(Convexify, DoubleWell) {
  const double t = 0.3;
  auto ax = sf::Axis::spanning(-1, 1, 2001);
  auto f = sf::GridFunction::sample(ax, [&](double z) { return 0.5 * z * z - t * std::abs(z); });
  auto g = sf::convexify(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double z = ax.at(i);
    double expect = std::abs(z) < t ? -t * t / 2 : f(i);
    EXPECT_NEAR(g(i), expect, 1e-12) << z;
    EXPECT_LE(g(i), f(i) + 1e-15);
  }
  auto labels = sf::touching_set(f, g, 1e-9);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double z = ax.at(i);
    bool touching = labels.labels[i] != sf::Touching::NonTouching;
    if (std::abs(z) < t - ax.spacing) {
      EXPECT_FALSE(touching) << z;
    }
    if (std::abs(z) > t + ax.spacing) {
      EXPECT_TRUE(touching) << z;
    }
  }
}

TEST(Convexify, IdempotentAndBelow) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  auto ax = sf::Axis::spanning(-1, 1, 64);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = sf::GridFunction::sample(ax, ax, [&](Vec2 z) { return 0.5 * sf::norm2(z) + 0.3 * u(rng); });
    auto g = sf::convexify(f);
    auto gg = sf::convexify(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_LE(g(i), f(i) + 1e-12);
      EXPECT_NEAR(gg(i), g(i), 1e-12);
    }
  }
}

TEST(Convexify, TentFlattensOverRidge) {
  auto ax = sf::Axis::spanning(-1, 1, 101);
  auto f = sf::GridFunction::sample(ax, ax, [](Vec2 z) { return -std::abs(z.x); });
  auto g = sf::convexify(f);
  for (std::size_t i = 0; i < 101; ++i)
    for (std::size_t j = 0; j < 101; ++j) EXPECT_NEAR(g(i, j), -1.0, 1e-12);
}

TEST(Convexify, TouchingEverywhereForConvexAndTimeZero) {
  auto ax = sf::Axis::spanning(-1, 1, 65);
  auto f = sf::GridFunction::sample(ax, ax, [](Vec2 z) { return 0.5 * sf::norm2(z); });
  auto labels = sf::touching_set(f, sf::convexify(f), 1e-9);
  EXPECT_EQ(labels.count(sf::Touching::NonTouching), 0u);
}

TEST(Interpolate, BilinearExactOnAffine) {
  auto ax = sf::Axis::spanning(0, 1, 11);
  auto f = sf::GridFunction::sample(ax, ax, [](Vec2 z) { return 2 * z.x - 3 * z.y + 1; });
  EXPECT_NEAR(sf::interpolate(f, Vec2{0.33, 0.71}), 2 * 0.33 - 3 * 0.71 + 1, 1e-14);
  EXPECT_TRUE(std::isinf(sf::interpolate(f, Vec2{1.5, 0.5})));
}

TEST(MongeAmpere1D, ConvexHasNoAtoms) {
  std::vector<sf::Piece1D> p = {{-1, 0, -1, 0}, {0, 1, 1, 0}};
  auto mu = sf::monge_ampere_1d(p, 0.25);
  EXPECT_EQ(mu.atoms.size(), 0u);
  EXPECT_NEAR(mu.ac_mass(), 2.0, 1e-14);
}

TEST(MongeAmpere1D, NegativeAbsoluteValue) {
  for (double t : {0.1, 0.25, 0.6}) {
    std::vector<sf::Piece1D> p = {{-1, 0, 1, 0}, {0, 1, -1, 0}};
    auto mu = sf::monge_ampere_1d(p, t);
    ASSERT_EQ(mu.atoms.size(), 1u);
    EXPECT_NEAR(mu.atoms[0].location.x, 0.0, 1e-10);
    EXPECT_NEAR(mu.atoms[0].mass, 2 * t, 1e-10);
    EXPECT_NEAR(mu.ac_mass(), 2 - 2 * t, 1e-10);
    for (const auto &a : mu.ac_parts) {
      auto iv = std::get<sf::Interval>(a.support);
      EXPECT_TRUE((std::abs(iv.lo - (t - 1)) < 1e-12 && std::abs(iv.hi) < 1e-12) ||
                  (std::abs(iv.lo) < 1e-12 && std::abs(iv.hi - (1 - t)) < 1e-12));
    }
  }
}

TEST(MongeAmpere1D, SmallTimeLimit) {
  std::vector<sf::Piece1D> p = {{-1, 0, 1, 0}, {0, 1, -1, 0}};
  double prev = 1;
  for (double t : {1e-1, 1e-3, 1e-6}) {
    auto mu = sf::monge_ampere_1d(p, t);
    EXPECT_LT(mu.atom_mass(), prev);
    prev = mu.atom_mass();
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(MongeAmpere1D, DiscontinuousPiecesRejected) {
  std::vector<sf::Piece1D> p = {{-1, 0, 1, 0}, {0, 1, -1, 0.5}};
  try {
    sf::monge_ampere_1d(p, 0.2);
    FAIL();
  } catch (const sf::Error &e) {
    EXPECT_EQ(e.kind(), sf::ErrorKind::InconsistentPartition);
  }
}

TEST(MongeAmpereGrid, ConvexCasesHaveLittleSingularMass) {
  auto square = sf::box({-1, -1}, {1, 1});
  auto maxaff = [](Vec2 x) { return std::max({0.3 * x.x + 0.1 * x.y, -0.4 * x.x + 0.2 * x.y + 0.05, 0.1 * x.x - 0.5 * x.y}); };
  auto r = sf::monge_ampere_grid(maxaff, square, 0.25);
  EXPECT_NEAR(r.total_mass, 4.0, 1e-9);
  EXPECT_LE(r.decomposition.singular_mass(), 0.02 * r.total_mass);
}

TEST(MongeAmpereGrid, TentSingularMass) {
  auto square = sf::box({-1, -1}, {1, 1});
  const double t = 0.25;
  auto r = sf::monge_ampere_grid([](Vec2 x) { return -std::abs(x.x); }, square, t);
  EXPECT_NEAR(r.decomposition.singular_mass(), 2 * t * 2.0, 0.05 * 2 * t * 2.0);
}

TEST(MongeAmpereGrid, TimeZeroIsLebesgue) {
  auto square = sf::box({-1, -1}, {1, 1});
  sf::GridMongeAmpereOptions opt;
  opt.grid = 128;
  opt.bins = 32;
  auto r = sf::monge_ampere_grid([](Vec2 x) { return x.x * x.y; }, square, 0.0, opt);
  EXPECT_LE(r.decomposition.singular_mass(), 1e-12);
  double bin_area = r.histogram.x.spacing * r.histogram.y.spacing;
  for (double m : r.histogram.mass) EXPECT_LE(m, 1.3 * bin_area);
}

TEST(MongeAmpereGrid, TooCoarse) {
  sf::GridMongeAmpereOptions opt;
  opt.grid = 64;
  opt.bins = 8;
  try {
    sf::monge_ampere_grid([](Vec2 x) { return 0.01 * x.x * x.x; }, sf::box({-1, -1}, {1, 1}), 0.01, opt);
    FAIL() << "expected GridTooCoarse";
  } catch (const sf::Error &e) {
    EXPECT_EQ(e.kind(), sf::ErrorKind::GridTooCoarse);
  }
}

TEST(HopfLax, ZeroPotential) {
  auto r = sf::hopf_lax([](Vec2) { return 0.0; }, sf::unit_square(), {0.3, 0.6}, 0.5);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_NEAR(r.minimizer.x, 0.3, 1e-5);
  EXPECT_NEAR(r.minimizer.y, 0.6, 1e-5);
}

TEST(HopfLax, LinearPotentialCompletesSquare) {
  Vec2 v{0.2, -0.1};
  Vec2 x{0.5, 0.5};
  double t = 0.7;
  auto r = sf::hopf_lax([&](Vec2 z) { return sf::dot(v, z); }, sf::unit_square(), x, t);
  EXPECT_NEAR(r.value, sf::dot(v, x) - t * sf::norm2(v) / 2, 1e-9);
}
