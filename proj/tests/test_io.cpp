// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "shardflow/alexandrov.hpp"
#include "shardflow/breakflow.hpp"
#include "shardflow/convexify.hpp"
#include "shardflow/error.hpp"
#include "shardflow/io.hpp"
#include "shardflow/packings.hpp"
#include "shardflow/render.hpp"

namespace sf = shardflow;
using sf::Vec2;

namespace {

sf::ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const sf::Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return sf::ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Io, ProblemRoundTrip) {
  sf::MassVelocityData d{sf::unit_square(), {{0.25, {0.1, 0.2}}, {0.75, {-0.3, 1.0 / 3}}}};
  auto back = sf::parse_problem(sf::problem_to_json(d));
  ASSERT_EQ(back.pairs.size(), 2u);
  EXPECT_EQ(back.pairs[1].velocity.y, 1.0 / 3);
  EXPECT_EQ(back.domain.size(), 4u);
}

TEST(Io, MalformedInputs) {
  EXPECT_EQ(kind_of([] { sf::parse_problem("{not json"); }), sf::ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { sf::parse_problem(R"({"domain": [[0,0],[1,0],[1,1]]})"); }), sf::ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { sf::read_file("/nonexistent/dir/file"); }), sf::ErrorKind::Io);
}

TEST(Io, SolutionRoundTripAndRebuild) {
  sf::MassVelocityData d{sf::unit_square(), {{0.5, {0, 0}}, {0.5, {1, 0}}}};
  auto pot = sf::solve_weights(d);
  auto back = sf::parse_solution(sf::solution_to_json(pot, 1e-12));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.heights, pot.heights);
  EXPECT_NEAR(sf::area(back.cells[0]), 0.5, 1e-12);
  std::string minimal = R"({"domain": [[0,0],[1,0],[1,1],[0,1]], "velocities": [[0,0],[1,0]], "heights": [0.5, 0]})";
  auto rebuilt = sf::parse_solution(minimal);
  EXPECT_NEAR(sf::area(rebuilt.cells[1]), 0.5, 1e-12);
}

TEST(Io, PackingCsvRoundTrip) {
  auto p = sf::apollonian(sf::default_apollonian_seed(), 2);
  auto back = sf::parse_packing_csv(sf::packing_to_csv(p), sf::unit_square());
  ASSERT_TRUE(back.enclosing.has_value());
  ASSERT_EQ(back.disks.size(), p.disks.size());
  for (std::size_t i = 0; i < p.disks.size(); ++i) {
    EXPECT_EQ(back.disks[i].center, p.disks[i].center);
    EXPECT_EQ(back.disks[i].radius, p.disks[i].radius);
  }
  EXPECT_EQ(kind_of([] { sf::parse_packing_csv("center_x,center_y,radius,curvature\n1,2,x,4\n", sf::unit_square()); }),
            sf::ErrorKind::Parse);
}

TEST(Io, GridRoundTrip) {
  auto ax = sf::Axis::spanning(-1, 1, 17);
  auto f = sf::GridFunction::sample(ax, ax, [](Vec2 z) {
    return sf::norm(z) > 1 ? std::numeric_limits<double>::infinity() : z.x * z.y;
  });
  auto dir = std::filesystem::temp_directory_path() / "shardflow_io_test";
  std::filesystem::create_directories(dir);
  std::string prefix = (dir / "grid").string();
  sf::write_grid(f, prefix);
  auto g = sf::read_grid(prefix);
  ASSERT_EQ(g.dims(), 2);
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::isinf(f(i)))
      EXPECT_TRUE(std::isinf(g(i)));
    else
      EXPECT_EQ(g(i), f(i));
  }
  std::filesystem::remove_all(dir);
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 12345.678}) EXPECT_EQ(std::stod(sf::format_double(x)), x);
}

TEST(Render, SvgsAreWellFormed) {
  sf::MassVelocityData d{sf::unit_square(), {{0.5, {0, 0}}, {0.5, {1, 0}}}};
  auto scene = sf::advance(sf::solve_weights(d), 0.5);
  std::string svg = sf::render_shards_svg(scene.shards, scene.velocities, "t = 0.5");
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
  auto p = sf::apollonian(sf::default_apollonian_seed(), 1);
  EXPECT_NE(sf::render_packing_svg(p).find("<circle"), std::string::npos);
  std::vector<sf::Curve> curves = {{{{0, 0}, {1, 1}}, "diag"}};
  EXPECT_NE(sf::render_curves_svg(curves, "c").find("<polyline"), std::string::npos);
}
