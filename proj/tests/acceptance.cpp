// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "shardflow/alexandrov.hpp"
#include "shardflow/breakflow.hpp"
#include "shardflow/convexify.hpp"
#include "shardflow/error.hpp"
#include "shardflow/line1d.hpp"
#include "shardflow/packings.hpp"
#include "shardflow/stability.hpp"

namespace sf = shardflow;
using sf::Vec2;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Report {
  int failures = 0;
  void line(int id, bool ok, const std::string &detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- criteria 1-4: solver instances ----

struct Instance {
  sf::MassVelocityData data;
  sf::PiecewiseAffinePotential pot;
  sf::SolveReport report;
  double seconds = 0;
};

sf::MassVelocityData random_data(std::size_t k, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1, 1), m(0.1, 1.0);
  sf::MassVelocityData d{sf::unit_square(), {}};
  double total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    d.pairs.push_back({m(rng), {u(rng), u(rng)}});
    total += d.pairs.back().mass;
  }
  for (auto &p : d.pairs) p.mass /= total;
  return d;
}

std::vector<Instance> solve_instances(Report &rep) {
  std::mt19937_64 rng(20260101);
  std::vector<Instance> out;
  double worst_res = 0, worst_time = 0;
  int worst_iter = 0;
  bool ok = true;
  std::size_t mc_fail = 0, mc_total = 0;
  double worst_z = 0;
  for (int i = 0; i < 20; ++i) {
    std::size_t k = 2 + static_cast<std::size_t>(std::lround(98.0 * i / 19.0));
    Instance inst;
    inst.data = random_data(k, rng);
    auto start = std::chrono::steady_clock::now();
    try {
      inst.pot = sf::solve_weights(inst.data, {}, &inst.report);
    } catch (const sf::Error &e) {
      std::printf("  instance %d (k=%zu): %s\n", i, k, e.what());
      ok = false;
      continue;
    }
    inst.seconds = seconds_since(start);
    double res = 0;
    for (std::size_t j = 0; j < k; ++j)
      res = std::max(res, std::abs(sf::area(inst.pot.cells[j]) - inst.data.pairs[j].mass));
    worst_res = std::max(worst_res, res);
    worst_time = std::max(worst_time, inst.seconds);
    worst_iter = std::max(worst_iter, inst.report.iterations);
    ok = ok && res <= 1e-9 && inst.report.iterations <= 100 && inst.seconds < 10.0;

    // Monte-Carlo area oracle: the argmax of v_j . x + h_j over 10^6 uniform samples.
    std::mt19937_64 mc(1000 + i);
    std::uniform_real_distribution<double> u(0, 1);
    const std::size_t n = 1000000;
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t s = 0; s < n; ++s) {
      Vec2 x{u(mc), u(mc)};
      std::size_t best = 0;
      double bv = -1e300;
      for (std::size_t j = 0; j < k; ++j) {
        double v = sf::dot(inst.pot.velocities[j], x) + inst.pot.heights[j];
        if (v > bv) bv = v, best = j;
      }
      ++counts[best];
    }
    for (std::size_t j = 0; j < k; ++j) {
      double p = sf::area(inst.pot.cells[j]);
      double sigma = std::sqrt(std::max(p * (1 - p), 1e-300) / n);
      double z = std::abs(counts[j] / double(n) - p) / sigma;
      worst_z = std::max(worst_z, z);
      ++mc_total;
      if (z > 3.0) ++mc_fail;
    }
    out.push_back(std::move(inst));
  }
  bool mc_ok = mc_fail == 0;
  rep.line(1, ok && mc_ok,
           fmt("20 instances k=2..100: max residual %.3g, max iterations %d, max time %.3fs; Monte-Carlo "
               "cells outside 3 sigma: %zu of %zu (max |z| %.2f; %.2f expected by chance)",
               worst_res, worst_iter, worst_time, mc_fail, mc_total, worst_z,
               0.0027 * static_cast<double>(mc_total)));
  return out;
}

void uniqueness(Report &rep, const std::vector<Instance> &insts) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst = 0;
  bool ok = insts.size() == 20;
  for (const auto &inst : insts) {
    sf::SolverOptions opt;
    std::vector<double> init(inst.data.pairs.size());
    for (double &h : init) h = u(rng);
    opt.initial_heights = init;
    try {
      auto b = sf::solve_weights(inst.data, opt);
      double ma = *std::min_element(inst.pot.heights.begin(), inst.pot.heights.end());
      double mb = *std::min_element(b.heights.begin(), b.heights.end());
      for (std::size_t j = 0; j < init.size(); ++j)
        worst = std::max(worst, std::abs((inst.pot.heights[j] - ma) - (b.heights[j] - mb)));
    } catch (const sf::Error &e) {
      std::printf("  second solve failed: %s\n", e.what());
      ok = false;
    }
  }
  rep.line(2, ok && worst <= 1e-6,
           fmt("random restarts agree after min-normalisation: max height difference %.3g", worst));
}

void expansion(Report &rep, const std::vector<Instance> &insts) {
  bool ok = insts.size() == 20;
  int checks = 0;
  for (const auto &inst : insts)
    for (double t : {0.1, 1.0, 10.0}) {
      ok = ok && sf::check_expansion(inst.pot, t, 10000, 5) && sf::check_injectivity(sf::advance(inst.pot, t));
      ++checks;
    }
  rep.line(3, ok, fmt("expansion (10^4 pairs) and injectivity on %d instance/time combinations", checks));
}

void nonconvex_collision(Report &rep, const std::vector<Instance> &insts) {
  sf::PiecewiseAffinePotential p;
  p.domain = sf::unit_square();
  p.cells = {sf::box({0, 0}, {0.5, 1}), sf::box({0.5, 0}, {1, 1})};
  p.velocities = {{1, 0}, {-1, 0}};
  p.heights = {0.0, 1.0};
  bool all_overlap = true;
  for (int e = 1; e <= 10; ++e) all_overlap = all_overlap && !sf::check_injectivity(sf::advance(p, std::ldexp(1.0, -e)));
  bool flagged = !sf::check_convexity(sf::pieces_of(p));
  bool solver_convex = insts.size() == 20;
  for (const auto &inst : insts) solver_convex = solver_convex && sf::check_convexity(sf::pieces_of(inst.pot));
  rep.line(4, all_overlap && flagged && solver_convex,
           fmt("colliding pair overlaps for t=2^-10..2^-1: %s; flagged non-convex: %s; solver outputs convex: %s",
               all_overlap ? "yes" : "no", flagged ? "yes" : "no", solver_convex ? "yes" : "no"));
}

// ---- criterion 5 ----

std::vector<sf::Piece1D> pieces_from_slopes(const std::vector<double> &breaks, const std::vector<double> &slopes) {
  std::vector<sf::Piece1D> out;
  double h = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    out.push_back({breaks[i], breaks[i + 1], slopes[i], h});
    if (i + 1 < slopes.size()) h += (slopes[i] - slopes[i + 1]) * breaks[i + 1];
  }
  return out;
}

void monge_ampere(Report &rep) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  const double t = 0.25;
  double max_convex_atoms = 0, min_nonconvex_atoms = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    bool convex = trial < 10;
    std::size_t m = 3 + trial % 5;
    std::vector<double> breaks = {-1, 1}, slopes(m);
    for (std::size_t i = 1; i < m; ++i) breaks.push_back(u(rng));
    std::sort(breaks.begin(), breaks.end());
    for (double &s : slopes) s = u(rng);
    if (convex) {
      std::sort(slopes.begin(), slopes.end());
    } else {
      while (std::is_sorted(slopes.begin(), slopes.end()))
        for (double &s : slopes) s = u(rng);
    }
    double atoms = sf::monge_ampere_1d(pieces_from_slopes(breaks, slopes), t).atom_mass();
    if (convex)
      max_convex_atoms = std::max(max_convex_atoms, atoms);
    else
      min_nonconvex_atoms = std::min(min_nonconvex_atoms, atoms);
  }
  auto abs_mu = sf::monge_ampere_1d(pieces_from_slopes({-1, 0, 1}, {1, -1}), t);
  bool abs_ok = abs_mu.atoms.size() == 1 && std::abs(abs_mu.atoms[0].location.x) <= 1e-10 &&
                std::abs(abs_mu.atoms[0].mass - 2 * t) <= 1e-10;

  auto square = sf::box({-1, -1}, {1, 1});
  std::vector<std::function<double(Vec2)>> convex2d = {
      [](Vec2 x) { return 0.5 * sf::norm2(x); },
      [](Vec2 x) { return std::max({0.3 * x.x + 0.1 * x.y, -0.4 * x.x + 0.2 * x.y + 0.05, 0.1 * x.x - 0.5 * x.y}); },
      [](Vec2 x) { return std::exp(0.5 * x.x) + 0.2 * x.y * x.y; }};
  double worst_convex_frac = 0;
  for (const auto &f : convex2d) {
    auto r = sf::monge_ampere_grid(f, square, t);
    worst_convex_frac = std::max(worst_convex_frac, r.decomposition.singular_mass() / r.total_mass);
  }
  auto tent = sf::monge_ampere_grid([](Vec2 x) { return -std::abs(x.x); }, square, t);
  double expect = 2 * t * 2.0;
  double tent_mass = tent.decomposition.singular_mass();
  bool tent_ok = std::abs(tent_mass - expect) <= 0.05 * expect;
  rep.line(5,
           max_convex_atoms == 0 && min_nonconvex_atoms >= 1e-6 && abs_ok && worst_convex_frac <= 0.02 && tent_ok,
           fmt("1D convex max atom mass %.3g, non-convex min atom mass %.3g, -|x| atom (%.2g, %.12g); 2D convex "
               "singular fraction <= %.4f, tent singular mass %.4f (target %.2f)",
               max_convex_atoms, min_nonconvex_atoms, abs_mu.atoms.empty() ? NAN : abs_mu.atoms[0].location.x,
               abs_mu.atoms.empty() ? NAN : abs_mu.atoms[0].mass, worst_convex_frac, tent_mass, expect));
}

// ---- criterion 6 ----

void hopf_lax_identity(Report &rep) {
  auto square = sf::box({-1, -1}, {1, 1});
  const double t = 0.5;
  const std::size_t n = 512;
  const double h = 2.0 / n;
  auto axis = sf::Axis{-1 + h / 2, h, n};
  std::vector<std::pair<const char *, std::function<double(Vec2)>>> cases = {
      {"quadratic", [](Vec2 z) { return 0.5 * z.x * z.x + z.y * z.y; }},
      {"max-affine", [](Vec2 z) { return std::max({0.8 * z.x, -0.6 * z.y + 0.1, 0.2 * z.x + 0.5 * z.y}); }},
      {"tent", [](Vec2 z) { return -std::abs(z.x); }},
      {"cosine", [](Vec2 z) { return 0.5 * std::cos(3 * z.x) * std::cos(2 * z.y); }}};
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  double worst = 0;
  for (const auto &[name, phi] : cases) {
    auto psi = sf::GridFunction::sample(axis, axis, [&](Vec2 z) { return 0.5 * sf::norm2(z) + t * phi(z); });
    // psi* on the same 512^2 grid, so every query slope is a grid point's neighbour
    auto conj = sf::legendre_2d(psi, std::array<sf::Axis, 2>{axis, axis});
    for (int s = 0; s < 100; ++s) {
      Vec2 x{u(rng), u(rng)};
      double lhs = t * sf::hopf_lax(phi, square, x, t).value + sf::interpolate(conj, x) - 0.5 * sf::norm2(x);
      worst = std::max(worst, std::abs(lhs));
    }
  }
  rep.line(6, worst <= 5 * h,
           fmt("two convex and two non-convex potentials, 100 points each: max |t u + psi* - |x|^2/2| = %.3g "
               "(bound %.3g)",
               worst, 5 * h));
}

// ---- criterion 7 ----

void cantor(Report &rep) {
  const int n = 12;
  const double t = 1.0;
  auto flow = sf::cantor_flow(n, t);
  double gap_err = std::abs(flow.gap_total - (1 - std::pow(2.0 / 3.0, n)));
  double fat_err = std::abs(flow.fat_measure - (t + std::pow(2.0 / 3.0, n)));
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = (1 + t) * (i + 0.5) / 10000.0;
    worst = std::max(worst, std::abs(t * sf::lax_velocity(x, t, n) - oracle::fat_cantor_measure(x, t, 40)));
  }
  bool oleinik = sf::oleinik_check(n, t, 10000);
  double bound = 2 * std::pow(3.0, -n);
  rep.line(7, gap_err <= 1e-12 && fat_err <= 1e-12 && worst <= bound && oleinik,
           fmt("gap total error %.2g, fat measure error %.2g, max |t f - lambda(C_t n (0,x))| = %.3g (bound %.3g), "
               "Oleinik %s",
               gap_err, fat_err, worst, bound, oleinik ? "holds" : "fails"));
}

// ---- criterion 8 ----

void apollonian(Report &rep) {
  auto start = std::chrono::steady_clock::now();
  auto p = sf::apollonian(sf::default_apollonian_seed(), 6);
  sf::BreakingScene scene{0.5, sf::disk_shards(p, 0.5), {}};
  for (const auto &d : p.disks) scene.velocities.push_back(d.center);
  bool injective = sf::check_injectivity(scene);
  double elapsed = seconds_since(start);

  double worst_int = 0, worst_tan = 0, worst_curv = 0, worst_complex = 0;
  for (const auto &d : p.disks) worst_int = std::max(worst_int, std::abs(d.curvature - std::round(d.curvature)));
  using C = std::complex<double>;
  for (const auto &r : p.records) {
    const auto &c = p.circle(r.child);
    const auto &s = p.circle(r.sibling);
    double bsum = 0;
    C zsum = 0;
    for (std::size_t k : r.parents) {
      const auto &q = p.circle(k);
      double expect = q.curvature < 0 ? q.radius - c.radius : q.radius + c.radius;
      worst_tan = std::max(worst_tan, std::abs(sf::norm(c.center - q.center) - expect));
      bsum += q.curvature;
      zsum += q.curvature * C(q.center.x, q.center.y);
    }
    worst_curv = std::max(worst_curv, std::abs(c.curvature + s.curvature - 2 * bsum));
    C lhs = c.curvature * C(c.center.x, c.center.y) + s.curvature * C(s.center.x, s.center.y);
    worst_complex = std::max(worst_complex, std::abs(lhs - 2.0 * zsum));
  }
  std::size_t circles = p.disks.size() + (p.enclosing ? 1 : 0);
  bool ok = worst_int <= 1e-6 && worst_tan <= 1e-9 && worst_curv <= 1e-9 && worst_complex <= 1e-9 && injective &&
            elapsed < 5.0;
  rep.line(8, ok,
           fmt("%zu circles (2*3^6 + 2), %zu Descartes quadruples; integrality %.2g, tangency %.2g, linear relation "
               "%.2g, complex relation %.2g; t=0.5 scene injective: %s; %.2fs",
               circles, p.records.size(), worst_int, worst_tan, worst_curv, worst_complex,
               injective ? "yes" : "no", elapsed));
}

// ---- criterion 9 ----

void osculatory(Report &rep) {
  auto p = sf::osculatory(sf::unit_square(), {}, 500);
  bool radii = true, increasing = true;
  double covered = 0;
  for (std::size_t i = 0; i < p.disks.size(); ++i) {
    double next = covered + M_PI * p.disks[i].radius * p.disks[i].radius;
    increasing = increasing && next > covered;
    covered = next;
    if (i > 0) radii = radii && p.disks[i].radius <= p.disks[i - 1].radius;
  }
  double frac = p.covered_fraction();
  rep.line(9, p.disks.size() == 500 && radii && increasing && frac > 0.90 && sf::packing_violation(p) <= 0.0,
           fmt("%zu disks, covered fraction %.4f, radii nonincreasing: %s, coverage strictly increasing: %s",
               p.disks.size(), frac, radii ? "yes" : "no", increasing ? "yes" : "no"));
}

// ---- criterion 10 ----

void stability(Report &rep) {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> ns = {4, 16, 64, 256};
  auto rows = sf::stability_experiment(sf::geometric_spec(sf::unit_square()), ns, 1.0);
  double elapsed = seconds_since(start);
  bool ok = rows[0].distance >= rows[1].distance && rows[1].distance >= rows[2].distance &&
            rows[2].distance < rows[0].distance / 3 && elapsed < 60;
  rep.line(10, ok,
           fmt("distances n=4: %.4g, n=16: %.4g, n=64: %.4g (reference n=256); %.2fs", rows[0].distance,
               rows[1].distance, rows[2].distance, elapsed));
}

// ---- criterion 11 ----

void legendre(Report &rep) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  bool below = true;
  double idem = 0;
  auto check = [&](const sf::GridFunction &f) {
    auto g = sf::convexify(f);
    auto gg = sf::convexify(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!std::isfinite(f(i))) continue;
      below = below && g(i) <= f(i) + 1e-12;
      idem = std::max(idem, std::abs(gg(i) - g(i)));
    }
  };
  auto a1 = sf::Axis::spanning(-1, 1, 1025);
  check(sf::GridFunction::sample(a1, [](double z) { return 0.5 * z * z - 0.3 * std::abs(z); }));
  check(sf::GridFunction::sample(a1, [](double z) { return std::sin(5 * z) + 0.1 * z; }));
  check(sf::GridFunction::sample(a1, [&](double) { return u(rng); }));
  auto a2 = sf::Axis::spanning(-1, 1, 96);
  check(sf::GridFunction::sample(a2, a2, [](Vec2 z) { return -std::abs(z.x) + 0.5 * z.y * z.y; }));
  check(sf::GridFunction::sample(a2, a2, [](Vec2 z) { return std::cos(3 * z.x) * std::sin(2 * z.y); }));
  check(sf::GridFunction::sample(a2, a2, [&](Vec2) { return u(rng); }));

  auto q1 = sf::Axis::spanning(-2, 2, 4096);
  auto g1 = sf::legendre_1d(sf::GridFunction::sample(q1, [](double z) { return 0.5 * z * z; }));
  double err1 = 0;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    double s = g1.axes[0].at(i);
    if (std::abs(s) <= 1.9) err1 = std::max(err1, std::abs(g1(i) - 0.5 * s * s));
  }
  auto q2 = sf::Axis::spanning(-1, 1, 512);
  auto g2 = sf::legendre(sf::GridFunction::sample(q2, q2, [](Vec2 z) { return 0.5 * sf::norm2(z); }));
  double err2 = 0;
  for (std::size_t i = 0; i < g2.axes[0].count; ++i)
    for (std::size_t j = 0; j < g2.axes[1].count; ++j) {
      Vec2 s = g2.node(i, j);
      if (std::abs(s.x) <= 0.95 && std::abs(s.y) <= 0.95) err2 = std::max(err2, std::abs(g2(i, j) - 0.5 * sf::norm2(s)));
    }
  rep.line(11, below && idem <= 1e-12 && err1 <= q1.spacing && err2 <= q2.spacing,
           fmt("f** <= f: %s, idempotence gap %.2g; quadratic error 1D %.3g (spacing %.3g), 2D %.3g (spacing %.3g)",
               below ? "yes" : "no", idem, err1, q1.spacing, err2, q2.spacing));
}

}  // namespace

int main() {
  Report rep;
  try {
    auto insts = solve_instances(rep);
    uniqueness(rep, insts);
    expansion(rep, insts);
    nonconvex_collision(rep, insts);
    monge_ampere(rep);
    hopf_lax_identity(rep);
    cantor(rep);
    apollonian(rep);
    osculatory(rep);
    stability(rep);
    legendre(rep);
  } catch (const std::exception &e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 11 criteria failed\n", rep.failures);
  return rep.failures == 0 ? 0 : 1;
}
