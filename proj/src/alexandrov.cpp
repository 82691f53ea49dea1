// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/alexandrov.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace shardflow {

void MassVelocityData::validate(double mass_tol, const Tolerances &tol) const {
  if (pairs.empty()) throw Error(ErrorKind::InvalidArgument, "no mass-velocity pairs");
  if (domain.size() < 3 || area(domain) <= 0.0)
    throw Error(ErrorKind::InvalidArgument, "domain polygon is empty");
  double total = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!(pairs[i].mass > 0.0) || !std::isfinite(pairs[i].mass)) {
      std::ostringstream msg;
      msg << "mass " << i << " is not positive";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
    total += pairs[i].mass;
  }
  if (std::abs(total - area(domain)) > mass_tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "masses sum to " << total << " but the domain has area " << area(domain);
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  // Sorting by x keeps the distinctness check near-linear.
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].velocity.x < pairs[b].velocity.x;
  });
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Vec2 va = pairs[order[a]].velocity;
      const Vec2 vb = pairs[order[b]].velocity;
      if (vb.x - va.x > tol.geom) break;
      if (norm(va - vb) <= tol.geom) {
        std::ostringstream msg;
        msg << "velocities " << order[a] << " and " << order[b] << " coincide";
        throw Error(ErrorKind::DegenerateData, msg.str());
      }
    }
  }
}

std::vector<PowerSite> PiecewiseAffinePotential::power_sites() const {
  std::vector<PowerSite> sites(velocities.size());
  for (std::size_t i = 0; i < sites.size(); ++i)
    sites[i] = {velocities[i], 2.0 * heights[i] + norm2(velocities[i])};
  return sites;
}

double eval_potential(const PiecewiseAffinePotential &pot, Vec2 x) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pot.velocities.size(); ++i)
    best = std::max(best, dot(pot.velocities[i], x) + pot.heights[i]);
  return best;
}

std::vector<ConvexPolygon> potential_cells(const ConvexPolygon &domain,
                                           std::span<const Vec2> velocities,
                                           std::span<const double> heights,
                                           const Tolerances &tol) {
  std::vector<PowerSite> sites(velocities.size());
  for (std::size_t i = 0; i < sites.size(); ++i)
    sites[i] = {velocities[i], 2.0 * heights[i] + norm2(velocities[i])};
  return power_diagram(domain, sites, tol);
}

DualEvaluation dual_value_and_gradient(const MassVelocityData &data,
                                       std::span<const double> heights,
                                       const Tolerances &tol) {
  const std::size_t k = data.pairs.size();
  if (heights.size() != k)
    throw Error(ErrorKind::InvalidArgument, "height vector does not match the data");
  std::vector<Vec2> velocities(k);
  for (std::size_t i = 0; i < k; ++i) velocities[i] = data.pairs[i].velocity;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (norm(velocities[i] - velocities[j]) <= tol.geom)
        throw Error(ErrorKind::DegenerateData, "coincident velocities");

  DualEvaluation out;
  out.cells = potential_cells(data.domain, velocities, heights, tol);
  out.gradient.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    double a = area(out.cells[i]);
    out.gradient[i] = a - data.pairs[i].mass;
    out.value += dot(velocities[i], first_moment(out.cells[i])) + heights[i] * a -
                 heights[i] * data.pairs[i].mass;
  }
  return out;
}

namespace {

struct Iterate {
  std::vector<double> h;
  std::vector<ConvexPolygon> cells;
  std::vector<double> areas;
  std::vector<double> g;
  double max_residual = 0.0;
  double l2_residual = 0.0;
  double min_area = 0.0;
};

class NewtonSolver {
 public:
  NewtonSolver(const MassVelocityData &data, const SolverOptions &opt)
      : data_(data), opt_(opt), k_(data.pairs.size()) {
    velocities_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) velocities_[i] = data.pairs[i].velocity;
  }

  Iterate evaluate(std::vector<double> h) const {
    Iterate it;
    it.h = std::move(h);
    it.cells = potential_cells(data_.domain, velocities_, it.h, opt_.geometry);
    it.areas.resize(k_);
    it.g.resize(k_);
    it.min_area = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k_; ++i) {
      it.areas[i] = area(it.cells[i]);
      it.g[i] = it.areas[i] - data_.pairs[i].mass;
      it.max_residual = std::max(it.max_residual, std::abs(it.g[i]));
      it.l2_residual += it.g[i] * it.g[i];
      it.min_area = std::min(it.min_area, it.areas[i]);
    }
    it.l2_residual = std::sqrt(it.l2_residual);
    return it;
  }

  // Heights whose cells are the Voronoi cells of the velocities mapped
  // affinely into the domain; every such cell contains its own site.
  std::vector<double> scaled_site_heights() const {
    Vec2 c = centroid(data_.domain);
    Vec2 mean{};
    for (const Vec2 &v : velocities_) mean += v;
    mean = (1.0 / static_cast<double>(k_)) * mean;
    double spread = 0.0;
    for (const Vec2 &v : velocities_) spread = std::max(spread, norm(v - mean));
    double inner = boundary_clearance(data_.domain, c);
    double alpha = spread > 0.0 ? 0.5 * inner / spread : 1.0;
    std::vector<double> h(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      Vec2 p = c + alpha * (velocities_[i] - mean);
      h[i] = -norm2(p) / (2.0 * alpha);
    }
    return h;
  }

  Iterate initial(bool &fallback) const {
    fallback = false;
    std::vector<double> h = opt_.initial_heights.value_or(std::vector<double>(k_, 0.0));
    if (h.size() != k_) throw Error(ErrorKind::InvalidArgument, "initial heights have wrong size");
    Iterate it = evaluate(h);
    if (it.min_area > 0.0) return it;

    BoundingBox bb = data_.domain.bounds();
    double diam = norm(bb.hi - bb.lo);
    double vspread = 0.0;
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = i + 1; j < k_; ++j)
        vspread = std::max(vspread, norm(velocities_[i] - velocities_[j]));
    double step = diam * vspread / area(data_.domain);
    for (int s = 0; s < opt_.warmup_gradient_steps && it.min_area <= 0.0; ++s) {
      std::vector<double> next = it.h;
      for (std::size_t i = 0; i < k_; ++i) next[i] -= step * it.g[i];
      it = evaluate(std::move(next));
    }
    if (it.min_area > 0.0) return it;
    fallback = true;
    return evaluate(scaled_site_heights());
  }

  // Solves H d = -g with one height pinned. H is the Laplacian-like matrix
  // dA_i/dh_j = -L_ij / |v_i - v_j| (i != j) built from shared edge lengths.
  bool newton_direction(const Iterate &it, std::vector<double> &dir) const {
    std::size_t pin = 0;
    for (std::size_t i = 1; i < k_; ++i)
      if (data_.pairs[i].mass > data_.pairs[pin].mass) pin = i;
    auto reduced = [pin](std::size_t i) { return i < pin ? i : i - 1; };

    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t i = 0; i < k_; ++i) {
      const auto &cell = it.cells[i];
      const auto &v = cell.vertices();
      const auto &tags = cell.edge_tags();
      for (std::size_t e = 0; e < v.size(); ++e) {
        int j = tags[e];
        if (j < 0) continue;
        double len = norm(v[(e + 1) % v.size()] - v[e]);
        double c = 0.5 * len / norm(velocities_[i] - velocities_[static_cast<std::size_t>(j)]);
        // symmetrised: each side contributes half of the coupling
        std::size_t jj = static_cast<std::size_t>(j);
        if (i != pin) trips.emplace_back(reduced(i), reduced(i), c);
        if (jj != pin) trips.emplace_back(reduced(jj), reduced(jj), c);
        if (i != pin && jj != pin) {
          trips.emplace_back(reduced(i), reduced(jj), -c);
          trips.emplace_back(reduced(jj), reduced(i), -c);
        }
      }
    }
    const auto n = static_cast<Eigen::Index>(k_ - 1);
    Eigen::SparseMatrix<double> H(n, n);
    H.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < k_; ++i)
      if (i != pin) rhs[static_cast<Eigen::Index>(reduced(i))] = -it.g[i];
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(H);
    if (ldlt.info() != Eigen::Success) return false;
    Eigen::VectorXd d = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success || !d.allFinite()) return false;
    dir.assign(k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i)
      if (i != pin) dir[i] = d[static_cast<Eigen::Index>(reduced(i))];
    return true;
  }

  PiecewiseAffinePotential package(const Iterate &it) const {
    PiecewiseAffinePotential pot;
    pot.domain = data_.domain;
    pot.velocities = velocities_;
    pot.heights = it.h;
    double lo = *std::min_element(pot.heights.begin(), pot.heights.end());
    for (double &h : pot.heights) h -= lo;
    // Shifting every height by a constant leaves the cells unchanged.
    pot.cells = it.cells;
    return pot;
  }

  PiecewiseAffinePotential run(SolveReport *report) {
    bool fallback = false;
    Iterate it = initial(fallback);
    if (report) report->used_fallback_init = fallback;
    double min_mass = std::numeric_limits<double>::infinity();
    for (const auto &p : data_.pairs) min_mass = std::min(min_mass, p.mass);

    int iter = 0;
    if (opt_.on_iteration) opt_.on_iteration(iter, it.max_residual);
    while (it.max_residual > opt_.tol) {
      if (iter >= opt_.max_newton) {
        std::ostringstream msg;
        msg << "Newton budget of " << opt_.max_newton << " iterations exhausted, residual "
            << it.max_residual;
        throw NonConvergence(msg.str(), package(it), it.max_residual);
      }
      std::vector<double> dir;
      if (!newton_direction(it, dir))
        throw NonConvergence("singular Newton system", package(it), it.max_residual);

      const double floor_area =
          std::min(0.5 * opt_.damping_floor * min_mass, 0.5 * it.min_area);
      double tau = 1.0;
      bool accepted = false;
      for (int halving = 0; halving < 40; ++halving, tau *= 0.5) {
        std::vector<double> h = it.h;
        for (std::size_t i = 0; i < k_; ++i) h[i] += tau * dir[i];
        Iterate trial = evaluate(std::move(h));
        if (trial.min_area >= floor_area &&
            trial.l2_residual <= (1.0 - 0.5 * tau) * it.l2_residual) {
          it = std::move(trial);
          accepted = true;
          break;
        }
      }
      ++iter;
      if (!accepted)
        throw NonConvergence("line search failed to reduce the residual", package(it),
                             it.max_residual);
      if (opt_.on_iteration) opt_.on_iteration(iter, it.max_residual);
    }
    if (report) {
      report->iterations = iter;
      report->residual = it.max_residual;
    }
    return package(it);
  }

 private:
  const MassVelocityData &data_;
  const SolverOptions &opt_;
  std::size_t k_;
  std::vector<Vec2> velocities_;
};

}  // namespace

PiecewiseAffinePotential solve_weights(const MassVelocityData &data,
                                       const SolverOptions &options, SolveReport *report) {
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  data.validate(std::max(1e-9, options.tol), options.geometry);
  if (data.pairs.size() == 1) {
    PiecewiseAffinePotential pot;
    pot.domain = data.domain;
    pot.velocities = {data.pairs[0].velocity};
    pot.heights = {0.0};
    pot.cells = {data.domain};
    if (report) *report = {0, std::abs(area(data.domain) - data.pairs[0].mass), false};
    return pot;
  }
  NewtonSolver solver(data, options);
  return solver.run(report);
}

}  // namespace shardflow
