// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/shardflow.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "shardflow/alexandrov.hpp"
#include "shardflow/breakflow.hpp"
#include "shardflow/convexify.hpp"
#include "shardflow/error.hpp"
#include "shardflow/io.hpp"
#include "shardflow/line1d.hpp"
#include "shardflow/packings.hpp"
#include "shardflow/parallel.hpp"
#include "shardflow/render.hpp"
#include "shardflow/stability.hpp"

using namespace shardflow;

struct sf_problem {
  MassVelocityData data;
};
struct sf_potential {
  PiecewiseAffinePotential pot;
};
struct sf_scene {
  BreakingScene scene;
};
struct sf_measure {
  MeasureDecomposition mu;
  std::optional<Histogram2D> histogram;
};
struct sf_grid {
  GridFunction f;
};
struct sf_packing {
  DiskPacking packing;
};

namespace {

thread_local std::string g_last_error;

sf_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return SF_ERR_INVALID_ARGUMENT;
    case ErrorKind::DegenerateData: return SF_ERR_DEGENERATE_DATA;
    case ErrorKind::NonConvergence: return SF_ERR_NON_CONVERGENCE;
    case ErrorKind::InconsistentPartition: return SF_ERR_INCONSISTENT_PARTITION;
    case ErrorKind::OverlappingShards: return SF_ERR_OVERLAPPING_SHARDS;
    case ErrorKind::GridTooCoarse: return SF_ERR_GRID_TOO_COARSE;
    case ErrorKind::InvalidSeed: return SF_ERR_INVALID_SEED;
    case ErrorKind::Timeout: return SF_ERR_TIMEOUT;
    case ErrorKind::ShapeNotInterior: return SF_ERR_SHAPE_NOT_INTERIOR;
    case ErrorKind::Domain: return SF_ERR_DOMAIN;
    case ErrorKind::Parse: return SF_ERR_PARSE;
    case ErrorKind::Io: return SF_ERR_IO;
  }
  return SF_ERR_INTERNAL;
}

sf_status fail(sf_status s, const std::string &msg) {
  g_last_error = msg;
  return s;
}

// Runs body, translating exceptions into status codes.
template <typename F>
sf_status guard(F &&body) {
  try {
    body();
    return SF_OK;
  } catch (const Error &e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(SF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(SF_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char *what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

ConvexPolygon polygon_from(const double *xy, std::size_t n) {
  require(xy != nullptr && n >= 3, "polygon needs at least 3 vertices");
  std::vector<Vec2> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {xy[2 * i], xy[2 * i + 1]};
  ConvexPolygon poly(std::move(v));
  require(is_valid_convex(poly) && area(poly) > 0.0,
          "polygon must be convex, counterclockwise and of positive area");
  return poly;
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::function<double(Vec2)> field(sf_field_fn fn, void *user) {
  require(fn != nullptr, "field callback is NULL");
  return [fn, user](Vec2 x) { return fn(x.x, x.y, user); };
}

GridMongeAmpereOptions grid_options(const sf_grid_options *o) {
  GridMongeAmpereOptions out;
  if (!o) return out;
  out.grid = o->grid;
  out.bins = o->bins;
  out.singular_threshold = o->singular_threshold;
  out.eps_touch = o->eps_touch;
  out.max_atom_bins = o->max_atom_bins;
  return out;
}

sf_measure *wrap(GridMongeAmpere &&g) {
  auto *m = new sf_measure{std::move(g.decomposition), std::move(g.histogram)};
  return m;
}

}  // namespace

extern "C" {

const char *sf_version(void) { return "0.1.0"; }

const char *sf_status_name(sf_status status) {
  switch (status) {
    case SF_OK: return "OK";
    case SF_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SF_ERR_DEGENERATE_DATA: return "DegenerateData";
    case SF_ERR_NON_CONVERGENCE: return "NonConvergence";
    case SF_ERR_INCONSISTENT_PARTITION: return "InconsistentPartition";
    case SF_ERR_OVERLAPPING_SHARDS: return "OverlappingShards";
    case SF_ERR_GRID_TOO_COARSE: return "GridTooCoarse";
    case SF_ERR_INVALID_SEED: return "InvalidSeed";
    case SF_ERR_TIMEOUT: return "Timeout";
    case SF_ERR_SHAPE_NOT_INTERIOR: return "ShapeNotInterior";
    case SF_ERR_DOMAIN: return "DomainError";
    case SF_ERR_PARSE: return "ParseError";
    case SF_ERR_IO: return "IoError";
    case SF_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char *sf_last_error(void) { return g_last_error.c_str(); }

void sf_string_free(char *s) { std::free(s); }

void sf_set_threads(int n) { set_thread_count(n > 0 ? static_cast<std::size_t>(n) : 0); }

// ---- problems and solver ----

sf_status sf_problem_create(const double *domain_xy, size_t n_vertices, sf_problem **out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new sf_problem{{polygon_from(domain_xy, n_vertices), {}}};
  });
}

sf_status sf_problem_add_pair(sf_problem *p, double mass, double vx, double vy) {
  return guard([&] {
    require(p != nullptr, "problem is NULL");
    p->data.pairs.push_back({mass, {vx, vy}});
  });
}

sf_status sf_problem_from_json(const char *json, sf_problem **out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "NULL argument");
    *out = new sf_problem{parse_problem(json)};
  });
}

sf_status sf_problem_to_json(const sf_problem *p, char **out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(problem_to_json(p->data));
  });
}

sf_status sf_problem_geometric(const double *domain_xy, size_t n_vertices, double ratio, size_t n,
                               sf_problem **out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new sf_problem{truncate(geometric_spec(polygon_from(domain_xy, n_vertices), ratio), n)};
  });
}

size_t sf_problem_size(const sf_problem *p) { return p ? p->data.pairs.size() : 0; }

void sf_problem_destroy(sf_problem *p) { delete p; }

sf_solver_options sf_solver_options_default(void) {
  SolverOptions d;
  return {d.tol, d.max_newton, d.damping_floor, d.warmup_gradient_steps};
}

sf_status sf_solve(const sf_problem *p, const sf_solver_options *options, sf_iteration_fn callback, void *user,
                   sf_potential **out, int *iterations, double *residual) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    SolverOptions opt;
    if (options) {
      opt.tol = options->tol;
      opt.max_newton = options->max_newton;
      opt.damping_floor = options->damping_floor;
      opt.warmup_gradient_steps = options->warmup_gradient_steps;
    }
    if (callback) opt.on_iteration = [callback, user](int it, double r) { callback(it, r, user); };
    SolveReport report;
    try {
      *out = new sf_potential{solve_weights(p->data, opt, &report)};
    } catch (const NonConvergence &e) {
      *out = new sf_potential{e.best()};
      if (residual) *residual = e.residual();
      throw;
    }
    if (iterations) *iterations = report.iterations;
    if (residual) *residual = report.residual;
  });
}

sf_status sf_potential_from_json(const char *json, sf_potential **out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "NULL argument");
    *out = new sf_potential{parse_solution(json)};
  });
}

sf_status sf_potential_to_json(const sf_potential *pot, double residual, char **out) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(solution_to_json(pot->pot, residual));
  });
}

sf_status sf_potential_from_pieces(const double *domain_xy, size_t n_vertices, size_t n_pieces,
                                   const double *cells_xy, const size_t *offsets, const double *velocities_xy,
                                   const double *heights, sf_potential **out) {
  return guard([&] {
    require(out != nullptr && offsets != nullptr && velocities_xy != nullptr && heights != nullptr &&
                cells_xy != nullptr,
            "NULL argument");
    PiecewiseAffinePotential pot;
    pot.domain = polygon_from(domain_xy, n_vertices);
    for (size_t i = 0; i < n_pieces; ++i) {
      require(offsets[i + 1] >= offsets[i] + 3, "every piece needs at least 3 vertices");
      pot.cells.push_back(polygon_from(cells_xy + 2 * offsets[i], offsets[i + 1] - offsets[i]));
      pot.velocities.push_back({velocities_xy[2 * i], velocities_xy[2 * i + 1]});
      pot.heights.push_back(heights[i]);
    }
    *out = new sf_potential{std::move(pot)};
  });
}

size_t sf_potential_size(const sf_potential *pot) { return pot ? pot->pot.size() : 0; }

sf_status sf_potential_heights(const sf_potential *pot, double *out, size_t capacity) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    require(capacity >= pot->pot.heights.size(), "capacity too small");
    std::copy(pot->pot.heights.begin(), pot->pot.heights.end(), out);
  });
}

sf_status sf_potential_velocity(const sf_potential *pot, size_t i, double *vx, double *vy) {
  return guard([&] {
    require(pot != nullptr && vx != nullptr && vy != nullptr, "NULL argument");
    require(i < pot->pot.size(), "index out of range");
    *vx = pot->pot.velocities[i].x;
    *vy = pot->pot.velocities[i].y;
  });
}

sf_status sf_potential_cell(const sf_potential *pot, size_t i, double *xy, size_t capacity, size_t *n_vertices) {
  return guard([&] {
    require(pot != nullptr && n_vertices != nullptr, "NULL argument");
    require(i < pot->pot.cells.size(), "index out of range");
    const auto &v = pot->pot.cells[i].vertices();
    *n_vertices = v.size();
    for (size_t k = 0; k < v.size() && k < capacity && xy; ++k) {
      xy[2 * k] = v[k].x;
      xy[2 * k + 1] = v[k].y;
    }
  });
}

sf_status sf_potential_cell_area(const sf_potential *pot, size_t i, double *out) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    require(i < pot->pot.cells.size(), "index out of range");
    *out = area(pot->pot.cells[i]);
  });
}

sf_status sf_potential_eval(const sf_potential *pot, double x, double y, double *out) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    *out = eval_potential(pot->pot, {x, y});
  });
}

sf_status sf_potential_check_convexity(const sf_potential *pot, double eps, int *out) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    *out = check_convexity(pieces_of(pot->pot), eps) ? 1 : 0;
  });
}

sf_status sf_potential_check_expansion(const sf_potential *pot, double t, size_t samples, uint64_t seed,
                                       int *out) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    *out = check_expansion(pot->pot, t, samples, seed) ? 1 : 0;
  });
}

void sf_potential_destroy(sf_potential *pot) { delete pot; }

// ---- scenes ----

sf_status sf_scene_advance(const sf_potential *pot, double t, sf_scene **out) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    *out = new sf_scene{advance(pot->pot, t)};
  });
}

sf_status sf_scene_check_injectivity(const sf_scene *scene, int *out) {
  return guard([&] {
    require(scene != nullptr && out != nullptr, "NULL argument");
    *out = check_injectivity(scene->scene) ? 1 : 0;
  });
}

sf_status sf_scene_to_json(const sf_scene *scene, char **out) {
  return guard([&] {
    require(scene != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(scene_to_json(scene->scene));
  });
}

sf_status sf_scene_to_svg(const sf_scene *scene, const char *title, char **out) {
  return guard([&] {
    require(scene != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(render_shards_svg(scene->scene.shards, scene->scene.velocities, title ? title : ""));
  });
}

void sf_scene_destroy(sf_scene *scene) { delete scene; }

// ---- measures ----

sf_status sf_measure_transported(const sf_scene *scene, sf_measure **out) {
  return guard([&] {
    require(scene != nullptr && out != nullptr, "NULL argument");
    *out = new sf_measure{transported_measure(scene->scene), std::nullopt};
  });
}

sf_status sf_measure_ma_1d(const double *pieces, size_t n_pieces, double t, sf_measure **out) {
  return guard([&] {
    require(pieces != nullptr && out != nullptr, "NULL argument");
    std::vector<Piece1D> p(n_pieces);
    for (size_t i = 0; i < n_pieces; ++i)
      p[i] = {pieces[4 * i], pieces[4 * i + 1], pieces[4 * i + 2], pieces[4 * i + 3]};
    *out = new sf_measure{monge_ampere_1d(p, t), std::nullopt};
  });
}

sf_grid_options sf_grid_options_default(void) {
  GridMongeAmpereOptions d;
  return {d.grid, d.bins, d.singular_threshold, d.eps_touch, d.max_atom_bins};
}

sf_status sf_measure_ma_grid(sf_field_fn phi, void *user, const double *domain_xy, size_t n_vertices, double t,
                             const sf_grid_options *options, sf_measure **out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = wrap(monge_ampere_grid(field(phi, user), polygon_from(domain_xy, n_vertices), t, grid_options(options)));
  });
}

sf_status sf_measure_ma_grid_potential(const sf_potential *pot, double t, const sf_grid_options *options,
                                       sf_measure **out) {
  return guard([&] {
    require(pot != nullptr && out != nullptr, "NULL argument");
    const PiecewiseAffinePotential &p = pot->pot;
    *out = wrap(monge_ampere_grid([&p](Vec2 x) { return eval_potential(p, x); }, p.domain, t,
                                  grid_options(options)));
  });
}

sf_status sf_measure_masses(const sf_measure *m, double *ac, double *atoms, double *diffuse) {
  return guard([&] {
    require(m != nullptr, "measure is NULL");
    if (ac) *ac = m->mu.ac_mass();
    if (atoms) *atoms = m->mu.atom_mass();
    if (diffuse) *diffuse = m->mu.singular_diffuse_mass;
  });
}

size_t sf_measure_atom_count(const sf_measure *m) { return m ? m->mu.atoms.size() : 0; }

sf_status sf_measure_atom(const sf_measure *m, size_t i, double *x, double *y, double *mass) {
  return guard([&] {
    require(m != nullptr, "measure is NULL");
    require(i < m->mu.atoms.size(), "index out of range");
    const Atom &a = m->mu.atoms[i];
    if (x) *x = a.location.x;
    if (y) *y = a.location.y;
    if (mass) *mass = a.mass;
  });
}

sf_status sf_measure_to_json(const sf_measure *m, char **out) {
  return guard([&] {
    require(m != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(measure_to_json(m->mu));
  });
}

sf_status sf_measure_histogram_csv(const sf_measure *m, char **out) {
  return guard([&] {
    require(m != nullptr && out != nullptr, "NULL argument");
    require(m->histogram.has_value(), "measure has no histogram");
    *out = dup_string(histogram_to_csv(*m->histogram));
  });
}

sf_status sf_measure_bl_distance(const sf_measure *a, const sf_measure *b, size_t test_functions, uint64_t seed,
                                 double *out) {
  return guard([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "NULL argument");
    *out = bl_distance(a->mu, b->mu, test_functions, seed);
  });
}

void sf_measure_destroy(sf_measure *m) { delete m; }

// ---- grids ----

sf_status sf_grid_psi(sf_field_fn phi, void *user, const double *domain_xy, size_t n_vertices, double t,
                      size_t grid, sf_grid **out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    require(grid >= 2, "grid needs at least 2 nodes per axis");
    ConvexPolygon domain = polygon_from(domain_xy, n_vertices);
    auto f = field(phi, user);
    BoundingBox bb = domain.bounds();
    double hx = (bb.hi.x - bb.lo.x) / static_cast<double>(grid);
    double hy = (bb.hi.y - bb.lo.y) / static_cast<double>(grid);
    Axis ax{bb.lo.x + 0.5 * hx, hx, grid}, ay{bb.lo.y + 0.5 * hy, hy, grid};
    *out = new sf_grid{GridFunction::sample(ax, ay, [&](Vec2 x) {
      return contains(domain, x) ? 0.5 * norm2(x) + t * f(x) : std::numeric_limits<double>::infinity();
    })};
  });
}

sf_status sf_grid_legendre(const sf_grid *f, sf_grid **out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "NULL argument");
    *out = new sf_grid{legendre(f->f)};
  });
}

sf_status sf_grid_convexify(const sf_grid *f, sf_grid **out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "NULL argument");
    *out = new sf_grid{convexify(f->f)};
  });
}

sf_status sf_grid_interpolate(const sf_grid *f, double x, double y, double *out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "NULL argument");
    *out = f->f.dims() == 1 ? interpolate(f->f, x) : interpolate(f->f, Vec2{x, y});
  });
}

sf_status sf_grid_write(const sf_grid *f, const char *prefix) {
  return guard([&] {
    require(f != nullptr && prefix != nullptr, "NULL argument");
    write_grid(f->f, prefix);
  });
}

sf_status sf_grid_read(const char *prefix, sf_grid **out) {
  return guard([&] {
    require(prefix != nullptr && out != nullptr, "NULL argument");
    *out = new sf_grid{read_grid(prefix)};
  });
}

void sf_grid_destroy(sf_grid *f) { delete f; }

sf_status sf_hopf_lax(sf_field_fn phi, void *user, const double *domain_xy, size_t n_vertices, double x, double y,
                      double t, double *value, double *zx, double *zy) {
  return guard([&] {
    require(value != nullptr, "value is NULL");
    HopfLaxResult r = hopf_lax(field(phi, user), polygon_from(domain_xy, n_vertices), {x, y}, t);
    *value = r.value;
    if (zx) *zx = r.minimizer.x;
    if (zy) *zy = r.minimizer.y;
  });
}

// ---- one-dimensional theory ----

sf_status sf_cantor_function(double z, int depth, double *out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = cantor_function(z, depth);
  });
}

sf_status sf_cantor_flow(int depth, double t, double *gap_total, double *fat_measure) {
  return guard([&] {
    CantorFlow f = cantor_flow(depth, t);
    if (gap_total) *gap_total = f.gap_total;
    if (fat_measure) *fat_measure = f.fat_measure;
  });
}

sf_status sf_lax_velocity(double x, double t, int depth, double *out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = lax_velocity(x, t, depth);
  });
}

sf_status sf_oleinik_check(int depth, double t, size_t pairs, uint64_t seed, int *out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = oleinik_check(depth, t, pairs, seed) ? 1 : 0;
  });
}

sf_status sf_continuity_classifier(const double *values, size_t n, double lo, double hi, double delta, int *out) {
  return guard([&] {
    require(out != nullptr && (values != nullptr || n == 0), "NULL argument");
    *out = continuity_classifier_1d(std::span<const double>(values, n), lo, hi, delta) ? 1 : 0;
  });
}

sf_status sf_lax_profiles(const double *ts, size_t n_ts, int depth, size_t samples, char **csv, char **svg) {
  return guard([&] {
    require(ts != nullptr && n_ts > 0, "no t values");
    std::vector<Curve> curves;
    std::string text = "t,x,f\n";
    for (size_t k = 0; k < n_ts; ++k) {
      require(ts[k] > 0.0, "t values must be positive");
      Curve c{lax_profile(ts[k], depth, samples), "t = " + format_double(ts[k])};
      for (Vec2 p : c.points) text += format_double(ts[k]) + "," + format_double(p.x) + "," + format_double(p.y) + "\n";
      curves.push_back(std::move(c));
    }
    std::string picture = render_curves_svg(curves, "Cantor expansion wave f(x, t)");
    if (csv) *csv = dup_string(text);
    if (svg) *svg = dup_string(picture);
  });
}

// ---- packings ----

sf_status sf_packing_apollonian(const double *seed, int generations, size_t sides, sf_packing **out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    std::array<Disk, 4> s = default_apollonian_seed();
    if (seed) {
      for (int k = 0; k < 4; ++k) {
        double b = seed[3 * k + 2];
        require(b != 0.0, "seed curvature must be nonzero");
        Vec2 c{seed[3 * k], seed[3 * k + 1]};
        s[k] = b < 0.0 ? Disk::enclosing(c, -1.0 / b) : Disk::inner(c, 1.0 / b);
      }
    }
    *out = new sf_packing{apollonian(s, generations, sides == 0 ? 256 : sides)};
  });
}

sf_status sf_packing_osculatory(const double *domain_xy, size_t n_vertices, const sf_packing *existing,
                                size_t count, size_t grid, sf_packing **out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    OsculatoryOptions opt;
    if (grid > 0) opt.grid = grid;
    DiskPacking base = existing ? existing->packing : DiskPacking{};
    *out = new sf_packing{osculatory(polygon_from(domain_xy, n_vertices), base, count, opt)};
  });
}

sf_status sf_packing_vitali(const double *domain_xy, size_t n_vertices, double target, uint64_t seed,
                            size_t budget, sf_packing **out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new sf_packing{vitali_random(polygon_from(domain_xy, n_vertices), target, seed,
                                        budget == 0 ? 10'000'000 : budget)};
  });
}

sf_status sf_packing_from_csv(const char *csv, const double *domain_xy, size_t n_vertices, sf_packing **out) {
  return guard([&] {
    require(csv != nullptr && out != nullptr, "NULL argument");
    ConvexPolygon fallback = domain_xy ? polygon_from(domain_xy, n_vertices) : unit_square();
    *out = new sf_packing{parse_packing_csv(csv, fallback)};
  });
}

size_t sf_packing_size(const sf_packing *p) { return p ? p->packing.disks.size() : 0; }

sf_status sf_packing_disk(const sf_packing *p, size_t i, double *cx, double *cy, double *radius,
                          double *curvature) {
  return guard([&] {
    require(p != nullptr, "packing is NULL");
    require(i < p->packing.disks.size(), "index out of range");
    const Disk &d = p->packing.disks[i];
    if (cx) *cx = d.center.x;
    if (cy) *cy = d.center.y;
    if (radius) *radius = d.radius;
    if (curvature) *curvature = d.curvature;
  });
}

double sf_packing_covered_fraction(const sf_packing *p) { return p ? p->packing.covered_fraction() : 0.0; }

double sf_packing_violation(const sf_packing *p) { return p ? packing_violation(p->packing) : 0.0; }

size_t sf_packing_record_count(const sf_packing *p) { return p ? p->packing.records.size() : 0; }

sf_status sf_packing_record(const sf_packing *p, size_t i, size_t out[5]) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    require(i < p->packing.records.size(), "index out of range");
    const DescartesRecord &r = p->packing.records[i];
    out[0] = r.parents[0];
    out[1] = r.parents[1];
    out[2] = r.parents[2];
    out[3] = r.sibling;
    out[4] = r.child;
  });
}

sf_status sf_packing_to_csv(const sf_packing *p, char **out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(packing_to_csv(p->packing));
  });
}

sf_status sf_packing_to_svg(const sf_packing *p, char **out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(render_packing_svg(p->packing));
  });
}

sf_status sf_packing_bowl_svg(const sf_packing *p, size_t resolution, char **out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    PiecewiseAffinePotential pot = packing_potential(p->packing);
    *out = dup_string(render_heightmap_svg([&pot](Vec2 x) { return eval_potential(pot, x); }, pot.domain,
                                           resolution == 0 ? 200 : resolution, "Packing potential heightmap"));
  });
}

sf_status sf_packing_disk_scene(const sf_packing *p, double t, size_t sides, sf_scene **out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    require(t >= 0.0, "t must be nonnegative");
    BreakingScene scene;
    scene.time = t;
    scene.shards = disk_shards(p->packing, t, sides == 0 ? 64 : sides);
    for (const Disk &d : p->packing.disks) scene.velocities.push_back(d.center);
    *out = new sf_scene{std::move(scene)};
  });
}

sf_status sf_packing_potential(const sf_packing *p, sf_potential **out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = new sf_potential{packing_potential(p->packing)};
  });
}

void sf_packing_destroy(sf_packing *p) { delete p; }

// ---- stability ----

sf_status sf_stability_experiment(const double *domain_xy, size_t n_vertices, double ratio, const size_t *ns,
                                  size_t n_ns, double t, size_t test_functions, uint64_t seed, double tol,
                                  sf_stability_row *rows) {
  return guard([&] {
    require(ns != nullptr && rows != nullptr && n_ns > 0, "NULL argument");
    StabilityOptions opt;
    opt.test_functions = test_functions == 0 ? 64 : test_functions;
    opt.seed = seed;
    if (tol > 0.0) opt.solver.tol = tol;
    auto result = stability_experiment(geometric_spec(polygon_from(domain_xy, n_vertices), ratio),
                                       std::span<const std::size_t>(ns, n_ns), t, opt);
    for (size_t k = 0; k < n_ns; ++k)
      rows[k] = {result[k].n, result[k].distance, result[k].solver_residual, result[k].wall_time};
  });
}

}  // extern "C"
