/* Copyright 2026 The shardflow Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to shardflow. Every fallible call returns an sf_status; on
 * failure sf_last_error() describes the problem (per thread, valid until the
 * next failing call on that thread). Objects are opaque handles released
 * with the matching *_destroy function; strings returned through char**
 * are released with sf_string_free. Polygons are flat arrays of
 * counterclockwise x, y pairs. */

#ifndef SHARDFLOW_SHARDFLOW_H
#define SHARDFLOW_SHARDFLOW_H

#include <stddef.h>
#include <stdint.h>

#if defined(SHARDFLOW_BUILDING_LIBRARY)
#define SF_API __attribute__((visibility("default")))
#else
#define SF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_DEGENERATE_DATA = 2,
  SF_ERR_NON_CONVERGENCE = 3,
  SF_ERR_INCONSISTENT_PARTITION = 4,
  SF_ERR_OVERLAPPING_SHARDS = 5,
  SF_ERR_GRID_TOO_COARSE = 6,
  SF_ERR_INVALID_SEED = 7,
  SF_ERR_TIMEOUT = 8,
  SF_ERR_SHAPE_NOT_INTERIOR = 9,
  SF_ERR_DOMAIN = 10,
  SF_ERR_PARSE = 11,
  SF_ERR_IO = 12,
  SF_ERR_INTERNAL = 13
} sf_status;

SF_API const char *sf_version(void);
SF_API const char *sf_status_name(sf_status status);
SF_API const char *sf_last_error(void);
SF_API void sf_string_free(char *s);
/* Caps internal parallelism; n <= 0 restores the default. */
SF_API void sf_set_threads(int n);

/* ---- mass-velocity problems and the Alexandrov solver ---- */

typedef struct sf_problem sf_problem;
typedef struct sf_potential sf_potential;

SF_API sf_status sf_problem_create(const double *domain_xy, size_t n_vertices, sf_problem **out);
SF_API sf_status sf_problem_add_pair(sf_problem *p, double mass, double vx, double vy);
SF_API sf_status sf_problem_from_json(const char *json, sf_problem **out);
SF_API sf_status sf_problem_to_json(const sf_problem *p, char **out);
/* First n pairs of the geometric countable data m_i = ratio^i with Halton
 * velocities in [-1, 1]^2, normalised to the domain area. */
SF_API sf_status sf_problem_geometric(const double *domain_xy, size_t n_vertices, double ratio, size_t n,
                                      sf_problem **out);
SF_API size_t sf_problem_size(const sf_problem *p);
SF_API void sf_problem_destroy(sf_problem *p);

typedef struct sf_solver_options {
  double tol;
  int max_newton;
  double damping_floor;
  int warmup_gradient_steps;
} sf_solver_options;

SF_API sf_solver_options sf_solver_options_default(void);

/* Called after each accepted Newton iterate. */
typedef void (*sf_iteration_fn)(int iteration, double residual, void *user);

/* options and callback may be NULL. iterations and residual may be NULL. On
 * SF_ERR_NON_CONVERGENCE *out still receives the best iterate. */
SF_API sf_status sf_solve(const sf_problem *p, const sf_solver_options *options, sf_iteration_fn callback,
                          void *user, sf_potential **out, int *iterations, double *residual);

SF_API sf_status sf_potential_from_json(const char *json, sf_potential **out);
SF_API sf_status sf_potential_to_json(const sf_potential *pot, double residual, char **out);
/* Explicit partition: cell i has vertices cells_xy[2*offsets[i] .. 2*offsets[i+1]). */
SF_API sf_status sf_potential_from_pieces(const double *domain_xy, size_t n_vertices, size_t n_pieces,
                                          const double *cells_xy, const size_t *offsets,
                                          const double *velocities_xy, const double *heights,
                                          sf_potential **out);
SF_API size_t sf_potential_size(const sf_potential *pot);
SF_API sf_status sf_potential_heights(const sf_potential *pot, double *out, size_t capacity);
SF_API sf_status sf_potential_velocity(const sf_potential *pot, size_t i, double *vx, double *vy);
/* Writes up to capacity vertices; *n_vertices receives the full count. */
SF_API sf_status sf_potential_cell(const sf_potential *pot, size_t i, double *xy, size_t capacity,
                                   size_t *n_vertices);
SF_API sf_status sf_potential_cell_area(const sf_potential *pot, size_t i, double *out);
SF_API sf_status sf_potential_eval(const sf_potential *pot, double x, double y, double *out);
SF_API sf_status sf_potential_check_convexity(const sf_potential *pot, double eps, int *out);
SF_API sf_status sf_potential_check_expansion(const sf_potential *pot, double t, size_t samples,
                                              uint64_t seed, int *out);
SF_API void sf_potential_destroy(sf_potential *pot);

/* ---- breaking flow ---- */

typedef struct sf_scene sf_scene;

SF_API sf_status sf_scene_advance(const sf_potential *pot, double t, sf_scene **out);
SF_API sf_status sf_scene_check_injectivity(const sf_scene *scene, int *out);
SF_API sf_status sf_scene_to_json(const sf_scene *scene, char **out);
SF_API sf_status sf_scene_to_svg(const sf_scene *scene, const char *title, char **out);
SF_API void sf_scene_destroy(sf_scene *scene);

/* ---- measures ---- */

typedef struct sf_measure sf_measure;

/* Lebesgue measure on the shards; SF_ERR_OVERLAPPING_SHARDS if they overlap. */
SF_API sf_status sf_measure_transported(const sf_scene *scene, sf_measure **out);
/* Exact 1D decomposition; pieces are (lo, hi, velocity, height) quadruples. */
SF_API sf_status sf_measure_ma_1d(const double *pieces, size_t n_pieces, double t, sf_measure **out);

typedef double (*sf_field_fn)(double x, double y, void *user);

typedef struct sf_grid_options {
  size_t grid;
  size_t bins;
  double singular_threshold;
  double eps_touch;
  size_t max_atom_bins;
} sf_grid_options;

SF_API sf_grid_options sf_grid_options_default(void);
/* Grid decomposition of the Monge-Ampere measure of |x|^2/2 + t phi. */
SF_API sf_status sf_measure_ma_grid(sf_field_fn phi, void *user, const double *domain_xy, size_t n_vertices,
                                    double t, const sf_grid_options *options, sf_measure **out);
SF_API sf_status sf_measure_ma_grid_potential(const sf_potential *pot, double t, const sf_grid_options *options,
                                              sf_measure **out);
SF_API sf_status sf_measure_masses(const sf_measure *m, double *ac, double *atoms, double *diffuse);
SF_API size_t sf_measure_atom_count(const sf_measure *m);
SF_API sf_status sf_measure_atom(const sf_measure *m, size_t i, double *x, double *y, double *mass);
SF_API sf_status sf_measure_to_json(const sf_measure *m, char **out);
/* Histogram CSV; SF_ERR_INVALID_ARGUMENT for measures not built on a grid. */
SF_API sf_status sf_measure_histogram_csv(const sf_measure *m, char **out);
SF_API sf_status sf_measure_bl_distance(const sf_measure *a, const sf_measure *b, size_t test_functions,
                                        uint64_t seed, double *out);
SF_API void sf_measure_destroy(sf_measure *m);

/* ---- grid functions and transforms ---- */

typedef struct sf_grid sf_grid;

/* psi = |x|^2/2 + t phi on a grid x grid cell-centred lattice over the domain
 * bounding box, +infinity outside the domain. */
SF_API sf_status sf_grid_psi(sf_field_fn phi, void *user, const double *domain_xy, size_t n_vertices, double t,
                             size_t grid, sf_grid **out);
SF_API sf_status sf_grid_legendre(const sf_grid *f, sf_grid **out);
SF_API sf_status sf_grid_convexify(const sf_grid *f, sf_grid **out);
SF_API sf_status sf_grid_interpolate(const sf_grid *f, double x, double y, double *out);
SF_API sf_status sf_grid_write(const sf_grid *f, const char *prefix);
SF_API sf_status sf_grid_read(const char *prefix, sf_grid **out);
SF_API void sf_grid_destroy(sf_grid *f);

/* u_t(x) = min over the domain of |x - z|^2 / (2t) + phi(z). */
SF_API sf_status sf_hopf_lax(sf_field_fn phi, void *user, const double *domain_xy, size_t n_vertices, double x,
                             double y, double t, double *value, double *zx, double *zy);

/* ---- one-dimensional theory ---- */

SF_API sf_status sf_cantor_function(double z, int depth, double *out);
SF_API sf_status sf_cantor_flow(int depth, double t, double *gap_total, double *fat_measure);
SF_API sf_status sf_lax_velocity(double x, double t, int depth, double *out);
SF_API sf_status sf_oleinik_check(int depth, double t, size_t pairs, uint64_t seed, int *out);
SF_API sf_status sf_continuity_classifier(const double *values, size_t n, double lo, double hi, double delta,
                                          int *out);
/* CSV "t,x,f" with rows for each t in ts; SVG with one curve per t. */
SF_API sf_status sf_lax_profiles(const double *ts, size_t n_ts, int depth, size_t samples, char **csv,
                                 char **svg);

/* ---- packings ---- */

typedef struct sf_packing sf_packing;

/* seed: 4 x (cx, cy, curvature) or NULL for the integral (-1, 2, 2, 3) seed. */
SF_API sf_status sf_packing_apollonian(const double *seed, int generations, size_t sides, sf_packing **out);
/* existing may be NULL. grid <= 0 selects the default. */
SF_API sf_status sf_packing_osculatory(const double *domain_xy, size_t n_vertices, const sf_packing *existing,
                                       size_t count, size_t grid, sf_packing **out);
SF_API sf_status sf_packing_vitali(const double *domain_xy, size_t n_vertices, double target, uint64_t seed,
                                   size_t budget, sf_packing **out);
SF_API sf_status sf_packing_from_csv(const char *csv, const double *domain_xy, size_t n_vertices,
                                     sf_packing **out);
SF_API size_t sf_packing_size(const sf_packing *p);
SF_API sf_status sf_packing_disk(const sf_packing *p, size_t i, double *cx, double *cy, double *radius,
                                 double *curvature);
SF_API double sf_packing_covered_fraction(const sf_packing *p);
SF_API double sf_packing_violation(const sf_packing *p);
SF_API size_t sf_packing_record_count(const sf_packing *p);
/* parents[0..2], sibling, child as circle indices (0 = enclosing circle). */
SF_API sf_status sf_packing_record(const sf_packing *p, size_t i, size_t out[5]);
SF_API sf_status sf_packing_to_csv(const sf_packing *p, char **out);
SF_API sf_status sf_packing_to_svg(const sf_packing *p, char **out);
/* Heightmap of the packing potential over its domain. */
SF_API sf_status sf_packing_bowl_svg(const sf_packing *p, size_t resolution, char **out);
/* Inscribed polygons of the disks translated by t * centre. */
SF_API sf_status sf_packing_disk_scene(const sf_packing *p, double t, size_t sides, sf_scene **out);
SF_API sf_status sf_packing_potential(const sf_packing *p, sf_potential **out);
SF_API void sf_packing_destroy(sf_packing *p);

/* ---- stability ---- */

typedef struct sf_stability_row {
  size_t n;
  double distance;
  double solver_residual;
  double wall_time;
} sf_stability_row;

/* Geometric data with the given ratio on the domain; rows has n_ns entries. */
SF_API sf_status sf_stability_experiment(const double *domain_xy, size_t n_vertices, double ratio,
                                         const size_t *ns, size_t n_ns, double t, size_t test_functions,
                                         uint64_t seed, double tol, sf_stability_row *rows);

#ifdef __cplusplus
}
#endif

#endif /* SHARDFLOW_SHARDFLOW_H */
