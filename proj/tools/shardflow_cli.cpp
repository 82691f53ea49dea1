// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

// shardflow command-line driver. Every subcommand reads an optional JSON
// config (--config), lets flags override it, validates, runs and writes
// deterministic file names into --out.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shardflow/shardflow.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitInput = 2;

// Thrown to abort a command with a given exit code.
struct CommandFailure {
  int code;
  std::string message;
};

[[noreturn]] void input_error(const std::string &msg) { throw CommandFailure{kExitInput, msg}; }

int exit_code_for(sf_status s) {
  switch (s) {
    case SF_ERR_INVALID_ARGUMENT:
    case SF_ERR_DEGENERATE_DATA:
    case SF_ERR_INVALID_SEED:
    case SF_ERR_SHAPE_NOT_INTERIOR:
    case SF_ERR_DOMAIN:
    case SF_ERR_PARSE:
    case SF_ERR_IO:
      return kExitInput;
    default:
      return kExitNumerical;
  }
}

void check(sf_status s, const std::string &context) {
  if (s == SF_OK) return;
  std::string msg = context + ": " + sf_status_name(s) + ": " + sf_last_error();
  if (s == SF_ERR_GRID_TOO_COARSE) msg += " (increase --grid or t)";
  throw CommandFailure{exit_code_for(s), msg};
}

std::string fmt(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Owns a string allocated by the library.
std::string take(char *s) {
  std::string out = s ? s : "";
  sf_string_free(s);
  return out;
}

template <typename T, void (*Destroy)(T *)>
struct Deleter {
  void operator()(T *p) const { Destroy(p); }
};
using Problem = std::unique_ptr<sf_problem, Deleter<sf_problem, sf_problem_destroy>>;
using Potential = std::unique_ptr<sf_potential, Deleter<sf_potential, sf_potential_destroy>>;
using Scene = std::unique_ptr<sf_scene, Deleter<sf_scene, sf_scene_destroy>>;
using Measure = std::unique_ptr<sf_measure, Deleter<sf_measure, sf_measure_destroy>>;
using Packing = std::unique_ptr<sf_packing, Deleter<sf_packing, sf_packing_destroy>>;

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  fs::path dir;

  void prepare() const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) input_error("cannot create output directory " + dir.string());
  }
  void write(const std::string &name, const std::string &text) const {
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) input_error("cannot write " + p.string());
    out << text;
    if (!out) input_error("failed writing " + p.string());
  }
  std::string path(const std::string &name) const { return (dir / name).string(); }
};

std::vector<double> parse_list(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    double v = 0.0;
    auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size()) input_error("bad number in list: " + item);
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<double> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

// Options common to every subcommand plus per-command config overrides.
// Values come from the flag when given, else from the config key of the
// same name, else the default.
class Command {
 public:
  Command(CLI::App &parent, const std::string &name, const std::string &desc)
      : app_(parent.add_subcommand(name, desc)) {
    app_->add_option("--config", config_path_, "JSON config file");
    add("out", out_, "Output directory");
  }

  template <typename T>
  CLI::Option *add(const std::string &name, T &var, const std::string &desc) {
    CLI::Option *opt = app_->add_option("--" + name, var, desc)->capture_default_str();
    overrides_.push_back([this, opt, name, &var] {
      if (opt->count() > 0 || !config_.contains(name)) return;
      try {
        if constexpr (std::is_same_v<T, std::string>) {
          const json &j = config_[name];
          if (j.is_array()) {
            std::vector<double> v = j.get<std::vector<double>>();
            var = join(v);
          } else if (j.is_number()) {
            var = fmt(j.get<double>());
          } else {
            var = j.get<std::string>();
          }
        } else {
          var = config_[name].get<T>();
        }
      } catch (const json::exception &e) {
        input_error("config key '" + name + "': " + e.what());
      }
    });
    return opt;
  }

  CLI::App *app() { return app_; }
  const json &config() const { return config_; }
  Output output() const { return Output{out_}; }

  // Loads the config and applies it beneath the flags.
  void resolve() {
    if (!config_path_.empty()) {
      try {
        config_ = json::parse(read_text(config_path_));
      } catch (const json::parse_error &e) {
        input_error("config " + config_path_ + ": " + e.what());
      }
      if (!config_.is_object()) input_error("config must be a JSON object");
    }
    for (auto &f : overrides_) f();
  }

 private:
  CLI::App *app_;
  std::string config_path_;
  std::string out_ = ".";
  json config_ = json::object();
  std::vector<std::function<void()>> overrides_;
};

void require(bool ok, const std::string &msg) {
  if (!ok) input_error(msg);
}

std::vector<double> unit_square() { return {0, 0, 1, 0, 1, 1, 0, 1}; }

// ---- solve ----

struct SolveArgs {
  std::string input;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int max_newton = 100;
};

Problem random_problem(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> vel(-1.0, 1.0), mass(0.5, 1.5);
  std::vector<double> m(k);
  double total = 0.0;
  for (double &x : m) total += (x = mass(rng));
  std::vector<double> sq = unit_square();
  sf_problem *p = nullptr;
  check(sf_problem_create(sq.data(), 4, &p), "problem");
  Problem owned(p);
  for (std::size_t i = 0; i < k; ++i) {
    double vx = vel(rng), vy = vel(rng);
    check(sf_problem_add_pair(p, m[i] / total, vx, vy), "problem");
  }
  return owned;
}

void run_solve(const SolveArgs &a, const Output &out) {
  require(a.input.empty() != (a.random == 0), "give exactly one of --input or --random");
  require(a.tol > 0.0, "--tol must be positive");
  require(a.max_newton > 0, "--max-newton must be positive");
  Problem problem;
  if (!a.input.empty()) {
    std::string text = read_text(a.input);
    sf_problem *p = nullptr;
    check(sf_problem_from_json(text.c_str(), &p), "reading " + a.input);
    problem.reset(p);
  } else {
    problem = random_problem(a.random, a.seed);
    out.write("problem.json", take([&] {
      char *s = nullptr;
      check(sf_problem_to_json(problem.get(), &s), "problem");
      return s;
    }()));
  }

  sf_solver_options opt = sf_solver_options_default();
  opt.tol = a.tol;
  opt.max_newton = a.max_newton;
  std::string log = "iteration,residual\n";
  auto record = [](int it, double r, void *user) {
    *static_cast<std::string *>(user) += std::to_string(it) + "," + fmt(r) + "\n";
  };
  sf_potential *pot = nullptr;
  int iterations = 0;
  double residual = 0.0;
  sf_status s = sf_solve(problem.get(), &opt, record, &log, &pot, &iterations, &residual);
  Potential owned(pot);
  out.write("convergence.log", log);
  if (owned) {
    char *js = nullptr;
    check(sf_potential_to_json(owned.get(), residual, &js), "solution");
    out.write("solution.json", take(js));
  }
  check(s, "solve");
  std::cout << "solved " << sf_problem_size(problem.get()) << " sites in " << iterations
            << " iterations, residual " << fmt(residual) << "\n";
}

// ---- break ----

struct BreakArgs {
  std::string input;
  std::string packing;
  std::string t = "0,0.5,1";
  std::size_t sides = 64;
};

void run_break(const BreakArgs &a, const Output &out) {
  require(a.input.empty() != a.packing.empty(), "give exactly one of --input or --packing");
  std::vector<double> ts = parse_list(a.t);
  require(!ts.empty(), "--t needs at least one value");
  for (double t : ts) require(t >= 0.0 && std::isfinite(t), "--t values must be finite and nonnegative");
  require(a.sides >= 8, "--sides must be at least 8");

  Potential pot;
  Packing packing;
  bool convex = true;
  if (!a.input.empty()) {
    std::string text = read_text(a.input);
    sf_potential *p = nullptr;
    check(sf_potential_from_json(text.c_str(), &p), "reading " + a.input);
    pot.reset(p);
    int c = 0;
    check(sf_potential_check_convexity(pot.get(), 1e-9, &c), "convexity");
    convex = c != 0;
  } else {
    std::string text = read_text(a.packing);
    sf_packing *p = nullptr;
    check(sf_packing_from_csv(text.c_str(), nullptr, 0, &p), "reading " + a.packing);
    packing.reset(p);
  }

  std::string index = "frame,t,injective\n";
  bool failed = false;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    sf_scene *sc = nullptr;
    if (pot)
      check(sf_scene_advance(pot.get(), ts[k], &sc), "advance");
    else
      check(sf_packing_disk_scene(packing.get(), ts[k], a.sides, &sc), "advance");
    Scene scene(sc);
    int injective = 0;
    check(sf_scene_check_injectivity(scene.get(), &injective), "injectivity");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%03zu", k);
    std::string stem = std::string("frame_") + buf;
    char *svg = nullptr, *js = nullptr;
    check(sf_scene_to_svg(scene.get(), ("t = " + fmt(ts[k])).c_str(), &svg), "render");
    out.write(stem + ".svg", take(svg));
    check(sf_scene_to_json(scene.get(), &js), "export");
    out.write(stem + ".json", take(js));
    index += stem + "," + fmt(ts[k]) + "," + (injective ? "1" : "0") + "\n";
    if (convex && !injective) failed = true;
  }
  out.write("frames.csv", index);
  if (failed) throw CommandFailure{kExitNumerical, "convex input produced an overlapping scene"};
  std::cout << "wrote " << ts.size() << " frames" << (convex ? "" : " (input not convex)") << "\n";
}

// ---- ma ----

struct MaArgs {
  int dims = 1;
  std::string example = "abs";
  std::string input;
  std::string t = "0.25";
  std::size_t grid = 512;
  std::size_t bins = 256;
};

double tent(double x, double, void *) { return -std::fabs(x); }
double bowl(double x, double y, void *) { return 0.5 * (x * x + y * y); }
double max_affine(double x, double y, void *) {
  return std::max({0.3 * x + 0.1 * y, -0.4 * x + 0.2 * y + 0.05, 0.1 * x - 0.5 * y});
}

void write_measure(const Output &out, sf_measure *m, bool histogram) {
  double ac = 0, atoms = 0, diffuse = 0;
  check(sf_measure_masses(m, &ac, &atoms, &diffuse), "masses");
  json summary = {{"ac_mass", ac}, {"atom_mass", atoms}, {"singular_diffuse_mass", diffuse},
                  {"singular_mass", atoms + diffuse}, {"atoms", json::array()}};
  for (std::size_t i = 0; i < sf_measure_atom_count(m); ++i) {
    double x = 0, y = 0, mass = 0;
    check(sf_measure_atom(m, i, &x, &y, &mass), "atom");
    summary["atoms"].push_back({{"location", {x, y}}, {"mass", mass}});
  }
  char *js = nullptr;
  check(sf_measure_to_json(m, &js), "export");
  out.write("measure.json", take(js));
  out.write("summary.json", summary.dump(2) + "\n");
  if (histogram) {
    char *csv = nullptr;
    check(sf_measure_histogram_csv(m, &csv), "histogram");
    out.write("histogram.csv", take(csv));
  }
  std::cout << "ac mass " << fmt(ac) << ", atom mass " << fmt(atoms) << ", singular diffuse mass " << fmt(diffuse)
            << "\n";
}

std::vector<double> pieces_from_config(const json &config) {
  std::vector<double> flat;
  try {
    for (const json &p : config.at("pieces")) {
      auto q = p.get<std::vector<double>>();
      if (q.size() != 4) input_error("each piece is [lo, hi, velocity, height]");
      flat.insert(flat.end(), q.begin(), q.end());
    }
  } catch (const json::exception &e) {
    input_error(std::string("config pieces: ") + e.what());
  }
  return flat;
}

void run_ma(const MaArgs &a, const json &config, const Output &out) {
  std::vector<double> ts = parse_list(a.t);
  require(ts.size() == 1 && ts[0] > 0.0, "ma takes a single positive --t");
  double t = ts[0];
  require(a.dims == 1 || a.dims == 2, "--dims must be 1 or 2");
  if (a.dims == 1) {
    std::vector<double> flat;
    if (config.contains("pieces")) {
      flat = pieces_from_config(config);
    } else if (a.example == "abs") {
      flat = {-1, 0, 1, 0, 0, 1, -1, 0};  // phi = -|x| on [-1, 1]
    } else if (a.example == "convex") {
      flat = {-1, 0, -1, 0, 0, 1, 1, 0};  // phi = |x| on [-1, 1]
    } else {
      input_error("unknown 1D example '" + a.example + "' (abs, convex)");
    }
    sf_measure *m = nullptr;
    check(sf_measure_ma_1d(flat.data(), flat.size() / 4, t, &m), "monge-ampere");
    Measure owned(m);
    write_measure(out, owned.get(), false);
    return;
  }
  require(a.grid >= 16, "--grid must be at least 16");
  require(a.bins >= 4, "--bins must be at least 4");
  sf_grid_options opt = sf_grid_options_default();
  opt.grid = a.grid;
  opt.bins = a.bins;
  sf_measure *m = nullptr;
  if (!a.input.empty()) {
    std::string text = read_text(a.input);
    sf_potential *p = nullptr;
    check(sf_potential_from_json(text.c_str(), &p), "reading " + a.input);
    Potential pot(p);
    check(sf_measure_ma_grid_potential(pot.get(), t, &opt, &m), "monge-ampere");
  } else {
    std::vector<double> square = {-1, -1, 1, -1, 1, 1, -1, 1};
    sf_field_fn fn = nullptr;
    if (a.example == "tent" || a.example == "abs") fn = tent;
    else if (a.example == "bowl") fn = bowl;
    else if (a.example == "max-affine") fn = max_affine;
    else input_error("unknown 2D example '" + a.example + "' (tent, bowl, max-affine)");
    check(sf_measure_ma_grid(fn, nullptr, square.data(), 4, t, &opt, &m), "monge-ampere");
  }
  Measure owned(m);
  write_measure(out, owned.get(), true);
}

// ---- cantor ----

struct CantorArgs {
  int depth = 12;
  std::string t = "0.25,0.5,1";
  std::size_t samples = 2049;
  std::uint64_t seed = 1;
};

void run_cantor(const CantorArgs &a, const Output &out) {
  require(a.depth >= 1 && a.depth <= 20, "--depth must be in [1, 20]");
  require(a.samples >= 2, "--samples must be at least 2");
  std::vector<double> ts = parse_list(a.t);
  require(!ts.empty(), "--t needs at least one value");
  for (double t : ts) require(t > 0.0 && std::isfinite(t), "--t values must be positive");
  char *csv = nullptr, *svg = nullptr;
  check(sf_lax_profiles(ts.data(), ts.size(), a.depth, a.samples, &csv, &svg), "profiles");
  out.write("cantor.csv", take(csv));
  out.write("cantor.svg", take(svg));
  json summary = json::array();
  for (double t : ts) {
    double gaps = 0, fat = 0;
    int oleinik = 0;
    check(sf_cantor_flow(a.depth, t, &gaps, &fat), "flow");
    check(sf_oleinik_check(a.depth, t, 10000, a.seed, &oleinik), "oleinik");
    summary.push_back({{"t", t}, {"depth", a.depth}, {"gap_total", gaps}, {"fat_measure", fat},
                       {"oleinik", oleinik != 0}});
  }
  out.write("cantor_summary.json", summary.dump(2) + "\n");
  std::cout << "wrote " << ts.size() << " profiles at depth " << a.depth << "\n";
}

// ---- pack ----

struct PackArgs {
  std::string kind = "apollonian";
  int generations = 6;
  std::size_t sides = 256;
  std::size_t count = 500;
  std::size_t grid = 512;
  double target = 0.5;
  std::uint64_t seed = 1;
  std::size_t budget = 10'000'000;
  std::size_t resolution = 200;
};

void run_pack(const PackArgs &a, const Output &out) {
  sf_packing *p = nullptr;
  std::vector<double> sq = unit_square();
  if (a.kind == "apollonian") {
    require(a.generations >= 0 && a.generations <= 10, "--generations must be in [0, 10]");
    require(a.sides >= 8, "--sides must be at least 8");
    check(sf_packing_apollonian(nullptr, a.generations, a.sides, &p), "apollonian");
  } else if (a.kind == "osculatory") {
    require(a.count >= 1, "--count must be positive");
    require(a.grid >= 16, "--grid must be at least 16");
    check(sf_packing_osculatory(sq.data(), 4, nullptr, a.count, a.grid, &p), "osculatory");
  } else if (a.kind == "vitali") {
    require(a.target > 0.0 && a.target < 1.0, "--target must be in (0, 1)");
    check(sf_packing_vitali(sq.data(), 4, a.target, a.seed, a.budget, &p), "vitali");
  } else {
    input_error("unknown --kind '" + a.kind + "' (apollonian, osculatory, vitali)");
  }
  Packing packing(p);
  char *csv = nullptr, *svg = nullptr, *bowl = nullptr;
  check(sf_packing_to_csv(packing.get(), &csv), "export");
  out.write("packing.csv", take(csv));
  check(sf_packing_to_svg(packing.get(), &svg), "render");
  out.write("packing.svg", take(svg));
  check(sf_packing_bowl_svg(packing.get(), a.resolution, &bowl), "render");
  out.write("bowl.svg", take(bowl));
  std::cout << a.kind << ": " << sf_packing_size(packing.get()) << " disks, covered fraction "
            << fmt(sf_packing_covered_fraction(packing.get())) << "\n";
}

// ---- stability ----

struct StabilityArgs {
  std::string ns = "4,16,64,256";
  double ratio = std::exp2(-1.0 / 16.0);
  std::string t = "1";
  std::size_t tests = 64;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

void run_stability(const StabilityArgs &a, const Output &out) {
  std::vector<double> raw = parse_list(a.ns);
  require(!raw.empty(), "--ns needs at least one value");
  std::vector<std::size_t> ns;
  for (double v : raw) {
    require(v >= 1.0 && v == std::floor(v), "--ns entries must be positive integers");
    require(ns.empty() || static_cast<std::size_t>(v) >= ns.back(), "--ns must be nondecreasing");
    ns.push_back(static_cast<std::size_t>(v));
  }
  std::vector<double> ts = parse_list(a.t);
  require(ts.size() == 1 && ts[0] >= 0.0, "stability takes a single nonnegative --t");
  require(a.ratio > 0.0 && a.ratio < 1.0, "--ratio must be in (0, 1)");
  require(a.tol > 0.0, "--tol must be positive");
  std::vector<double> sq = unit_square();
  std::vector<sf_stability_row> rows(ns.size());
  check(sf_stability_experiment(sq.data(), 4, a.ratio, ns.data(), ns.size(), ts[0], a.tests, a.seed, a.tol,
                                rows.data()),
        "stability");
  std::string csv = "n,bl_distance,solver_residual,wall_time\n";
  for (const auto &r : rows)
    csv += std::to_string(r.n) + "," + fmt(r.distance) + "," + fmt(r.solver_residual) + "," + fmt(r.wall_time) +
           "\n";
  out.write("stability.csv", csv);
  std::cout << csv;
}

}  // namespace

int main(int argc, char **argv) {
  if (const char *env = std::getenv("SHARDFLOW_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) sf_set_threads(n);
  }

  CLI::App app{"shardflow: convex potentials, breaking flows and Monge-Ampere diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sf_version());

  SolveArgs solve;
  Command c_solve(app, "solve", "Solve for a convex potential from mass-velocity data");
  c_solve.add("input", solve.input, "Problem JSON");
  c_solve.add("random", solve.random, "Generate a random problem with this many sites");
  c_solve.add("seed", solve.seed, "Random seed");
  c_solve.add("tol", solve.tol, "Max area residual");
  c_solve.add("max-newton", solve.max_newton, "Newton iteration cap");

  BreakArgs brk;
  Command c_break(app, "break", "Render the breaking flow at given times");
  c_break.add("input", brk.input, "Solution JSON");
  c_break.add("packing", brk.packing, "Packing CSV (disks move with their centres)");
  c_break.add("t", brk.t, "Comma-separated times");
  c_break.add("sides", brk.sides, "Polygon sides per disk");

  MaArgs ma;
  Command c_ma(app, "ma", "Monge-Ampere decomposition of |x|^2/2 + t phi");
  c_ma.add("dims", ma.dims, "1 (exact) or 2 (grid)");
  c_ma.add("example", ma.example, "Built-in phi: 1D abs|convex, 2D tent|bowl|max-affine");
  c_ma.add("input", ma.input, "Solution JSON used as phi (2D)");
  c_ma.add("t", ma.t, "Time t > 0");
  c_ma.add("grid", ma.grid, "Grid nodes per axis (2D)");
  c_ma.add("bins", ma.bins, "Histogram bins per axis (2D)");

  CantorArgs cantor;
  Command c_cantor(app, "cantor", "Cantor expansion wave profiles");
  c_cantor.add("depth", cantor.depth, "Cantor construction depth");
  c_cantor.add("t", cantor.t, "Comma-separated times");
  c_cantor.add("samples", cantor.samples, "Samples per profile");
  c_cantor.add("seed", cantor.seed, "Seed for the Oleinik check");

  PackArgs pack;
  Command c_pack(app, "pack", "Generate a disk packing");
  c_pack.add("kind", pack.kind, "apollonian, osculatory or vitali");
  c_pack.add("generations", pack.generations, "Apollonian generations");
  c_pack.add("sides", pack.sides, "Sides of the polygon approximating the enclosing circle");
  c_pack.add("count", pack.count, "Osculatory disk count");
  c_pack.add("grid", pack.grid, "Osculatory distance-field grid");
  c_pack.add("target", pack.target, "Vitali covered fraction");
  c_pack.add("seed", pack.seed, "Random seed");
  c_pack.add("budget", pack.budget, "Vitali sample budget");
  c_pack.add("resolution", pack.resolution, "Heightmap resolution");

  StabilityArgs stab;
  Command c_stab(app, "stability", "Weak-* stability of truncated countable data");
  c_stab.add("ns", stab.ns, "Comma-separated truncation sizes; the last is the reference");
  c_stab.add("ratio", stab.ratio, "Geometric mass ratio");
  c_stab.add("t", stab.t, "Time t");
  c_stab.add("tests", stab.tests, "Test functions in the dictionary");
  c_stab.add("seed", stab.seed, "Dictionary seed");
  c_stab.add("tol", stab.tol, "Solver tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Command *cmd = nullptr;
    std::function<void()> run;
    if (c_solve.app()->parsed()) {
      cmd = &c_solve;
      run = [&] { run_solve(solve, cmd->output()); };
    } else if (c_break.app()->parsed()) {
      cmd = &c_break;
      run = [&] { run_break(brk, cmd->output()); };
    } else if (c_ma.app()->parsed()) {
      cmd = &c_ma;
      run = [&] { run_ma(ma, cmd->config(), cmd->output()); };
    } else if (c_cantor.app()->parsed()) {
      cmd = &c_cantor;
      run = [&] { run_cantor(cantor, cmd->output()); };
    } else if (c_pack.app()->parsed()) {
      cmd = &c_pack;
      run = [&] { run_pack(pack, cmd->output()); };
    } else {
      cmd = &c_stab;
      run = [&] { run_stability(stab, cmd->output()); };
    }
    cmd->resolve();
    cmd->output().prepare();
    run();
  } catch (const CommandFailure &f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kExitOk;
}
