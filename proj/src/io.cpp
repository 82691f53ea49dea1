// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "shardflow/error.hpp"

namespace shardflow {
namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception &e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto with_parse_errors(F &&f) {
  try {
    return f();
  } catch (const json::exception &e) {
    throw Error(ErrorKind::Parse, std::string("unexpected JSON layout: ") + e.what());
  }
}

Vec2 point_from(const json &j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "a point must be [x, y]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json point_to(Vec2 p) { return json::array({p.x, p.y}); }

ConvexPolygon polygon_from(const json &j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "a polygon must be an array of points");
  std::vector<Vec2> v;
  for (const auto &p : j) v.push_back(point_from(p));
  return ConvexPolygon(std::move(v));
}

json polygon_to(const ConvexPolygon &poly) {
  json out = json::array();
  for (const Vec2 &p : poly.vertices()) out.push_back(point_to(p));
  return out;
}

void require_domain(const ConvexPolygon &domain) {
  if (domain.size() < 3 || !is_valid_convex(domain) || area(domain) <= 0.0)
    throw Error(ErrorKind::InvalidArgument,
                "domain must be a counterclockwise convex polygon with positive area");
}

}  // namespace

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ConvexPolygon parse_polygon(std::string_view text) {
  json j = parse_json(text);
  return with_parse_errors([&] { return polygon_from(j); });
}

MassVelocityData parse_problem(std::string_view text) {
  json j = parse_json(text);
  MassVelocityData data = with_parse_errors([&] {
    MassVelocityData d;
    d.domain = polygon_from(j.at("domain"));
    for (const auto &p : j.at("pairs")) d.pairs.push_back({p.at("m").get<double>(), point_from(p.at("v"))});
    return d;
  });
  require_domain(data.domain);
  return data;
}

std::string problem_to_json(const MassVelocityData &data) {
  json j;
  j["domain"] = polygon_to(data.domain);
  j["pairs"] = json::array();
  for (const auto &p : data.pairs) j["pairs"].push_back({{"m", p.mass}, {"v", point_to(p.velocity)}});
  return j.dump(2) + "\n";
}

std::string solution_to_json(const PiecewiseAffinePotential &pot, double residual) {
  json j;
  j["domain"] = polygon_to(pot.domain);
  j["velocities"] = json::array();
  for (Vec2 v : pot.velocities) j["velocities"].push_back(point_to(v));
  j["heights"] = pot.heights;
  j["cells"] = json::array();
  for (const auto &c : pot.cells) j["cells"].push_back(polygon_to(c));
  j["residual"] = residual;
  return j.dump(2) + "\n";
}

PiecewiseAffinePotential parse_solution(std::string_view text) {
  json j = parse_json(text);
  PiecewiseAffinePotential pot = with_parse_errors([&] {
    PiecewiseAffinePotential p;
    p.domain = polygon_from(j.at("domain"));
    for (const auto &v : j.at("velocities")) p.velocities.push_back(point_from(v));
    p.heights = j.at("heights").get<std::vector<double>>();
    if (j.contains("cells"))
      for (const auto &c : j.at("cells")) p.cells.push_back(polygon_from(c));
    return p;
  });
  require_domain(pot.domain);
  if (pot.velocities.size() != pot.heights.size())
    throw Error(ErrorKind::Parse, "velocities and heights differ in length");
  if (pot.cells.empty())
    pot.cells = potential_cells(pot.domain, pot.velocities, pot.heights);
  else if (pot.cells.size() != pot.velocities.size())
    throw Error(ErrorKind::Parse, "cells and velocities differ in length");
  return pot;
}

std::string scene_to_json(const BreakingScene &scene) {
  json j;
  j["t"] = scene.time;
  j["shards"] = json::array();
  for (const auto &s : scene.shards) j["shards"].push_back(polygon_to(s));
  j["velocities"] = json::array();
  for (Vec2 v : scene.velocities) j["velocities"].push_back(point_to(v));
  return j.dump(2) + "\n";
}

std::string measure_to_json(const MeasureDecomposition &mu) {
  json j;
  j["dims"] = mu.dims;
  j["ac_parts"] = json::array();
  for (const auto &p : mu.ac_parts) {
    json part;
    if (const auto *iv = std::get_if<Interval>(&p.support))
      part["interval"] = json::array({iv->lo, iv->hi});
    else
      part["polygon"] = polygon_to(std::get<ConvexPolygon>(p.support));
    part["density"] = p.density;
    j["ac_parts"].push_back(part);
  }
  j["atoms"] = json::array();
  for (const auto &a : mu.atoms) {
    json loc = mu.dims == 1 ? json(a.location.x) : point_to(a.location);
    j["atoms"].push_back({{"location", loc}, {"mass", a.mass}});
  }
  j["singular_diffuse_mass"] = mu.singular_diffuse_mass;
  j["ac_mass"] = mu.ac_mass();
  j["atom_mass"] = mu.atom_mass();
  j["total_mass"] = mu.total_mass();
  return j.dump(2) + "\n";
}

std::string packing_to_csv(const DiskPacking &packing) {
  std::string out = "center_x,center_y,radius,curvature\n";
  auto row = [&](const Disk &d) {
    out += format_double(d.center.x) + "," + format_double(d.center.y) + "," +
           format_double(d.radius) + "," + format_double(d.curvature) + "\n";
  };
  if (packing.enclosing) row(*packing.enclosing);
  for (const Disk &d : packing.disks) row(d);
  return out;
}

DiskPacking parse_packing_csv(std::string_view csv, const ConvexPolygon &fallback_domain,
                              std::size_t sides) {
  DiskPacking out;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("center_x", 0) == 0) continue;
    double v[4];
    const char *p = line.data();
    const char *end = line.data() + line.size();
    for (int k = 0; k < 4; ++k) {
      auto res = std::from_chars(p, end, v[k]);
      if (res.ec != std::errc()) throw Error(ErrorKind::Parse, "bad number on CSV line " + std::to_string(line_no));
      p = res.ptr;
      if (k < 3) {
        if (p == end || *p != ',') throw Error(ErrorKind::Parse, "expected 4 columns on CSV line " + std::to_string(line_no));
        ++p;
      }
    }
    if (!(v[2] > 0.0)) throw Error(ErrorKind::Parse, "nonpositive radius on CSV line " + std::to_string(line_no));
    Disk d{{v[0], v[1]}, v[2], v[3]};
    if (d.curvature < 0.0) {
      if (out.enclosing) throw Error(ErrorKind::Parse, "more than one enclosing circle");
      out.enclosing = d;
    } else {
      out.disks.push_back(d);
    }
  }
  out.domain = out.enclosing ? regular_polygon(out.enclosing->center, out.enclosing->radius, sides, true)
                             : fallback_domain;
  return out;
}

std::string histogram_to_csv(const Histogram2D &hist) {
  std::string out = "bin_center_x,bin_center_y,mass\n";
  for (std::size_t i = 0; i < hist.x.count; ++i)
    for (std::size_t j = 0; j < hist.y.count; ++j)
      out += format_double(hist.x.at(i)) + "," + format_double(hist.y.at(j)) + "," +
             format_double(hist.mass[i * hist.y.count + j]) + "\n";
  return out;
}

void write_grid(const GridFunction &f, const std::string &prefix) {
  static_assert(std::endian::native == std::endian::little, "grid files are little endian");
  json header;
  header["dims"] = f.dims();
  header["origin"] = json::array();
  header["spacing"] = json::array();
  header["shape"] = json::array();
  for (const Axis &a : f.axes) {
    header["origin"].push_back(a.origin);
    header["spacing"].push_back(a.spacing);
    header["shape"].push_back(a.count);
  }
  std::vector<int> mask(f.values.size());
  std::string bin(f.values.size() * sizeof(double), '\0');
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    bool finite = f.values[k] != std::numeric_limits<double>::infinity();
    mask[k] = finite ? 1 : 0;
    std::memcpy(bin.data() + k * sizeof(double), &f.values[k], sizeof(double));
  }
  header["mask"] = mask;
  write_file(prefix + ".json", header.dump() + "\n");
  write_file(prefix + ".bin", bin);
}

GridFunction read_grid(const std::string &prefix) {
  json header = parse_json(read_file(prefix + ".json"));
  std::string bin = read_file(prefix + ".bin");
  GridFunction f = with_parse_errors([&] {
    GridFunction g;
    int dims = header.at("dims").get<int>();
    if (dims != 1 && dims != 2) throw Error(ErrorKind::Parse, "grid dims must be 1 or 2");
    for (int d = 0; d < dims; ++d)
      g.axes.push_back({header.at("origin").at(d).get<double>(), header.at("spacing").at(d).get<double>(),
                        header.at("shape").at(d).get<std::size_t>()});
    return g;
  });
  std::size_t n = 1;
  for (const Axis &a : f.axes) {
    if (!(a.spacing > 0.0)) throw Error(ErrorKind::Parse, "grid spacing must be positive");
    n *= a.count;
  }
  if (bin.size() != n * sizeof(double)) throw Error(ErrorKind::Parse, "grid value file has the wrong size");
  f.values.resize(n);
  std::memcpy(f.values.data(), bin.data(), bin.size());
  return f;
}

}  // namespace shardflow
