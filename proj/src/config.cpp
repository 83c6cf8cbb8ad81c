#include "speclen/config.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

namespace speclen {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

MetricSpec parse_metric(const json& block) {
  MetricSpec spec;
  const std::string family = block.value("family", "constant");
  if (family == "constant") {
    spec.family = MetricSpec::Family::constant;
    spec.c = block.value("c", 1.0);
    if (!(spec.c > 0.0)) fail("constant metric requires c > 0");
  } else if (family == "conformal_sine") {
    spec.family = MetricSpec::Family::conformal_sine;
    spec.A = block.value("A", 0.0);
    spec.k = block.value("k", 1);
    if (!(std::abs(spec.A) < 1.0)) fail("conformal_sine metric requires |A| < 1");
    if (spec.k < 1) fail("conformal_sine metric requires k >= 1");
  } else {
    fail("unknown metric family '" + family + "'");
  }
  return spec;
}

GeometryConfig parse_geometry(const json& block) {
  GeometryConfig geo;
  const std::string kind = block.value("kind", "");
  if (kind == "circle1d") {
    geo.kind = GeometryConfig::Kind::circle1d;
    geo.n = block.value("N", 0);
    geo.length = block.value("L", 0.0);
    if (geo.n < 2) fail("circle1d requires N >= 2");
    if (!(geo.length > 0.0)) fail("circle1d requires L > 0");
    if (block.contains("metric")) geo.metric = parse_metric(block["metric"]);
  } else if (kind == "torus2d") {
    geo.kind = GeometryConfig::Kind::torus2d;
    geo.nx = block.value("Nx", 0);
    geo.ny = block.value("Ny", 0);
    geo.lx = block.value("Lx", 0.0);
    geo.ly = block.value("Ly", 0.0);
    if (geo.nx < 2 || geo.ny < 2) fail("torus2d requires Nx, Ny >= 2");
    if (!(geo.lx > 0.0) || !(geo.ly > 0.0)) fail("torus2d requires Lx, Ly > 0");
    const std::string scheme = block.value("scheme", "block");
    if (scheme == "block")
      geo.scheme = TorusScheme::block;
    else if (scheme == "central")
      geo.scheme = TorusScheme::central;
    else
      fail("unknown torus scheme '" + scheme + "'");
  } else if (kind == "two_point") {
    geo.kind = GeometryConfig::Kind::two_point;
    geo.mass = block.value("m", 0.0);
    if (geo.mass == 0.0 || !std::isfinite(geo.mass)) fail("two_point requires nonzero m");
  } else {
    fail("unknown geometry kind '" + kind + "'");
  }
  return geo;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.schema_version = doc.value("schema_version", 0);
  if (cfg.schema_version != 1) fail("unrecognized schema_version");
  if (!doc.contains("geometry")) fail("missing geometry block");
  cfg.geometry = parse_geometry(doc["geometry"]);

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    cfg.solver.method = s.value("method", "auto");
    if (cfg.solver.method != "auto" && cfg.solver.method != "exact" &&
        cfg.solver.method != "subgradient")
      fail("solver method must be exact, subgradient, or auto");
    cfg.solver.max_iter = s.value("max_iter", 5000);
    cfg.solver.restarts = s.value("restarts", 3);
    cfg.solver.seed = s.value("seed", static_cast<std::uint64_t>(42));
    cfg.solver.feasibility_tol = s.value("feasibility_tol", 1e-9);
    cfg.solver.step0 = s.value("step0", 0.0);
    if (cfg.solver.max_iter < 1) fail("solver max_iter must be >= 1");
    if (cfg.solver.restarts < 1) fail("solver restarts must be >= 1");
    if (!(cfg.solver.feasibility_tol > 0.0)) fail("solver feasibility_tol must be > 0");
  }

  if (doc.contains("query")) {
    const json& q = doc["query"];
    cfg.query.all_pairs = q.value("all_pairs", false);
    if (q.contains("pairs")) {
      for (const json& row : q["pairs"]) {
        if (!row.is_array() || row.size() != 2) fail("query pairs must be [p, q] site pairs");
        cfg.query.pairs.emplace_back(row[0].get<int>(), row[1].get<int>());
      }
    }
    if (q.contains("fractions")) {
      for (const json& row : q["fractions"]) {
        if (!row.is_array() || row.size() != 2) fail("query fractions must be [fp, fq] pairs");
        const double fp = row[0].get<double>();
        const double fq = row[1].get<double>();
        if (fp < 0.0 || fp >= 1.0 || fq < 0.0 || fq >= 1.0)
          fail("query fractions must lie in [0, 1)");
        cfg.query.fractions.emplace_back(fp, fq);
      }
    }
  }

  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    if (s.contains("Ns")) cfg.sweep_ns = s["Ns"].get<std::vector<int>>();
    for (std::size_t i = 0; i + 1 < cfg.sweep_ns.size(); ++i)
      if (cfg.sweep_ns[i] >= cfg.sweep_ns[i + 1]) fail("sweep Ns must be strictly ascending");
    for (int n : cfg.sweep_ns)
      if (n < 2) fail("sweep Ns must be >= 2");
  }

  if (doc.contains("output")) cfg.out_path = doc["output"].value("path", "");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::function<double(double)> metric_function(const MetricSpec& spec, double L) {
  if (spec.family == MetricSpec::Family::constant) {
    const double c = spec.c;
    return [c](double) { return c; };
  }
  const double A = spec.A;
  const double w = 2.0 * M_PI * spec.k / L;
  return [A, w](double x) {
    const double root = 1.0 + A * std::sin(w * x);
    return root * root;
  };
}

SpectralTriple build_triple_at(const GeometryConfig& geo, int n) {
  if (geo.kind != GeometryConfig::Kind::circle1d)
    throw ConfigError("config: resolution sweeps require a circle1d geometry");
  return circle_triple(n, geo.length, metric_function(geo.metric, geo.length));
}

SpectralTriple build_triple(const GeometryConfig& geo) {
  switch (geo.kind) {
    case GeometryConfig::Kind::circle1d:
      return circle_triple(geo.n, geo.length, metric_function(geo.metric, geo.length));
    case GeometryConfig::Kind::torus2d:
      return torus_triple(geo.nx, geo.ny, geo.lx, geo.ly, geo.scheme);
    case GeometryConfig::Kind::two_point:
      return two_point_triple(geo.mass);
  }
  throw ConfigError("config: unreachable geometry kind");
}

SubgradientOpts subgradient_opts(const SolverConfig& solver) {
  SubgradientOpts opts;
  opts.max_iter = solver.max_iter;
  opts.restarts = solver.restarts;
  opts.seed = solver.seed;
  opts.feasibility_tol = solver.feasibility_tol;
  opts.step0 = solver.step0;
  return opts;
}

}  // namespace speclen
