#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "speclen/dirac_lattice.hpp"
#include "speclen/distance.hpp"

namespace speclen {

/** Invalid or inconsistent experiment input; the CLI maps this to exit code 2. */
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MetricSpec {
  enum class Family { constant, conformal_sine };
  Family family = Family::constant;
  double c = 1.0;  // constant: g(x) = c
  double A = 0.0;  // conformal_sine: g(x) = (1 + A sin(2 pi k x / L))^2
  int k = 1;
};

struct GeometryConfig {
  enum class Kind { circle1d, torus2d, two_point };
  Kind kind = Kind::circle1d;
  int n = 0;
  int nx = 0, ny = 0;
  double length = 0.0;
  double lx = 0.0, ly = 0.0;
  TorusScheme scheme = TorusScheme::block;
  MetricSpec metric;
  double mass = 1.0;  // two_point
};

struct SolverConfig {
  std::string method = "auto";  // exact | subgradient | auto
  int max_iter = 5000;
  int restarts = 3;
  std::uint64_t seed = 42;
  double feasibility_tol = 1e-9;
  double step0 = 0.0;
};

struct QueryConfig {
  bool all_pairs = false;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<double, double>> fractions;  // sweep endpoints, as arc fractions
};

struct ExperimentConfig {
  int schema_version = 1;
  GeometryConfig geometry;
  SolverConfig solver;
  QueryConfig query;
  std::vector<int> sweep_ns;
  std::string out_path;
};

/** Parse and validate a JSON experiment file; throws ConfigError on any defect. */
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

/** The metric g as a callable on [0, L), for builders and the geodesic oracle. */
std::function<double(double)> metric_function(const MetricSpec& spec, double L);

/** Build the configured triple (circle, torus, or two-point). */
SpectralTriple build_triple(const GeometryConfig& geo);

/** Same geometry at a different circle resolution (sweep support). */
SpectralTriple build_triple_at(const GeometryConfig& geo, int n);

/** Subgradient options assembled from the solver block. */
SubgradientOpts subgradient_opts(const SolverConfig& solver);

}  // namespace speclen
