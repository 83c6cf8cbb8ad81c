#pragma once

#include <functional>
#include <vector>

#include "speclen/spectral_triple.hpp"

namespace speclen {

enum class TorusScheme { central, block };

/** Per-site frame and metric data for the geometries the builders support. */
struct LatticeGeometry {
  enum class Kind { circle1d, torus2d };
  Kind kind = Kind::circle1d;
  int n = 0;           // circle sites
  int nx = 0, ny = 0;  // torus sites
  double spacing_x = 0.0;
  double spacing_y = 0.0;
  std::vector<double> metric_samples;    // 1D: g(x_i) > 0; 2D: identity metric, ones
  std::vector<double> vielbein_samples;  // 1D: e(x_i) = 1/sqrt(g); 2D: ones
  // The spin connection vanishes for every supported geometry (1D, flat 2D).
};

/** e(x) = 1/sqrt(g(x)) per site, so that g^{11}(x) = e(x)^2 eta^{11} = 1/g(x). */
std::vector<double> vielbein_from_metric_1d(const std::vector<double>& g);

/** Validated 1D circle geometry from metric samples. */
LatticeGeometry circle_geometry(int n, double L, const std::vector<double>& g);

/** Validated flat 2D torus geometry. */
LatticeGeometry torus_geometry(int nx, int ny, double lx, double ly);

/**
 * Circle triple with spinor_dim 2 and the forward-difference block operator
 * D = ((0, d), (d^dagger, 0)), (d psi)(x) = ebar(x) (psi(x+a) - psi(x))/a,
 * where ebar(x) is the geometric mean of 1/sqrt(g) at the edge endpoints.
 * Site weights are sqrt(g(x)) a; the commutator norm is edge-local with
 * per-edge coefficient ebar/a. Metric samples are g(x_i) at x_i = i a.
 */
SpectralTriple circle_triple(int n, double L, const std::vector<double>& g);

/** Same, sampling the metric callable at the lattice points. */
SpectralTriple circle_triple(int n, double L, const std::function<double(double)>& g);

/**
 * Flat-torus triple with spinor_dim 2, periodic in both directions, sites
 * indexed x + nx * y. Scheme central: D = sigma_x (x) delta_x + sigma_y (x)
 * delta_y with antisymmetric differences delta = -i(S - S^dagger)/(2a).
 * Scheme block: D = ((0, d_x - i d_y), (d_x^dagger + i d_y^dagger, 0)) with
 * forward differences. Not edge-local.
 */
SpectralTriple torus_triple(int nx, int ny, double lx, double ly, TorusScheme scheme);

/** Two abstract points with D = ((0, m), (m, 0)); spectral distance 1/|m|. */
SpectralTriple two_point_triple(double m);

/** D squared. */
CMatrix dirac_laplacian(const SpectralTriple& t);

}  // namespace speclen
