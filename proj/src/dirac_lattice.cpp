#include "speclen/dirac_lattice.hpp"

#include <cmath>
#include <string>

namespace speclen {

namespace {

const cplx kI{0.0, 1.0};

std::vector<Point> indexed_points_1d(int n, double a) {
  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = Point{std::to_string(i), {i * a}};
  return pts;
}

}  // namespace

std::vector<double> vielbein_from_metric_1d(const std::vector<double>& g) {
  std::vector<double> e(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0)) throw std::domain_error("vielbein_from_metric_1d: metric must be positive");
    e[i] = 1.0 / std::sqrt(g[i]);
  }
  return e;
}

LatticeGeometry circle_geometry(int n, double L, const std::vector<double>& g) {
  if (n < 2) throw std::invalid_argument("circle_geometry: need at least 2 sites");
  if (!(L > 0.0)) throw std::invalid_argument("circle_geometry: circumference must be positive");
  if (static_cast<int>(g.size()) != n)
    throw std::invalid_argument("circle_geometry: one metric sample per site required");
  LatticeGeometry geo;
  geo.kind = LatticeGeometry::Kind::circle1d;
  geo.n = n;
  geo.spacing_x = L / n;
  geo.metric_samples = g;
  geo.vielbein_samples = vielbein_from_metric_1d(g);
  for (int i = 0; i < n; ++i) {
    const double e = geo.vielbein_samples[i];
    if (std::abs(e * e - 1.0 / g[i]) > 1e-12 * std::max(1.0, 1.0 / g[i]))
      throw std::domain_error("circle_geometry: vielbein does not reproduce the inverse metric");
  }
  return geo;
}

LatticeGeometry torus_geometry(int nx, int ny, double lx, double ly) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("torus_geometry: need at least 2 sites per direction");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw std::invalid_argument("torus_geometry: side lengths must be positive");
  LatticeGeometry geo;
  geo.kind = LatticeGeometry::Kind::torus2d;
  geo.nx = nx;
  geo.ny = ny;
  geo.spacing_x = lx / nx;
  geo.spacing_y = ly / ny;
  geo.metric_samples.assign(static_cast<std::size_t>(nx) * ny, 1.0);
  geo.vielbein_samples.assign(static_cast<std::size_t>(nx) * ny, 1.0);
  return geo;
}

SpectralTriple circle_triple(int n, double L, const std::vector<double>& g) {
  const LatticeGeometry geo = circle_geometry(n, L, g);
  const double a = geo.spacing_x;
  const std::vector<double>& e = geo.vielbein_samples;

  CMatrix d(2 * n, 2 * n);
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double ebar = std::sqrt(e[i] * e[j]);
    // upper-right block: forward difference; lower-left block: its adjoint
    d(2 * i, 2 * i + 1) += -ebar / a;
    d(2 * i, 2 * j + 1) += ebar / a;
    d(2 * i + 1, 2 * i) += -ebar / a;
    d(2 * j + 1, 2 * i) += ebar / a;
    edges.push_back(Edge{i, j, ebar / a});
  }

  std::vector<double> weights(n);
  for (int i = 0; i < n; ++i) weights[i] = std::sqrt(g[i]) * a;

  SpectralTriple t = new_triple(indexed_points_1d(n, a), 2, std::move(d), std::move(weights));
  t.edge_local = true;
  t.edges = std::move(edges);
  return t;
}

SpectralTriple circle_triple(int n, double L, const std::function<double(double)>& g) {
  std::vector<double> samples(n);
  const double a = L / n;
  for (int i = 0; i < n; ++i) samples[i] = g(i * a);
  return circle_triple(n, L, samples);
}

SpectralTriple torus_triple(int nx, int ny, double lx, double ly, TorusScheme scheme) {
  const LatticeGeometry geo = torus_geometry(nx, ny, lx, ly);
  const double ax = geo.spacing_x;
  const double ay = geo.spacing_y;
  const int sites = nx * ny;

  const auto site = [&](int x, int y) { return ((x % nx + nx) % nx) + nx * ((y % ny + ny) % ny); };

  CMatrix d(2 * sites, 2 * sites);
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) {
      const int i = site(x, y);
      const int ix = site(x + 1, y);
      const int iy = site(x, y + 1);
      if (scheme == TorusScheme::central) {
        // sigma_x (x) delta_x + sigma_y (x) delta_y, delta = -i(S - S^dagger)/(2a)
        const cplx cx = -kI / (2.0 * ax);
        d(2 * i, 2 * ix + 1) += cx;
        d(2 * ix, 2 * i + 1) += -cx;
        d(2 * i + 1, 2 * ix) += cx;
        d(2 * ix + 1, 2 * i) += -cx;
        const cplx cy = -kI / (2.0 * ay);
        d(2 * i, 2 * iy + 1) += -kI * cy;
        d(2 * iy, 2 * i + 1) += kI * cy;
        d(2 * i + 1, 2 * iy) += kI * cy;
        d(2 * iy + 1, 2 * i) += -kI * cy;
      } else {
        // A = d_x - i d_y in the upper-right block, A^dagger below
        const cplx diag = cplx{-1.0 / ax, 0.0} - kI * (-1.0 / ay);
        d(2 * i, 2 * i + 1) += diag;
        d(2 * i + 1, 2 * i) += std::conj(diag);
        d(2 * i, 2 * ix + 1) += 1.0 / ax;
        d(2 * ix + 1, 2 * i) += 1.0 / ax;
        d(2 * i, 2 * iy + 1) += -kI / ay;
        d(2 * iy + 1, 2 * i) += std::conj(-kI / ay);
      }
    }

  std::vector<Point> pts(sites);
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      pts[site(x, y)] = Point{std::to_string(site(x, y)), {x * ax, y * ay}};

  SpectralTriple t = new_triple(std::move(pts), 2, std::move(d),
                                std::vector<double>(sites, ax * ay));
  t.torus = TorusShape{nx, ny, lx, ly};
  return t;
}

SpectralTriple two_point_triple(double m) {
  if (m == 0.0 || !std::isfinite(m)) throw std::invalid_argument("two_point_triple: mass must be nonzero");
  CMatrix d(2, 2);
  d(0, 1) = m;
  d(1, 0) = m;
  SpectralTriple t = new_triple({Point{"0", {0.0}}, Point{"1", {1.0}}}, 1, std::move(d), {1.0, 1.0});
  t.edge_local = true;
  t.edges = {Edge{0, 1, std::abs(m)}};
  return t;
}

CMatrix dirac_laplacian(const SpectralTriple& t) { return t.dirac * t.dirac; }

}  // namespace speclen
