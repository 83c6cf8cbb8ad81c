#include "speclen/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace speclen {

namespace {

double simpson_sqrt_g(double lo, double hi, double L, const std::function<double(double)>& g,
                      int panels) {
  const auto integrand = [&](double x) {
    double m = std::fmod(x, L);
    if (m < 0.0) m += L;
    const double gv = g(m);
    if (!(gv > 0.0)) throw std::domain_error("circle_geodesic: non-positive metric sample");
    return std::sqrt(gv);
  };
  const double h = (hi - lo) / panels;
  double acc = integrand(lo) + integrand(hi);
  for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * integrand(lo + i * h);
  return acc * h / 3.0;
}

}  // namespace

double circle_geodesic(double x, double y, double L, const std::function<double(double)>& g,
                       int lattice_sites) {
  if (!(L > 0.0)) throw std::invalid_argument("circle_geodesic: circumference must be positive");
  if (x < 0.0 || x >= L || y < 0.0 || y >= L)
    throw std::invalid_argument("circle_geodesic: coordinates must lie in [0, L)");
  if (x == y) return 0.0;
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  int panels = std::max(256, 4 * lattice_sites);
  if (panels % 2 == 1) ++panels;
  const double inner_arc = simpson_sqrt_g(lo, hi, L, g, panels);
  const double outer_arc = simpson_sqrt_g(hi, lo + L, L, g, panels);
  return std::min(inner_arc, outer_arc);
}

double torus_geodesic(const std::array<double, 2>& p, const std::array<double, 2>& q, double lx,
                      double ly) {
  if (!(lx > 0.0) || !(ly > 0.0))
    throw std::invalid_argument("torus_geodesic: side lengths must be positive");
  double best = std::numeric_limits<double>::infinity();
  for (int kx = -1; kx <= 1; ++kx)
    for (int ky = -1; ky <= 1; ++ky)
      best = std::min(best, std::hypot(q[0] - p[0] + kx * lx, q[1] - p[1] + ky * ly));
  return best;
}

std::vector<double> graph_distances_from(int sites, const std::vector<GraphEdge>& edges, int q) {
  if (q < 0 || q >= sites) throw std::invalid_argument("graph_shortest_path: site out of range");
  std::vector<std::vector<std::pair<int, double>>> adj(sites);
  for (const GraphEdge& e : edges) {
    if (e.u < 0 || e.u >= sites || e.v < 0 || e.v >= sites)
      throw std::invalid_argument("graph_shortest_path: edge endpoint out of range");
    if (!(e.length > 0.0)) throw std::invalid_argument("graph_shortest_path: edge lengths must be positive");
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  std::vector<double> dist(sites, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[q] = 0.0;
  heap.emplace(0.0, q);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, len] : adj[u]) {
      const double nd = d + len;
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  for (double d : dist)
    if (!std::isfinite(d)) throw std::domain_error("graph_shortest_path: graph is disconnected");
  return dist;
}

double graph_shortest_path(int sites, const std::vector<GraphEdge>& edges, int p, int q) {
  if (p < 0 || p >= sites) throw std::invalid_argument("graph_shortest_path: site out of range");
  return graph_distances_from(sites, edges, q)[p];
}

}  // namespace speclen
