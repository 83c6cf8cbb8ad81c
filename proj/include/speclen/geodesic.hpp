#pragma once

#include <array>
#include <functional>
#include <vector>

namespace speclen {

/**
 * Geodesic distance between circle coordinates x, y in [0, L): the smaller of
 * the two arc integrals of sqrt(g), by composite Simpson quadrature with
 * max(256, 4 * lattice_sites) panels per arc. Throws std::domain_error on a
 * non-positive metric sample.
 */
double circle_geodesic(double x, double y, double L, const std::function<double(double)>& g,
                       int lattice_sites = 0);

/** Flat-torus distance: minimum over winding offsets in {-1,0,1}^2 of the Euclidean length. */
double torus_geodesic(const std::array<double, 2>& p, const std::array<double, 2>& q, double lx,
                      double ly);

struct GraphEdge {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

/** Dijkstra distance between sites p and q over undirected positively weighted edges. */
double graph_shortest_path(int sites, const std::vector<GraphEdge>& edges, int p, int q);

/** Dijkstra distances from q to every site (infinity guarded by a connectivity check). */
std::vector<double> graph_distances_from(int sites, const std::vector<GraphEdge>& edges, int q);

}  // namespace speclen
