// Long-run subgradient baseline for the 16x16 block-scheme torus.
// Prints per-pair values at two iteration budgets plus a paste-ready
// table of the full-budget values for the regression suite.
#include <array>
#include <chrono>
#include <cstdio>

#include "speclen/dirac_lattice.hpp"
#include "speclen/distance.hpp"
#include "speclen/geodesic.hpp"

int main() {
  using namespace speclen;
  const int nx = 16, ny = 16;
  const double lx = 16.0, ly = 16.0;
  const SpectralTriple t = torus_triple(nx, ny, lx, ly, TorusScheme::block);

  // site(x, y) = x + nx*y; pairs cover axes, diagonals, and wraparound.
  const std::array<std::pair<int, int>, 10> pairs = {{
      {0, 1},     // (0,0)-(1,0)
      {0, 8},     // (0,0)-(8,0)
      {0, 128},   // (0,0)-(0,8)
      {0, 136},   // (0,0)-(8,8)
      {0, 67},    // (0,0)-(3,4)
      {50, 123},  // (2,3)-(11,7)
      {0, 15},    // (0,0)-(15,0) wrap
      {0, 255},   // (0,0)-(15,15) wrap
      {85, 170},  // (5,5)-(10,10)
      {30, 225},  // (14,1)-(1,14) double wrap
  }};

  SubgradientOpts fast;
  fast.max_iter = 20000;
  fast.restarts = 10;
  SubgradientOpts full;
  full.max_iter = 100000;
  full.restarts = 10;

  std::array<double, 10> pinned{};
  double total_fast = 0.0, total_full = 0.0;
  std::printf("%4s %4s %22s %22s %22s %10s %8s %8s\n", "p", "q", "geodesic", "value_fast",
              "value_full", "gap", "it_full", "conv");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [p, q] = pairs[k];
    const auto geo = torus_geodesic({t.points[p].coords[0], t.points[p].coords[1]},
                                    {t.points[q].coords[0], t.points[q].coords[1]}, lx, ly);
    const auto t0 = std::chrono::steady_clock::now();
    const DistanceResult rf = distance_subgradient(t, p, q, fast);
    const auto t1 = std::chrono::steady_clock::now();
    const DistanceResult rl = distance_subgradient(t, p, q, full);
    const auto t2 = std::chrono::steady_clock::now();
    total_fast += std::chrono::duration<double>(t1 - t0).count();
    total_full += std::chrono::duration<double>(t2 - t1).count();
    pinned[k] = rl.value;
    std::printf("%4d %4d %22.17g %22.17g %22.17g %10.2e %8d %8d\n", p, q, geo, rf.value, rl.value,
                rl.value - rf.value, rl.iterations, rl.converged ? 1 : 0);
  }
  std::printf("\nfast budget total %.1f s, full budget total %.1f s\n", total_fast, total_full);
  std::printf("\nconst std::array<PinnedTorusPair, 10> kTorusPinned = {{\n");
  for (std::size_t k = 0; k < pairs.size(); ++k)
    std::printf("    {%d, %d, %.17g},\n", pairs[k].first, pairs[k].second, pinned[k]);
  std::printf("}};\n");
  return 0;
}
