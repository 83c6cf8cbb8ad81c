#pragma once

#include <cstdint>

#include "speclen/geodesic.hpp"
#include "speclen/spectral_triple.hpp"

namespace speclen {

enum class DistanceSolver { edge_local_exact, subgradient };

struct DistanceResult {
  double value = 0.0;
  SiteFunction certificate;     // optimizer f*, with f*(p) - f*(q) = value
  double constraint_norm = 0.0; // |[D, f*]|
  int iterations = 0;
  DistanceSolver solver = DistanceSolver::edge_local_exact;
  bool lower_bound_only = false;
  bool converged = true;
};

struct SubgradientOpts {
  int max_iter = 5000;
  double step0 = 0.0;  // 0 selects 0.5 * initial ratio
  int restarts = 3;
  std::uint64_t seed = 42;
  double feasibility_tol = 1e-9;
};

/**
 * |[D, f]|: closed form max over edges of coeff |f(v) - f(u)| on edge-local
 * triples, otherwise the largest singular value of the commutator (dense SVD
 * through dimension 64, sparse power iteration beyond).
 */
double lipschitz_norm(const SpectralTriple& t, const SiteFunction& f);

/** The lattice edges of t with Dijkstra lengths 1/coeff (edge-local triples only). */
std::vector<GraphEdge> commutator_graph(const SpectralTriple& t);

/**
 * Exact spectral distance on an edge-local triple: the shortest-path length
 * between p and q, with the truncated distance function as the optimizing
 * certificate. Symmetric in (p, q) down to the last bit: both orders run the
 * same Dijkstra from min(p, q).
 */
DistanceResult distance_exact(const SpectralTriple& t, int p, int q);

/**
 * Lower-bound distance by projected subgradient ascent on the scale-invariant
 * ratio (f(p) - f(q)) / |[D, f]|: each step renormalizes f to the unit
 * commutator ball, moves along (e_p - e_q) - ratio * grad |[D, f]|, and the
 * top-singular-pair gradient comes from warm-started power iteration. Restarts
 * cycle geodesic warm start, indicator difference, and seeded random starts;
 * results are deterministic for a fixed (seed, p, q). The returned value is
 * re-certified by a final norm evaluation, so lower_bound_only is always true.
 */
DistanceResult distance_subgradient(const SpectralTriple& t, int p, int q,
                                    const SubgradientOpts& opts = {});

/**
 * Distance between the characters chi_p, chi_q (the point evaluations
 * f -> f(p), f -> f(q)); delegates to the chosen solver.
 */
DistanceResult distance_via_characters(const SpectralTriple& t, int p, int q,
                                       DistanceSolver method,
                                       const SubgradientOpts& opts = {});

struct CertificateCheck {
  double objective = 0.0;        // |f(p) - f(q)|
  double constraint_norm = 0.0;  // |[D, f]|
  bool feasible = false;         // constraint_norm <= 1 + feasibility_tol
};

/** Audit any claimed optimizer f against the unit commutator ball. */
CertificateCheck verify_certificate(const SpectralTriple& t, const SiteFunction& f, int p, int q,
                                    double feasibility_tol = 1e-9);

}  // namespace speclen
