#pragma once

#include <optional>
#include <string>
#include <vector>

#include "speclen/kernels.hpp"
#include "speclen/matrix.hpp"

namespace speclen {

/** Relative self-adjointness tolerance for Dirac matrices. */
inline constexpr double kHermTol = 1e-12;

struct Point {
  std::string label;
  std::vector<double> coords;
};

/**
 * One lattice edge (u, v) carrying the commutator coefficient c_uv, so that
 * on edge-local triples |[D, f]| = max over edges of c_uv |f(v) - f(u)|.
 * The feasible per-edge jump is 1/c_uv, which is also the edge's path length.
 */
struct Edge {
  int u = 0;
  int v = 0;
  double coeff = 0.0;
};

struct TorusShape {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
};

/** Real-valued function on the point set, one value per site. */
using SiteFunction = std::vector<double>;

/**
 * Finite odd K-cycle: N labeled points, a spinor factor of dimension s, a
 * self-adjoint Dirac matrix on C^{N s}, and strictly positive site weights.
 * Index convention is site-major: Hilbert index = site * s + spin.
 */
struct SpectralTriple {
  std::vector<Point> points;
  int spinor_dim = 1;
  CMatrix dirac;
  std::vector<double> weights;
  bool edge_local = false;
  std::vector<Edge> edges;           // populated when edge_local
  std::optional<TorusShape> torus;   // populated by the torus builder

  int sites() const { return static_cast<int>(points.size()); }
  int dim() const { return sites() * spinor_dim; }
};

/**
 * Validate and assemble a triple. With symmetrize = true, D is replaced by
 * (D + D^dagger)/2; otherwise a non-self-adjoint D (relative residual above
 * 1e-12) is rejected. Weights must be strictly positive and dimensions
 * consistent.
 */
SpectralTriple new_triple(std::vector<Point> points, int spinor_dim, CMatrix dirac,
                          std::vector<double> weights, bool symmetrize = false);

/** Relative self-adjointness residual max|D - D^dagger| / max(1e-300, max|D|). */
double hermiticity_residual(const CMatrix& d);

/** f as a multiplication operator: block-diagonal f(x) I_s per site. */
CMatrix represent(const SpectralTriple& t, const SiteFunction& f);

/** [D, pi(f)] = D pi(f) - pi(f) D; entrywise D_IJ (f(site J) - f(site I)). */
CMatrix commutator(const SpectralTriple& t, const SiteFunction& f);

/**
 * Largest singular value. Dense SVD for dimension <= 64; otherwise power
 * iteration on M^dagger M (Rayleigh increments below tol stop it). The result
 * is a certified lower bound; non-convergence throws std::runtime_error
 * carrying the best bound.
 */
double operator_norm(const CMatrix& m, double tol = 1e-10, int max_iter = 10000);

/** Same computation with diagnostics (bound slack, iterations) and no throw. */
NormEstimate operator_norm_info(const CMatrix& m, double tol = 1e-10, int max_iter = 10000,
                                std::uint64_t seed = 0x5eed5eedULL);

/** C*-norm of the function algebra: max over sites of |f(x)|. */
double sup_norm(const SiteFunction& f);

/** Weighted spinor inner product sum_x w(x) conj(psi(x)) . phi(x). */
cplx hilbert_inner(const SpectralTriple& t, const std::vector<cplx>& psi,
                   const std::vector<cplx>& phi);

struct AxiomReport {
  double hermiticity = 0.0;                    // relative residual of D = D^dagger
  std::vector<double> indicator_norms;         // |[D, e_x]| per site, all finite
  std::vector<double> resolvent_eigenvalues;   // of (1 + D^2)^{-1}, each in (0, 1]
  bool selfadjoint_ok = false;
  bool bounded_ok = false;
  bool resolvent_ok = false;

  bool pass() const { return selfadjoint_ok && bounded_ok && resolvent_ok; }
};

/**
 * K-cycle axiom report: self-adjointness residual, boundedness of [D, f] on
 * the site-indicator basis, and the spectrum of (1 + D^2)^{-1}.
 */
AxiomReport check_axioms(const SpectralTriple& t);

/** Rescale D by lambda > 0 (edge coefficients included); distances scale by 1/lambda. */
SpectralTriple scale_dirac(const SpectralTriple& t, double lambda);

}  // namespace speclen
