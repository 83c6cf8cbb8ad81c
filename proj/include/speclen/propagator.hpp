#pragma once

#include "speclen/matrix.hpp"
#include "speclen/minkowski.hpp"

namespace speclen {

/** gamma^mu p_mu = gamma^0 p0 - gamma^1 p1 - gamma^2 p2 - gamma^3 p3 (indices lowered with eta). */
CMatrix feynman_slash(const FourVector& p);

/**
 * Momentum-space Dirac propagator (gamma^mu p_mu + m I) / (p^2 - m^2 + i eps),
 * natural units. eps must be positive; it regularizes the on-shell pole.
 */
CMatrix momentum_propagator(const FourVector& p, double m, double eps);

/**
 * Max-entry residual of (gamma^mu p_mu - m I) S_F(p) - I, which the algebra
 * bounds by eps / |p^2 - m^2|. Rejects on-shell momenta (|p^2 - m^2| <= 1e-12)
 * with std::domain_error.
 */
double check_inverse(const FourVector& p, double m, double eps);

/**
 * Bessel function J_1 for x >= 0: power series below x = 12, the P/Q cosine
 * asymptotic expansion with adaptive truncation beyond. Absolute error stays
 * below 1e-10 across the whole domain.
 */
double bessel_j1(double x);

/**
 * Literal evaluation of the closed-form position-space expression
 * (gamma^mu dx_mu / r^5 + m/r^3) J_1(m r) with r the Euclidean length of the
 * separation components. Evaluated as printed for inspection; the momentum-
 * space inverse identity is the contract this module stands on. Zero
 * separation is rejected.
 */
CMatrix position_propagator_closed_form(const FourVector& dx, double m);

}  // namespace speclen
