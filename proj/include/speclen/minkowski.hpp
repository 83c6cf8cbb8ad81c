#pragma once

#include <array>
#include <string>

namespace speclen {

/** Signature convention (+,-,-,-); components in natural units with c = 1. */
struct FourVector {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  std::array<double, 4> components() const { return {t, x, y, z}; }
};

enum class CausalType { timelike, spacelike, null };

std::string to_string(CausalType c);

/** eta(X, Y) = X0 Y0 - X1 Y1 - X2 Y2 - X3 Y3. */
double inner(const FourVector& X, const FourVector& Y);

/** inner(X, X); positive for timelike, negative for spacelike vectors. */
double norm_sq(const FourVector& X);

/**
 * Causal classification with tolerance 1e-9 * max(1, largest component squared),
 * so that the null cone has finite floating-point thickness.
 */
CausalType classify(const FourVector& X);

/** The classification tolerance used for X. */
double classify_tol(const FourVector& X);

/**
 * Angle between two vectors of the same causal type:
 * arccos(eta(X,Y) / (sqrt|norm_sq X| sqrt|norm_sq Y|)), cosine clamped to [-1, 1].
 * Throws std::domain_error for null inputs or mixed causal types.
 */
double angle(const FourVector& X, const FourVector& Y);

/** Line-element value (c dt)^2 - dx^2 - dy^2 - dz^2 in meters squared. */
double proper_time_sq(double dt_seconds, double dx, double dy, double dz, double c);

/** Distance ds = c dt covered by light; throws on negative dt. */
double light_path_length(double dt_seconds, double c);

/** Entrywise residual of eta_{mu k} eta^{k nu} = delta for the diag(1,-1,-1,-1) metric. */
double metric_inverse_check();

/** Residual of eta * eta_inv = I for caller-supplied diagonal metrics. */
double metric_inverse_check(const std::array<double, 4>& eta,
                            const std::array<double, 4>& eta_inv);

}  // namespace speclen
