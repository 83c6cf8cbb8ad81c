#include "speclen/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speclen {

std::string to_string(CausalType c) {
  switch (c) {
    case CausalType::timelike: return "timelike";
    case CausalType::spacelike: return "spacelike";
    case CausalType::null: return "null";
  }
  return "unknown";
}

double inner(const FourVector& X, const FourVector& Y) {
  return X.t * Y.t - X.x * Y.x - X.y * Y.y - X.z * Y.z;
}

double norm_sq(const FourVector& X) { return inner(X, X); }

double classify_tol(const FourVector& X) {
  double m = 0.0;
  for (double c : X.components()) m = std::max(m, c * c);
  return 1e-9 * std::max(1.0, m);
}

CausalType classify(const FourVector& X) {
  const double n = norm_sq(X);
  const double tol = classify_tol(X);
  if (n > tol) return CausalType::timelike;
  if (n < -tol) return CausalType::spacelike;
  return CausalType::null;
}

double angle(const FourVector& X, const FourVector& Y) {
  const CausalType cx = classify(X);
  const CausalType cy = classify(Y);
  if (cx == CausalType::null || cy == CausalType::null)
    throw std::domain_error("angle: undefined for null vectors");
  if (cx != cy) throw std::domain_error("angle: undefined for mixed causal types");
  const double nx = norm_sq(X);
  const double ny = norm_sq(Y);
  double cosv = inner(X, Y) / (std::sqrt(std::abs(nx)) * std::sqrt(std::abs(ny)));
  cosv = std::clamp(cosv, -1.0, 1.0);
  return std::acos(cosv);
}

double proper_time_sq(double dt_seconds, double dx, double dy, double dz, double c) {
  const double cdt = c * dt_seconds;
  return cdt * cdt - dx * dx - dy * dy - dz * dz;
}

double light_path_length(double dt_seconds, double c) {
  if (dt_seconds < 0.0) throw std::invalid_argument("light_path_length: negative time interval");
  return c * dt_seconds;
}

double metric_inverse_check(const std::array<double, 4>& eta,
                            const std::array<double, 4>& eta_inv) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    worst = std::max(worst, std::abs(eta[mu] * eta_inv[mu] - 1.0));
  return worst;
}

double metric_inverse_check() {
  const std::array<double, 4> eta{1.0, -1.0, -1.0, -1.0};
  return metric_inverse_check(eta, eta);
}

}  // namespace speclen
