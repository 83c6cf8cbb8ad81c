#include "speclen/propagator.hpp"

#include <cmath>

#include "speclen/clifford.hpp"

namespace speclen {

namespace {

const CliffordRep& dirac_rep() {
  static const CliffordRep rep = minkowski_gammas();
  return rep;
}

constexpr double kSeriesCut = 12.0;

double j1_series(double x) {
  const double h = 0.5 * x;
  double term = h;
  double sum = h;
  for (int k = 1; k < 200; ++k) {
    term *= -h * h / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

double j1_asymptotic(double x) {
  // J1(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - 3 pi / 4, with the
  // standard a_k(1) coefficients; truncated where the terms stop shrinking.
  double p = 0.0, q = 0.0;
  double a = 1.0;       // a_k, starting at a_0
  double xpow = 1.0;    // x^-k
  double prev = 1e300;
  for (int k = 0; k < 64; ++k) {
    const double term = a * xpow;
    if (std::abs(term) >= prev) break;
    prev = std::abs(term);
    const int j = k / 2;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0)
      p += sign * term;
    else
      q += sign * term;
    if (std::abs(term) < 1e-17) break;
    a *= (4.0 - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / (8.0 * (k + 1.0));
    xpow /= x;
  }
  const double w = x - 0.75 * M_PI;
  return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace

CMatrix feynman_slash(const FourVector& p) {
  const CliffordRep& rep = dirac_rep();
  CMatrix slash(4, 4);
  const std::array<double, 4> lowered{p.t, -p.x, -p.y, -p.z};
  for (int mu = 0; mu < 4; ++mu) {
    if (lowered[mu] == 0.0) continue;
    for (std::size_t i = 0; i < slash.a.size(); ++i)
      slash.a[i] += lowered[mu] * rep.generators[mu].a[i];
  }
  return slash;
}

CMatrix momentum_propagator(const FourVector& p, double m, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("momentum_propagator: eps must be positive");
  if (m < 0.0) throw std::invalid_argument("momentum_propagator: mass must be nonnegative");
  CMatrix num = feynman_slash(p);
  for (int i = 0; i < 4; ++i) num(i, i) += m;
  const cplx denom{norm_sq(p) - m * m, eps};
  return (1.0 / denom) * num;
}

double check_inverse(const FourVector& p, double m, double eps) {
  const double offshell = norm_sq(p) - m * m;
  if (std::abs(offshell) <= 1e-12)
    throw std::domain_error(
        "check_inverse: momentum is on shell (|p^2 - m^2| <= 1e-12); the propagator has a pole "
        "there and the inverse identity only holds off shell");
  CMatrix lhs = feynman_slash(p);
  for (int i = 0; i < 4; ++i) lhs(i, i) -= m;
  CMatrix residual = lhs * momentum_propagator(p, m, eps);
  for (int i = 0; i < 4; ++i) residual(i, i) -= 1.0;
  return max_abs(residual);
}

double bessel_j1(double x) {
  if (x < 0.0) throw std::invalid_argument("bessel_j1: argument must be nonnegative");
  return x < kSeriesCut ? j1_series(x) : j1_asymptotic(x);
}

CMatrix position_propagator_closed_form(const FourVector& dx, double m) {
  if (m < 0.0) throw std::invalid_argument("position propagator: mass must be nonnegative");
  const double r = std::sqrt(dx.t * dx.t + dx.x * dx.x + dx.y * dx.y + dx.z * dx.z);
  if (r == 0.0) throw std::domain_error("position propagator: zero separation");
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;
  CMatrix out = (cplx{1.0 / r5, 0.0}) * feynman_slash(dx);
  for (int i = 0; i < 4; ++i) out(i, i) += m / r3;
  const double j1 = bessel_j1(m * r);
  return cplx{j1, 0.0} * out;
}

}  // namespace speclen
