#include "speclen/clifford.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace speclen {

namespace {

const cplx kI{0.0, 1.0};

CMatrix anticommutator(const CMatrix& x, const CMatrix& y) { return x * y + y * x; }

}  // namespace

double clifford_residual(const CliffordRep& rep) {
  const int n = static_cast<int>(rep.generators.size());
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      CMatrix r = anticommutator(rep.generators[a], rep.generators[b]);
      if (a == b) {
        const double eta = rep.signature[a];
        for (int i = 0; i < rep.dimension; ++i) r(i, i) -= 2.0 * eta;
      }
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

CliffordRep make_clifford_rep(std::vector<CMatrix> generators, std::vector<int> signature) {
  if (generators.empty()) throw std::invalid_argument("clifford: no generators");
  if (generators.size() != signature.size())
    throw std::invalid_argument("clifford: signature length mismatch");
  const int d = generators.front().rows;
  for (const CMatrix& g : generators)
    if (!g.square() || g.rows != d) throw std::invalid_argument("clifford: generators must be square of equal size");
  for (int s : signature)
    if (s != 1 && s != -1) throw std::invalid_argument("clifford: signature entries must be +-1");
  CliffordRep rep{std::move(generators), std::move(signature), d};
  const double res = clifford_residual(rep);
  if (res > kAlgebraTol) {
    std::ostringstream msg;
    msg << "clifford: anticommutator residual " << res << " exceeds " << kAlgebraTol;
    throw std::invalid_argument(msg.str());
  }
  return rep;
}

std::array<CMatrix, 3> pauli_matrices() {
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  sy(0, 1) = -kI;
  sy(1, 0) = kI;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  return {sx, sy, sz};
}

CliffordRep minkowski_gammas() {
  const auto sigma = pauli_matrices();
  std::vector<CMatrix> g;
  CMatrix g0(4, 4);
  g0(0, 0) = g0(1, 1) = 1.0;
  g0(2, 2) = g0(3, 3) = -1.0;
  g.push_back(g0);
  for (int k = 0; k < 3; ++k) {
    CMatrix gk(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        gk(i, 2 + j) = sigma[k](i, j);
        gk(2 + i, j) = -sigma[k](i, j);
      }
    g.push_back(gk);
  }
  return make_clifford_rep(std::move(g), {1, -1, -1, -1});
}

CliffordRep euclidean_gammas(int n) {
  if (n < 1) throw std::invalid_argument("euclidean_gammas: dimension must be >= 1");
  std::vector<CMatrix> g;
  if (n == 1) {
    CMatrix one(1, 1);
    one(0, 0) = 1.0;
    g.push_back(one);
    return make_clifford_rep(std::move(g), {1});
  }
  const auto sigma = pauli_matrices();
  g = {sigma[0], sigma[1]};
  int dim = 2;
  while (dim + 2 <= n) {
    // Lift the 2k-dimensional set: sigma_x (x) gamma_i, then sigma_y (x) I, sigma_z (x) I.
    const CMatrix eye = CMatrix::identity(g.front().rows);
    std::vector<CMatrix> up;
    up.reserve(g.size() + 2);
    for (const CMatrix& gi : g) up.push_back(kronecker(sigma[0], gi));
    up.push_back(kronecker(sigma[1], eye));
    up.push_back(kronecker(sigma[2], eye));
    g = std::move(up);
    dim += 2;
  }
  if (dim < n) {
    // Odd n: append the chirality element (-i)^k gamma_1 ... gamma_{2k}.
    const int k = dim / 2;
    CMatrix chi = CMatrix::identity(g.front().rows);
    for (const CMatrix& gi : g) chi = chi * gi;
    cplx phase = 1.0;
    for (int i = 0; i < k; ++i) phase *= -kI;
    g.push_back(phase * chi);
  }
  return make_clifford_rep(std::move(g), std::vector<int>(n, 1));
}

std::vector<double> inverse_metric_from_vielbein(const CliffordRep& rep,
                                                 const std::vector<double>& vielbein) {
  const int n = static_cast<int>(rep.generators.size());
  if (static_cast<int>(vielbein.size()) != n * n)
    throw std::invalid_argument("vielbein: expected n x n entries");
  std::vector<double> g(n * n, 0.0);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += vielbein[a * n + mu] * vielbein[a * n + nu] * rep.signature[a];
      g[mu * n + nu] = acc;
    }
  return g;
}

std::vector<CMatrix> curved_gammas(const CliffordRep& rep, const std::vector<double>& vielbein) {
  const int n = static_cast<int>(rep.generators.size());
  if (static_cast<int>(vielbein.size()) != n * n)
    throw std::invalid_argument("curved_gammas: expected n x n vielbein");
  Eigen::MatrixXd e(n, n);
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu) e(a, mu) = vielbein[a * n + mu];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  if (smin <= 0.0 || smax / smin > 1e12) {
    std::ostringstream msg;
    msg << "curved_gammas: singular vielbein (min singular value " << smin << ", condition ";
    if (smin > 0.0)
      msg << smax / smin;
    else
      msg << "inf";
    msg << ")";
    throw std::domain_error(msg.str());
  }
  std::vector<CMatrix> out;
  out.reserve(n);
  for (int mu = 0; mu < n; ++mu) {
    CMatrix gmu(rep.dimension, rep.dimension);
    for (int a = 0; a < n; ++a) {
      const double coef = vielbein[a * n + mu];
      if (coef == 0.0) continue;
      for (std::size_t i = 0; i < gmu.a.size(); ++i) gmu.a[i] += coef * rep.generators[a].a[i];
    }
    out.push_back(std::move(gmu));
  }
  return out;
}

DiracFormMatrices original_dirac_form(const CliffordRep& rep) {
  if (rep.dimension != 4 || rep.signature != std::vector<int>{1, -1, -1, -1})
    throw std::invalid_argument("original_dirac_form: requires the 4x4 (+,-,-,-) representation");
  DiracFormMatrices out{rep.generators[0],
                        {rep.generators[0] * rep.generators[1], rep.generators[0] * rep.generators[2],
                         rep.generators[0] * rep.generators[3]}};
  return out;
}

std::vector<CMatrix> spin_lift(const std::vector<std::vector<double>>& omega,
                               const CliffordRep& rep) {
  const int n = static_cast<int>(rep.generators.size());
  std::vector<CMatrix> out;
  out.reserve(omega.size());
  for (std::size_t mu = 0; mu < omega.size(); ++mu) {
    const std::vector<double>& w = omega[mu];
    if (static_cast<int>(w.size()) != n * n)
      throw std::invalid_argument("spin_lift: coefficient block must be n x n");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (std::abs(w[a * n + b] + w[b * n + a]) > kAlgebraTol)
          throw std::invalid_argument("spin_lift: coefficients must be antisymmetric in (a, b)");
    CMatrix lift(rep.dimension, rep.dimension);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const double coef = 0.5 * w[a * n + b];
        if (coef == 0.0) continue;
        const CMatrix prod = rep.generators[a] * rep.generators[b];
        for (std::size_t i = 0; i < lift.a.size(); ++i) lift.a[i] += coef * prod.a[i];
      }
    out.push_back(std::move(lift));
  }
  return out;
}

}  // namespace speclen
