#include "speclen/spectral_triple.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace speclen {

namespace {

using EigenCMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenCMat> as_eigen(const CMatrix& m) {
  return Eigen::Map<const EigenCMat>(m.a.data(), m.rows, m.cols);
}

void require_function(const SpectralTriple& t, const SiteFunction& f) {
  if (static_cast<int>(f.size()) != t.sites())
    throw std::invalid_argument("site function: expected one value per point");
  for (double v : f)
    if (!std::isfinite(v)) throw std::invalid_argument("site function: values must be finite");
}

}  // namespace

double hermiticity_residual(const CMatrix& d) {
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j) {
      worst = std::max(worst, std::abs(d(i, j) - std::conj(d(j, i))));
      scale = std::max(scale, std::abs(d(i, j)));
    }
  return scale > 0.0 ? worst / scale : worst;
}

SpectralTriple new_triple(std::vector<Point> points, int spinor_dim, CMatrix dirac,
                          std::vector<double> weights, bool symmetrize) {
  if (points.empty()) throw std::invalid_argument("new_triple: empty point set");
  if (spinor_dim < 1) throw std::invalid_argument("new_triple: spinor dimension must be >= 1");
  const int dim = static_cast<int>(points.size()) * spinor_dim;
  if (!dirac.square() || dirac.rows != dim)
    throw std::invalid_argument("new_triple: Dirac matrix must be (N s) x (N s)");
  if (weights.size() != points.size())
    throw std::invalid_argument("new_triple: one weight per point required");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("new_triple: weights must be strictly positive");
  if (symmetrize) {
    CMatrix h = adjoint(dirac);
    for (std::size_t i = 0; i < dirac.a.size(); ++i) dirac.a[i] = 0.5 * (dirac.a[i] + h.a[i]);
  } else if (hermiticity_residual(dirac) > kHermTol) {
    std::ostringstream msg;
    msg << "new_triple: Dirac matrix not self-adjoint (relative residual "
        << hermiticity_residual(dirac) << ")";
    throw std::invalid_argument(msg.str());
  }
  SpectralTriple t;
  t.points = std::move(points);
  t.spinor_dim = spinor_dim;
  t.dirac = std::move(dirac);
  t.weights = std::move(weights);
  return t;
}

CMatrix represent(const SpectralTriple& t, const SiteFunction& f) {
  require_function(t, f);
  CMatrix m(t.dim(), t.dim());
  for (int x = 0; x < t.sites(); ++x)
    for (int s = 0; s < t.spinor_dim; ++s) m(x * t.spinor_dim + s, x * t.spinor_dim + s) = f[x];
  return m;
}

CMatrix commutator(const SpectralTriple& t, const SiteFunction& f) {
  require_function(t, f);
  CMatrix c(t.dim(), t.dim());
  for (int i = 0; i < c.rows; ++i) {
    const double fi = f[i / t.spinor_dim];
    for (int j = 0; j < c.cols; ++j) {
      const cplx dij = t.dirac(i, j);
      if (dij == cplx{}) continue;
      c(i, j) = dij * (f[j / t.spinor_dim] - fi);
    }
  }
  return c;
}

NormEstimate operator_norm_info(const CMatrix& m, double tol, int max_iter, std::uint64_t seed) {
  if (!m.square() && m.rows == 0) throw std::invalid_argument("operator_norm: empty matrix");
  const double upper = holder_bound(m);
  if (m.rows <= 64 && m.cols <= 64) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(as_eigen(m));
    NormEstimate est;
    est.value = m.rows == 0 || m.cols == 0 ? 0.0 : svd.singularValues()(0);
    est.slack = est.value > 0.0 ? std::max(0.0, upper / est.value - 1.0) : 0.0;
    est.iterations = 0;
    est.converged = true;
    return est;
  }
  const auto apply = [&m](const cplx* x, cplx* y) { matvec(m, x, y); };
  const auto apply_adj = [&m](const cplx* x, cplx* y) { matvec_adj(m, x, y); };
  return largest_singular_value(apply, apply_adj, m.rows, m.cols, tol, max_iter, seed, upper);
}

double operator_norm(const CMatrix& m, double tol, int max_iter) {
  const NormEstimate est = operator_norm_info(m, tol, max_iter);
  if (!est.converged) {
    std::ostringstream msg;
    msg << "operator_norm: no convergence after " << est.iterations
        << " iterations; best lower bound " << est.value << " (upper slack " << est.slack << ")";
    throw std::runtime_error(msg.str());
  }
  return est.value;
}

double sup_norm(const SiteFunction& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

cplx hilbert_inner(const SpectralTriple& t, const std::vector<cplx>& psi,
                   const std::vector<cplx>& phi) {
  if (static_cast<int>(psi.size()) != t.dim() || static_cast<int>(phi.size()) != t.dim())
    throw std::invalid_argument("hilbert_inner: spinor fields must have dimension N s");
  cplx acc{};
  for (int x = 0; x < t.sites(); ++x) {
    cplx site{};
    for (int s = 0; s < t.spinor_dim; ++s) {
      const int i = x * t.spinor_dim + s;
      site += std::conj(psi[i]) * phi[i];
    }
    acc += t.weights[x] * site;
  }
  return acc;
}

AxiomReport check_axioms(const SpectralTriple& t) {
  AxiomReport report;
  report.hermiticity = hermiticity_residual(t.dirac);
  report.selfadjoint_ok = report.hermiticity <= kHermTol;

  // |[D, e_x]| per site indicator, via the sparse rows/columns touching x.
  const int s = t.spinor_dim;
  report.indicator_norms.reserve(t.sites());
  bool bounded = true;
  for (int x = 0; x < t.sites(); ++x) {
    CsrMatrix c;
    c.rows = t.dim();
    c.cols = t.dim();
    c.row_ptr.assign(t.dim() + 1, 0);
    for (int i = 0; i < t.dim(); ++i) {
      const bool row_at_x = i / s == x;
      for (int j = 0; j < t.dim(); ++j) {
        const bool col_at_x = j / s == x;
        if (row_at_x == col_at_x) continue;
        const cplx dij = t.dirac(i, j);
        if (dij == cplx{}) continue;
        c.col.push_back(j);
        c.val.push_back(col_at_x ? dij : -dij);
      }
      c.row_ptr[i + 1] = static_cast<int>(c.col.size());
    }
    CsrMatrix cadj;
    cadj.rows = cadj.cols = t.dim();
    cadj.row_ptr.assign(t.dim() + 1, 0);
    {
      // transpose-conjugate of c
      std::vector<int> count(t.dim(), 0);
      for (int k = 0; k < static_cast<int>(c.col.size()); ++k) ++count[c.col[k]];
      for (int i = 0; i < t.dim(); ++i) cadj.row_ptr[i + 1] = cadj.row_ptr[i] + count[i];
      cadj.col.resize(c.col.size());
      cadj.val.resize(c.val.size());
      std::vector<int> cursor(cadj.row_ptr.begin(), cadj.row_ptr.end() - 1);
      for (int i = 0; i < t.dim(); ++i)
        for (int k = c.row_ptr[i]; k < c.row_ptr[i + 1]; ++k) {
          const int j = c.col[k];
          cadj.col[cursor[j]] = i;
          cadj.val[cursor[j]] = std::conj(c.val[k]);
          ++cursor[j];
        }
    }
    const auto apply = [&c](const cplx* in, cplx* out) { csr_matvec_serial(c, in, out); };
    const auto apply_adj = [&cadj](const cplx* in, cplx* out) { csr_matvec_serial(cadj, in, out); };
    const NormEstimate est = largest_singular_value(apply, apply_adj, t.dim(), t.dim(), 1e-12,
                                                    20000, 0xA110C5ULL + x, holder_bound(c));
    report.indicator_norms.push_back(est.value);
    if (!std::isfinite(est.value)) bounded = false;
  }
  report.bounded_ok = bounded;

  // Spectrum of (1 + D^2)^{-1} from the eigenvalues of 1 + D^2.
  Eigen::MatrixXcd d = as_eigen(t.dirac);
  Eigen::MatrixXcd shifted = Eigen::MatrixXcd::Identity(t.dim(), t.dim()) + d * d;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(shifted, Eigen::EigenvaluesOnly);
  report.resolvent_eigenvalues.reserve(t.dim());
  bool resolvent = true;
  for (int i = 0; i < t.dim(); ++i) {
    const double mu = eig.eigenvalues()(i);
    const double r = 1.0 / mu;
    report.resolvent_eigenvalues.push_back(r);
    if (!(r > 0.0) || r > 1.0 + 1e-9) resolvent = false;
  }
  report.resolvent_ok = resolvent;
  return report;
}

SpectralTriple scale_dirac(const SpectralTriple& t, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale_dirac: scale must be positive");
  SpectralTriple out = t;
  for (cplx& z : out.dirac.a) z *= lambda;
  for (Edge& e : out.edges) e.coeff *= lambda;
  return out;
}

}  // namespace speclen
