#include "speclen/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace speclen {

CMatrix operator+(const CMatrix& x, const CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix add: shape mismatch");
  CMatrix r(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

CMatrix operator-(const CMatrix& x, const CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sub: shape mismatch");
  CMatrix r(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

CMatrix operator*(const CMatrix& x, const CMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix mul: shape mismatch");
  CMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{}) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

CMatrix operator*(cplx s, const CMatrix& x) {
  CMatrix r(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix r(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

double max_abs(const CMatrix& m) {
  double r = 0.0;
  for (const cplx& z : m.a) r = std::max(r, std::abs(z));
  return r;
}

CMatrix kronecker(const CMatrix& x, const CMatrix& y) {
  CMatrix r(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      const cplx xij = x(i, j);
      if (xij == cplx{}) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l) r(i * y.rows + k, j * y.cols + l) = xij * y(k, l);
    }
  return r;
}

CsrMatrix to_csr(const CMatrix& m, double drop_tol) {
  CsrMatrix r;
  r.rows = m.rows;
  r.cols = m.cols;
  r.row_ptr.assign(m.rows + 1, 0);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (std::abs(m(i, j)) > drop_tol) {
        r.col.push_back(j);
        r.val.push_back(m(i, j));
      }
    }
    r.row_ptr[i + 1] = static_cast<int>(r.col.size());
  }
  return r;
}

int thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("SPECTRAL_LENGTH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min<long>(v, omp_get_max_threads()));
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void matvec_serial(const CMatrix& m, const cplx* x, cplx* y) {
  for (int i = 0; i < m.rows; ++i) {
    cplx acc{};
    const cplx* row = m.a.data() + static_cast<std::size_t>(i) * m.cols;
    for (int j = 0; j < m.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec(const CMatrix& m, const cplx* x, cplx* y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_cap())
#endif
  for (int i = 0; i < m.rows; ++i) {
    cplx acc{};
    const cplx* row = m.a.data() + static_cast<std::size_t>(i) * m.cols;
    for (int j = 0; j < m.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec_adj_serial(const CMatrix& m, const cplx* x, cplx* y) {
  // Row i of M^dagger is column i of conj(M); accumulate in row-scan order.
  for (int i = 0; i < m.cols; ++i) {
    cplx acc{};
    for (int j = 0; j < m.rows; ++j) acc += std::conj(m(j, i)) * x[j];
    y[i] = acc;
  }
}

void matvec_adj(const CMatrix& m, const cplx* x, cplx* y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_cap())
#endif
  for (int i = 0; i < m.cols; ++i) {
    cplx acc{};
    for (int j = 0; j < m.rows; ++j) acc += std::conj(m(j, i)) * x[j];
    y[i] = acc;
  }
}

void csr_matvec_serial(const CsrMatrix& m, const cplx* x, cplx* y) {
  for (int i = 0; i < m.rows; ++i) {
    cplx acc{};
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) acc += m.val[k] * x[m.col[k]];
    y[i] = acc;
  }
}

void csr_matvec(const CsrMatrix& m, const cplx* x, cplx* y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_cap())
#endif
  for (int i = 0; i < m.rows; ++i) {
    cplx acc{};
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) acc += m.val[k] * x[m.col[k]];
    y[i] = acc;
  }
}

double vec_norm(const cplx* x, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::norm(x[i]);
  return std::sqrt(acc);
}

cplx vec_dot(const cplx* x, const cplx* y, int n) {
  cplx acc{};
  for (int i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

std::uint64_t SplitMix64::next() {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
}

double holder_bound(const CMatrix& m) {
  std::vector<double> colsum(m.cols, 0.0);
  double rowmax = 0.0;
  for (int i = 0; i < m.rows; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < m.cols; ++j) {
      const double v = std::abs(m(i, j));
      rowsum += v;
      colsum[j] += v;
    }
    rowmax = std::max(rowmax, rowsum);
  }
  double colmax = 0.0;
  for (double v : colsum) colmax = std::max(colmax, v);
  return std::sqrt(rowmax * colmax);
}

double holder_bound(const CsrMatrix& m) {
  std::vector<double> colsum(m.cols, 0.0);
  double rowmax = 0.0;
  for (int i = 0; i < m.rows; ++i) {
    double rowsum = 0.0;
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      const double v = std::abs(m.val[k]);
      rowsum += v;
      colsum[m.col[k]] += v;
    }
    rowmax = std::max(rowmax, rowsum);
  }
  double colmax = 0.0;
  for (double v : colsum) colmax = std::max(colmax, v);
  return std::sqrt(rowmax * colmax);
}

NormEstimate largest_singular_value(const std::function<void(const cplx*, cplx*)>& apply,
                                    const std::function<void(const cplx*, cplx*)>& apply_adj,
                                    int rows, int cols, double tol, int max_iter,
                                    std::uint64_t seed, double holder_upper, const cplx* warm) {
  NormEstimate est;
  if (rows == 0 || cols == 0) {
    est.converged = true;
    return est;
  }
  std::vector<cplx> v(cols), w(rows);
  if (warm != nullptr) {
    v.assign(warm, warm + cols);
  } else {
    SplitMix64 rng(seed);
    for (cplx& z : v) z = cplx(rng.uniform(), rng.uniform());
  }
  double vn = vec_norm(v.data(), cols);
  if (vn == 0.0) {
    v[0] = 1.0;
    vn = 1.0;
  }
  for (cplx& z : v) z /= vn;

  double sigma = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    apply(v.data(), w.data());
    const double s = vec_norm(w.data(), rows);  // Rayleigh sqrt for M^dagger M at unit v
    est.iterations = it;
    if (s == 0.0) {
      // v is in the kernel; restart once from a fresh random direction.
      if (it == 1 && warm != nullptr) {
        SplitMix64 rng(seed ^ 0x5bf03e9dULL);
        for (cplx& z : v) z = cplx(rng.uniform(), rng.uniform());
        const double n2 = vec_norm(v.data(), cols);
        for (cplx& z : v) z /= n2;
        continue;
      }
      est.value = 0.0;
      est.converged = true;
      break;
    }
    if (s - sigma <= tol * std::max(1.0, s) && it > 1) {
      sigma = std::max(sigma, s);
      est.converged = true;
      break;
    }
    sigma = std::max(sigma, s);
    apply_adj(w.data(), v.data());
    const double n2 = vec_norm(v.data(), cols);
    if (n2 == 0.0) {
      est.converged = true;
      break;
    }
    for (cplx& z : v) z /= n2;
  }
  est.value = sigma;
  if (holder_upper > 0.0 && sigma > 0.0)
    est.slack = std::max(0.0, holder_upper / sigma - 1.0);
  return est;
}

}  // namespace speclen
