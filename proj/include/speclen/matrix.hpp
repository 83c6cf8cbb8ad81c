#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace speclen {

using cplx = std::complex<double>;

/** Dense row-major complex matrix. */
struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {
    if (r < 0 || c < 0) throw std::invalid_argument("CMatrix: negative size");
  }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  bool square() const { return rows == cols; }
};

CMatrix operator+(const CMatrix& x, const CMatrix& y);
CMatrix operator-(const CMatrix& x, const CMatrix& y);
CMatrix operator*(const CMatrix& x, const CMatrix& y);
CMatrix operator*(cplx s, const CMatrix& x);

/** Conjugate transpose. */
CMatrix adjoint(const CMatrix& m);

/** Largest entry magnitude. */
double max_abs(const CMatrix& m);

/** Kronecker product x (x) y. */
CMatrix kronecker(const CMatrix& x, const CMatrix& y);

/** Sparse complex matrix in compressed-row form. */
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;  // size rows+1
  std::vector<int> col;      // size nnz
  std::vector<cplx> val;     // size nnz

  std::size_t nnz() const { return col.size(); }
};

/** Convert a dense matrix to CSR, dropping entries with |z| <= drop_tol. */
CsrMatrix to_csr(const CMatrix& m, double drop_tol = 0.0);

}  // namespace speclen
