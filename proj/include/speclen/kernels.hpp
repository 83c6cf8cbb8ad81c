#pragma once

#include <cstdint>
#include <functional>

#include "speclen/matrix.hpp"

namespace speclen {

/**
 * Thread cap honored by all parallel kernels: the SPECTRAL_LENGTH_THREADS
 * environment variable when set to a positive integer, otherwise the OpenMP
 * default. Returns 1 in builds without OpenMP.
 */
int thread_cap();

// Parallel kernels split rows (or other independent outputs) across threads;
// each output element is accumulated in the same order as the serial
// reference, so results are bitwise identical. Reductions stay serial.

void matvec_serial(const CMatrix& m, const cplx* x, cplx* y);
void matvec(const CMatrix& m, const cplx* x, cplx* y);

/** y = M^dagger x. */
void matvec_adj_serial(const CMatrix& m, const cplx* x, cplx* y);
void matvec_adj(const CMatrix& m, const cplx* x, cplx* y);

void csr_matvec_serial(const CsrMatrix& m, const cplx* x, cplx* y);
void csr_matvec(const CsrMatrix& m, const cplx* x, cplx* y);

/** Euclidean norm, serial reduction. */
double vec_norm(const cplx* x, int n);

/** Hermitian inner product conj(x).y, serial reduction. */
cplx vec_dot(const cplx* x, const cplx* y, int n);

/** Deterministic splitmix64 stream used for seeded start vectors. */
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  /** Uniform double in [-1, 1). */
  double uniform();
};

/** Result of a largest-singular-value estimate. */
struct NormEstimate {
  double value = 0.0;       // certified lower bound on the spectral norm
  double slack = 0.0;       // value * (1 + slack) upper-bounds the norm
  int iterations = 0;
  bool converged = false;
};

/**
 * Largest singular value of a linear operator given by apply/apply_adj,
 * via power iteration on M^dagger M. The Rayleigh quotient of the iterates
 * is monotone, so the returned value never overshoots; the slack comes from
 * the Holder bound sqrt(norm1 * norm_inf) supplied by the caller (pass 0 to
 * skip). An optional warm-start vector replaces the seeded random start.
 */
NormEstimate largest_singular_value(
    const std::function<void(const cplx*, cplx*)>& apply,
    const std::function<void(const cplx*, cplx*)>& apply_adj, int rows, int cols,
    double tol, int max_iter, std::uint64_t seed, double holder_upper = 0.0,
    const cplx* warm = nullptr);

/** sqrt(norm1 * norminf) of a dense matrix: a cheap true upper bound on the spectral norm. */
double holder_bound(const CMatrix& m);
double holder_bound(const CsrMatrix& m);

}  // namespace speclen
