// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <vector>

#include "speclen/dirac_lattice.hpp"
#include "speclen/kernels.hpp"
#include "speclen/matrix.hpp"

namespace {

using namespace speclen;

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(rng.uniform(), rng.uniform());
  return v;
}

template <class F>
double time_best_ms(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
  return true;
}

}  // namespace

int main() {
  std::printf("thread cap: %d\n\n", thread_cap());
  std::printf("%-28s %12s %12s %9s %9s\n", "kernel", "serial_ms", "parallel_ms", "speedup",
              "bitwise");

  {
    const int n = 1024;
    CMatrix m(n, n);
    SplitMix64 rng(7);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cplx(rng.uniform(), rng.uniform());
    const auto x = random_vector(n, 11);
    std::vector<cplx> ys(n), yp(n);
    const double ts = time_best_ms(5, [&] { matvec_serial(m, x.data(), ys.data()); });
    const double tp = time_best_ms(5, [&] { matvec(m, x.data(), yp.data()); });
    std::printf("%-28s %12.3f %12.3f %9.2f %9s\n", "dense matvec 1024", ts, tp, ts / tp,
                bitwise_equal(ys, yp) ? "yes" : "NO");
  }

  {
    const SpectralTriple t = torus_triple(128, 128, 128.0, 128.0, TorusScheme::block);
    const CsrMatrix m = to_csr(t.dirac, 0.0);
    const auto x = random_vector(static_cast<std::size_t>(t.dim()), 13);
    std::vector<cplx> ys(t.dim()), yp(t.dim());
    const double ts = time_best_ms(20, [&] { csr_matvec_serial(m, x.data(), ys.data()); });
    const double tp = time_best_ms(20, [&] { csr_matvec(m, x.data(), yp.data()); });
    std::printf("%-28s %12.3f %12.3f %9.2f %9s\n", "csr matvec torus 128x128", ts, tp, ts / tp,
                bitwise_equal(ys, yp) ? "yes" : "NO");
  }

  {
    const SpectralTriple t = torus_triple(48, 48, 48.0, 48.0, TorusScheme::block);
    const CsrMatrix m = to_csr(t.dirac, 0.0);
    const CsrMatrix ma = [&] {
      CMatrix d = adjoint(t.dirac);
      return to_csr(d, 0.0);
    }();
    NormEstimate ns, np;
    const double ts = time_best_ms(3, [&] {
      ns = largest_singular_value(
          [&](const cplx* v, cplx* out) { csr_matvec_serial(m, v, out); },
          [&](const cplx* v, cplx* out) { csr_matvec_serial(ma, v, out); }, m.rows, m.cols, 1e-10,
          10000, 99, holder_bound(m));
    });
    const double tp = time_best_ms(3, [&] {
      np = largest_singular_value([&](const cplx* v, cplx* out) { csr_matvec(m, v, out); },
                                  [&](const cplx* v, cplx* out) { csr_matvec(ma, v, out); }, m.rows,
                                  m.cols, 1e-10, 10000, 99, holder_bound(m));
    });
    std::printf("%-28s %12.3f %12.3f %9.2f %9s\n", "operator norm torus 48x48", ts, tp, ts / tp,
                ns.value == np.value ? "yes" : "NO");
  }
  return 0;
}
