// AVX2/FMA kernel variants. Compiled with -mavx2 -mfma on x86-64 only; the
// dispatcher never hands these out unless the CPU reports both features.
#include "exovdc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace exovdc::kern {
namespace {

inline double hsum4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void matvec6_v(const double* A, const double* x, double* y) {
  const __m256d x0 = _mm256_loadu_pd(x);
  const __m128d x1 = _mm_loadu_pd(x + 4);
  for (int i = 0; i < 6; ++i) {
    const double* row = A + 6 * i;
    const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(row), x0);
    const __m128d p1 = _mm_mul_pd(_mm_loadu_pd(row + 4), x1);
    __m128d tail = _mm_add_sd(p1, _mm_unpackhi_pd(p1, p1));
    y[i] = hsum4(p0) + _mm_cvtsd_f64(tail);
  }
}

void matvec6_t_v(const double* A, const double* x, double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m128d acc1 = _mm_setzero_pd();
  for (int k = 0; k < 6; ++k) {
    const double* row = A + 6 * k;
    const __m256d xk = _mm256_set1_pd(x[k]);
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(row), xk, acc0);
    acc1 = _mm_fmadd_pd(_mm_loadu_pd(row + 4), _mm256_castpd256_pd128(xk), acc1);
  }
  _mm256_storeu_pd(y, acc0);
  _mm_storeu_pd(y + 4, acc1);
}

void matmul66_v(const double* A, const double* B, double* C) {
  for (int i = 0; i < 6; ++i) {
    __m256d acc0 = _mm256_setzero_pd();
    __m128d acc1 = _mm_setzero_pd();
    const double* arow = A + 6 * i;
    for (int k = 0; k < 6; ++k) {
      const double* brow = B + 6 * k;
      const __m256d a = _mm256_set1_pd(arow[k]);
      acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(brow), a, acc0);
      acc1 = _mm_fmadd_pd(_mm_loadu_pd(brow + 4), _mm256_castpd256_pd128(a), acc1);
    }
    _mm256_storeu_pd(C + 6 * i, acc0);
    _mm_storeu_pd(C + 6 * i + 4, acc1);
  }
}

void matmul66_nt_v(const double* A, const double* B, double* C) {
  for (int i = 0; i < 6; ++i) {
    const double* arow = A + 6 * i;
    const __m256d a0 = _mm256_loadu_pd(arow);
    const __m128d a1 = _mm_loadu_pd(arow + 4);
    for (int j = 0; j < 6; ++j) {
      const double* brow = B + 6 * j;
      const __m256d p0 = _mm256_mul_pd(a0, _mm256_loadu_pd(brow));
      const __m128d p1 = _mm_mul_pd(a1, _mm_loadu_pd(brow + 4));
      __m128d tail = _mm_add_sd(p1, _mm_unpackhi_pd(p1, p1));
      C[6 * i + j] = hsum4(p0) + _mm_cvtsd_f64(tail);
    }
  }
}

double dot_v(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum4(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_v(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void sq_dist_v(const double* chi, const double* centers, std::size_t j,
               std::size_t d, double* out) {
  for (std::size_t k = 0; k < j; ++k) {
    const double* c = centers + k * d;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= d; i += 4) {
      const __m256d diff =
          _mm256_sub_pd(_mm256_loadu_pd(chi + i), _mm256_loadu_pd(c + i));
      acc = _mm256_fmadd_pd(diff, diff, acc);
    }
    double s = hsum4(acc);
    for (; i < d; ++i) {
      const double diff = chi[i] - c[i];
      s += diff * diff;
    }
    out[k] = s;
  }
}

void outer_acc_v(double* W, const double* psi, const double* err, double scale,
                 std::size_t j, std::size_t m) {
  for (std::size_t k = 0; k < j; ++k) {
    const double s = scale * psi[k];
    const __m256d sv = _mm256_set1_pd(s);
    double* wrow = W + k * m;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
      __m256d wv = _mm256_fmadd_pd(sv, _mm256_loadu_pd(err + i),
                                   _mm256_loadu_pd(wrow + i));
      _mm256_storeu_pd(wrow + i, wv);
    }
    for (; i < m; ++i) wrow[i] += s * err[i];
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{matvec6_v,  matvec6_t_v, matmul66_v, matmul66_nt_v,
                         dot_v,      axpy_v,      sq_dist_v,  outer_acc_v};
  return table;
}

}  // namespace exovdc::kern

#endif  // x86-64
