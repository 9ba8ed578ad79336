#include "exovdc/kernels.hpp"

namespace exovdc::kern {
namespace {

void matvec6_s(const double* A, const double* x, double* y) {
  for (int i = 0; i < 6; ++i) {
    const double* row = A + 6 * i;
    double acc = 0.0;
    for (int k = 0; k < 6; ++k) acc += row[k] * x[k];
    y[i] = acc;
  }
}

void matvec6_t_s(const double* A, const double* x, double* y) {
  for (int i = 0; i < 6; ++i) y[i] = 0.0;
  for (int k = 0; k < 6; ++k) {
    const double* row = A + 6 * k;
    const double xk = x[k];
    for (int i = 0; i < 6; ++i) y[i] += row[i] * xk;
  }
}

void matmul66_s(const double* A, const double* B, double* C) {
  for (int i = 0; i < 6; ++i) {
    double* crow = C + 6 * i;
    for (int j = 0; j < 6; ++j) crow[j] = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double a = A[6 * i + k];
      const double* brow = B + 6 * k;
      for (int j = 0; j < 6; ++j) crow[j] += a * brow[j];
    }
  }
}

void matmul66_nt_s(const double* A, const double* B, double* C) {
  for (int i = 0; i < 6; ++i) {
    const double* arow = A + 6 * i;
    for (int j = 0; j < 6; ++j) {
      const double* brow = B + 6 * j;
      double acc = 0.0;
      for (int k = 0; k < 6; ++k) acc += arow[k] * brow[k];
      C[6 * i + j] = acc;
    }
  }
}

double dot_s(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_s(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void sq_dist_s(const double* chi, const double* centers, std::size_t j,
               std::size_t d, double* out) {
  for (std::size_t k = 0; k < j; ++k) {
    const double* c = centers + k * d;
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double diff = chi[i] - c[i];
      acc += diff * diff;
    }
    out[k] = acc;
  }
}

void outer_acc_s(double* W, const double* psi, const double* err, double scale,
                 std::size_t j, std::size_t m) {
  for (std::size_t k = 0; k < j; ++k) {
    const double s = scale * psi[k];
    double* wrow = W + k * m;
    for (std::size_t i = 0; i < m; ++i) wrow[i] += s * err[i];
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{matvec6_s,  matvec6_t_s, matmul66_s, matmul66_nt_s,
                         dot_s,      axpy_s,      sq_dist_s,  outer_acc_s};
  return table;
}

}  // namespace exovdc::kern
