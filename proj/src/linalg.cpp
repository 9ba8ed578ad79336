#include "exovdc/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace exovdc {

bool cholesky4(const Mat4& A, Mat4& L) {
  L = Mat4::zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s)) return false;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return true;
}

double det_from_cholesky4(const Mat4& L) {
  const double d = L(0, 0) * L(1, 1) * L(2, 2) * L(3, 3);
  return d * d;
}

Mat4 spd_inverse4(const Mat4& L) {
  // Invert the lower factor by forward substitution, then A^-1 = L^-T L^-1.
  Mat4 Linv = Mat4::zero();
  for (int i = 0; i < 4; ++i) {
    Linv(i, i) = 1.0 / L(i, i);
    for (int j = 0; j < i; ++j) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s += L(i, k) * Linv(k, j);
      Linv(i, j) = -s / L(i, i);
    }
  }
  Mat4 inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = std::max(i, j); k < 4; ++k) s += Linv(k, i) * Linv(k, j);
      inv(i, j) = s;
    }
  return inv;
}

double min_eigenvalue_sym4(const Mat4& A) {
  Mat4 m = A;
  m.symmetrize();
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += m(p, q) * m(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < 4; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  return std::min(std::min(m(0, 0), m(1, 1)), std::min(m(2, 2), m(3, 3)));
}

bool solve_spd7(const Mat7& A, const Vec7& b, Vec7& x) {
  // LDL^T factorization in place.
  Mat7 L{};
  std::array<double, 7> d{};
  for (int j = 0; j < 7; ++j) {
    double dj = A(j, j);
    for (int k = 0; k < j; ++k) dj -= L(j, k) * L(j, k) * d[k];
    if (std::abs(dj) < 1e-300 || !std::isfinite(dj)) return false;
    d[j] = dj;
    L(j, j) = 1.0;
    for (int i = j + 1; i < 7; ++i) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k) * d[k];
      L(i, j) = s / dj;
    }
  }
  // Forward, diagonal, backward substitution.
  std::array<double, 7> y{};
  for (int i = 0; i < 7; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
    y[i] = s;
  }
  for (int i = 0; i < 7; ++i) y[i] /= d[i];
  for (int i = 6; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < 7; ++k) s -= L(k, i) * x[k];
    x[i] = s;
  }
  return true;
}

}  // namespace exovdc
