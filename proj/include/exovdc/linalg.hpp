#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "exovdc/kernels.hpp"

namespace exovdc {

struct Vec3 {
  double x{}, y{}, z{};

  double& operator[](int i) { return (&x)[i]; }
  double operator[](int i) const { return (&x)[i]; }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Mat3 {
  // row-major
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  static Mat3 zero() { return {}; }
  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static Mat3 diag(double d0, double d1, double d2) {
    Mat3 m;
    m(0, 0) = d0; m(1, 1) = d1; m(2, 2) = d2;
    return m;
  }
  static Mat3 rot_x(double t) {
    Mat3 m = identity();
    const double c = std::cos(t), s = std::sin(t);
    m(1, 1) = c; m(1, 2) = -s; m(2, 1) = s; m(2, 2) = c;
    return m;
  }
  static Mat3 rot_y(double t) {
    Mat3 m = identity();
    const double c = std::cos(t), s = std::sin(t);
    m(0, 0) = c; m(0, 2) = s; m(2, 0) = -s; m(2, 2) = c;
    return m;
  }
  static Mat3 rot_z(double t) {
    Mat3 m = identity();
    const double c = std::cos(t), s = std::sin(t);
    m(0, 0) = c; m(0, 1) = -s; m(1, 0) = s; m(1, 1) = c;
    return m;
  }
  // R = Rz(yaw) Ry(pitch) Rx(roll)
  static Mat3 from_rpy(double roll, double pitch, double yaw) {
    return rot_z(yaw) * rot_y(pitch) * rot_x(roll);
  }
  // Rodrigues rotation about unit axis
  static Mat3 axis_angle(const Vec3& axis, double t);

  Mat3 transpose() const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = (*this)(j, i);
    return m;
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += (*this)(i, k) * o(k, j);
        m(i, j) = acc;
      }
    return m;
  }
  Vec3 operator*(const Vec3& v) const {
    return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
            a[3] * v.x + a[4] * v.y + a[5] * v.z,
            a[6] * v.x + a[7] * v.y + a[8] * v.z};
  }
  Mat3 operator+(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  Mat3 operator*(double s) const {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.a[i] = a[i] * s;
    return m;
  }
  double trace() const { return a[0] + a[4] + a[8]; }
  double det() const {
    return a[0] * (a[4] * a[8] - a[5] * a[7]) -
           a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
  // max |R^T R - I| entry plus |det - 1|
  double orthonormality_defect() const;
};

inline Mat3 Mat3::axis_angle(const Vec3& axis, double t) {
  const double c = std::cos(t), s = std::sin(t), v = 1.0 - c;
  const Vec3 u = axis;
  Mat3 m;
  m(0, 0) = c + u.x * u.x * v;
  m(0, 1) = u.x * u.y * v - u.z * s;
  m(0, 2) = u.x * u.z * v + u.y * s;
  m(1, 0) = u.y * u.x * v + u.z * s;
  m(1, 1) = c + u.y * u.y * v;
  m(1, 2) = u.y * u.z * v - u.x * s;
  m(2, 0) = u.z * u.x * v - u.y * s;
  m(2, 1) = u.z * u.y * v + u.x * s;
  m(2, 2) = c + u.z * u.z * v;
  return m;
}

inline double Mat3::orthonormality_defect() const {
  const Mat3 g = transpose() * (*this);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g(i, j) - target));
    }
  return std::max(worst, std::abs(det() - 1.0));
}

// 6-vector laid out [linear(3), angular(3)] for twists and [force(3),
// moment(3)] for wrenches.
struct Vec6 {
  std::array<double, 6> a{};

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }
  double* data() { return a.data(); }
  const double* data() const { return a.data(); }

  static Vec6 from_parts(const Vec3& head, const Vec3& tail) {
    return {{head.x, head.y, head.z, tail.x, tail.y, tail.z}};
  }
  Vec3 head() const { return {a[0], a[1], a[2]}; }
  Vec3 tail() const { return {a[3], a[4], a[5]}; }
  void set_head(const Vec3& v) { a[0] = v.x; a[1] = v.y; a[2] = v.z; }
  void set_tail(const Vec3& v) { a[3] = v.x; a[4] = v.y; a[5] = v.z; }

  Vec6 operator+(const Vec6& o) const {
    Vec6 r;
    for (int i = 0; i < 6; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Vec6 operator-(const Vec6& o) const {
    Vec6 r;
    for (int i = 0; i < 6; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Vec6 operator-() const {
    Vec6 r;
    for (int i = 0; i < 6; ++i) r.a[i] = -a[i];
    return r;
  }
  Vec6 operator*(double s) const {
    Vec6 r;
    for (int i = 0; i < 6; ++i) r.a[i] = a[i] * s;
    return r;
  }
  Vec6& operator+=(const Vec6& o) {
    for (int i = 0; i < 6; ++i) a[i] += o.a[i];
    return *this;
  }
  double dot(const Vec6& o) const { return kern::ops().dot(a.data(), o.a.data(), 6); }
  double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec6 operator*(double s, const Vec6& v) { return v * s; }

struct Mat6 {
  std::array<double, 36> a{};  // row-major

  double& operator()(int i, int j) { return a[6 * i + j]; }
  double operator()(int i, int j) const { return a[6 * i + j]; }
  double* data() { return a.data(); }
  const double* data() const { return a.data(); }

  static Mat6 zero() { return {}; }
  static Mat6 identity() {
    Mat6 m;
    for (int i = 0; i < 6; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat6 scaled_identity(double s) {
    Mat6 m;
    for (int i = 0; i < 6; ++i) m(i, i) = s;
    return m;
  }
  static Mat6 from_blocks(const Mat3& tl, const Mat3& tr, const Mat3& bl,
                          const Mat3& br) {
    Mat6 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        m(i, j) = tl(i, j);
        m(i, j + 3) = tr(i, j);
        m(i + 3, j) = bl(i, j);
        m(i + 3, j + 3) = br(i, j);
      }
    return m;
  }
  Mat3 block(int bi, int bj) const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = (*this)(3 * bi + i, 3 * bj + j);
    return m;
  }

  Vec6 operator*(const Vec6& x) const {
    Vec6 y;
    kern::ops().matvec6(a.data(), x.data(), y.data());
    return y;
  }
  // A^T x without forming the transpose
  Vec6 tmul(const Vec6& x) const {
    Vec6 y;
    kern::ops().matvec6_t(a.data(), x.data(), y.data());
    return y;
  }
  Mat6 operator*(const Mat6& o) const {
    Mat6 c;
    kern::ops().matmul66(a.data(), o.a.data(), c.a.data());
    return c;
  }
  // A * B^T
  Mat6 mul_nt(const Mat6& o) const {
    Mat6 c;
    kern::ops().matmul66_nt(a.data(), o.a.data(), c.a.data());
    return c;
  }
  Mat6 transpose() const {
    Mat6 m;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = (*this)(j, i);
    return m;
  }
  Mat6 operator+(const Mat6& o) const {
    Mat6 m;
    for (int i = 0; i < 36; ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  Mat6 operator-(const Mat6& o) const {
    Mat6 m;
    for (int i = 0; i < 36; ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  Mat6 operator*(double s) const {
    Mat6 m;
    for (int i = 0; i < 36; ++i) m.a[i] = a[i] * s;
    return m;
  }
  double max_abs() const {
    double w = 0.0;
    for (double v : a) w = std::max(w, std::abs(v));
    return w;
  }
};

struct Mat4 {
  std::array<double, 16> a{};  // row-major

  double& operator()(int i, int j) { return a[4 * i + j]; }
  double operator()(int i, int j) const { return a[4 * i + j]; }

  static Mat4 zero() { return {}; }
  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }
  Mat4 operator+(const Mat4& o) const {
    Mat4 m;
    for (int i = 0; i < 16; ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  Mat4 operator-(const Mat4& o) const {
    Mat4 m;
    for (int i = 0; i < 16; ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  Mat4 operator*(double s) const {
    Mat4 m;
    for (int i = 0; i < 16; ++i) m.a[i] = a[i] * s;
    return m;
  }
  Mat4 operator*(const Mat4& o) const {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += (*this)(i, k) * o(k, j);
        m(i, j) = acc;
      }
    return m;
  }
  double trace() const { return a[0] + a[5] + a[10] + a[15]; }
  double asymmetry() const {
    double w = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        w = std::max(w, std::abs((*this)(i, j) - (*this)(j, i)));
    return w;
  }
  void symmetrize() {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const double m = 0.5 * ((*this)(i, j) + (*this)(j, i));
        (*this)(i, j) = m;
        (*this)(j, i) = m;
      }
  }
  double max_abs() const {
    double w = 0.0;
    for (double v : a) w = std::max(w, std::abs(v));
    return w;
  }
};

struct Vec7 {
  std::array<double, 7> a{};
  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }
  Vec7 operator+(const Vec7& o) const {
    Vec7 r;
    for (int i = 0; i < 7; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Vec7 operator-(const Vec7& o) const {
    Vec7 r;
    for (int i = 0; i < 7; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Vec7 operator*(double s) const {
    Vec7 r;
    for (int i = 0; i < 7; ++i) r.a[i] = a[i] * s;
    return r;
  }
  Vec7& operator+=(const Vec7& o) {
    for (int i = 0; i < 7; ++i) a[i] += o.a[i];
    return *this;
  }
};

struct Mat7 {
  std::array<double, 49> a{};
  double& operator()(int i, int j) { return a[7 * i + j]; }
  double operator()(int i, int j) const { return a[7 * i + j]; }
};

struct Vec10 {
  std::array<double, 10> a{};
  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }
  double* data() { return a.data(); }
  const double* data() const { return a.data(); }
  Vec10 operator+(const Vec10& o) const {
    Vec10 r;
    for (int i = 0; i < 10; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Vec10 operator-(const Vec10& o) const {
    Vec10 r;
    for (int i = 0; i < 10; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Vec10 operator*(double s) const {
    Vec10 r;
    for (int i = 0; i < 10; ++i) r.a[i] = a[i] * s;
    return r;
  }
  double dot(const Vec10& o) const {
    return kern::ops().dot(a.data(), o.a.data(), 10);
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

// Lower-triangular Cholesky of a symmetric 4x4. Returns false when the matrix
// is not positive definite.
bool cholesky4(const Mat4& A, Mat4& L);
// Determinant from a Cholesky factor.
double det_from_cholesky4(const Mat4& L);
// Inverse of an SPD 4x4 via its Cholesky factor.
Mat4 spd_inverse4(const Mat4& L);
// Smallest eigenvalue of a symmetric 4x4 (cyclic Jacobi).
double min_eigenvalue_sym4(const Mat4& A);
// Solve A x = b for symmetric positive definite A (LDL^T, no pivoting).
// Returns false on a (near-)singular pivot.
bool solve_spd7(const Mat7& A, const Vec7& b, Vec7& x);

}  // namespace exovdc
