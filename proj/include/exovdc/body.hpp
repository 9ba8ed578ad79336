#pragma once

#include "exovdc/linalg.hpp"
#include "exovdc/spatial.hpp"

namespace exovdc {

// Ten inertial parameters of a rigid body, expressed in the body frame:
// phi = [m, h(3), Ixx, Iyy, Izz, Ixy, Iyz, Ixz] with h = m * com and the
// rotational inertia taken about the frame origin.
struct InertialParams {
  Vec10 phi{};

  double mass() const { return phi[0]; }
  Vec3 first_moment() const { return {phi[1], phi[2], phi[3]}; }
  Mat3 inertia() const {
    Mat3 m;
    m(0, 0) = phi[4]; m(1, 1) = phi[5]; m(2, 2) = phi[6];
    m(0, 1) = m(1, 0) = phi[7];
    m(1, 2) = m(2, 1) = phi[8];
    m(0, 2) = m(2, 0) = phi[9];
    return m;
  }

  static InertialParams from_parts(double m, const Vec3& h, const Mat3& inertia) {
    InertialParams p;
    p.phi[0] = m;
    p.phi[1] = h.x; p.phi[2] = h.y; p.phi[3] = h.z;
    p.phi[4] = inertia(0, 0); p.phi[5] = inertia(1, 1); p.phi[6] = inertia(2, 2);
    p.phi[7] = inertia(0, 1); p.phi[8] = inertia(1, 2); p.phi[9] = inertia(0, 2);
    return p;
  }
  // Build from mass, centre of mass and inertia about the CoM (parallel axis).
  static InertialParams from_com(double m, const Vec3& com, const Mat3& I_com) {
    const Mat3 shift =
        (Mat3::identity() * com.dot(com) - outer(com, com)) * m;
    return from_parts(m, com * m, I_com + shift);
  }

  InertialParams operator+(const InertialParams& o) const {
    return {phi + o.phi};
  }
  InertialParams operator*(double s) const { return {phi * s}; }

 private:
  static Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
    return m;
  }
};

// 4x4 pseudo-inertia, positive definite exactly for physically consistent
// parameter vectors.
struct PseudoInertia {
  Mat4 L{};
};

// phi -> L = [[0.5 tr(Ibar) 1 - Ibar, h], [h^T, m]]
PseudoInertia phi_to_pseudo(const InertialParams& p);

// Inverse map; throws DimensionError if L is asymmetric beyond 1e-10.
InertialParams pseudo_to_phi(const PseudoInertia& li);

// Coefficient-to-matrix map S(s) realizing phi^T s = tr(L S(s)).
Mat4 coeff_to_symmetric(const Vec10& s);

struct BodyDynTerms {
  Mat6 M;  // spatial inertia, symmetric
  Mat6 C;  // Coriolis/centrifugal factor at the supplied twist, skew-symmetric
  Vec6 G;  // gravity term (appears on the left-hand side of the dynamics)
};

// 6x6 spatial inertia [[m 1, -skew(h)], [skew(h), Ibar]].
Mat6 spatial_inertia(const InertialParams& p);

// Gravity term for a gravity acceleration vector expressed in the body frame.
Vec6 gravity_term(const InertialParams& p, const Vec3& gravity_in_frame);

// Body-frame terms of  M dV/dt + C(V) V + G = F*.
// C(V) = W(V) M - M W(V)^T with W = [[skew(w), 0], [skew(v), skew(w)]];
// W(V)^T V = 0, so C V reproduces the spatial bias force while C itself stays
// skew-symmetric, the form the error-dynamics cancellation relies on.
BodyDynTerms dynamics_terms(const InertialParams& p, const SpatialVelocity& v,
                            const Vec3& gravity_in_frame);

// 6x10 regressor with Y(V, Vr, Ar, g) phi = M(phi) Ar + C(phi, V) Vr + G(phi)
// for every phi.
struct Regressor {
  std::array<double, 60> Y{};  // row-major 6x10

  double& operator()(int i, int j) { return Y[10 * i + j]; }
  double operator()(int i, int j) const { return Y[10 * i + j]; }

  Vec6 operator*(const Vec10& phi) const {
    Vec6 out;
    for (int i = 0; i < 6; ++i)
      out[i] = kern::ops().dot(Y.data() + 10 * i, phi.data(), 10);
    return out;
  }
  // Y^T e
  Vec10 tmul(const Vec6& e) const {
    Vec10 out;
    for (int j = 0; j < 10; ++j) {
      double acc = 0.0;
      for (int i = 0; i < 6; ++i) acc += Y[10 * i + j] * e[i];
      out[j] = acc;
    }
    return out;
  }
};

Regressor regressor(const SpatialVelocity& v, const SpatialVelocity& v_r,
                    const Vec6& a_r, const Vec3& gravity_in_frame);

// Bregman divergence log(|Lhat|/|L|) + tr(Lhat^-1 L) - 4; zero iff Lhat == L.
// Throws NotPositiveDefiniteError when either matrix fails Cholesky.
double bregman(const PseudoInertia& truth, const PseudoInertia& estimate);

}  // namespace exovdc
