#include "exovdc/body.hpp"

#include <cmath>

namespace exovdc {

PseudoInertia phi_to_pseudo(const InertialParams& p) {
  const Mat3 ibar = p.inertia();
  const Mat3 sigma = Mat3::identity() * (0.5 * ibar.trace()) - ibar;
  const Vec3 h = p.first_moment();
  PseudoInertia out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.L(i, j) = sigma(i, j);
    out.L(i, 3) = h[i];
    out.L(3, i) = h[i];
  }
  out.L(3, 3) = p.mass();
  return out;
}

InertialParams pseudo_to_phi(const PseudoInertia& li) {
  if (li.L.asymmetry() > 1e-10)
    throw DimensionError("pseudo-inertia matrix is not symmetric");
  Mat3 sigma;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sigma(i, j) = li.L(i, j);
  const Mat3 ibar = Mat3::identity() * sigma.trace() - sigma;
  return InertialParams::from_parts(
      li.L(3, 3), {li.L(0, 3), li.L(1, 3), li.L(2, 3)}, ibar);
}

Mat4 coeff_to_symmetric(const Vec10& s) {
  Mat4 S;
  S(0, 0) = s[5] + s[6];
  S(1, 1) = s[4] + s[6];
  S(2, 2) = s[4] + s[5];
  S(3, 3) = s[0];
  S(0, 1) = S(1, 0) = -0.5 * s[7];
  S(1, 2) = S(2, 1) = -0.5 * s[8];
  S(0, 2) = S(2, 0) = -0.5 * s[9];
  S(0, 3) = S(3, 0) = 0.5 * s[1];
  S(1, 3) = S(3, 1) = 0.5 * s[2];
  S(2, 3) = S(3, 2) = 0.5 * s[3];
  return S;
}

Mat6 spatial_inertia(const InertialParams& p) {
  const Mat3 hx = skew(p.first_moment());
  return Mat6::from_blocks(Mat3::identity() * p.mass(), hx * -1.0, hx,
                           p.inertia());
}

Vec6 gravity_term(const InertialParams& p, const Vec3& g) {
  return Vec6::from_parts(-(g * p.mass()), -(p.first_moment().cross(g)));
}

namespace {

Mat6 twist_lift(const SpatialVelocity& v) {
  const Mat3 wx = skew(v.angular());
  return Mat6::from_blocks(wx, Mat3::zero(), skew(v.linear()), wx);
}

}  // namespace

BodyDynTerms dynamics_terms(const InertialParams& p, const SpatialVelocity& v,
                            const Vec3& gravity_in_frame) {
  BodyDynTerms out;
  out.M = spatial_inertia(p);
  const Mat6 W = twist_lift(v);
  out.C = W * out.M - out.M.mul_nt(W);
  out.G = gravity_term(p, gravity_in_frame);
  return out;
}

Regressor regressor(const SpatialVelocity& vel, const SpatialVelocity& vel_r,
                    const Vec6& a_r, const Vec3& g) {
  const Vec3 v = vel.linear(), w = vel.angular();
  const Vec3 vr = vel_r.linear(), wr = vel_r.angular();
  const Vec3 a = a_r.head(), alpha = a_r.tail();

  Regressor Y;

  // mass column: top  a + 2 w x vr + v x wr - g,  bottom  v x vr
  const Vec3 m_top = a + 2.0 * w.cross(vr) + v.cross(wr) - g;
  const Vec3 m_bot = v.cross(vr);
  for (int i = 0; i < 3; ++i) {
    Y(i, 0) = m_top[i];
    Y(i + 3, 0) = m_bot[i];
  }

  // first-moment block: coefficients of h in the top and bottom rows
  const Mat3 h_top =
      skew(alpha) + skew(w) * skew(wr) + skew(w.cross(wr));
  const Mat3 h_bot = skew(g) - skew(a) + skew(v) * skew(wr) -
                     skew(w) * skew(vr) - skew(w.cross(vr)) -
                     skew(v.cross(wr));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Y(i, 1 + j) = h_top(i, j);
      Y(i + 3, 1 + j) = h_bot(i, j);
    }

  // rotational-inertia block: bottom rows only,
  //   Ibar (alpha + w x wr) + w x (Ibar wr)
  // expanded over [Ixx, Iyy, Izz, Ixy, Iyz, Ixz] via L(u) with Ibar u = L(u) theta.
  const auto lmat = [](const Vec3& u, double out[3][6]) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) out[i][j] = 0.0;
    out[0][0] = u.x; out[0][3] = u.y; out[0][5] = u.z;
    out[1][1] = u.y; out[1][3] = u.x; out[1][4] = u.z;
    out[2][2] = u.z; out[2][4] = u.y; out[2][5] = u.x;
  };
  double l_a[3][6], l_wr[3][6];
  lmat(alpha + w.cross(wr), l_a);
  lmat(wr, l_wr);
  const Mat3 wx = skew(w);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) {
      double acc = l_a[i][j];
      for (int k = 0; k < 3; ++k) acc += wx(i, k) * l_wr[k][j];
      Y(i + 3, 4 + j) = acc;
    }

  return Y;
}

double bregman(const PseudoInertia& truth, const PseudoInertia& estimate) {
  Mat4 Lt, Le;
  if (!cholesky4(truth.L, Lt))
    throw NotPositiveDefiniteError("bregman: reference pseudo-inertia not PD");
  if (!cholesky4(estimate.L, Le))
    throw NotPositiveDefiniteError("bregman: estimated pseudo-inertia not PD");
  const Mat4 inv_est = spd_inverse4(Le);
  double tr = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) tr += inv_est(i, k) * truth.L(k, i);
  return std::log(det_from_cholesky4(Le) / det_from_cholesky4(Lt)) + tr - 4.0;
}

}  // namespace exovdc
