#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: explicit Newton-Euler component formulas, a geometric-Jacobian
// velocity oracle built from world poses, and random generators for
// physically consistent bodies.

#include <random>

#include "exovdc/chain.hpp"

namespace oracle {

using namespace exovdc;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Vec3 random_vec3(std::mt19937_64& g, double scale = 1.0) {
  return {uniform(g, -scale, scale), uniform(g, -scale, scale),
          uniform(g, -scale, scale)};
}

inline Vec6 random_vec6(std::mt19937_64& g, double scale = 1.0) {
  return Vec6::from_parts(random_vec3(g, scale), random_vec3(g, scale));
}

inline Vec10 random_vec10(std::mt19937_64& g, double scale = 1.0) {
  Vec10 v;
  for (int i = 0; i < 10; ++i) v[i] = uniform(g, -scale, scale);
  return v;
}

inline Mat3 random_rotation(std::mt19937_64& g) {
  Vec3 axis = random_vec3(g);
  const double n = axis.norm();
  if (n < 1e-6) axis = {1, 0, 0};
  else axis = axis * (1.0 / n);
  return Mat3::axis_angle(axis, uniform(g, -M_PI, M_PI));
}

// Strictly physically consistent body: CoM inertia with strict triangle
// inequalities, arbitrary CoM offset.
inline InertialParams random_body(std::mt19937_64& g) {
  const double m = uniform(g, 0.5, 3.0);
  const Vec3 com = random_vec3(g, 0.2);
  const double x = uniform(g, 0.1, 1.0), y = uniform(g, 0.1, 1.0),
               z = uniform(g, 0.1, 1.0);
  const Mat3 principal = Mat3::diag((y + z) * 0.01 * m, (x + z) * 0.01 * m,
                                    (x + y) * 0.01 * m);
  const Mat3 r = random_rotation(g);
  const Mat3 icom = r * principal * r.transpose();
  return InertialParams::from_com(m, com, icom);
}

// Classic Newton-Euler wrench of a free rigid body about the frame origin,
// written in component form (no gravity):
//   f = m(dv + w x v) + dw x h + w x (w x h)
//   n = Ibar dw + w x (Ibar w) + h x (dv + w x v)
inline Vec6 newton_euler_wrench(const InertialParams& p, const Vec6& V,
                                const Vec6& Vdot) {
  const Vec3 v = V.head(), w = V.tail();
  const Vec3 dv = Vdot.head(), dw = Vdot.tail();
  const Vec3 h = p.first_moment();
  const Mat3 ibar = p.inertia();
  const Vec3 f = (dv + w.cross(v)) * p.mass() + dw.cross(h) +
                 w.cross(w.cross(h));
  const Vec3 n = ibar * dw + w.cross(ibar * w) +
                 h.cross(dv + w.cross(v));
  return Vec6::from_parts(f, n);
}

// World poses give an independent route to body twists: angular velocity is
// the sum of world joint-axis rates, linear velocity the sum of lever terms.
inline std::array<Vec6, kNumJoints> jacobian_velocities(
    const ChainGeometry& geom, const ChainKinematics& kin, const Vec7& qdot) {
  std::array<Vec6, kNumJoints> out;
  for (int i = 0; i < kNumJoints; ++i) {
    Vec3 w_world{}, v_world{};
    const Vec3 p_i = kin.body_pose[i].p;
    for (int j = 0; j <= i; ++j) {
      const Vec3 axis_world = kin.body_pose[j].R * geom.joints[j].axis.axis;
      const Vec3 p_j = kin.body_pose[j].p;
      w_world += axis_world * qdot[j];
      v_world += (axis_world * qdot[j]).cross(p_i - p_j);
    }
    const Mat3 rt = kin.body_pose[i].R.transpose();
    out[i] = Vec6::from_parts(rt * v_world, rt * w_world);
  }
  return out;
}

// A deterministic, irregular but physically consistent 7-joint chain for
// tests; axes follow the z,z,z,z,x,z,y pattern of the default assignment.
inline ChainGeometry test_geometry(std::uint64_t seed) {
  auto g = rng(seed);
  ChainGeometry geom;
  const char axes[kNumJoints] = {'z', 'z', 'z', 'z', 'x', 'z', 'y'};
  for (int i = 0; i < kNumJoints; ++i) {
    JointGeom& j = geom.joints[i];
    j.axis = axes[i] == 'x'   ? JointAxis::about_x()
             : axes[i] == 'y' ? JointAxis::about_y()
                              : JointAxis::about_z();
    j.rot_pre = random_rotation(g);
    j.offset_pre = random_vec3(g, 0.15);
    j.rot_post = random_rotation(g);
    j.offset_post = random_vec3(g, 0.15);
    j.robot = random_body(g);
    j.human = j.robot * 0.5;
    j.motor_inertia = uniform(g, 0.02, 0.08);
    j.human_joint_inertia = 0.5 * j.motor_inertia;
  }
  return geom;
}

inline double rel_err(double got, double want, double floor = 1e-12) {
  return std::abs(got - want) / std::max({std::abs(got), std::abs(want), floor});
}

inline double max_abs_diff(const Vec6& a, const Vec6& b) {
  double w = 0;
  for (int i = 0; i < 6; ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace oracle
