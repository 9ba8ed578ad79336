#include "exovdc/chain.hpp"

#include <cmath>

namespace exovdc {

namespace {

// blockdiag(skew(a), skew(a)) x
Vec6 axis_spin(const Vec3& a, const Vec6& x) {
  return Vec6::from_parts(a.cross(x.head()), a.cross(x.tail()));
}

}  // namespace

ChainKinematics compute_kinematics(const ChainGeometry& geom, const Vec7& q) {
  ChainKinematics kin;
  kin.tip_pose[0] = FramePose{};
  for (int i = 0; i < kNumJoints; ++i) {
    const JointGeom& jg = geom.joints[i];
    const Mat3 r_joint = Mat3::axis_angle(jg.axis.axis, q[i]);
    kin.pre[i].emplace(jg.rot_pre * r_joint, jg.offset_pre,
                       i == 0 ? Frame::ground() : Frame::tip(i),
                       Frame::body(i + 1));
    kin.post[i].emplace(jg.rot_post, jg.offset_post, Frame::body(i + 1),
                        Frame::tip(i + 1));

    const FramePose& parent = kin.tip_pose[i];
    FramePose bp;
    bp.R = parent.R * kin.pre_of(i).rotation();
    bp.p = parent.p + parent.R * kin.pre_of(i).offset();
    kin.body_pose[i] = bp;
    FramePose tp;
    tp.R = bp.R * jg.rot_post;
    tp.p = bp.p + bp.R * jg.offset_post;
    kin.tip_pose[i + 1] = tp;
  }
  return kin;
}

ChainVelocities forward_velocities(const ChainGeometry& geom,
                                   const ChainKinematics& kin, const Vec7& qdot,
                                   const SpatialVelocity& v_base) {
  if (v_base.frame != Frame::ground())
    throw FrameMismatchError("base velocity must be expressed at T0");
  ChainVelocities out;
  out.base = v_base;
  SpatialVelocity carry = v_base;
  for (int i = 0; i < kNumJoints; ++i) {
    SpatialVelocity vb = velocity_to_child(kin.pre_of(i), carry);
    vb.v += geom.joints[i].axis.mu() * qdot[i];
    out.body[i] = vb;
    out.tip[i] = velocity_to_child(kin.post_of(i), vb);
    carry = out.tip[i];
  }
  return out;
}

ChainVelocities forward_required_velocities(const ChainGeometry& geom,
                                            const ChainKinematics& kin,
                                            const Vec7& qdot_r,
                                            const SpatialVelocity& v_base_r) {
  return forward_velocities(geom, kin, qdot_r, v_base_r);
}

std::array<Vec6, kNumJoints> forward_accelerations(
    const ChainGeometry& geom, const ChainKinematics& kin,
    const ChainVelocities& vel, const Vec7& qdot_meas, const Vec7& rate_dot,
    const Vec6& a_base) {
  std::array<Vec6, kNumJoints> acc;
  Vec6 carry = a_base;  // d/dt of the twist at T_{i-1}
  for (int i = 0; i < kNumJoints; ++i) {
    const JointGeom& jg = geom.joints[i];
    // d/dt(U^T x) = U^T dx - qdot * spin(axis) (U^T x); the joint-rate term
    // mu qdot is axis-aligned and drops out of the spin.
    Vec6 a = kin.pre_of(i).matrix().tmul(carry) -
             axis_spin(jg.axis.axis, vel.body[i].v) * qdot_meas[i] +
             jg.axis.mu() * rate_dot[i];
    acc[i] = a;
    carry = kin.post_of(i).matrix().tmul(a);
  }
  return acc;
}

ChainForces backward_forces(const ChainGeometry& geom,
                            const ChainKinematics& kin,
                            const std::array<Vec6, kNumJoints>& fstar,
                            const Vec6& f_tip) {
  (void)geom;
  ChainForces out;
  out.tip[kNumJoints] = {f_tip, Frame::tip(kNumJoints)};
  for (int j = kNumJoints - 1; j >= 0; --j) {
    SpatialForce fb = force_to_parent(kin.post_of(j), out.tip[j + 1]);
    fb.w += fstar[j];
    out.body[j] = fb;
    out.tip[j] = force_to_parent(kin.pre_of(j), fb);
  }
  return out;
}

ChainForces backward_required_forces(const ChainGeometry& geom,
                                     const ChainKinematics& kin,
                                     const std::array<Vec6, kNumJoints>& fstar_r,
                                     const Vec6& f_tip_r) {
  return backward_forces(geom, kin, fstar_r, f_tip_r);
}

Vec3 gravity_direction_in_frame(const ChainGeometry& geom,
                                const ChainKinematics& kin, Frame frame) {
  if (frame == Frame::ground())
    return geom.gravity_world;
  for (int i = 1; i <= kNumJoints; ++i) {
    if (frame == Frame::body(i))
      return kin.body_pose[i - 1].R.transpose() * geom.gravity_world;
    if (frame == Frame::tip(i))
      return kin.tip_pose[i].R.transpose() * geom.gravity_world;
  }
  throw FrameMismatchError("unknown chain frame " + frame.name());
}

Vec7 inverse_dynamics(const ChainGeometry& geom, const ChainKinematics& kin,
                      const ChainState& state, const Vec7& qddot,
                      const std::array<Vec6, kNumJoints>* dist,
                      const Vec7* tau_h, ChainForces* forces_out,
                      std::array<Vec6, kNumJoints>* fstar_out,
                      std::array<Vec6, kNumJoints>* accel_out) {
  const SpatialVelocity still{{}, Frame::ground()};
  const ChainVelocities vel = forward_velocities(geom, kin, state.qdot, still);
  const std::array<Vec6, kNumJoints> acc =
      forward_accelerations(geom, kin, vel, state.qdot, qddot, Vec6{});

  std::array<Vec6, kNumJoints> fstar;
  for (int i = 0; i < kNumJoints; ++i) {
    const InertialParams aug = geom.joints[i].augmented();
    const Vec3 g = kin.body_pose[i].R.transpose() * geom.gravity_world;
    const BodyDynTerms dyn = dynamics_terms(aug, vel.body[i], g);
    fstar[i] = dyn.M * acc[i] + dyn.C * vel.body[i].v + dyn.G;
    if (dist) fstar[i] += (*dist)[i];
  }

  const ChainForces forces = backward_forces(geom, kin, fstar, Vec6{});
  Vec7 tau;
  for (int i = 0; i < kNumJoints; ++i) {
    tau[i] = geom.joints[i].axis.mu().dot(forces.body[i].w) +
             geom.joints[i].joint_inertia() * qddot[i];
    if (tau_h) tau[i] += (*tau_h)[i];
  }
  if (forces_out) *forces_out = forces;
  if (fstar_out) *fstar_out = fstar;
  if (accel_out) *accel_out = acc;
  return tau;
}

Mat7 joint_space_inertia(const ChainGeometry& geom, const ChainKinematics& kin) {
  // Composite-rigid-body pass with the augmented spatial inertias.
  std::array<Mat6, kNumJoints> composite;
  std::array<Mat6, kNumJoints> link;  // force transform B_{i} <- B_{i+1}
  for (int i = 0; i < kNumJoints; ++i)
    composite[i] = spatial_inertia(geom.joints[i].augmented());
  for (int i = 0; i + 1 < kNumJoints; ++i)
    link[i] = compose(kin.post_of(i), kin.pre_of(i + 1)).matrix();
  for (int i = kNumJoints - 2; i >= 0; --i) {
    const Mat6 lifted = (link[i] * composite[i + 1]).mul_nt(link[i]);
    composite[i] = composite[i] + lifted;
  }

  Mat7 H{};
  for (int i = 0; i < kNumJoints; ++i) {
    const Vec6 mu_i = geom.joints[i].axis.mu();
    Vec6 f = composite[i] * mu_i;
    H(i, i) = mu_i.dot(f) + geom.joints[i].joint_inertia();
    for (int j = i - 1; j >= 0; --j) {
      f = link[j] * f;
      const double hij = geom.joints[j].axis.mu().dot(f);
      H(j, i) = hij;
      H(i, j) = hij;
    }
  }
  return H;
}

Vec7 plant_forward_dynamics(const ChainGeometry& geom, const ChainState& state,
                            const Vec7& tau_applied,
                            const std::array<Vec6, kNumJoints>* dist,
                            const Vec7* tau_h) {
  const ChainKinematics kin = compute_kinematics(geom, state.q);
  const Mat7 H = joint_space_inertia(geom, kin);
  const Vec7 bias = inverse_dynamics(geom, kin, state, Vec7{}, dist, tau_h);
  Vec7 qdd;
  if (!solve_spd7(H, tau_applied - bias, qdd))
    throw NotPositiveDefiniteError("joint-space inertia is singular");
  return qdd;
}

double total_energy(const ChainGeometry& geom, const ChainState& state) {
  const ChainKinematics kin = compute_kinematics(geom, state.q);
  const SpatialVelocity still{{}, Frame::ground()};
  const ChainVelocities vel = forward_velocities(geom, kin, state.qdot, still);
  double e = 0.0;
  for (int i = 0; i < kNumJoints; ++i) {
    const InertialParams aug = geom.joints[i].augmented();
    const Mat6 M = spatial_inertia(aug);
    e += 0.5 * vel.body[i].v.dot(M * vel.body[i].v);
    e += 0.5 * geom.joints[i].joint_inertia() * state.qdot[i] * state.qdot[i];
    const Vec3 com_world =
        kin.body_pose[i].p +
        kin.body_pose[i].R * (aug.first_moment() * (1.0 / aug.mass()));
    e -= aug.mass() * geom.gravity_world.dot(com_world);
  }
  return e;
}

}  // namespace exovdc
