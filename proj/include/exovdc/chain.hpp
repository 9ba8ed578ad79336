#pragma once

#include <array>
#include <optional>

#include "exovdc/body.hpp"
#include "exovdc/spatial.hpp"

namespace exovdc {

inline constexpr int kNumJoints = 7;

// Joint motion selector: a unit angular axis in the child body frame,
// represented as the 6-vector it contributes to the body twist.
struct JointAxis {
  Vec3 axis{0, 0, 1};

  Vec6 mu() const { return Vec6::from_parts({}, axis); }
  static JointAxis about_x() { return {{1, 0, 0}}; }
  static JointAxis about_y() { return {{0, 1, 0}}; }
  static JointAxis about_z() { return {{0, 0, 1}}; }
};

// Fixed geometry of one subsystem: the joint-side transform T_{i-1} -> B_i
// (joint rotation applied after rot_pre, about `axis`), the rigid transform
// B_i -> T_i, and the robot/human inertial data attached to B_i.
struct JointGeom {
  Mat3 rot_pre = Mat3::identity();
  Vec3 offset_pre{};
  Mat3 rot_post = Mat3::identity();
  Vec3 offset_post{};
  JointAxis axis;
  InertialParams robot{};
  InertialParams human{};
  double motor_inertia = 0.0;
  double human_joint_inertia = 0.0;

  InertialParams augmented() const { return robot + human; }
  double joint_inertia() const { return motor_inertia + human_joint_inertia; }
};

struct ChainGeometry {
  std::array<JointGeom, kNumJoints> joints{};
  Vec3 gravity_world{0.0, 0.0, -9.81};
};

struct ChainState {
  Vec7 q{};
  Vec7 qdot{};
};

struct FramePose {
  Mat3 R = Mat3::identity();
  Vec3 p{};
};

// Configuration-dependent transforms and world poses, computed once per step.
struct ChainKinematics {
  std::array<std::optional<FrameTransform>, kNumJoints> pre;   // T_{i-1}->B_i
  std::array<std::optional<FrameTransform>, kNumJoints> post;  // B_i->T_i
  std::array<FramePose, kNumJoints> body_pose;
  std::array<FramePose, kNumJoints + 1> tip_pose;  // [0] = ground

  const FrameTransform& pre_of(int i) const { return *pre[i]; }
  const FrameTransform& post_of(int i) const { return *post[i]; }
};

ChainKinematics compute_kinematics(const ChainGeometry& geom, const Vec7& q);

struct ChainVelocities {
  SpatialVelocity base;
  std::array<SpatialVelocity, kNumJoints> body;
  std::array<SpatialVelocity, kNumJoints> tip;
};

// Twist propagation B_i = U^T T_{i-1} + mu_i qdot_i, tips via the fixed
// post-transform.
ChainVelocities forward_velocities(const ChainGeometry& geom,
                                   const ChainKinematics& kin, const Vec7& qdot,
                                   const SpatialVelocity& v_base);

// Identical propagation on required rates.
ChainVelocities forward_required_velocities(const ChainGeometry& geom,
                                            const ChainKinematics& kin,
                                            const Vec7& qdot_r,
                                            const SpatialVelocity& v_base_r);

// Coordinate time derivative of a forward_velocities sweep. `vel` must be the
// sweep produced with per-joint rates whose derivatives are `rate_dot`;
// `qdot_meas` is the measured joint velocity driving the transforms.
std::array<Vec6, kNumJoints> forward_accelerations(
    const ChainGeometry& geom, const ChainKinematics& kin,
    const ChainVelocities& vel, const Vec7& qdot_meas, const Vec7& rate_dot,
    const Vec6& a_base);

struct ChainForces {
  std::array<SpatialForce, kNumJoints> body;
  std::array<SpatialForce, kNumJoints + 1> tip;  // [j] at T_j, [7] = input tip
};

// Wrench propagation B_j = U_post T_j + F*_j, T_{j-1} = U_pre B_j, j = 7..1.
ChainForces backward_forces(const ChainGeometry& geom,
                            const ChainKinematics& kin,
                            const std::array<Vec6, kNumJoints>& fstar,
                            const Vec6& f_tip);

ChainForces backward_required_forces(const ChainGeometry& geom,
                                     const ChainKinematics& kin,
                                     const std::array<Vec6, kNumJoints>& fstar_r,
                                     const Vec6& f_tip_r);

// World gravity rotated into a chain frame. Throws FrameMismatchError for
// frames outside the chain.
Vec3 gravity_direction_in_frame(const ChainGeometry& geom,
                                const ChainKinematics& kin, Frame frame);

// Torques of the augmented chain realizing qddot at (q, qdot), with optional
// per-body disturbance wrenches (entering each body as F* = M dV + C V + G +
// dist) and exogenous human joint torque. Optionally reports the propagated
// wrenches, the per-body net wrenches and the body accelerations.
Vec7 inverse_dynamics(const ChainGeometry& geom, const ChainKinematics& kin,
                      const ChainState& state, const Vec7& qddot,
                      const std::array<Vec6, kNumJoints>* dist,
                      const Vec7* tau_h, ChainForces* forces_out = nullptr,
                      std::array<Vec6, kNumJoints>* fstar_out = nullptr,
                      std::array<Vec6, kNumJoints>* accel_out = nullptr);

// Composite-rigid-body joint-space inertia (includes per-joint inertias).
Mat7 joint_space_inertia(const ChainGeometry& geom, const ChainKinematics& kin);

// Joint accelerations under an applied (post-constraint) torque.
// Throws NotPositiveDefiniteError if the joint-space inertia is singular.
Vec7 plant_forward_dynamics(const ChainGeometry& geom, const ChainState& state,
                            const Vec7& tau_applied,
                            const std::array<Vec6, kNumJoints>* dist,
                            const Vec7* tau_h);

// Kinetic plus gravitational potential energy (zero level at the world
// origin); audit quantity for integrator checks.
double total_energy(const ChainGeometry& geom, const ChainState& state);

}  // namespace exovdc
