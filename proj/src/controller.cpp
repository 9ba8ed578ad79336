#include "exovdc/controller.hpp"

#include <cmath>

namespace exovdc {

double required_joint_velocity(double qd_dot, double qd, double q,
                               double lambda) {
  return qd_dot + lambda * (qd - q);
}

Vec6 body_control_wrench(const Regressor& Y, const Vec10& phi_hat,
                         const RbfNet& net, std::span<const double> chi,
                         const Vec6& vel_err, const Vec6& int_err,
                         const Mat6& K_D, const Mat6& K_I) {
  Vec6 nn;
  nn_estimate(net, chi, {nn.data(), 6});
  return K_D * vel_err + nn + K_I * int_err + Y * phi_hat;
}

double barrier_term(double e_a, double k_b) {
  if (std::abs(e_a) >= k_b) throw BarrierBreachError(e_a, k_b);
  return e_a / (k_b * k_b - e_a * e_a);
}

double joint_control_torque(double qdot_r, double qdot, double int_err,
                            double y_a, double phi_a_hat, const RbfNet& net,
                            std::span<const double> chi, double e_a, double k_d,
                            double k_i, double k_b) {
  double nn = 0.0;
  nn_estimate(net, chi, {&nn, 1});
  return k_d * (qdot_r - qdot) + k_i * int_err + y_a * phi_a_hat + nn +
         barrier_term(e_a, k_b);
}

double load_torque(const JointAxis& mu, const SpatialForce& f_r) {
  return mu.mu().dot(f_r.w);
}

double compose_control(double tau_star_r, double tau_ar) {
  return tau_star_r + tau_ar;
}

double pd_control(double qd, double q, double qd_dot, double qdot, double k_p,
                  double k_v) {
  return k_p * (qd - q) + k_v * (qd_dot - qdot);
}

VdcController::VdcController(const ChainGeometry& geom,
                             const ControlGains& gains,
                             const EstimatorSettings& est, std::uint64_t seed,
                             const Vec7& q0)
    : geom_(&geom), gains_(gains), est_(est) {
  gamma_.assign(static_cast<std::size_t>(est.units) * est.units, 0.0);
  for (int i = 0; i < est.units; ++i)
    gamma_[static_cast<std::size_t>(i) * est.units + i] = gains.gamma_w;

  std::mt19937_64 rng(seed);
  for (int i = 0; i < kNumJoints; ++i)
    body_net_[i] = RbfNet::make(est.units, kBodyNetInput, 6, rng,
                                est.center_min, est.center_max, est.width);
  for (int i = 0; i < kNumJoints; ++i)
    joint_net_[i] = RbfNet::make(est.units, kJointNetInput, 1, rng,
                                 est.center_min, est.center_max, est.width);

  for (int i = 0; i < kNumJoints; ++i) {
    const InertialParams aug = geom.joints[i].augmented();
    body_nal_[i].L_hat = phi_to_pseudo(aug * est.initial_scale);
    body_nal_[i].gain = gains.gamma1;
    // Joint subsystems carry a single unknown (the lumped inertia) embedded in
    // the same pseudo-inertia machinery: phi_a = [I, 0,0,0, 2,2,2, 0,0,0]
    // puts the inertia in the mass slot and a fixed identity block elsewhere.
    Mat4 la = Mat4::identity();
    la(3, 3) = est.initial_scale * geom.joints[i].joint_inertia();
    joint_nal_[i].L_hat.L = la;
    joint_nal_[i].gain = gains.zeta;
  }
  q_r_ = q0;
}

void VdcController::squash(std::span<double> chi) const {
  if (!est_.normalize_inputs) return;
  const double inv = 1.0 / est_.input_scale;
  for (double& c : chi) c *= inv;
}

Vec7 VdcController::step(const ChainState& state, const TrajectorySample& des,
                         double dt, StepDiagnostics* diag) {
  const ChainGeometry& geom = *geom_;

  Vec7 qdot_r, qddot_r;
  for (int i = 0; i < kNumJoints; ++i) {
    qdot_r[i] = required_joint_velocity(des.qdot[i], des.q[i], state.q[i],
                                        gains_.lambda[i]);
    qddot_r[i] = des.qddot[i] + gains_.lambda[i] * (des.qdot[i] - state.qdot[i]);
  }

  // q_r integrates the required rate alongside the plant; advancing it with
  // the current sample keeps e_a = q_r - q a trapezoid of (qdot_r - qdot).
  if (primed_)
    for (int i = 0; i < kNumJoints; ++i)
      q_r_[i] += 0.5 * dt * (prev_qdot_r_[i] + qdot_r[i]);

  const ChainKinematics kin = compute_kinematics(geom, state.q);
  const SpatialVelocity still{{}, Frame::ground()};
  const ChainVelocities vel = forward_velocities(geom, kin, state.qdot, still);
  const ChainVelocities vel_r =
      forward_required_velocities(geom, kin, qdot_r, still);
  const std::array<Vec6, kNumJoints> accel_r =
      forward_accelerations(geom, kin, vel_r, state.qdot, qddot_r, Vec6{});

  std::array<Regressor, kNumJoints> Y;
  std::array<Vec6, kNumJoints> vel_err;
  std::array<Vec6, kNumJoints> fstar_r;
  std::array<std::array<double, kBodyNetInput>, kNumJoints> chi_d;

  for (int i = 0; i < kNumJoints; ++i) {
    const Vec3 g = kin.body_pose[i].R.transpose() * geom.gravity_world;
    Y[i] = regressor(vel.body[i], vel_r.body[i], accel_r[i], g);
    vel_err[i] = vel_r.body[i].v - vel.body[i].v;

    // Net inputs use the previous step's error terms (the current load torque
    // is not available until after the backward sweep).
    auto& chi = chi_d[i];
    for (int c = 0; c < 6; ++c) {
      chi[c] = vel_r.body[i].v[c];
      chi[6 + c] = vel.body[i].v[c];
      chi[12 + c] = int_err_[i][c];
      chi[18 + c] = prev_err_[i][c];
    }
    chi[24] = prev_tau_ar_[i];
    squash(chi);

    if (primed_) int_err_[i] += (prev_err_[i] + vel_err[i]) * (0.5 * dt);

    fstar_r[i] = body_control_wrench(Y[i], body_nal_[i].phi_hat(), body_net_[i],
                                     chi, vel_err[i], int_err_[i], gains_.K_D,
                                     gains_.K_I);
  }

  const ChainForces forces_r =
      backward_required_forces(geom, kin, fstar_r, Vec6{});

  Vec7 tau_ar, tau_star_r, tau_cmd, e_a, jerr;
  std::array<std::array<double, kJointNetInput>, kNumJoints> chi_j;
  for (int i = 0; i < kNumJoints; ++i) {
    tau_ar[i] = load_torque(geom.joints[i].axis, forces_r.body[i]);
    e_a[i] = q_r_[i] - state.q[i];
    jerr[i] = qdot_r[i] - state.qdot[i];

    auto& chi = chi_j[i];
    chi[0] = qddot_r[i];
    chi[1] = qdot_r[i];
    chi[2] = state.qdot[i];
    chi[3] = e_a[i];
    chi[4] = jerr[i];
    chi[5] = prev_tau_star_r_[i];
    squash(chi);

    if (primed_) jint_[i] += 0.5 * dt * (prev_jerr_[i] + jerr[i]);

    tau_star_r[i] = joint_control_torque(
        qdot_r[i], state.qdot[i], jint_[i], qddot_r[i],
        joint_nal_[i].L_hat.L(3, 3), joint_net_[i], chi, e_a[i],
        gains_.kd_joint, gains_.ki_joint, gains_.k_b);
    tau_cmd[i] = compose_control(tau_star_r[i], tau_ar[i]);
  }

  if (!est_.freeze) {
    for (int i = 0; i < kNumJoints; ++i) {
      update_body_net(body_net_[i], chi_d[i], vel_err[i], gamma_,
                      gains_.gamma2, dt);
      nal_step(body_nal_[i], coeff_to_symmetric(Y[i].tmul(vel_err[i])), dt);
    }
    for (int i = 0; i < kNumJoints; ++i) {
      update_joint_net(joint_net_[i], chi_j[i], jerr[i], gains_.beta1,
                       gains_.beta2, dt);
      Vec10 s_a{};
      s_a[0] = qddot_r[i] * jerr[i];
      nal_step(joint_nal_[i], coeff_to_symmetric(s_a), dt);
    }
  }

  if (diag) {
    diag->vel = vel;
    diag->vel_r = vel_r;
    diag->accel_r = accel_r;
    diag->fstar_r = fstar_r;
    diag->forces_r = forces_r;
    diag->Y = Y;
    diag->qdot_r = qdot_r;
    diag->qddot_r = qddot_r;
    diag->e_a = e_a;
    diag->tau_star_r = tau_star_r;
    diag->tau_ar = tau_ar;
    diag->vel_err = vel_err;
    diag->int_err = int_err_;
    diag->jerr = jerr;
    diag->jint = jint_;
  }

  prev_err_ = vel_err;
  prev_jerr_ = jerr;
  prev_qdot_r_ = qdot_r;
  prev_tau_ar_ = tau_ar;
  prev_tau_star_r_ = tau_star_r;
  primed_ = true;
  return tau_cmd;
}

}  // namespace exovdc
