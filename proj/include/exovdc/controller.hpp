#pragma once

#include <random>
#include <span>

#include "exovdc/chain.hpp"
#include "exovdc/estimator.hpp"

namespace exovdc {

struct ControlGains {
  Vec7 lambda{};                 // required-velocity feedback, per joint
  Mat6 K_D = Mat6::zero();       // body velocity-error gain
  Mat6 K_I = Mat6::zero();       // body integral gain
  double gamma_w = 10.0;         // Gamma = gamma_w I (body net weights)
  double gamma1 = 10.0;          // body NAL gain
  double gamma2 = 10.0;          // body eps-offset gain
  double kd_joint = 1.5;
  double ki_joint = 5.0;
  double zeta = 10.0;            // joint NAL gain
  double beta1 = 10.0;           // joint net weight gain
  double beta2 = 10.0;           // joint eps-offset gain
  double k_b = 0.0;              // barrier half width, rad
  double k_p = 100.0;            // PD baseline
  double k_v = 15.0;
};

// qdot_r = qdot_d + lambda (q_d - q)
double required_joint_velocity(double qd_dot, double qd, double q,
                               double lambda);

// Body-level wrench: K_D err + W^T psi + eps + K_I int_err + Y phi_hat.
Vec6 body_control_wrench(const Regressor& Y, const Vec10& phi_hat,
                         const RbfNet& net, std::span<const double> chi,
                         const Vec6& vel_err, const Vec6& int_err,
                         const Mat6& K_D, const Mat6& K_I);

// e_a / (k_b^2 - e_a^2); throws BarrierBreachError when |e_a| >= k_b.
double barrier_term(double e_a, double k_b);

// Joint-level torque: k_d err + k_I int + Y_a phi_a + W^T psi + eps + barrier.
// y_a is the 1x1 joint regressor (the required joint acceleration).
double joint_control_torque(double qdot_r, double qdot, double int_err,
                            double y_a, double phi_a_hat, const RbfNet& net,
                            std::span<const double> chi, double e_a, double k_d,
                            double k_i, double k_b);

// Component of the propagated required wrench about the joint axis.
double load_torque(const JointAxis& mu, const SpatialForce& f_r);

double compose_control(double tau_star_r, double tau_ar);

double pd_control(double qd, double q, double qd_dot, double qdot, double k_p,
                  double k_v);

struct TrajectorySample {
  Vec7 q{}, qdot{}, qddot{};
};

struct EstimatorSettings {
  int units = 9;
  double center_min = -1.0;
  double center_max = 1.0;
  double width = 1.0;
  bool normalize_inputs = false;  // affine squash of net inputs into [-1, 1]
  double input_scale = 1.0;       // half-range used when normalizing
  double initial_scale = 0.5;     // phi_hat(0) as a fraction of truth
  bool freeze = false;            // diagnostics: hold all estimates fixed
};

inline constexpr int kBodyNetInput = 25;  // [Vr(6), V(6), E_I(6), E_D(6), tau_ar]
inline constexpr int kJointNetInput = 6;  // [qddr, qdr, qd, e_a, de_a, tau*_r]

// Everything one control step produces beyond the torque command; feeds the
// stability bookkeeping in the harness.
struct StepDiagnostics {
  ChainVelocities vel, vel_r;
  std::array<Vec6, kNumJoints> accel_r;
  std::array<Vec6, kNumJoints> fstar_r;
  ChainForces forces_r;
  std::array<Regressor, kNumJoints> Y;
  Vec7 qdot_r{}, qddot_r{}, e_a{}, tau_star_r{}, tau_ar{};
  std::array<Vec6, kNumJoints> vel_err;
  std::array<Vec6, kNumJoints> int_err;   // after this step's accumulation
  Vec7 jerr{};                            // qdot_r - qdot
  Vec7 jint{};                            // its integral
};

// Decentralized neuro-adaptive controller for the 7-DoF augmented chain.
// One instance owns the integrals, the required-angle states and all
// per-subsystem estimators of a single closed-loop run.
class VdcController {
 public:
  VdcController(const ChainGeometry& geom, const ControlGains& gains,
                const EstimatorSettings& est, std::uint64_t seed,
                const Vec7& q0);

  // Pre-constraint torque command; advances integrals, q_r and (unless frozen)
  // every estimator. The sweeps and per-subsystem terms are reported through
  // `diag` when provided.
  Vec7 step(const ChainState& state, const TrajectorySample& des, double dt,
            StepDiagnostics* diag = nullptr);

  const std::array<RbfNet, kNumJoints>& body_nets() const { return body_net_; }
  const std::array<RbfNet, kNumJoints>& joint_nets() const { return joint_net_; }
  const std::array<NalState, kNumJoints>& body_nal() const { return body_nal_; }
  const std::array<NalState, kNumJoints>& joint_nal() const { return joint_nal_; }
  const Vec7& q_r() const { return q_r_; }
  const std::array<Vec6, kNumJoints>& body_integral() const { return int_err_; }
  const Vec7& joint_integral() const { return jint_; }
  const ControlGains& gains() const { return gains_; }
  double inertia_hat(int i) const { return joint_nal_[i].L_hat.L(3, 3); }

 private:
  const ChainGeometry* geom_;
  ControlGains gains_;
  EstimatorSettings est_;
  std::vector<double> gamma_;  // units x units weight gain matrix

  std::array<RbfNet, kNumJoints> body_net_;
  std::array<RbfNet, kNumJoints> joint_net_;
  std::array<NalState, kNumJoints> body_nal_;
  std::array<NalState, kNumJoints> joint_nal_;

  Vec7 q_r_{};
  std::array<Vec6, kNumJoints> int_err_{};
  Vec7 jint_{};
  // previous-step values feeding the net inputs and the trapezoids
  std::array<Vec6, kNumJoints> prev_err_{};
  Vec7 prev_jerr_{};
  Vec7 prev_qdot_r_{};
  Vec7 prev_tau_ar_{};
  Vec7 prev_tau_star_r_{};
  bool primed_ = false;

  void squash(std::span<double> chi) const;
};

}  // namespace exovdc
