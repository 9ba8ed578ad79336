#include "exovdc/sim.hpp"

#include <chrono>
#include <cmath>

namespace exovdc {

double vpf(const SpatialVelocity& v_r, const SpatialVelocity& v,
           const SpatialForce& f_r, const SpatialForce& f) {
  if (v_r.frame != v.frame || f_r.frame != f.frame || v.frame != f.frame)
    throw FrameMismatchError("vpf operands must share one frame");
  return (v_r.v - v.v).dot(f_r.w - f.w);
}

double telescoping_residual(const VpfSweepData& d) {
  double sum = 0.0;
  for (int i = 0; i < kNumJoints; ++i) {
    sum += d.dv_body[i].dot(d.fstar_r[i] - d.fstar[i]);
    sum += d.dqdot[i] * (d.tau_star_r[i] - d.tau_star[i]);
  }
  const double p_t0 = d.dv_base.dot(d.f_base_r - d.f_base);
  const double p_t7 = d.dv_tip.dot(d.f_tip_r - d.f_tip);
  return sum - (p_t0 - p_t7);
}

double telescoping_scale(const VpfSweepData& d) {
  // The identity cancels products of velocity errors with full propagated
  // wrenches; their magnitude is the natural yardstick for "relative".
  double scale = 0.0;
  for (int i = 0; i < kNumJoints; ++i) {
    scale += d.dv_body[i].norm() *
             (d.f_r_body[i].norm() + d.f_body[i].norm() + d.fstar_r[i].norm() +
              d.fstar[i].norm());
    scale += std::abs(d.dqdot[i]) *
             (std::abs(d.tau_star_r[i]) + std::abs(d.tau_star[i]));
  }
  scale += d.dv_base.norm() * (d.f_base_r.norm() + d.f_base.norm());
  scale += d.dv_tip.norm() * (d.f_tip_r.norm() + d.f_tip.norm());
  return scale;
}

AccompanyingBreakdown accompanying_functions(const ChainGeometry& geom,
                                             const VdcController& ctl,
                                             const StepDiagnostics& diag) {
  const ControlGains& g = ctl.gains();
  AccompanyingBreakdown out;
  for (int i = 0; i < kNumJoints; ++i) {
    const InertialParams aug = geom.joints[i].augmented();
    const Mat6 M = spatial_inertia(aug);
    const Vec6& err = diag.vel_err[i];
    const Vec6& ierr = diag.int_err[i];
    double nu = 0.5 * err.dot(M * err) + 0.5 * ierr.dot(g.K_I * ierr);
    nu += g.gamma1 * bregman(phi_to_pseudo(aug), ctl.body_nal()[i].L_hat);
    const RbfNet& net = ctl.body_nets()[i];
    nu += 0.5 / g.gamma_w * net.weight_norm() * net.weight_norm();
    nu += 0.5 / g.gamma2 * net.eps_norm() * net.eps_norm();
    out.nu_body[i] = nu;

    const double inertia = geom.joints[i].joint_inertia();
    const double jerr = diag.jerr[i];
    double nu_a = 0.5 * inertia * jerr * jerr +
                  0.5 * g.ki_joint * diag.jint[i] * diag.jint[i];
    PseudoInertia truth_a;
    truth_a.L = Mat4::identity();
    truth_a.L(3, 3) = inertia;
    nu_a += g.zeta * bregman(truth_a, ctl.joint_nal()[i].L_hat);
    const RbfNet& jnet = ctl.joint_nets()[i];
    nu_a += 0.5 / g.beta1 * jnet.weight_norm() * jnet.weight_norm();
    nu_a += 0.5 / g.beta2 * jnet.eps_norm() * jnet.eps_norm();
    const double kb2 = g.k_b * g.k_b;
    nu_a += 0.5 * std::log(kb2 / (kb2 - diag.e_a[i] * diag.e_a[i]));
    out.nu_joint[i] = nu_a;
    out.total += nu + nu_a;
  }
  return out;
}

namespace {

struct LogSchema {
  std::vector<std::string> columns;
  bool vdc = false;

  explicit LogSchema(bool is_vdc) : vdc(is_vdc) {
    columns.push_back("t [s]");
    const auto per_joint = [&](const std::string& base, const std::string& unit) {
      for (int j = 1; j <= 7; ++j)
        columns.push_back(base + std::to_string(j) + " [" + unit + "]");
    };
    per_joint("q", "rad");
    per_joint("qd", "rad");
    per_joint("qdot", "rad/s");
    per_joint("e", "rad");
    per_joint("ea", "rad");
    per_joint("tau_cmd", "N m");
    per_joint("tau_app", "N m");
    if (!vdc) return;
    per_joint("w_norm_b", "-");
    per_joint("eps_norm_b", "-");
    per_joint("phi_norm_b", "-");
    per_joint("w_norm_j", "-");
    per_joint("eps_norm_j", "-");
    per_joint("inertia_hat", "kg m^2");
    per_joint("mineig_Lb", "-");
    per_joint("mineig_La", "-");
    columns.push_back("w_norm_max [-]");
    columns.push_back("eps_norm_max [-]");
    columns.push_back("phi_norm_max [-]");
    columns.push_back("min_pseudo_eig [-]");
    columns.push_back("barrier_margin [rad]");
    columns.push_back("nu_total [J]");
    columns.push_back("nu_body [J]");
    columns.push_back("nu_joint [J]");
    columns.push_back("vpf_residual_rel [-]");
    columns.push_back("bregman_max [-]");
  }
};

// Classical RK4 on (q, qdot) with the applied torque held constant and the
// exogenous signals evaluated at stage times.
void rk4_substep(const ScenarioConfig& cfg, ChainState& state, double t,
                 double h, const Vec7& tau_app) {
  const auto deriv = [&](const ChainState& s, double ts, Vec7& qdd) {
    std::array<Vec6, kNumJoints> dist;
    const std::array<Vec6, kNumJoints>* dist_ptr =
        cfg.disturbance.fill(ts, dist) ? &dist : nullptr;
    Vec7 tau_h;
    const Vec7* tau_h_ptr = nullptr;
    if (cfg.human_torque.enabled) {
      tau_h = cfg.human_torque.eval(ts);
      tau_h_ptr = &tau_h;
    }
    qdd = plant_forward_dynamics(cfg.geom, s, tau_app, dist_ptr, tau_h_ptr);
  };

  Vec7 k1q = state.qdot, k1v;
  deriv(state, t, k1v);
  ChainState s2{state.q + k1q * (0.5 * h), state.qdot + k1v * (0.5 * h)};
  Vec7 k2q = s2.qdot, k2v;
  deriv(s2, t + 0.5 * h, k2v);
  ChainState s3{state.q + k2q * (0.5 * h), state.qdot + k2v * (0.5 * h)};
  Vec7 k3q = s3.qdot, k3v;
  deriv(s3, t + 0.5 * h, k3v);
  ChainState s4{state.q + k3q * h, state.qdot + k3v * h};
  Vec7 k4q = s4.qdot, k4v;
  deriv(s4, t + h, k4v);

  state.q += (k1q + k2q * 2.0 + k3q * 2.0 + k4q) * (h / 6.0);
  state.qdot += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
}

}  // namespace

RunResult run(const ScenarioConfig& cfg, const RunOptions& opt) {
  const auto wall_start = std::chrono::steady_clock::now();
  const bool is_vdc = cfg.controller == ControllerKind::vdc;
  const int decimate = std::max(1, opt.decimate);

  RunResult result;
  LogSchema schema(is_vdc);
  result.log.columns = schema.columns;

  VdcController ctl(cfg.geom, cfg.gains, cfg.estimator, cfg.seed, cfg.q0);
  ChainState state{cfg.q0, cfg.qdot0};
  const std::size_t steps =
      static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));

  bool norm_flagged = false, eig_flagged = false;
  std::vector<double>& data = result.log.values;
  data.reserve((steps / decimate + 1) * schema.columns.size());

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const TrajectorySample des = cfg.desired(t);

    Vec7 tau_cmd{};
    StepDiagnostics diag;
    if (is_vdc) {
      try {
        tau_cmd = ctl.step(state, des, cfg.dt, &diag);
      } catch (const BarrierBreachError& e) {
        throw SimAbortError("barrier breach at t=" + std::to_string(t) +
                                " s (" + e.what() + ")", t);
      } catch (const NotPositiveDefiniteError& e) {
        throw SimAbortError(
            "adaptation abort at t=" + std::to_string(t) + " s (" + e.what() +
                ")", t);
      }
    } else {
      for (int i = 0; i < kNumJoints; ++i)
        tau_cmd[i] = pd_control(des.q[i], state.q[i], des.qdot[i],
                                state.qdot[i], cfg.gains.k_p, cfg.gains.k_v);
    }

    Vec7 tau_app;
    for (int i = 0; i < kNumJoints; ++i)
      tau_app[i] = saturate_deadzone(tau_cmd[i], cfg.constraints[i]);

    // Stability bookkeeping against the actual plant response.
    double vpf_rel = 0.0, nu_total = 0.0, nu_body_sum = 0.0, nu_joint_sum = 0.0;
    double margin = 0.0, mineig_all = 0.0, bregman_max = 0.0;
    std::array<double, kNumJoints> w_b{}, e_b{}, p_b{}, w_j{}, e_j{}, i_j{},
        eig_b{}, eig_a{};
    if (is_vdc) {
      std::array<Vec6, kNumJoints> dist;
      const std::array<Vec6, kNumJoints>* dist_ptr =
          cfg.disturbance.fill(t, dist) ? &dist : nullptr;
      Vec7 tau_h;
      const Vec7* tau_h_ptr = nullptr;
      if (cfg.human_torque.enabled) {
        tau_h = cfg.human_torque.eval(t);
        tau_h_ptr = &tau_h;
      }
      const Vec7 qdd =
          plant_forward_dynamics(cfg.geom, state, tau_app, dist_ptr, tau_h_ptr);
      const ChainKinematics kin = compute_kinematics(cfg.geom, state.q);
      ChainForces forces;
      std::array<Vec6, kNumJoints> fstar;
      inverse_dynamics(cfg.geom, kin, state, qdd, dist_ptr, nullptr, &forces,
                       &fstar);

      VpfSweepData sweep;
      for (int i = 0; i < kNumJoints; ++i) {
        sweep.dv_body[i] = diag.vel_err[i];
        sweep.fstar_r[i] = diag.fstar_r[i];
        sweep.fstar[i] = fstar[i];
        sweep.f_r_body[i] = diag.forces_r.body[i].w;
        sweep.f_body[i] = forces.body[i].w;
        sweep.dqdot[i] = diag.jerr[i];
        sweep.tau_star_r[i] = diag.tau_star_r[i];
        const double tau_a =
            cfg.geom.joints[i].axis.mu().dot(forces.body[i].w);
        sweep.tau_star[i] = tau_cmd[i] - tau_a;
      }
      sweep.f_base_r = diag.forces_r.tip[0].w;
      sweep.f_base = forces.tip[0].w;
      const double res = telescoping_residual(sweep);
      const double scale = telescoping_scale(sweep);
      vpf_rel = scale > 0.0 ? std::abs(res) / scale : 0.0;

      const AccompanyingBreakdown nu =
          accompanying_functions(cfg.geom, ctl, diag);
      nu_total = nu.total;
      for (int i = 0; i < kNumJoints; ++i) {
        nu_body_sum += nu.nu_body[i];
        nu_joint_sum += nu.nu_joint[i];
      }

      margin = cfg.gains.k_b;
      mineig_all = 1e300;
      for (int i = 0; i < kNumJoints; ++i) {
        const RbfNet& bn = ctl.body_nets()[i];
        const RbfNet& jn = ctl.joint_nets()[i];
        w_b[i] = bn.weight_norm();
        e_b[i] = bn.eps_norm();
        p_b[i] = ctl.body_nal()[i].phi_hat().norm();
        w_j[i] = jn.weight_norm();
        e_j[i] = jn.eps_norm();
        i_j[i] = ctl.inertia_hat(i);
        eig_b[i] = min_eigenvalue_sym4(ctl.body_nal()[i].L_hat.L);
        eig_a[i] = min_eigenvalue_sym4(ctl.joint_nal()[i].L_hat.L);
        mineig_all = std::min(mineig_all, std::min(eig_b[i], eig_a[i]));
        margin = std::min(margin, cfg.gains.k_b - std::abs(diag.e_a[i]));
        const InertialParams aug = cfg.geom.joints[i].augmented();
        bregman_max = std::max(
            bregman_max, bregman(phi_to_pseudo(aug), ctl.body_nal()[i].L_hat));
      }

      if (!norm_flagged) {
        for (int i = 0; i < kNumJoints; ++i)
          if (w_b[i] > 1e3 || e_b[i] > 1e3 || p_b[i] > 1e3 || w_j[i] > 1e3 ||
              e_j[i] > 1e3) {
            result.violations.push_back(
                "estimator norm exceeded 1e3 at t=" + std::to_string(t) + " s");
            norm_flagged = true;
            break;
          }
      }
      if (!eig_flagged && mineig_all <= 0.0) {
        result.violations.push_back(
            "pseudo-inertia estimate lost positive definiteness at t=" +
            std::to_string(t) + " s");
        eig_flagged = true;
      }
    }

    if (k % decimate == 0) {
      data.push_back(t);
      const auto push7 = [&](auto&& get) {
        for (int i = 0; i < kNumJoints; ++i) data.push_back(get(i));
      };
      push7([&](int i) { return state.q[i]; });
      push7([&](int i) { return des.q[i]; });
      push7([&](int i) { return state.qdot[i]; });
      push7([&](int i) { return des.q[i] - state.q[i]; });
      push7([&](int i) { return is_vdc ? diag.e_a[i] : 0.0; });
      push7([&](int i) { return tau_cmd[i]; });
      push7([&](int i) { return tau_app[i]; });
      if (is_vdc) {
        push7([&](int i) { return w_b[i]; });
        push7([&](int i) { return e_b[i]; });
        push7([&](int i) { return p_b[i]; });
        push7([&](int i) { return w_j[i]; });
        push7([&](int i) { return e_j[i]; });
        push7([&](int i) { return i_j[i]; });
        push7([&](int i) { return eig_b[i]; });
        push7([&](int i) { return eig_a[i]; });
        double wmax = 0, emax = 0, pmax = 0;
        for (int i = 0; i < kNumJoints; ++i) {
          wmax = std::max({wmax, w_b[i], w_j[i]});
          emax = std::max({emax, e_b[i], e_j[i]});
          pmax = std::max(pmax, p_b[i]);
        }
        data.push_back(wmax);
        data.push_back(emax);
        data.push_back(pmax);
        data.push_back(mineig_all);
        data.push_back(margin);
        data.push_back(nu_total);
        data.push_back(nu_body_sum);
        data.push_back(nu_joint_sum);
        data.push_back(vpf_rel);
        data.push_back(bregman_max);
      }
      ++result.log.rows;
    }

    const double h = cfg.dt / cfg.substeps;
    for (int s = 0; s < cfg.substeps; ++s)
      rk4_substep(cfg, state, t + s * h, h, tau_app);

    for (int i = 0; i < kNumJoints; ++i)
      if (!std::isfinite(state.q[i]) || !std::isfinite(state.qdot[i]))
        throw SimAbortError(
            "non-finite state at t=" + std::to_string(t + cfg.dt) + " s",
            t + cfg.dt);
  }

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    wall_start)
          .count();
  return result;
}

}  // namespace exovdc
