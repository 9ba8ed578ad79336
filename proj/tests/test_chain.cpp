#include <doctest.h>

#include "exovdc/chain.hpp"
#include "oracles.hpp"

using namespace exovdc;

namespace {

Vec7 random_vec7(std::mt19937_64& g, double scale) {
  Vec7 v;
  for (int i = 0; i < kNumJoints; ++i) v[i] = oracle::uniform(g, -scale, scale);
  return v;
}

const SpatialVelocity kStill{Vec6{}, Frame::ground()};

}  // namespace

TEST_CASE("forward_velocities: all zero at rest") {
  const ChainGeometry geom = oracle::test_geometry(41);
  const ChainKinematics kin = compute_kinematics(geom, Vec7{});
  const ChainVelocities vel = forward_velocities(geom, kin, Vec7{}, kStill);
  for (int i = 0; i < kNumJoints; ++i) {
    CHECK(vel.body[i].v.norm() == 0.0);
    CHECK(vel.tip[i].v.norm() == 0.0);
  }
}

TEST_CASE("forward_velocities: only joint 1 turning puts its rate on the axis") {
  const ChainGeometry geom = oracle::test_geometry(42);
  const ChainKinematics kin = compute_kinematics(geom, Vec7{});
  Vec7 qdot{};
  qdot[0] = 1.0;
  const ChainVelocities vel = forward_velocities(geom, kin, qdot, kStill);
  CHECK(vel.body[0].v[5] == doctest::Approx(1.0));  // angular z of B1
  CHECK(vel.body[0].v.norm() == doctest::Approx(1.0));
}

TEST_CASE("forward_velocities matches the geometric-Jacobian oracle") {
  auto g = oracle::rng(43);
  const ChainGeometry geom = oracle::test_geometry(44);
  for (int t = 0; t < 100; ++t) {
    const Vec7 q = random_vec7(g, 1.5);
    const Vec7 qdot = random_vec7(g, 2.0);
    const ChainKinematics kin = compute_kinematics(geom, q);
    const ChainVelocities vel = forward_velocities(geom, kin, qdot, kStill);
    const auto want = oracle::jacobian_velocities(geom, kin, qdot);
    for (int i = 0; i < kNumJoints; ++i)
      CHECK(oracle::max_abs_diff(vel.body[i].v, want[i]) <
            1e-10 * (1.0 + want[i].norm()));
  }
}

TEST_CASE("required velocities: equality, zero and superposition") {
  auto g = oracle::rng(45);
  const ChainGeometry geom = oracle::test_geometry(46);
  const Vec7 q = random_vec7(g, 1.0);
  const ChainKinematics kin = compute_kinematics(geom, q);

  const Vec7 rates = random_vec7(g, 2.0);
  const ChainVelocities meas = forward_velocities(geom, kin, rates, kStill);
  const ChainVelocities req =
      forward_required_velocities(geom, kin, rates, kStill);
  for (int i = 0; i < kNumJoints; ++i)
    CHECK(oracle::max_abs_diff(meas.body[i].v, req.body[i].v) == 0.0);

  const ChainVelocities zero =
      forward_required_velocities(geom, kin, Vec7{}, kStill);
  for (int i = 0; i < kNumJoints; ++i) CHECK(zero.body[i].v.norm() == 0.0);

  const Vec7 a = random_vec7(g, 2.0), b = random_vec7(g, 2.0);
  const ChainVelocities va = forward_required_velocities(geom, kin, a, kStill);
  const ChainVelocities vb = forward_required_velocities(geom, kin, b, kStill);
  const ChainVelocities vab =
      forward_required_velocities(geom, kin, a + b, kStill);
  for (int i = 0; i < kNumJoints; ++i)
    CHECK(oracle::max_abs_diff(vab.body[i].v, va.body[i].v + vb.body[i].v) <
          1e-12 * (1.0 + vab.body[i].v.norm()));
}

TEST_CASE("backward_forces: zero in, zero out") {
  const ChainGeometry geom = oracle::test_geometry(47);
  const ChainKinematics kin = compute_kinematics(geom, Vec7{});
  const ChainForces f = backward_forces(geom, kin, {}, Vec6{});
  for (int i = 0; i < kNumJoints; ++i) CHECK(f.body[i].w.norm() == 0.0);
  CHECK(f.tip[0].w.norm() == 0.0);
}

TEST_CASE("backward_forces: static gravity wrenches produce the total weight at ground") {
  auto g = oracle::rng(48);
  const ChainGeometry geom = oracle::test_geometry(49);
  const Vec7 q = random_vec7(g, 1.0);
  const ChainKinematics kin = compute_kinematics(geom, q);
  std::array<Vec6, kNumJoints> fstar{};
  double total_mass = 0.0;
  for (int i = 0; i < kNumJoints; ++i) {
    const InertialParams aug = geom.joints[i].augmented();
    const Vec3 g_in = gravity_direction_in_frame(geom, kin, Frame::body(i + 1));
    fstar[i] = gravity_term(aug, g_in);
    total_mass += aug.mass();
  }
  const ChainForces f = backward_forces(geom, kin, fstar, Vec6{});
  // ground frame is the world frame; reaction force = -g * total mass
  const Vec3 reaction = f.tip[0].force();
  const Vec3 want = geom.gravity_world * -total_mass;
  CHECK((reaction - want).norm() < 1e-10 * (1.0 + want.norm()));
}

TEST_CASE("backward_forces: telescoping power balance on random inputs") {
  auto g = oracle::rng(50);
  const ChainGeometry geom = oracle::test_geometry(51);
  for (int t = 0; t < 100; ++t) {
    const Vec7 q = random_vec7(g, 1.5);
    const Vec7 qdot = random_vec7(g, 2.0);
    const ChainKinematics kin = compute_kinematics(geom, q);
    const SpatialVelocity vbase{oracle::random_vec6(g, 1.0), Frame::ground()};
    const ChainVelocities vel = forward_velocities(geom, kin, qdot, vbase);
    std::array<Vec6, kNumJoints> fstar;
    for (auto& w : fstar) w = oracle::random_vec6(g, 10.0);
    const Vec6 f_tip = oracle::random_vec6(g, 5.0);
    const ChainForces f = backward_forces(geom, kin, fstar, f_tip);

    double lhs = 0.0, joints = 0.0;
    for (int i = 0; i < kNumJoints; ++i) {
      lhs += vel.body[i].v.dot(fstar[i]);
      joints += qdot[i] * geom.joints[i].axis.mu().dot(f.body[i].w);
    }
    const double rhs = vbase.v.dot(f.tip[0].w) -
                       vel.tip[kNumJoints - 1].v.dot(f_tip) + joints;
    CHECK(oracle::rel_err(lhs, rhs, 1e-6) < 1e-11);
  }
}

TEST_CASE("backward forces are linear in net wrenches and tip force") {
  auto g = oracle::rng(52);
  const ChainGeometry geom = oracle::test_geometry(53);
  const ChainKinematics kin = compute_kinematics(geom, random_vec7(g, 1.0));
  std::array<Vec6, kNumJoints> fa, fb, fab;
  for (int i = 0; i < kNumJoints; ++i) {
    fa[i] = oracle::random_vec6(g, 4.0);
    fb[i] = oracle::random_vec6(g, 4.0);
    fab[i] = fa[i] + fb[i];
  }
  const Vec6 ta = oracle::random_vec6(g, 2.0), tb = oracle::random_vec6(g, 2.0);
  const ChainForces ra = backward_required_forces(geom, kin, fa, ta);
  const ChainForces rb = backward_required_forces(geom, kin, fb, tb);
  const ChainForces rab = backward_required_forces(geom, kin, fab, ta + tb);
  for (int i = 0; i < kNumJoints; ++i)
    CHECK(oracle::max_abs_diff(rab.body[i].w, ra.body[i].w + rb.body[i].w) <
          1e-11 * (1.0 + rab.body[i].w.norm()));
}

TEST_CASE("gravity_direction_in_frame: base, flipped frame, norm preserved") {
  ChainGeometry geom = oracle::test_geometry(54);
  ChainKinematics kin = compute_kinematics(geom, Vec7{});
  const Vec3 base = gravity_direction_in_frame(geom, kin, Frame::ground());
  CHECK(base.x == 0.0);
  CHECK(base.y == 0.0);
  CHECK(base.z == doctest::Approx(-9.81));

  // joint 1 pre-rotation = 180 deg about x flips gravity in B1
  geom.joints[0].rot_pre = Mat3::rot_x(M_PI);
  kin = compute_kinematics(geom, Vec7{});
  const Vec3 flipped = gravity_direction_in_frame(geom, kin, Frame::body(1));
  CHECK(flipped.z == doctest::Approx(9.81));

  auto g = oracle::rng(55);
  geom = oracle::test_geometry(56);
  kin = compute_kinematics(geom, random_vec7(g, 2.0));
  for (int i = 1; i <= kNumJoints; ++i) {
    CHECK(gravity_direction_in_frame(geom, kin, Frame::body(i)).norm() ==
          doctest::Approx(9.81));
    CHECK(gravity_direction_in_frame(geom, kin, Frame::tip(i)).norm() ==
          doctest::Approx(9.81));
  }
  CHECK_THROWS_AS(gravity_direction_in_frame(geom, kin, Frame::custom(3)),
                  FrameMismatchError);
}

TEST_CASE("joint_space_inertia agrees with inverse-dynamics columns") {
  auto g = oracle::rng(57);
  ChainGeometry geom = oracle::test_geometry(58);
  geom.gravity_world = {};  // isolate the inertia
  for (int t = 0; t < 20; ++t) {
    const Vec7 q = random_vec7(g, 1.5);
    const ChainKinematics kin = compute_kinematics(geom, q);
    const Mat7 H = joint_space_inertia(geom, kin);
    const ChainState rest{q, Vec7{}};
    for (int k = 0; k < kNumJoints; ++k) {
      Vec7 ek{};
      ek[k] = 1.0;
      const Vec7 col = inverse_dynamics(geom, kin, rest, ek, nullptr, nullptr);
      for (int i = 0; i < kNumJoints; ++i)
        CHECK(oracle::rel_err(H(i, k), col[i], 1e-9) < 1e-9);
    }
    for (int i = 0; i < kNumJoints; ++i)
      for (int j = 0; j < kNumJoints; ++j)
        CHECK(H(i, j) == doctest::Approx(H(j, i)));
  }
}

TEST_CASE("plant: gravity-compensated chain stays at rest") {
  auto g = oracle::rng(59);
  const ChainGeometry geom = oracle::test_geometry(60);
  for (int t = 0; t < 10; ++t) {
    const Vec7 q = random_vec7(g, 1.0);
    const ChainKinematics kin = compute_kinematics(geom, q);
    const ChainState rest{q, Vec7{}};
    const Vec7 hold = inverse_dynamics(geom, kin, rest, Vec7{}, nullptr, nullptr);
    const Vec7 qdd = plant_forward_dynamics(geom, rest, hold, nullptr, nullptr);
    for (int i = 0; i < kNumJoints; ++i) CHECK(std::abs(qdd[i]) < 1e-9);
  }
}

TEST_CASE("plant: nothing moves without gravity, torque or velocity") {
  ChainGeometry geom = oracle::test_geometry(61);
  geom.gravity_world = {};
  const ChainState rest{Vec7{}, Vec7{}};
  const Vec7 qdd = plant_forward_dynamics(geom, rest, Vec7{}, nullptr, nullptr);
  for (int i = 0; i < kNumJoints; ++i) CHECK(qdd[i] == doctest::Approx(0.0));
}

TEST_CASE("plant: inverse and forward dynamics invert each other") {
  auto g = oracle::rng(62);
  const ChainGeometry geom = oracle::test_geometry(63);
  for (int t = 0; t < 30; ++t) {
    const ChainState state{random_vec7(g, 1.2), random_vec7(g, 1.5)};
    const ChainKinematics kin = compute_kinematics(geom, state.q);
    std::array<Vec6, kNumJoints> dist;
    for (auto& d : dist) d = oracle::random_vec6(g, 3.0);
    Vec7 tau_h = random_vec7(g, 1.0);
    const Vec7 qdd_want = random_vec7(g, 4.0);
    const Vec7 tau = inverse_dynamics(geom, kin, state, qdd_want, &dist, &tau_h);
    const Vec7 qdd = plant_forward_dynamics(geom, state, tau, &dist, &tau_h);
    for (int i = 0; i < kNumJoints; ++i)
      CHECK(oracle::rel_err(qdd[i], qdd_want[i], 1e-6) < 1e-8);
  }
}

TEST_CASE("plant energy audit: passive chain conserves energy over 10 s") {
  const ChainGeometry geom = oracle::test_geometry(64);
  auto g = oracle::rng(65);
  ChainState state{random_vec7(g, 0.4), random_vec7(g, 0.4)};
  const double e0 = total_energy(geom, state);
  REQUIRE(std::abs(e0) > 1e-3);

  // test-local RK4 at the plant substep (0.25 ms), zero torque/disturbance
  const double h = 0.25e-3;
  const auto deriv = [&](const ChainState& s) {
    return plant_forward_dynamics(geom, s, Vec7{}, nullptr, nullptr);
  };
  double worst = 0.0;
  const int steps = static_cast<int>(10.0 / h);
  for (int s = 0; s < steps; ++s) {
    const Vec7 k1q = state.qdot, k1v = deriv(state);
    const ChainState s2{state.q + k1q * (0.5 * h), state.qdot + k1v * (0.5 * h)};
    const Vec7 k2q = s2.qdot, k2v = deriv(s2);
    const ChainState s3{state.q + k2q * (0.5 * h), state.qdot + k2v * (0.5 * h)};
    const Vec7 k3q = s3.qdot, k3v = deriv(s3);
    const ChainState s4{state.q + k3q * h, state.qdot + k3v * h};
    const Vec7 k4q = s4.qdot, k4v = deriv(s4);
    state.q += (k1q + k2q * 2.0 + k3q * 2.0 + k4q) * (h / 6.0);
    state.qdot += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
    if (s % 400 == 0)
      worst = std::max(worst, std::abs(total_energy(geom, state) - e0));
  }
  worst = std::max(worst, std::abs(total_energy(geom, state) - e0));
  CHECK(worst / std::abs(e0) < 1e-3);
}
