#include <doctest.h>

#include "exovdc/spatial.hpp"
#include "oracles.hpp"

using namespace exovdc;

TEST_CASE("skew of zero vector is the zero matrix") {
  const Mat3 m = skew({0, 0, 0});
  for (int i = 0; i < 9; ++i) CHECK(m.a[i] == 0.0);
}

TEST_CASE("skew matches the published layout") {
  const Mat3 m = skew({1, 2, 3});
  const double want[9] = {0, -3, 2, 3, 0, -1, -2, 1, 0};
  for (int i = 0; i < 9; ++i) CHECK(m.a[i] == doctest::Approx(want[i]));
}

TEST_CASE("skew(r) x equals cross(r, x) and is antisymmetric") {
  auto g = oracle::rng(11);
  for (int t = 0; t < 500; ++t) {
    const Vec3 r = oracle::random_vec3(g, 5.0);
    const Vec3 x = oracle::random_vec3(g, 5.0);
    const Vec3 got = skew(r) * x;
    const Vec3 want = r.cross(x);
    CHECK(std::abs(got.x - want.x) < 1e-14);
    CHECK(std::abs(got.y - want.y) < 1e-14);
    CHECK(std::abs(got.z - want.z) < 1e-14);
    const Mat3 sum = skew(r) + skew(r).transpose();
    for (int i = 0; i < 9; ++i) CHECK(sum.a[i] == 0.0);
  }
}

TEST_CASE("make_transform: identity case") {
  const FrameTransform u = make_transform(Mat3::identity(), {}, Frame::custom(0),
                                          Frame::custom(1));
  const Mat6 id = Mat6::identity();
  for (int i = 0; i < 36; ++i) CHECK(u.matrix().a[i] == doctest::Approx(id.a[i]));
}

TEST_CASE("make_transform: translation fills the lower-left block with skew") {
  const FrameTransform u = make_transform(Mat3::identity(), {1, 0, 0},
                                          Frame::custom(0), Frame::custom(1));
  const Mat3 bl = u.matrix().block(1, 0);
  const Mat3 want = skew({1, 0, 0});
  for (int i = 0; i < 9; ++i) CHECK(bl.a[i] == doctest::Approx(want.a[i]));
}

TEST_CASE("make_transform: block structure on random inputs") {
  auto g = oracle::rng(12);
  for (int t = 0; t < 200; ++t) {
    const Mat3 r = oracle::random_rotation(g);
    const Vec3 off = oracle::random_vec3(g);
    const FrameTransform u =
        make_transform(r, off, Frame::custom(0), Frame::custom(1));
    const Mat6& U = u.matrix();
    const Mat3 want_bl = skew(off) * r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(U(i, j) == doctest::Approx(r(i, j)));
        CHECK(U(i, j + 3) == 0.0);
        CHECK(U(i + 3, j) == doctest::Approx(want_bl(i, j)));
        CHECK(U(i + 3, j + 3) == doctest::Approx(r(i, j)));
      }
  }
}

TEST_CASE("make_transform rejects non-orthonormal rotations") {
  Mat3 bad = Mat3::identity();
  bad(0, 0) = 1.0 + 1e-6;
  CHECK_THROWS_AS(make_transform(bad, {}, Frame::custom(0), Frame::custom(1)),
                  InvalidTransformError);
  Mat3 reflect = Mat3::diag(1, 1, -1);  // det -1
  CHECK_THROWS_AS(
      make_transform(reflect, {}, Frame::custom(0), Frame::custom(1)),
      InvalidTransformError);
}

TEST_CASE("velocity_to_child: identity, pure rotation, pure translation") {
  const SpatialVelocity v{Vec6{{1, 2, 3, 4, 5, 6}}, Frame::custom(0)};

  const FrameTransform id =
      make_transform(Mat3::identity(), {}, Frame::custom(0), Frame::custom(1));
  const SpatialVelocity vi = velocity_to_child(id, v);
  CHECK(vi.frame == Frame::custom(1));
  for (int i = 0; i < 6; ++i) CHECK(vi.v[i] == doctest::Approx(v.v[i]));

  auto g = oracle::rng(13);
  const Mat3 r = oracle::random_rotation(g);
  const FrameTransform rot =
      make_transform(r, {}, Frame::custom(0), Frame::custom(1));
  const SpatialVelocity vr = velocity_to_child(rot, v);
  const Vec3 want_ang = r.transpose() * v.angular();
  const Vec3 want_lin = r.transpose() * v.linear();
  CHECK(oracle::max_abs_diff(vr.v, Vec6::from_parts(want_lin, want_ang)) < 1e-12);

  const Vec3 off{0.3, -0.2, 0.5};
  const FrameTransform tr =
      make_transform(Mat3::identity(), off, Frame::custom(0), Frame::custom(1));
  const SpatialVelocity vt = velocity_to_child(tr, v);
  // child linear velocity gains the lever-arm term w x r
  const Vec3 want = v.linear() + v.angular().cross(off);
  CHECK(oracle::max_abs_diff(vt.v, Vec6::from_parts(want, v.angular())) < 1e-12);
}

TEST_CASE("velocity_to_child rejects a frame mismatch") {
  const FrameTransform u =
      make_transform(Mat3::identity(), {}, Frame::custom(0), Frame::custom(1));
  const SpatialVelocity wrong{Vec6{}, Frame::custom(9)};
  CHECK_THROWS_AS(velocity_to_child(u, wrong), FrameMismatchError);
}

TEST_CASE("force_to_parent: identity, duality pairing, lever arm") {
  const FrameTransform id =
      make_transform(Mat3::identity(), {}, Frame::custom(0), Frame::custom(1));
  const SpatialForce f{Vec6{{1, -2, 3, 0.5, 0, -1}}, Frame::custom(1)};
  const SpatialForce fi = force_to_parent(id, f);
  CHECK(fi.frame == Frame::custom(0));
  for (int i = 0; i < 6; ++i) CHECK(fi.w[i] == doctest::Approx(f.w[i]));

  // randomized power duality <v_p, U f_c> = <U^T v_p, f_c>
  auto g = oracle::rng(14);
  for (int t = 0; t < 300; ++t) {
    const FrameTransform u =
        make_transform(oracle::random_rotation(g), oracle::random_vec3(g),
                       Frame::custom(0), Frame::custom(1));
    const SpatialVelocity vp{oracle::random_vec6(g, 3.0), Frame::custom(0)};
    const SpatialForce fc{oracle::random_vec6(g, 3.0), Frame::custom(1)};
    const double lhs = vp.v.dot(force_to_parent(u, fc).w);
    const double rhs = velocity_to_child(u, vp).v.dot(fc.w);
    CHECK(oracle::rel_err(lhs, rhs) < 1e-12);
  }

  // pure translation r with pure force: parent moment = r x f
  const Vec3 off{0.2, 0.1, -0.4};
  const FrameTransform tr =
      make_transform(Mat3::identity(), off, Frame::custom(0), Frame::custom(1));
  const SpatialForce pure{Vec6::from_parts({2, -1, 3}, {}), Frame::custom(1)};
  const SpatialForce fp = force_to_parent(tr, pure);
  const Vec3 want = off.cross(pure.force());
  CHECK((fp.moment() - want).norm() < 1e-14);
  CHECK((fp.force() - pure.force()).norm() < 1e-14);
}

TEST_CASE("compose: identity, inverse, associativity") {
  auto g = oracle::rng(15);
  const FrameTransform u =
      make_transform(oracle::random_rotation(g), oracle::random_vec3(g),
                     Frame::custom(0), Frame::custom(1));
  const FrameTransform id =
      make_transform(Mat3::identity(), {}, Frame::custom(1), Frame::custom(2));
  const FrameTransform ui = compose(u, id);
  for (int i = 0; i < 36; ++i)
    CHECK(ui.matrix().a[i] == doctest::Approx(u.matrix().a[i]));

  const FrameTransform round = compose(u, inverse(u));
  const Mat6 eye = Mat6::identity();
  for (int i = 0; i < 36; ++i)
    CHECK(round.matrix().a[i] == doctest::Approx(eye.a[i]).epsilon(1e-12));

  for (int t = 0; t < 100; ++t) {
    const FrameTransform a =
        make_transform(oracle::random_rotation(g), oracle::random_vec3(g),
                       Frame::custom(0), Frame::custom(1));
    const FrameTransform b =
        make_transform(oracle::random_rotation(g), oracle::random_vec3(g),
                       Frame::custom(1), Frame::custom(2));
    const FrameTransform c =
        make_transform(oracle::random_rotation(g), oracle::random_vec3(g),
                       Frame::custom(2), Frame::custom(3));
    const Mat6 left = compose(compose(a, b), c).matrix();
    const Mat6 right = compose(a, compose(b, c)).matrix();
    // matrix oracle: both equal the literal product of the cached matrices
    const Mat6 prod = a.matrix() * b.matrix() * c.matrix();
    for (int i = 0; i < 36; ++i) {
      CHECK(std::abs(left.a[i] - right.a[i]) < 1e-12 * (1 + std::abs(left.a[i])));
      CHECK(std::abs(left.a[i] - prod.a[i]) < 1e-12 * (1 + std::abs(prod.a[i])));
    }
  }
}

TEST_CASE("compose rejects non-chaining frames") {
  const FrameTransform a =
      make_transform(Mat3::identity(), {}, Frame::custom(0), Frame::custom(1));
  const FrameTransform c =
      make_transform(Mat3::identity(), {}, Frame::custom(2), Frame::custom(3));
  CHECK_THROWS_AS(compose(a, c), FrameMismatchError);
}

TEST_CASE("functoriality: transforming twice equals the composed transform") {
  auto g = oracle::rng(16);
  for (int t = 0; t < 200; ++t) {
    const FrameTransform a =
        make_transform(oracle::random_rotation(g), oracle::random_vec3(g),
                       Frame::custom(0), Frame::custom(1));
    const FrameTransform b =
        make_transform(oracle::random_rotation(g), oracle::random_vec3(g),
                       Frame::custom(1), Frame::custom(2));
    const SpatialVelocity v{oracle::random_vec6(g, 4.0), Frame::custom(0)};
    const Vec6 two_steps = velocity_to_child(b, velocity_to_child(a, v)).v;
    const Vec6 one_step = velocity_to_child(compose(a, b), v).v;
    CHECK(oracle::max_abs_diff(two_steps, one_step) <
          1e-10 * (1.0 + one_step.norm()));

    const SpatialForce f{oracle::random_vec6(g, 4.0), Frame::custom(2)};
    const Vec6 ftwo = force_to_parent(a, force_to_parent(b, f)).w;
    const Vec6 fone = force_to_parent(compose(a, b), f).w;
    CHECK(oracle::max_abs_diff(ftwo, fone) < 1e-10 * (1.0 + fone.norm()));
  }
}
