#include "exovdc/spatial.hpp"

namespace exovdc {

Mat3 skew(const Vec3& r) {
  Mat3 m;
  m(0, 1) = -r.z; m(0, 2) = r.y;
  m(1, 0) = r.z;  m(1, 2) = -r.x;
  m(2, 0) = -r.y; m(2, 1) = r.x;
  return m;
}

FrameTransform::FrameTransform(const Mat3& R, const Vec3& r, Frame parent,
                               Frame child)
    : rot_(R), off_(r), parent_(parent), child_(child) {
  if (R.orthonormality_defect() > 1e-8)
    throw InvalidTransformError("rotation is not orthonormal with det +1 (" +
                                parent.name() + "->" + child.name() + ")");
  U_ = Mat6::from_blocks(R, Mat3::zero(), skew(r) * R, R);
}

FrameTransform make_transform(const Mat3& R, const Vec3& r, Frame parent,
                              Frame child) {
  return FrameTransform(R, r, parent, child);
}

SpatialVelocity velocity_to_child(const FrameTransform& U,
                                  const SpatialVelocity& v_parent) {
  if (v_parent.frame != U.parent())
    throw FrameMismatchError("velocity in " + v_parent.frame.name() +
                             ", transform expects " + U.parent().name());
  return {U.matrix().tmul(v_parent.v), U.child()};
}

SpatialForce force_to_parent(const FrameTransform& U,
                             const SpatialForce& f_child) {
  if (f_child.frame != U.child())
    throw FrameMismatchError("force in " + f_child.frame.name() +
                             ", transform expects " + U.child().name());
  return {U.matrix() * f_child.w, U.parent()};
}

FrameTransform compose(const FrameTransform& U_ab, const FrameTransform& U_bc) {
  if (U_ab.child() != U_bc.parent())
    throw FrameMismatchError("cannot chain " + U_ab.parent().name() + "->" +
                             U_ab.child().name() + " with " +
                             U_bc.parent().name() + "->" + U_bc.child().name());
  const Mat3 R = U_ab.rotation() * U_bc.rotation();
  const Vec3 r = U_ab.offset() + U_ab.rotation() * U_bc.offset();
  return FrameTransform(R, r, U_ab.parent(), U_bc.child());
}

FrameTransform inverse(const FrameTransform& U) {
  const Mat3 Rt = U.rotation().transpose();
  return FrameTransform(Rt, -(Rt * U.offset()), U.child(), U.parent());
}

}  // namespace exovdc
