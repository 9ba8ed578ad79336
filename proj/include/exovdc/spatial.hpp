#pragma once

#include <string>

#include "exovdc/errors.hpp"
#include "exovdc/linalg.hpp"

namespace exovdc {

// Identifier of a chain frame. The 7-DoF chain interleaves ground = T0, then
// B1, T1, ..., B7, T7; free ids are available for tests and ad-hoc frames.
class Frame {
 public:
  constexpr Frame() : id_(0) {}

  static constexpr Frame ground() { return Frame(0); }
  static constexpr Frame body(int i) { return Frame(2 * i - 1); }
  static constexpr Frame tip(int i) { return Frame(2 * i); }
  static constexpr Frame custom(int id) { return Frame(1000 + id); }

  constexpr bool operator==(const Frame& o) const { return id_ == o.id_; }
  constexpr bool operator!=(const Frame& o) const { return id_ != o.id_; }

  std::string name() const {
    if (id_ == 0) return "T0";
    if (id_ >= 1000) return "F" + std::to_string(id_ - 1000);
    const int k = (id_ + 1) / 2;
    return (id_ % 2 ? "B" : "T") + std::to_string(id_ % 2 ? k : id_ / 2);
  }

 private:
  constexpr explicit Frame(int id) : id_(id) {}
  int id_;
};

// 6D twist [v, w] attached to a frame.
struct SpatialVelocity {
  Vec6 v;
  Frame frame;

  Vec3 linear() const { return v.head(); }
  Vec3 angular() const { return v.tail(); }
};

// 6D wrench [f, m] attached to a frame.
struct SpatialForce {
  Vec6 w;
  Frame frame;

  Vec3 force() const { return w.head(); }
  Vec3 moment() const { return w.tail(); }
};

// skew(r) x == r cross x
Mat3 skew(const Vec3& r);

// Velocity/force transform between a parent frame and a child frame:
//   U = [ R      0 ]
//       [ skew(r) R   R ]
// with r the parent-expressed offset from parent origin to child origin.
// Wrenches map child -> parent as U f; twists map parent -> child as U^T v.
class FrameTransform {
 public:
  // Throws InvalidTransformError when R is not a proper rotation (tol 1e-8).
  FrameTransform(const Mat3& R, const Vec3& r, Frame parent, Frame child);

  const Mat3& rotation() const { return rot_; }
  const Vec3& offset() const { return off_; }
  Frame parent() const { return parent_; }
  Frame child() const { return child_; }
  const Mat6& matrix() const { return U_; }

 private:
  Mat3 rot_;
  Vec3 off_;
  Frame parent_, child_;
  Mat6 U_;
};

FrameTransform make_transform(const Mat3& R, const Vec3& r, Frame parent,
                              Frame child);

// B_v = U^T A_v. Throws FrameMismatchError unless v is in U's parent frame.
SpatialVelocity velocity_to_child(const FrameTransform& U,
                                  const SpatialVelocity& v_parent);

// A_f = U B_f. Throws FrameMismatchError unless f is in U's child frame.
SpatialForce force_to_parent(const FrameTransform& U,
                             const SpatialForce& f_child);

// Sequential application a->b then b->c. Frames must chain.
FrameTransform compose(const FrameTransform& U_ab, const FrameTransform& U_bc);

FrameTransform inverse(const FrameTransform& U);

}  // namespace exovdc
