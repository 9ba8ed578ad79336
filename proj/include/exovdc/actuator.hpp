#pragma once

#include "exovdc/errors.hpp"

namespace exovdc {

// Combined saturation + dead-zone nonlinearity in its equivalent-clamp form:
// identity on the open middle branch, clamped at k_r(k_M - m_r) above and
// k_l(k_m - m_l) below. Both slopes are positive (the published sign of k_r is
// a typo; positive slopes are the only reading that orders the clamp levels).
struct ConstraintParams {
  double k_M = 0.0;  // upper saturation level, > 0
  double k_m = 0.0;  // lower saturation level, < 0
  double m_r = 0.0;  // right dead-zone offset, > 0
  double m_l = 0.0;  // left dead-zone offset, < 0
  double k_r = 1.0;  // right slope, > 0
  double k_l = 1.0;  // left slope, > 0

  double upper() const { return k_r * (k_M - m_r); }
  double lower() const { return k_l * (k_m - m_l); }
  bool valid() const { return upper() > 0.0 && lower() < 0.0; }
};

double saturate_deadzone(double pi, const ConstraintParams& p);

// Split of one constraint into rigid-body and joint shares whose min/max
// levels add back up to the total exactly.
struct SplitConstraint {
  ConstraintParams rigid_body;  // B1
  ConstraintParams joint;       // B2
};

// Throws ValidationError unless fraction lies in (0, 1).
SplitConstraint split_levels(const ConstraintParams& total, double fraction);

}  // namespace exovdc
