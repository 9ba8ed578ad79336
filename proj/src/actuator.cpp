#include "exovdc/actuator.hpp"

namespace exovdc {

double saturate_deadzone(double pi, const ConstraintParams& p) {
  const double hi = p.upper();
  const double lo = p.lower();
  if (pi >= hi) return hi;
  if (pi <= lo) return lo;
  return pi;
}

SplitConstraint split_levels(const ConstraintParams& total, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ValidationError({"split fraction must lie in (0,1)"});
  const auto scaled = [&](double f) {
    ConstraintParams p = total;
    p.k_M *= f;
    p.k_m *= f;
    p.m_r *= f;
    p.m_l *= f;
    return p;
  };
  return {scaled(fraction), scaled(1.0 - fraction)};
}

}  // namespace exovdc
