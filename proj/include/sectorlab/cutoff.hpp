#pragma once

#include <cmath>

namespace sectorlab {

// C^2 plateau cut-off: identically 1 on [-1, 1], quintic-smoothstep decay on
// 1 <= |s| <= 2, zero beyond. |chi'| <= 2 and |chi''| <= 6.
struct CutoffProfile {
  static double value(double s) {
    const double t = std::abs(s);
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double x = t - 1.0;
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  }

  static double d1(double s) {
    const double t = std::abs(s);
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double x = t - 1.0;
    const double ds = -x * x * (30.0 + x * (-60.0 + 30.0 * x));
    return s >= 0 ? ds : -ds;
  }

  static double d2(double s) {
    const double t = std::abs(s);
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double x = t - 1.0;
    return -x * (60.0 + x * (-180.0 + 120.0 * x));
  }
};

}  // namespace sectorlab
