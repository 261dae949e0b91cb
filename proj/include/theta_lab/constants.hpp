#pragma once

#include <cmath>

#include "theta_lab/geometry.hpp"

namespace theta_lab {

// Closed-form thresholds of the Theta_5 spanning-ratio argument.
struct BoundConstants {
  // sin(3pi/10) / (sin(2pi/5) - sin(3pi/10)): the headline spanning ratio.
  double main_bound;
  // 1 / (cos(pi/5) - sin(pi/5)): right triangle with angles (pi/5, pi/2, 3pi/10).
  double right_triangle_bound;
  // 1 / cos(2pi/5): sliding a to ell'_m does not decrease |ac| - K|ab|.
  double transform_bound;
  // 1 / sin(pi/10): d left of ab but right of the median am.
  double median_bound;
  // 2 sin(2pi/5) / (sin(3pi/10) (1 - 2 sin(pi/10))): both c and d in the pentagon.
  double pentagon_bound;
};

inline BoundConstants bound_constants() {
  BoundConstants k{};
  k.main_bound = std::sin(3 * pi / 10) / (std::sin(2 * pi / 5) - std::sin(3 * pi / 10));
  k.right_triangle_bound = 1.0 / (std::cos(pi / 5) - std::sin(pi / 5));
  k.transform_bound = 1.0 / std::cos(2 * pi / 5);
  k.median_bound = 1.0 / std::sin(pi / 10);
  k.pentagon_bound = 2 * std::sin(2 * pi / 5) / (std::sin(3 * pi / 10) * (1 - 2 * std::sin(pi / 10)));
  return k;
}

// The rounded-up values at which each step of the argument is claimed to hold.
namespace stated {
inline constexpr double spanning_ratio = 5.70;
inline constexpr double right_triangle = 4.53;
inline constexpr double transform = 3.24;
inline constexpr double median = 3.24;
inline constexpr double pentagon = 6.16;
// Cited upper bound for six cones.
inline constexpr double theta6 = 2.0;
}  // namespace stated

// Cited bound 1 / (1 - 2 sin(pi/k)) for k >= 7.
inline double cone_bound_k7_plus(int k) { return 1.0 / (1.0 - 2.0 * std::sin(pi / k)); }

}  // namespace theta_lab
