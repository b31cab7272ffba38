#pragma once

#include <cmath>
#include <numbers>

namespace g3traj {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Wraps to (-pi, pi].
inline double wrap_pi(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

// Wraps to [0, 2pi).
inline double wrap_2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// sign(0) is +1.
inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace g3traj
