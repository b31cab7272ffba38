#include "g3traj/profile.hpp"

#include <cmath>

namespace g3traj {

// Horner in u = s / s_f with q_i = p_i s_f^i keeps high powers of s out of the sums.
VelocityProfile::Derivatives VelocityProfile::at(double s) const {
  const int n = this->n();
  if (n == 0 || s_f <= 0.0) return {v_s, 0.0, 0.0};
  const long double sf = s_f;
  const long double u = s / sf;
  long double v_acc = 0.0L;
  long double a_acc = 0.0L;
  long double b_acc = 0.0L;
  long double scale = std::pow(sf, n);
  for (int i = n; i >= 1; --i) {
    const long double q = coefficients[i - 1] * scale;
    v_acc = v_acc * u + q / (i + 1);
    a_acc = a_acc * u + q;
    b_acc = b_acc * u + i * q;
    scale /= sf;
  }
  // v_acc holds sum q_i u^(i-1)/(i+1), a_acc sum q_i u^(i-1), b_acc sum i q_i u^(i-1).
  return {static_cast<double>(v_s + sf * v_acc * u * u), static_cast<double>(a_acc * u),
          static_cast<double>(b_acc / sf)};
}

double VelocityProfile::velocity(double s) const { return at(s).v; }
double VelocityProfile::alpha(double s) const { return at(s).alpha; }
double VelocityProfile::beta(double s) const { return at(s).beta; }

}  // namespace g3traj
