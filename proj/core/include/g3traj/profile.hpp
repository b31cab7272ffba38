#pragma once

#include <vector>

namespace g3traj {

/// v(s) = v_s + sum_i p_i s^(i+1)/(i+1), alpha = v' = sum_i p_i s^i, i = 1..n.
struct VelocityProfile {
  std::vector<long double> coefficients;  // p_1..p_n
  double v_s = 0.0;
  double v_f = 0.0;
  double s_f = 0.0;

  int n() const { return static_cast<int>(coefficients.size()); }
  double velocity(double s) const;
  double alpha(double s) const;
  double beta(double s) const;

  struct Derivatives {
    double v;
    double alpha;
    double beta;
  };
  Derivatives at(double s) const;
};

}  // namespace g3traj
