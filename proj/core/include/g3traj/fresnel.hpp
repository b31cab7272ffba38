#pragma once

#include <array>

namespace g3traj {

/// Phase polynomial p0 + p1 s + p2 s^2 + p3 s^3. Degree is the highest
/// nonzero index, or the explicit degree passed at construction.
struct PhasePolynomial {
  std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
  int degree = 0;

  static PhasePolynomial constant(double p0) { return {{p0, 0.0, 0.0, 0.0}, 0}; }
  static PhasePolynomial linear(double p0, double p1) { return {{p0, p1, 0.0, 0.0}, 1}; }
  static PhasePolynomial quadratic(double p0, double p1, double p2) {
    return {{p0, p1, p2, 0.0}, 2};
  }
  static PhasePolynomial cubic(double p0, double p1, double p2, double p3) {
    return {{p0, p1, p2, p3}, 3};
  }

  double operator()(double s) const { return p[0] + s * (p[1] + s * (p[2] + s * p[3])); }
};

/// e (s - v)^2 + f with m_scale = sqrt(2|e|/pi).
struct QuadraticCanonicalForm {
  double e = 0.0;
  double v = 0.0;
  double f = 0.0;
  double m_scale = 0.0;
};

struct FresnelPair {
  double cos_integral = 0.0;
  double sin_integral = 0.0;
};

struct QuadraticApproximation {
  PhasePolynomial quadratic;
  double error_bound = 0.0;
};

/// P(s) = int_0^s cos(pi u^2 / 2) du and S(s) likewise with sin.
FresnelPair standard_fresnel(double s);

QuadraticCanonicalForm canonical_form(const PhasePolynomial& p);

/// Integrals of cos(p(u)) and sin(p(u)) over [a, b] for degree <= 2.
FresnelPair integrate_quadratic_phase(const PhasePolynomial& p, double a, double b);

/// Quadratic interpolating the cubic at a and b; error_bound is the maximum
/// phase deviation on [a, b].
QuadraticApproximation cubic_to_quadratic(const PhasePolynomial& p, double a, double b);

/// Sub-interval count used by integrate_cubic_phase.
int cubic_subinterval_count(const PhasePolynomial& p, double a, double b, double tol);

FresnelPair integrate_cubic_phase(const PhasePolynomial& p, double a, double b, double tol);

}  // namespace g3traj
