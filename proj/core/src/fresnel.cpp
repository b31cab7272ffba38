#include "g3traj/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "g3traj/errors.hpp"
#include "quadrature.hpp"

namespace g3traj {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kEps = 1e-16;

// cos and sin of (pi/2) x^2 with the argument reduced modulo 4 before scaling.
void half_pi_square_phase(double x, double& c, double& s) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  const double r = std::fmod(hi, 4.0) + lo;
  c = std::cos(kHalfPi * r);
  s = std::sin(kHalfPi * r);
}

FresnelPair fresnel_series(double x) {
  const double t = kHalfPi * x * x;
  double term = x;
  double c = x;
  double s = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= t / k;
    const double contrib = term / (2 * k + 1);
    // k even feeds C with sign (-1)^(k/2); k odd feeds S with sign (-1)^((k-1)/2).
    if (k % 2 == 0) {
      c += (k % 4 == 0) ? contrib : -contrib;
    } else {
      s += (k % 4 == 1) ? contrib : -contrib;
    }
    if (contrib < kEps * std::abs(c)) break;
  }
  return {c, s};
}

// Lentz continued fraction for the complementary error function, valid for x > 1.5.
FresnelPair fresnel_continued_fraction(double x) {
  using cd = std::complex<double>;
  constexpr double kTiny = 1e-300;
  const double pix2 = std::numbers::pi * x * x;
  cd b(1.0, -pix2);
  cd cc(1.0 / kTiny, 0.0);
  cd d = 1.0 / b;
  cd h = d;
  int n = -1;
  for (int k = 2; k < 500; ++k) {
    n += 2;
    const double a = -static_cast<double>(n) * (n + 1);
    b += 4.0;
    d = 1.0 / (a * d + b);
    cc = b + a / cc;
    const cd del = cc * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  h *= cd(x, -x);
  double cph = 0.0;
  double sph = 0.0;
  half_pi_square_phase(x, cph, sph);
  const cd cs = cd(0.5, 0.5) * (1.0 - cd(cph, sph) * h);
  return {cs.real(), cs.imag()};
}

// Composite Gauss-Legendre for phases whose canonical form is ill-conditioned.
FresnelPair quadratic_by_quadrature(const PhasePolynomial& p, double a, double b) {
  const double slope = std::max(std::abs(p.p[1] + 2.0 * p.p[2] * a),
                                std::abs(p.p[1] + 2.0 * p.p[2] * b));
  const double span = b - a;
  const int panels = std::clamp(static_cast<int>(std::ceil(slope * span / 2.0)) + 1, 1, 1 << 16);
  const double h = span / panels;
  const auto& rule = detail::gauss_legendre_16();
  FresnelPair out;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double s = mid + 0.5 * h * rule.nodes[j];
      const double w = 0.5 * h * rule.weights[j];
      const double ph = p(s);
      out.cos_integral += w * std::cos(ph);
      out.sin_integral += w * std::sin(ph);
    }
  }
  return out;
}

FresnelPair linear_phase(double p0, double p1, double a, double b) {
  const double len = b - a;
  if (std::abs(p1) < 1e-12) {
    return {len * std::cos(p0), len * std::sin(p0)};
  }
  // sin(B) - sin(A) = 2 cos((A+B)/2) sin((B-A)/2), kept in sinc form.
  const double half = 0.5 * p1 * len;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  const double mid = p0 + p1 * 0.5 * (a + b);
  return {len * std::cos(mid) * sinc, len * std::sin(mid) * sinc};
}

}  // namespace

FresnelPair standard_fresnel(double s) {
  const double ax = std::abs(s);
  FresnelPair r;
  if (ax < 1e-150) {
    r = {ax, 0.0};
  } else if (ax <= 1.5) {
    r = fresnel_series(ax);
  } else {
    r = fresnel_continued_fraction(ax);
  }
  if (s < 0.0) {
    r.cos_integral = -r.cos_integral;
    r.sin_integral = -r.sin_integral;
  }
  return r;
}

QuadraticCanonicalForm canonical_form(const PhasePolynomial& p) {
  QuadraticCanonicalForm q;
  q.e = p.p[2];
  if (q.e == 0.0) {
    throw G3Error(ErrorCode::kInvalidArgument, "canonical form needs a nonzero quadratic term");
  }
  q.v = -p.p[1] / (2.0 * p.p[2]);
  q.f = p.p[0] - p.p[1] * p.p[1] / (4.0 * p.p[2]);
  q.m_scale = std::sqrt(2.0 * std::abs(q.e) / std::numbers::pi);
  return q;
}

FresnelPair integrate_quadratic_phase(const PhasePolynomial& p, double a, double b) {
  if (p.p[3] != 0.0) {
    throw G3Error(ErrorCode::kInvalidArgument, "integrate_quadratic_phase needs degree <= 2");
  }
  if (b < a) {
    const FresnelPair r = integrate_quadratic_phase(p, b, a);
    return {-r.cos_integral, -r.sin_integral};
  }
  if (a == b) return {};
  if (std::abs(p.p[2]) < 1e-9) {
    // Bound on the dropped quadratic phase over [a, b].
    const double reach = std::max(std::abs(a), std::abs(b));
    if (std::abs(p.p[2]) * reach * reach * (b - a) < 1e-12) {
      return linear_phase(p.p[0], p.p[1], a, b);
    }
    return quadratic_by_quadrature(p, a, b);
  }

  // Negative leading coefficient: integrate the negated phase, cos is even and sin odd.
  const bool flip = p.p[2] < 0.0;
  const PhasePolynomial q = flip ? PhasePolynomial::quadratic(-p.p[0], -p.p[1], -p.p[2]) : p;
  const QuadraticCanonicalForm cf = canonical_form(q);
  const double xa = cf.m_scale * (a - cf.v);
  const double xb = cf.m_scale * (b - cf.v);
  const double reach = std::max(std::abs(xa), std::abs(xb)) + 1.0;
  if (reach / cf.m_scale > 1e4) {
    return quadratic_by_quadrature(p, a, b);
  }
  const FresnelPair fa = standard_fresnel(xa);
  const FresnelPair fb = standard_fresnel(xb);
  const double dp = fb.cos_integral - fa.cos_integral;
  const double ds = fb.sin_integral - fa.sin_integral;
  const double cf_ = std::cos(cf.f) / cf.m_scale;
  const double sf_ = std::sin(cf.f) / cf.m_scale;
  FresnelPair r{cf_ * dp - sf_ * ds, sf_ * dp + cf_ * ds};
  if (flip) r.sin_integral = -r.sin_integral;
  return r;
}

QuadraticApproximation cubic_to_quadratic(const PhasePolynomial& p, double a, double b) {
  const double p3 = p.p[3];
  QuadraticApproximation out;
  out.quadratic = PhasePolynomial::quadratic(a * b * (a + b) * p3 / 2.0 + p.p[0],
                                             -(a * a + 4.0 * a * b + b * b) * p3 / 2.0 + p.p[1],
                                             3.0 * (a + b) * p3 / 2.0 + p.p[2]);
  const double len = b - a;
  out.error_bound = std::sqrt(3.0) * std::abs(p3) * len * len * len / 36.0;
  return out;
}

int cubic_subinterval_count(const PhasePolynomial& p, double a, double b, double tol) {
  const double len = b - a;
  const double c = std::sqrt(3.0) * std::abs(p.p[3]) / 36.0;
  if (c == 0.0 || len <= 0.0) return 1;
  // Phase bounds summed over the sub-intervals stay below tol.
  const double k_phase = std::ceil(std::sqrt(c * len * len * len / tol));
  // The same bound weighted by sub-interval length also stays below tol.
  const double k_integral = std::ceil(std::cbrt(c * len * len * len * len / tol));
  const double k = std::max(k_phase, k_integral);
  if (!(k < 4096.0)) return 4096;
  return std::max(1, static_cast<int>(k));
}

FresnelPair integrate_cubic_phase(const PhasePolynomial& p, double a, double b, double tol) {
  if (!(tol > 0.0)) throw G3Error(ErrorCode::kInvalidArgument, "tol must be positive");
  if (b < a) {
    const FresnelPair r = integrate_cubic_phase(p, b, a, tol);
    return {-r.cos_integral, -r.sin_integral};
  }
  if (a == b) return {};
  if (p.p[3] == 0.0) {
    return integrate_quadratic_phase(PhasePolynomial::quadratic(p.p[0], p.p[1], p.p[2]), a, b);
  }
  const int k = cubic_subinterval_count(p, a, b, tol);
  const double h = (b - a) / k;
  FresnelPair sum;
  for (int i = 0; i < k; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == k) ? b : lo + h;
    const double c = 0.5 * (lo + hi);
    const double w = 0.5 * (hi - lo);
    // Re-expand around the sub-interval midpoint, then interpolate on [-w, w].
    const double q0 = p(c);
    const double q1 = p.p[1] + c * (2.0 * p.p[2] + 3.0 * c * p.p[3]);
    const double q2 = p.p[2] + 3.0 * c * p.p[3];
    const double q3 = p.p[3];
    const QuadraticApproximation approx =
        cubic_to_quadratic(PhasePolynomial::cubic(q0, q1, q2, q3), -w, w);
    const FresnelPair part = integrate_quadratic_phase(approx.quadratic, -w, w);
    sum.cos_integral += part.cos_integral;
    sum.sin_integral += part.sin_integral;
  }
  return sum;
}

}  // namespace g3traj
