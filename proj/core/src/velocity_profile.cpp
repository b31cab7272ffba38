#include "g3traj/velocity_profile.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "g3traj/errors.hpp"
#include "profile_nodes.hpp"

namespace g3traj {
namespace {

constexpr int kRefinePasses = 3;

void check_samples(const std::vector<double>& samples, double s_f) {
  if (samples.empty()) throw G3Error(ErrorCode::kInvalidArgument, "no samples");
  if (!(s_f > 0.0)) throw G3Error(ErrorCode::kInvalidArgument, "s_f must be positive");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() > 0.0)) {
    throw G3Error(ErrorCode::kInvalidArgument, "sample arc-lengths must be positive");
  }
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw G3Error(ErrorCode::kDuplicateSample,
                    "sample arc-length " + std::to_string(sorted[i]) + " repeats");
    }
  }
}

Eigen::MatrixXd normalized_matrix(const std::vector<double>& samples, double s_f) {
  const int n = static_cast<int>(samples.size()) + 1;
  Eigen::MatrixXd m(n, n);
  for (int i = 1; i <= n; ++i) {
    m(0, i - 1) = 1.0 / (i + 1);
    for (int j = 0; j + 1 < n; ++j) m(j + 1, i - 1) = std::pow(samples[j] / s_f, i);
  }
  return m;
}

VelocityProfile from_normalized(const std::vector<long double>& q, double v_s, double v_f,
                                double s_f) {
  VelocityProfile p;
  p.v_s = v_s;
  p.v_f = v_f;
  p.s_f = s_f;
  p.coefficients.resize(q.size());
  long double scale = 1.0L;
  for (std::size_t i = 0; i < q.size(); ++i) {
    scale *= s_f;
    p.coefficients[i] = q[i] / scale;
  }
  return p;
}

}  // namespace

std::vector<double> uniform_samples(double s_f, int n) {
  if (n < 2) throw G3Error(ErrorCode::kInvalidArgument, "n must be at least 2");
  std::vector<double> s(n - 1);
  for (int i = 2; i <= n; ++i) s[i - 2] = (i - 1) * s_f / (n - 1);
  s.back() = s_f;
  return s;
}

WaypointVector s_curve_waypoints(double v_s, double v_f, double s_f, int n) {
  WaypointVector w;
  w.s = uniform_samples(s_f, n);
  const double dv = v_f - v_s;
  for (double s : w.s) {
    const double ramp = s <= 0.5 * s_f ? s : s_f - s;
    w.a.push_back(4.0 * dv * ramp / (s_f * s_f));
  }
  w.a.back() = 0.0;
  return w;
}

Matrix build_vandermonde(const std::vector<double>& samples, double s_f) {
  check_samples(samples, s_f);
  const int n = static_cast<int>(samples.size()) + 1;
  Matrix v{n, n, std::vector<double>(static_cast<std::size_t>(n) * n)};
  for (int i = 1; i <= n; ++i) {
    v(0, i - 1) = std::pow(s_f, i + 1) / (i + 1);
    for (int j = 0; j + 1 < n; ++j) v(j + 1, i - 1) = std::pow(samples[j], i);
  }
  return v;
}

VelocityProfile solve_coefficients(const Matrix& v, double v_s, double v_f,
                                   const WaypointVector& waypoints) {
  const int n = v.rows;
  if (v.cols != n || static_cast<int>(waypoints.a.size()) != n - 1 ||
      static_cast<int>(waypoints.s.size()) != n - 1) {
    throw G3Error(ErrorCode::kInvalidArgument, "system and way-point sizes disagree");
  }
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd rhs(n);
  rhs[0] = v_f - v_s;
  for (int j = 1; j < n; ++j) rhs[j] = waypoints.a[j - 1];
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = v(r, c);
  }
  // Column then row equilibration.
  Eigen::VectorXd col(n);
  for (int c = 0; c < n; ++c) {
    const double mx = m.col(c).cwiseAbs().maxCoeff();
    col[c] = mx > 0.0 ? 1.0 / mx : 1.0;
    m.col(c) *= col[c];
  }
  Eigen::VectorXd row(n);
  for (int r = 0; r < n; ++r) {
    const double mx = m.row(r).cwiseAbs().maxCoeff();
    if (!(mx > 0.0)) throw G3Error(ErrorCode::kSingularSystem, "zero row in system");
    row[r] = 1.0 / mx;
    m.row(r) *= row[r];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  if (!qr.isInvertible()) throw G3Error(ErrorCode::kSingularSystem, "system is singular");
  const Eigen::VectorXd y = qr.solve(rhs.cwiseProduct(row));
  std::vector<long double> p(n);
  for (int i = 0; i < n; ++i) p[i] = static_cast<long double>(y[i]) * col[i];
  // Iterative refinement: residuals use powers of the sample arc-lengths in extended
  // precision, not the rounded matrix entries.
  const long double s_f = waypoints.s.back();
  Eigen::VectorXd res(n);
  for (int pass = 0; pass < kRefinePasses; ++pass) {
    for (int r = 0; r < n; ++r) {
      long double acc = rhs[r];
      const long double x = r == 0 ? s_f : static_cast<long double>(waypoints.s[r - 1]);
      long double pw = r == 0 ? x : 1.0L;
      for (int i = 1; i <= n; ++i) {
        pw *= x;
        acc -= r == 0 ? p[i - 1] * pw / (i + 1) : p[i - 1] * pw;
      }
      res[r] = static_cast<double>(acc) * row[r];
    }
    const Eigen::VectorXd d = qr.solve(res);
    for (int i = 0; i < n; ++i) p[i] += static_cast<long double>(d[i]) * col[i];
  }
  VelocityProfile out;
  out.v_s = v_s;
  out.v_f = v_f;
  out.s_f = waypoints.s.back();
  out.coefficients = std::move(p);
  return out;
}

VelocitySystem::VelocitySystem(const std::vector<double>& samples, double s_f)
    : n_(static_cast<int>(samples.size()) + 1), s_f_(s_f), samples_(samples) {
  check_samples(samples, s_f);
  const Eigen::MatrixXd m = normalized_matrix(samples, s_f);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  if (!qr.isInvertible()) throw G3Error(ErrorCode::kSingularSystem, "system is singular");
  const Eigen::MatrixXd inv = qr.inverse();
  inverse_.resize(static_cast<std::size_t>(n_) * n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) inverse_[r * n_ + c] = inv(r, c);
  }
}

void VelocitySystem::solve_normalized(double v_s, double v_f, const double* a, double* q) const {
  for (int r = 0; r < n_; ++r) {
    double acc = inverse_[r * n_] * (v_f - v_s) / s_f_;
    for (int c = 1; c < n_; ++c) acc += inverse_[r * n_ + c] * a[c - 1];
    q[r] = acc;
  }
}

void VelocitySystem::refine_normalized(double v_s, double v_f, const double* a,
                                       std::vector<long double>& q) const {
  std::vector<double> res(n_);
  for (int pass = 0; pass < kRefinePasses; ++pass) {
    for (int r = 0; r < n_; ++r) {
      long double acc = r == 0 ? static_cast<long double>(v_f - v_s) / s_f_ : a[r - 1];
      if (r == 0) {
        for (int i = 1; i <= n_; ++i) acc -= q[i - 1] / (i + 1);
      } else {
        const long double u = static_cast<long double>(samples_[r - 1]) / s_f_;
        long double pw = 1.0L;
        for (int i = 1; i <= n_; ++i) {
          pw *= u;
          acc -= pw * q[i - 1];
        }
      }
      res[r] = static_cast<double>(acc);
    }
    for (int r = 0; r < n_; ++r) {
      double d = 0.0;
      for (int c = 0; c < n_; ++c) d += inverse_[r * n_ + c] * res[c];
      q[r] += d;
    }
  }
}

VelocityProfile VelocitySystem::solve(double v_s, double v_f, const std::vector<double>& a) const {
  if (static_cast<int>(a.size()) != n_ - 1) {
    throw G3Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(n_ - 1) + " way-points");
  }
  std::vector<double> q0(n_);
  solve_normalized(v_s, v_f, a.data(), q0.data());
  std::vector<long double> q(q0.begin(), q0.end());
  refine_normalized(v_s, v_f, a.data(), q);
  return from_normalized(q, v_s, v_f, s_f_);
}

double penalty(double x, double x_max, int exponent) {
  const double excess = std::abs(x) / x_max - 1.0;
  return excess > 0.0 ? std::pow(excess, exponent) : 0.0;
}

struct PenalizedObjective::Impl {
  std::vector<detail::Node> nodes;
  VelocitySystem system;
  double v_s;
  double v_f;
  CostWeights weights;
  PenaltyConfig penalty;

  VelocityProfile profile(const std::vector<double>& free) const {
    std::vector<double> a = free;
    a.push_back(0.0);
    return system.solve(v_s, v_f, a);
  }

  // Node values of v, alpha, beta from normalized coefficients q_i = p_i s_f^i.
  double cost(const std::vector<double>& free) const {
    const int n = system.n();
    thread_local std::vector<double> a;
    thread_local std::vector<double> q;
    thread_local std::vector<double> v;
    thread_local std::vector<double> al;
    thread_local std::vector<double> be;
    a.assign(free.begin(), free.end());
    a.push_back(0.0);
    q.resize(n);
    system.solve_normalized(v_s, v_f, a.data(), q.data());
    const std::size_t m = nodes.size();
    v.resize(m);
    al.resize(m);
    be.resize(m);
    double v_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      const double u = u_nodes[k];
      double v_acc = 0.0;
      double a_acc = 0.0;
      double b_acc = 0.0;
      for (int i = n; i >= 1; --i) {
        const double qi = q[i - 1];
        v_acc = v_acc * u + qi * inv_ip1[i - 1];
        a_acc = a_acc * u + qi;
        b_acc = b_acc * u + i * qi;
      }
      v[k] = v_s + s_f * v_acc * u * u;
      al[k] = a_acc * u;
      be[k] = b_acc / s_f;
      if (!(v[k] > 0.0)) return std::numeric_limits<double>::infinity();
      v_min = std::min(v_min, v[k]);
    }
    const MotionLimits& lim = penalty.limits;
    const double alpha_max = penalty.alpha_max > 0.0 ? penalty.alpha_max : lim.a_max / v_min;
    const double beta_max =
        penalty.beta_max > 0.0 ? penalty.beta_max : lim.b_max / (v_min * v_min);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const detail::Node& nd = nodes[k];
      const auto f = cost_integrands(kinematics_at(nd.kappa, nd.sigma, v[k], al[k], be[k]));
      const double pen = g3traj::penalty(v[k], lim.v_max, penalty.exponent) +
                         g3traj::penalty(al[k], alpha_max, penalty.exponent) +
                         g3traj::penalty(be[k], beta_max, penalty.exponent);
      total += nd.weight * (weights.w_a * f[0] + weights.w_jerk * f[1] + weights.w_y * f[2] +
                            weights.w_t * f[3] + penalty.weight * pen);
    }
    return total;
  }

  std::vector<double> u_nodes;
  std::vector<double> inv_ip1;
  double s_f = 0.0;
};

PenalizedObjective::PenalizedObjective(const G3Path& path, std::vector<double> samples,
                                       double v_s, double v_f, const CostWeights& weights,
                                       const PenaltyConfig& penalty) {
  const double s_f = path.length();
  const auto intervals = detail::split_pieces(
      path, detail::default_interval_length(s_f, static_cast<int>(samples.size()) + 1));
  impl_ = std::make_unique<Impl>(Impl{detail::quadrature_nodes(intervals),
                                      VelocitySystem(samples, s_f), v_s, v_f, weights, penalty,
                                      {}, {}, s_f});
  for (const detail::Node& nd : impl_->nodes) impl_->u_nodes.push_back(nd.s / s_f);
  for (int i = 1; i <= impl_->system.n(); ++i) impl_->inv_ip1.push_back(1.0 / (i + 1));
}

PenalizedObjective::~PenalizedObjective() = default;
PenalizedObjective::PenalizedObjective(PenalizedObjective&&) noexcept = default;
PenalizedObjective& PenalizedObjective::operator=(PenalizedObjective&&) noexcept = default;

double PenalizedObjective::operator()(const std::vector<double>& free) const {
  return impl_->cost(free);
}

std::vector<double> PenalizedObjective::gradient(const std::vector<double>& free, double h) const {
  std::vector<double> g(free.size());
  std::vector<double> x = free;
  for (std::size_t i = 0; i < free.size(); ++i) {
    x[i] = free[i] + h;
    const double up = impl_->cost(x);
    x[i] = free[i] - h;
    const double down = impl_->cost(x);
    x[i] = free[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

VelocityProfile PenalizedObjective::profile(const std::vector<double>& free) const {
  return impl_->profile(free);
}

int PenalizedObjective::dimension() const { return impl_->system.n() - 2; }

double penalized_cost(const G3Path& path, const WaypointVector& waypoints, double v_s, double v_f,
                      const CostWeights& weights, const PenaltyConfig& penalty) {
  const PenalizedObjective obj(path, waypoints.s, v_s, v_f, weights, penalty);
  std::vector<double> free(waypoints.a.begin(), waypoints.a.end() - 1);
  return obj(free);
}

VelocityOptimization optimize_waypoints(const G3Path& path, double v_s, double v_f,
                                        const CostWeights& weights, const PenaltyConfig& penalty,
                                        const WaypointVector& initial,
                                        const DescentOptions& options) {
  const PenalizedObjective obj(path, initial.s, v_s, v_f, weights, penalty);
  std::vector<double> x(initial.a.begin(), initial.a.end() - 1);
  double f = obj(x);
  if (!std::isfinite(f)) {
    throw G3Error(ErrorCode::kNoFiniteStart, "initial way-points give non-positive speed");
  }
  VelocityOptimization out;
  out.initial_cost = f;
  out.history.push_back(f);
  double step = 1.0;
  std::vector<double> g = obj.gradient(x, options.fd_step);
  std::vector<double> trial(x.size());
  int it = 0;
  for (; it < options.max_iters; ++it) {
    double g_inf = 0.0;
    double g_sq = 0.0;
    for (double gi : g) {
      g_inf = std::max(g_inf, std::abs(gi));
      g_sq += gi * gi;
    }
    if (g_inf <= options.gradient_tol) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    for (int k = 0; k < 80; ++k) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * g[i];
      const double ft = obj(trial);
      if (std::isfinite(ft) && ft <= f - options.armijo * step * g_sq) {
        accepted = true;
        f = ft;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    // Barzilai-Borwein trial step for the next line search.
    std::vector<double> g_next = obj.gradient(trial, options.fd_step);
    double ss = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double dx = trial[i] - x[i];
      ss += dx * dx;
      sy += dx * (g_next[i] - g[i]);
    }
    step = sy > 0.0 ? ss / sy : 2.0 * step;
    x = trial;
    g = std::move(g_next);
    out.history.push_back(f);
  }
  out.iterations = it;
  out.waypoints.s = initial.s;
  out.waypoints.a = x;
  out.waypoints.a.push_back(0.0);
  out.profile = obj.profile(x);
  out.cost = f;
  out.breakdown = arc_length_cost(path, out.profile, weights);
  return out;
}

}  // namespace g3traj
