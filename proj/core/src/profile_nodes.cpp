#include "profile_nodes.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"

namespace g3traj::detail {

std::vector<Interval> split_pieces(const G3Path& path, double max_len) {
  std::vector<Interval> out;
  for (const PathPiece& p : path_pieces(path)) {
    const int parts = std::max(1, static_cast<int>(std::ceil(p.length / max_len - 1e-12)));
    for (int k = 0; k < parts; ++k) {
      out.push_back({p.s_begin + p.length * k / parts, p.s_begin + p.length * (k + 1) / parts, p});
    }
  }
  return out;
}

std::vector<Node> quadrature_nodes(const std::vector<Interval>& intervals) {
  const GaussRule16& gl = gauss_legendre_16();
  std::vector<Node> nodes;
  nodes.reserve(intervals.size() * 16);
  for (const Interval& iv : intervals) {
    const double half = 0.5 * (iv.s1 - iv.s0);
    const double mid = 0.5 * (iv.s1 + iv.s0);
    for (int k = 0; k < 16; ++k) {
      const double s = mid + half * gl.nodes[k];
      const double t = s - iv.piece.s_begin;
      nodes.push_back({s, half * gl.weights[k], iv.piece.kappa_at(t), iv.piece.sigma_at(t)});
    }
  }
  return nodes;
}

double default_interval_length(double s_f, int n) {
  return s_f / std::max(1, n - 1);
}

}  // namespace g3traj::detail
