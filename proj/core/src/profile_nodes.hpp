#pragma once

#include <vector>

#include "g3traj/path.hpp"

namespace g3traj::detail {

struct Interval {
  double s0;
  double s1;
  PathPiece piece;  // t measured from piece.s_begin
};

// Path pieces split so no interval is longer than max_len.
std::vector<Interval> split_pieces(const G3Path& path, double max_len);

struct Node {
  double s;
  double weight;
  double kappa;
  double sigma;
};

// 16-point Gauss-Legendre nodes of every interval.
std::vector<Node> quadrature_nodes(const std::vector<Interval>& intervals);

// Knot spacing used for cost quadrature on a profile of n coefficients.
double default_interval_length(double s_f, int n);

}  // namespace g3traj::detail
