#pragma once

#include <array>

namespace g3traj::detail {

struct GaussRule16 {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
};

// 16-point Gauss-Legendre on [-1, 1].
const GaussRule16& gauss_legendre_16();

}  // namespace g3traj::detail
