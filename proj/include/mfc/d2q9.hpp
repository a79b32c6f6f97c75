#pragma once

#include <array>

namespace mfc::d2q9 {

// Nine characteristic velocities: rest, axis pairs, diagonals.
// Index layout matches the bounce-back pattern used by both solvers:
// 1=+x, 2=+y, 3=-x, 4=-y, 5=NE, 6=NW, 7=SW, 8=SE.
inline constexpr int Q = 9;
inline constexpr std::array<int, Q> cx = {0, 1, 0, -1, 0, 1, -1, -1, 1};
inline constexpr std::array<int, Q> cy = {0, 0, 1, 0, -1, 1, 1, -1, -1};
inline constexpr std::array<int, Q> opposite = {0, 3, 4, 1, 2, 7, 8, 5, 6};
inline constexpr std::array<double, Q> w = {4.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,
                                            1.0 / 9.0,  1.0 / 9.0,  1.0 / 36.0,
                                            1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0};

/// Second-order BGK equilibrium with sound speed c_s^2 = 1/3:
/// f_i = w_i * rho * (1 + 3 c.u + 4.5 (c.u)^2 - 1.5 u^2).
inline std::array<double, Q> equilibrium(double rho, double ux, double uy) {
  std::array<double, Q> feq;
  const double usq = 1.5 * (ux * ux + uy * uy);
  for (int i = 0; i < Q; ++i) {
    const double cu = 3.0 * (cx[i] * ux + cy[i] * uy);
    feq[i] = w[i] * rho * (1.0 + cu + 0.5 * cu * cu - usq);
  }
  return feq;
}

}  // namespace mfc::d2q9
