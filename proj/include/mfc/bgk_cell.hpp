#pragma once

#include <array>

#include "mfc/d2q9.hpp"

namespace mfc::d2q9 {

/// One BGK relaxation on a cell's nine distributions. Shared by the granular
/// collide() passes and the fused collide+stream fast path so both produce
/// bit-identical values.
inline std::array<double, 9> bgk_collide_cell(const double* f, double omega) {
  const double m = f[0] + f[1] + f[2] + f[3] + f[4] + f[5] + f[6] + f[7] + f[8];
  const double ux = (f[1] - f[3] + f[5] - f[6] - f[7] + f[8]) / m;
  const double uy = (f[2] - f[4] + f[5] + f[6] - f[7] - f[8]) / m;
  const double usq = 1.5 * (ux * ux + uy * uy);
  const double w19 = m * (1.0 / 9.0);
  const double w136 = m * (1.0 / 36.0);
  const double cu1 = 3.0 * ux, cu2 = 3.0 * uy;
  const double cu5 = 3.0 * (ux + uy), cu6 = 3.0 * (uy - ux);
  return {
      f[0] + omega * (m * (4.0 / 9.0) * (1.0 - usq) - f[0]),
      f[1] + omega * (w19 * (1.0 + cu1 + 0.5 * cu1 * cu1 - usq) - f[1]),
      f[2] + omega * (w19 * (1.0 + cu2 + 0.5 * cu2 * cu2 - usq) - f[2]),
      f[3] + omega * (w19 * (1.0 - cu1 + 0.5 * cu1 * cu1 - usq) - f[3]),
      f[4] + omega * (w19 * (1.0 - cu2 + 0.5 * cu2 * cu2 - usq) - f[4]),
      f[5] + omega * (w136 * (1.0 + cu5 + 0.5 * cu5 * cu5 - usq) - f[5]),
      f[6] + omega * (w136 * (1.0 + cu6 + 0.5 * cu6 * cu6 - usq) - f[6]),
      f[7] + omega * (w136 * (1.0 - cu5 + 0.5 * cu5 * cu5 - usq) - f[7]),
      f[8] + omega * (w136 * (1.0 - cu6 + 0.5 * cu6 * cu6 - usq) - f[8]),
  };
}

/// Same relaxation with an externally imposed advection velocity (scalar
/// lattices advect with the frozen flow field, not their own first moment).
inline std::array<double, 9> bgk_collide_scalar_cell(const double* g, double omega, double ux,
                                                     double uy) {
  const double m = g[0] + g[1] + g[2] + g[3] + g[4] + g[5] + g[6] + g[7] + g[8];
  const double usq = 1.5 * (ux * ux + uy * uy);
  const double w19 = m * (1.0 / 9.0);
  const double w136 = m * (1.0 / 36.0);
  const double cu1 = 3.0 * ux, cu2 = 3.0 * uy;
  const double cu5 = 3.0 * (ux + uy), cu6 = 3.0 * (uy - ux);
  return {
      g[0] + omega * (m * (4.0 / 9.0) * (1.0 - usq) - g[0]),
      g[1] + omega * (w19 * (1.0 + cu1 + 0.5 * cu1 * cu1 - usq) - g[1]),
      g[2] + omega * (w19 * (1.0 + cu2 + 0.5 * cu2 * cu2 - usq) - g[2]),
      g[3] + omega * (w19 * (1.0 - cu1 + 0.5 * cu1 * cu1 - usq) - g[3]),
      g[4] + omega * (w19 * (1.0 - cu2 + 0.5 * cu2 * cu2 - usq) - g[4]),
      g[5] + omega * (w136 * (1.0 + cu5 + 0.5 * cu5 * cu5 - usq) - g[5]),
      g[6] + omega * (w136 * (1.0 + cu6 + 0.5 * cu6 * cu6 - usq) - g[6]),
      g[7] + omega * (w136 * (1.0 - cu5 + 0.5 * cu5 * cu5 - usq) - g[7]),
      g[8] + omega * (w136 * (1.0 - cu6 + 0.5 * cu6 * cu6 - usq) - g[8]),
  };
}

/// Two-relaxation-time collision for the scalar lattice. The antisymmetric
/// (flux-carrying) part relaxes with omega_a, fixing the diffusivity exactly
/// as in BGK; the symmetric part relaxes with omega_s chosen through the
/// magic combination (tau_a-1/2)(tau_s-1/2)=1/4, which keeps the lattice
/// stable at relaxation times arbitrarily close to 1/2 and places bounce
/// -back walls on the link midpoints.
inline std::array<double, 9> trt_collide_scalar_cell(const double* g, double omega_a,
                                                     double omega_s, double ux, double uy) {
  constexpr int Q = 9;
  const double m = g[0] + g[1] + g[2] + g[3] + g[4] + g[5] + g[6] + g[7] + g[8];
  const double usq = 1.5 * (ux * ux + uy * uy);
  const double w19 = m * (1.0 / 9.0);
  const double w136 = m * (1.0 / 36.0);
  const double cu1 = 3.0 * ux, cu2 = 3.0 * uy;
  const double cu5 = 3.0 * (ux + uy), cu6 = 3.0 * (uy - ux);
  const std::array<double, Q> geq = {
      m * (4.0 / 9.0) * (1.0 - usq),
      w19 * (1.0 + cu1 + 0.5 * cu1 * cu1 - usq),
      w19 * (1.0 + cu2 + 0.5 * cu2 * cu2 - usq),
      w19 * (1.0 - cu1 + 0.5 * cu1 * cu1 - usq),
      w19 * (1.0 - cu2 + 0.5 * cu2 * cu2 - usq),
      w136 * (1.0 + cu5 + 0.5 * cu5 * cu5 - usq),
      w136 * (1.0 + cu6 + 0.5 * cu6 * cu6 - usq),
      w136 * (1.0 - cu5 + 0.5 * cu5 * cu5 - usq),
      w136 * (1.0 - cu6 + 0.5 * cu6 * cu6 - usq),
  };
  std::array<double, Q> out;
  out[0] = g[0] - omega_s * (g[0] - geq[0]);
  constexpr int pair_a[4] = {1, 2, 5, 6};
  for (int k = 0; k < 4; ++k) {
    const int i = pair_a[k];
    const int j = opposite[i];
    const double ne_i = g[i] - geq[i];
    const double ne_j = g[j] - geq[j];
    const double even = 0.5 * (ne_i + ne_j);
    const double odd = 0.5 * (ne_i - ne_j);
    out[i] = g[i] - omega_s * even - omega_a * odd;
    out[j] = g[j] - omega_s * even + omega_a * odd;
  }
  return out;
}

}  // namespace mfc::d2q9
