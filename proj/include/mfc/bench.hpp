#pragma once

#include <vector>

namespace mfc {

/// Velocity-driven plane channel against the analytic parabola. The channel
/// is 4H long, measured three-quarters downstream; the inlet mean velocity
/// scales as 1/H so the Reynolds number (and hence the entrance region and
/// compressibility error) is self-similar across widths.
struct PoiseuilleResult {
  int width = 0;
  double l2_error = 0.0;  // relative L2 of u_x against the parabola
  int steps = 0;
};
PoiseuilleResult bench_poiseuille(int width, double tau = 0.6706);

/// Least-squares convergence order from (width, error) pairs.
double observed_order(const std::vector<PoiseuilleResult>& results);

/// 1D step-profile diffusion against the erfc solution, plus the diffusivity
/// of a point pulse measured from its variance growth.
struct DiffusionResult {
  double erf_linf = 0.0;           // max |C - C_exact| for a unit step
  double measured_diffusivity = 0.0;
  double expected_diffusivity = 0.0;  // (tau_d - 1/2)/3
};
DiffusionResult bench_diffusion(double tau_d = 0.5036);

}  // namespace mfc
