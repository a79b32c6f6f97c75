#include "mfc/bench.hpp"

#include <cmath>
#include <string>

#include "mfc/ade.hpp"
#include "mfc/d2q9.hpp"
#include "mfc/flow.hpp"
#include "mfc/grid.hpp"

namespace mfc {

PoiseuilleResult bench_poiseuille(int width, double tau) {
  const int H = width;
  const int L = 4 * H;
  Lattice lat(L + 2, H + 2);  // walls top/bottom, inlet x=0, outlet x=L+1

  FlowParams fp;
  fp.tau = tau;
  fp.inlet_velocity = 0.64 / H;  // fixed Reynolds number across widths
  fp.tolerance = 1e-11;
  fp.max_steps = 500000;
  fp.check_every = 200;

  FlowSolver solver(lat, fp);
  const SolveStats stats = solver.run_to_steady();

  // Half-way bounce-back places the walls on the link midpoints, so the
  // effective channel spans y in [0.5, H+0.5] and has width exactly H.
  const int x_probe = 3 * H;
  double err2 = 0.0, ref2 = 0.0;
  for (int y = 1; y <= H; ++y) {
    const double yy = (y - 0.5) / double(H);
    const double exact = 6.0 * fp.inlet_velocity * yy * (1.0 - yy);
    const double d = solver.ux()[lat.index(x_probe, y)] - exact;
    err2 += d * d;
    ref2 += exact * exact;
  }

  PoiseuilleResult res;
  res.width = H;
  res.l2_error = std::sqrt(err2 / ref2);
  res.steps = stats.steps;
  return res;
}

double observed_order(const std::vector<PoiseuilleResult>& results) {
  // Slope of log(error) against log(1/width).
  const int n = int(results.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : results) {
    const double x = -std::log(double(r.width));
    const double y = std::log(r.l2_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

Lattice closed_box(int w, int h) {
  std::string mask;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool border = x == 0 || x == w - 1 || y == 0 || y == h - 1;
      mask.push_back(border ? 'W' : '.');
    }
    mask.push_back('\n');
  }
  return Lattice::from_mask(mask);
}

}  // namespace

DiffusionResult bench_diffusion(double tau_d) {
  DiffusionResult res;
  res.expected_diffusivity = (tau_d - 0.5) / 3.0;
  const double d_lat = res.expected_diffusivity;

  // Step profile along x in a thin closed channel; the walls are zero-flux
  // so the 1D erfc solution applies until the fronts reach the ends.
  {
    const int W = 202, H = 5;
    Lattice lat = closed_box(W, H);
    AdeParams ap;
    ap.tau_d = tau_d;
    ap.c_in = 0.0;
    AdeSolver solver(lat, ap);
    auto& g = solver.distributions();
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x) {
        const double c0 = x < W / 2 ? 1.0 : 0.0;
        for (int i = 0; i < d2q9::Q; ++i)
          g[size_t(lat.index(x, y)) * d2q9::Q + i] = d2q9::w[i] * c0;
      }
    const int steps = 40000;
    for (int t = 0; t < steps; ++t) {
      solver.collide();
      solver.stream_with_bounce_back();
    }
    solver.compute_concentration();

    const double x_mid = W / 2 - 0.5;  // step sits between cells W/2-1 and W/2
    const double denom = 2.0 * std::sqrt(d_lat * steps);
    const int y_probe = H / 2;
    for (int x = 1; x < W - 1; ++x) {
      const double exact = 0.5 * std::erfc((x - x_mid) / denom);
      const double diff = std::abs(solver.concentration()[lat.index(x, y_probe)] - exact);
      res.erf_linf = std::max(res.erf_linf, diff);
    }
  }

  // Point pulse variance growth: var_x(t) = var_x(0) + 2 D t.
  {
    const int N = 81;
    Lattice lat = closed_box(N, N);
    AdeParams ap;
    ap.tau_d = tau_d;
    ap.c_in = 0.0;
    AdeSolver solver(lat, ap);
    auto& g = solver.distributions();
    std::fill(g.begin(), g.end(), 0.0);
    const int mid = lat.index(N / 2, N / 2);
    for (int i = 0; i < d2q9::Q; ++i) g[size_t(mid) * d2q9::Q + i] = d2q9::w[i];

    auto variance_x = [&]() {
      solver.compute_concentration();
      double m0 = 0, m1 = 0, m2 = 0;
      for (int y = 1; y < N - 1; ++y)
        for (int x = 1; x < N - 1; ++x) {
          const double c = solver.concentration()[lat.index(x, y)];
          m0 += c;
          m1 += c * x;
          m2 += c * double(x) * x;
        }
      const double mean = m1 / m0;
      return m2 / m0 - mean * mean;
    };

    const int t1 = 1000, t2 = 3000;
    for (int t = 0; t < t1; ++t) {
      solver.collide();
      solver.stream_with_bounce_back();
    }
    const double v1 = variance_x();
    for (int t = t1; t < t2; ++t) {
      solver.collide();
      solver.stream_with_bounce_back();
    }
    const double v2 = variance_x();
    res.measured_diffusivity = (v2 - v1) / (2.0 * (t2 - t1));
  }

  return res;
}

}  // namespace mfc
