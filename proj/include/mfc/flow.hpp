#pragma once

#include <cstdint>
#include <vector>

#include "mfc/grid.hpp"
#include "mfc/solve_stats.hpp"

namespace mfc {

struct FlowParams {
  double tau = 0.6706;         // BGK relaxation time, must exceed 0.5
  double inlet_velocity = 0.0; // lattice units per step, along +x
  int max_steps = 200000;
  double tolerance = 1e-8;     // relative L2 change of u between checks
  int check_every = 100;
};

/// D2Q9 BGK solver for the pore-space velocity field. Electrode, biofilm and
/// wall cells are half-way bounce-back obstacles; the inlet column imposes a
/// fixed velocity by equilibrium refill at the local density and the outlet
/// column copies its interior neighbour (zero gradient).
///
/// Streaming writes into a separate buffer, so collision stays per-cell
/// independent and results do not depend on traversal order.
class FlowSolver {
public:
  FlowSolver(const Lattice& lattice, FlowParams params);

  /// Equilibrium initialization: rho=1, u=0, f_i = w_i.
  void reset();

  /// One collide + stream + boundary pass.
  void step();

  /// Iterates until the velocity field stops changing; refreshes the
  /// macroscopic fields. Throws NonConvergenceError / BlowupError /
  /// NotPercolatingError.
  SolveStats run_to_steady();

  /// Recomputes rho and u from the distributions. u is zero at obstacles.
  /// Throws BlowupError when a cell density is non-positive.
  void compute_macroscopic();

  const std::vector<double>& rho() const { return rho_; }
  const std::vector<double>& ux() const { return ux_; }
  const std::vector<double>& uy() const { return uy_; }
  const std::vector<double>& distributions() const { return f_; }
  std::vector<double>& distributions() { return f_; }
  const Lattice& lattice() const { return lat_; }
  const FlowParams& params() const { return params_; }

  // Pieces exposed for the unit tests.
  void collide();
  void stream_with_bounce_back();
  void apply_inlet_outlet();

private:
  void refresh_tables();

  const Lattice& lat_;
  FlowParams params_;
  std::vector<double> f_;      // distributions, index = cell*9 + i
  std::vector<double> f_next_; // streaming target buffer
  std::vector<double> rho_;
  std::vector<double> ux_;
  std::vector<double> uy_;
  // Pull/push index tables per (cell, direction) plus cached cell lists,
  // rebuilt whenever the lattice version changes.
  std::vector<std::int32_t> pull_src_;
  std::vector<std::int32_t> push_dst_;
  std::vector<std::int32_t> edge_slots_;
  std::vector<int> active_;
  std::vector<int> obstacle_;
  std::vector<int> inlet_cells_;
  std::vector<int> outlet_cells_;
  std::uint64_t tables_version_ = 0;
};

}  // namespace mfc
