#include "mfc/flow.hpp"

#include <cmath>
#include <string>

#include "mfc/bgk_cell.hpp"
#include "mfc/d2q9.hpp"
#include "mfc/errors.hpp"

namespace mfc {

using namespace d2q9;

FlowSolver::FlowSolver(const Lattice& lattice, FlowParams params)
    : lat_(lattice), params_(params) {
  if (params_.tau <= 0.5) throw ConfigError("flow relaxation time must exceed 0.5");
  if (std::abs(params_.inlet_velocity) >= 0.1)
    throw ConfigError("inlet velocity must stay below 0.1 lattice units");
  const size_t n = size_t(lat_.size());
  f_.assign(n * Q + 1, 0.0);  // one trailing dump slot for parcels leaving the open ends
  f_next_.assign(n * Q + 1, 0.0);
  rho_.assign(n, 1.0);
  ux_.assign(n, 0.0);
  uy_.assign(n, 0.0);
  reset();
}

void FlowSolver::reset() {
  for (int c = 0; c < lat_.size(); ++c)
    for (int i = 0; i < Q; ++i) f_[size_t(c) * Q + i] = w[i];
  std::fill(rho_.begin(), rho_.end(), 1.0);
  std::fill(ux_.begin(), ux_.end(), 0.0);
  std::fill(uy_.begin(), uy_.end(), 0.0);
}

void FlowSolver::refresh_tables() {
  if (tables_version_ == lat_.version() + 1) return;
  const int W = lat_.width();
  const int H = lat_.height();
  const size_t n = size_t(lat_.size());
  const std::int32_t dump = std::int32_t(n * Q);
  pull_src_.resize(n * Q);
  push_dst_.resize(n * Q);
  active_.clear();
  obstacle_.clear();
  edge_slots_.clear();
  inlet_cells_.clear();
  outlet_cells_.clear();
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const int c = lat_.index(x, y);
      const CellKind kind = lat_.kind(c);
      if (kind == CellKind::Inlet) inlet_cells_.push_back(c);
      if (kind == CellKind::Outlet) outlet_cells_.push_back(c);
      std::int32_t* pull = &pull_src_[size_t(c) * Q];
      std::int32_t* push = &push_dst_[size_t(c) * Q];
      if (lat_.is_flow_obstacle(c)) {
        obstacle_.push_back(c);
        for (int i = 0; i < Q; ++i) {
          pull[i] = std::int32_t(c * Q + i);
          push[i] = dump;  // obstacle distributions never propagate
        }
        continue;
      }
      active_.push_back(c);
      for (int i = 0; i < Q; ++i) {
        const int sx = x - cx[i];
        const int sy = y - cy[i];
        if (!lat_.in_bounds(sx, sy)) {
          pull[i] = std::int32_t(c * Q + i);
          edge_slots_.push_back(std::int32_t(c * Q + i));
        } else if (lat_.is_flow_obstacle(sx, sy)) {
          pull[i] = std::int32_t(c * Q + opposite[i]);  // half-way bounce-back
        } else {
          pull[i] = std::int32_t(lat_.index(sx, sy) * Q + i);
        }
        const int tx = x + cx[i];
        const int ty = y + cy[i];
        if (!lat_.in_bounds(tx, ty)) {
          push[i] = dump;
        } else if (lat_.is_flow_obstacle(tx, ty)) {
          push[i] = std::int32_t(c * Q + opposite[i]);
        } else {
          push[i] = std::int32_t(lat_.index(tx, ty) * Q + i);
        }
      }
    }
  }
  tables_version_ = lat_.version() + 1;
}

void FlowSolver::collide() {
  refresh_tables();
  const double omega = 1.0 / params_.tau;
  for (const int c : active_) {
    double* fc = &f_[size_t(c) * Q];
    const auto post = bgk_collide_cell(fc, omega);
    for (int i = 0; i < Q; ++i) fc[i] = post[i];
  }
}

void FlowSolver::stream_with_bounce_back() {
  refresh_tables();
  const size_t total = size_t(lat_.size()) * Q;
  for (size_t k = 0; k < total; ++k) f_next_[k] = f_[size_t(pull_src_[k])];
  f_.swap(f_next_);
}

void FlowSolver::apply_inlet_outlet() {
  refresh_tables();
  for (const int c : outlet_cells_) {
    // Zero-gradient copy from the adjacent interior column, rescaled to unit
    // density. The rescale anchors the otherwise free pressure level (a
    // velocity inlet fixes no density anywhere) and leaves the copied
    // velocity exactly unchanged.
    const int src = c - 1;
    double rho = 0.0;
    for (int i = 0; i < Q; ++i) rho += f_[size_t(src) * Q + i];
    const double scale = rho > 0.0 ? 1.0 / rho : 1.0;
    for (int i = 0; i < Q; ++i) f_[size_t(c) * Q + i] = scale * f_[size_t(src) * Q + i];
  }
  for (const int c : inlet_cells_) {
    double rho = 0.0;
    for (int i = 0; i < Q; ++i) rho += f_[size_t(c) * Q + i];
    const auto feq = equilibrium(rho, params_.inlet_velocity, 0.0);
    for (int i = 0; i < Q; ++i) f_[size_t(c) * Q + i] = feq[i];
  }
}

void FlowSolver::step() {
  refresh_tables();
  // Fused collide + push-stream: one pass over the distributions. Slots with
  // no upstream writer (open x-ends) keep their previous value; obstacle
  // slots are carried over untouched.
  for (const std::int32_t k : edge_slots_) f_next_[size_t(k)] = f_[size_t(k)];
  for (const int c : obstacle_) {
    for (int i = 0; i < Q; ++i) f_next_[size_t(c) * Q + i] = f_[size_t(c) * Q + i];
  }
  const double omega = 1.0 / params_.tau;
  for (const int c : active_) {
    const auto post = bgk_collide_cell(&f_[size_t(c) * Q], omega);
    const std::int32_t* push = &push_dst_[size_t(c) * Q];
    for (int i = 0; i < Q; ++i) f_next_[size_t(push[i])] = post[i];
  }
  f_.swap(f_next_);
  apply_inlet_outlet();
}

void FlowSolver::compute_macroscopic() {
  for (int c = 0; c < lat_.size(); ++c) {
    if (lat_.is_flow_obstacle(c)) {
      rho_[c] = 1.0;
      ux_[c] = 0.0;
      uy_[c] = 0.0;
      continue;
    }
    const double* fc = &f_[size_t(c) * Q];
    double rho = 0.0, jx = 0.0, jy = 0.0;
    for (int i = 0; i < Q; ++i) {
      rho += fc[i];
      jx += cx[i] * fc[i];
      jy += cy[i] * fc[i];
    }
    if (!(rho > 0.0))
      throw BlowupError("non-positive density at cell (" + std::to_string(c % lat_.width()) +
                        ", " + std::to_string(c / lat_.width()) + ")");
    rho_[c] = rho;
    ux_[c] = jx / rho;
    uy_[c] = jy / rho;
  }
}

SolveStats FlowSolver::run_to_steady() {
  if (!lat_.percolates())
    throw NotPercolatingError("flow solve requires an inlet-outlet fluid path");

  compute_macroscopic();
  std::vector<double> prev_ux = ux_;
  std::vector<double> prev_uy = uy_;

  SolveStats stats;
  while (stats.steps < params_.max_steps) {
    for (int s = 0; s < params_.check_every && stats.steps < params_.max_steps; ++s) {
      step();
      ++stats.steps;
    }
    compute_macroscopic();

    double diff2 = 0.0, norm2 = 0.0, vmax2 = 0.0;
    for (int c = 0; c < lat_.size(); ++c) {
      const double dx = ux_[c] - prev_ux[c];
      const double dy = uy_[c] - prev_uy[c];
      const double v2 = ux_[c] * ux_[c] + uy_[c] * uy_[c];
      diff2 += dx * dx + dy * dy;
      norm2 += v2;
      vmax2 = std::max(vmax2, v2);
    }
    if (!std::isfinite(diff2) || !std::isfinite(norm2))
      throw BlowupError("flow field diverged (NaN detected)");
    if (vmax2 > 0.09) throw BlowupError("flow field exceeded the low-Mach bound |u| < 0.3");

    stats.residual = norm2 > 0.0 ? std::sqrt(diff2 / norm2) : std::sqrt(diff2);
    if (stats.residual < params_.tolerance) {
      stats.converged = true;
      return stats;
    }
    prev_ux = ux_;
    prev_uy = uy_;
  }
  throw NonConvergenceError("flow solve hit max_steps (" + std::to_string(params_.max_steps) +
                                ") with residual " + std::to_string(stats.residual),
                            stats.residual);
}

}  // namespace mfc
