#include "mfc/ade.hpp"

#include <cmath>
#include <string>

#include "mfc/bgk_cell.hpp"
#include "mfc/d2q9.hpp"
#include "mfc/errors.hpp"

namespace mfc {

using namespace d2q9;

AdeSolver::AdeSolver(const Lattice& lattice, AdeParams params)
    : lat_(lattice), params_(params) {
  if (params_.tau_d <= 0.5) throw ConfigError("scalar relaxation time must exceed 0.5");
  if (params_.c_in < 0.0) throw ConfigError("inlet concentration must be non-negative");
  const size_t n = size_t(lat_.size());
  g_.assign(n * Q + 1, 0.0);  // trailing dump slot for parcels leaving the open ends
  g_next_.assign(n * Q + 1, 0.0);
  c_.assign(n, 0.0);
  ux_.assign(n, 0.0);
  uy_.assign(n, 0.0);
  reset(params_.c_in);
}

void AdeSolver::reset(double value) {
  for (int c = 0; c < lat_.size(); ++c) {
    const double v = lat_.is_ade_solid(c) ? 0.0 : value;
    for (int i = 0; i < Q; ++i) g_[size_t(c) * Q + i] = w[i] * v;
    c_[c] = v;
  }
}

void AdeSolver::set_velocity(const std::vector<double>& ux, const std::vector<double>& uy) {
  for (int c = 0; c < lat_.size(); ++c) {
    if (lat_.kind(c) == CellKind::Biofilm || lat_.is_ade_solid(c)) {
      ux_[c] = 0.0;
      uy_[c] = 0.0;
    } else {
      ux_[c] = ux[c];
      uy_[c] = uy[c];
    }
  }
}

void AdeSolver::set_sink(std::vector<double> rate_max) {
  sink_rate_ = std::move(rate_max);
  sink_cells_.clear();
  for (int c = 0; c < int(sink_rate_.size()); ++c)
    if (sink_rate_[c] > 0.0) sink_cells_.push_back(c);
}

void AdeSolver::refresh_tables() {
  if (tables_version_ == lat_.version() + 1) return;
  const int W = lat_.width();
  const int H = lat_.height();
  const size_t n = size_t(lat_.size());
  const std::int32_t dump = std::int32_t(n * Q);
  pull_src_.resize(n * Q);
  push_dst_.resize(n * Q);
  active_.clear();
  solid_.clear();
  edge_slots_.clear();
  inlet_cells_.clear();
  outlet_cells_.clear();
  // Zero-flux Neumann at solids: the parcel headed into a solid returns in
  // the opposite direction, so nothing crosses the boundary.
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const int c = lat_.index(x, y);
      const CellKind kind = lat_.kind(c);
      if (kind == CellKind::Inlet) inlet_cells_.push_back(c);
      if (kind == CellKind::Outlet) outlet_cells_.push_back(c);
      std::int32_t* pull = &pull_src_[size_t(c) * Q];
      std::int32_t* push = &push_dst_[size_t(c) * Q];
      if (lat_.is_ade_solid(c)) {
        solid_.push_back(c);
        for (int i = 0; i < Q; ++i) {
          pull[i] = std::int32_t(c * Q + i);
          push[i] = dump;
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
        } else if (lat_.is_ade_solid(sx, sy)) {
          pull[i] = std::int32_t(c * Q + opposite[i]);
        } else {
          pull[i] = std::int32_t(lat_.index(sx, sy) * Q + i);
        }
        const int tx = x + cx[i];
        const int ty = y + cy[i];
        if (!lat_.in_bounds(tx, ty)) {
          push[i] = dump;
        } else if (lat_.is_ade_solid(tx, ty)) {
          push[i] = std::int32_t(c * Q + opposite[i]);
        } else {
          push[i] = std::int32_t(lat_.index(tx, ty) * Q + i);
        }
      }
    }
  }
  tables_version_ = lat_.version() + 1;
}

void AdeSolver::collide() {
  refresh_tables();
  const double omega_a = 1.0 / params_.tau_d;
  const double omega_s = 1.0 / (0.5 + params_.magic / (params_.tau_d - 0.5));
  for (const int c : active_) {
    double* gc = &g_[size_t(c) * Q];
    const auto post = trt_collide_scalar_cell(gc, omega_a, omega_s, ux_[c], uy_[c]);
    for (int i = 0; i < Q; ++i) gc[i] = post[i];
  }
}

void AdeSolver::stream_with_bounce_back() {
  refresh_tables();
  const size_t total = size_t(lat_.size()) * Q;
  for (size_t k = 0; k < total; ++k) g_next_[k] = g_[size_t(pull_src_[k])];
  g_.swap(g_next_);
}

void AdeSolver::apply_boundaries() {
  refresh_tables();
  for (const int c : outlet_cells_) {
    const int src = c - 1;
    for (int i = 0; i < Q; ++i) g_[size_t(c) * Q + i] = g_[size_t(src) * Q + i];
  }
  for (const int c : inlet_cells_) {
    const auto geq = equilibrium(params_.c_in, ux_[c], uy_[c]);
    for (int i = 0; i < Q; ++i) g_[size_t(c) * Q + i] = geq[i];
  }
}

void AdeSolver::apply_sink() {
  for (const int c : sink_cells_) {
    double* gc = &g_[size_t(c) * Q];
    double conc = 0.0;
    for (int i = 0; i < Q; ++i) conc += gc[i];
    if (conc < -params_.negativity_guard * std::max(params_.c_in, 1.0))
      throw BlowupError("negative concentration " + std::to_string(conc) + " at sink cell " +
                        std::to_string(c));
    if (conc <= 0.0) continue;
    // Monod saturation in the local concentration keeps the steady field
    // non-negative; the residual clamp only catches round-off.
    double removed = sink_rate_[c] * conc / (conc + params_.k_s);
    if (removed > conc) removed = conc;
    const double scale = (conc - removed) / conc;
    for (int i = 0; i < Q; ++i) gc[i] *= scale;
  }
}

void AdeSolver::step() {
  refresh_tables();
  // Fused collide + push-stream: one pass over the distributions. Slots with
  // no upstream writer (open x-ends) keep their previous value; solid slots
  // are carried over untouched.
  for (const std::int32_t k : edge_slots_) g_next_[size_t(k)] = g_[size_t(k)];
  for (const int c : solid_) {
    for (int i = 0; i < Q; ++i) g_next_[size_t(c) * Q + i] = g_[size_t(c) * Q + i];
  }
  const double omega_a = 1.0 / params_.tau_d;
  const double omega_s = 1.0 / (0.5 + params_.magic / (params_.tau_d - 0.5));
  for (const int c : active_) {
    const auto post = trt_collide_scalar_cell(&g_[size_t(c) * Q], omega_a, omega_s, ux_[c], uy_[c]);
    const std::int32_t* push = &push_dst_[size_t(c) * Q];
    for (int i = 0; i < Q; ++i) g_next_[size_t(push[i])] = post[i];
  }
  g_.swap(g_next_);
  apply_boundaries();
  apply_sink();
}

void AdeSolver::compute_concentration() {
  for (int c = 0; c < lat_.size(); ++c) {
    if (lat_.is_ade_solid(c)) {
      c_[c] = 0.0;
      continue;
    }
    const double* gc = &g_[size_t(c) * Q];
    double conc = 0.0;
    for (int i = 0; i < Q; ++i) conc += gc[i];
    c_[c] = conc;
  }
}

SolveStats AdeSolver::run_to_steady() {
  compute_concentration();
  std::vector<double> prev = c_;

  SolveStats stats;
  while (stats.steps < params_.max_steps) {
    for (int s = 0; s < params_.check_every && stats.steps < params_.max_steps; ++s) {
      step();
      ++stats.steps;
    }
    compute_concentration();

    double diff2 = 0.0, norm2 = 0.0;
    for (int c = 0; c < lat_.size(); ++c) {
      const double d = c_[c] - prev[c];
      diff2 += d * d;
      norm2 += c_[c] * c_[c];
    }
    if (!std::isfinite(diff2) || !std::isfinite(norm2))
      throw BlowupError("concentration field diverged (NaN detected)");

    stats.residual = norm2 > 0.0 ? std::sqrt(diff2 / norm2) : std::sqrt(diff2);
    if (stats.residual < params_.tolerance) {
      stats.converged = true;
      return stats;
    }
    prev = c_;
  }
  throw NonConvergenceError("scalar solve hit max_steps (" + std::to_string(params_.max_steps) +
                                ") with residual " + std::to_string(stats.residual),
                            stats.residual);
}

}  // namespace mfc
