#include "mfc/electro.hpp"

#include <cmath>
#include <stdexcept>

#include "mfc/biofilm.hpp"

namespace mfc {

double monod_rate(double c_s, double m_ox, const ElectroParams& p) {
  if (c_s <= 0.0 || m_ox <= 0.0) return 0.0;
  return p.q_max * (c_s / (c_s + p.k_s)) * (m_ox / (m_ox + p.k_mox));
}

double concentration_overpotential(double m_red, const ElectroParams& p) {
  if (m_red <= p.mred_floor) throw std::domain_error("mediator depleted: M_red at floor");
  return p.thermal_voltage() * std::log(p.m_total / m_red);
}

double activation_overpotential(double i_cell, double m_ox, double m_red,
                                const ElectroParams& p) {
  if (m_ox <= 0.0) return 0.0;
  if (m_red <= p.mred_floor) throw std::domain_error("mediator depleted: M_red at floor");
  return i_cell / p.exchange_current() * p.transfer_voltage() * (m_ox / m_red);
}

double solve_cell_current(double n_conc, double m_ox, double m_red, const ElectroParams& p) {
  if (m_red <= p.mred_floor) return 0.0;
  const double s = m_red / (p.epsilon + m_red);
  const double k = p.transfer_voltage() * (m_ox / m_red) / p.exchange_current();
  const double driving = p.e0 - n_conc;
  if (driving <= 0.0) return 0.0;
  return s * driving / (p.r_int + p.r_ext + s * k);
}

double cell_voltage(double i_cell, const ElectroParams& p) { return i_cell * p.r_ext; }

MediatorAggregates aggregate_mediator(const Lattice& lat, const BiofilmState& state,
                                      const ElectroParams& p, double cell_volume_l) {
  MediatorAggregates agg;
  double weighted = 0.0;
  double biomass = 0.0;
  for (int c = 0; c < lat.size(); ++c) {
    if (lat.kind(c) != CellKind::Biofilm) continue;
    weighted += state.m_ox[c] * state.c_bio[c];
    biomass += state.c_bio[c];
  }
  agg.total_biomass_mg = biomass * cell_volume_l;
  if (biomass > 0.0) {
    agg.m_ox_mean = weighted / biomass;
    agg.m_red_mean = p.m_total - agg.m_ox_mean;
  }
  return agg;
}

MediatorUpdateStats update_mediator(const Lattice& lat, BiofilmState& state,
                                    const std::vector<double>& q_a, double i_cell,
                                    const ElectroParams& p, double dt_hours,
                                    double cell_volume_l) {
  MediatorUpdateStats stats;
  double total_biomass = 0.0;
  for (int c = 0; c < lat.size(); ++c)
    if (lat.kind(c) == CellKind::Biofilm) total_biomass += state.c_bio[c] * cell_volume_l;
  if (total_biomass <= 0.0) return stats;

  // Reduction: Y q_a with q_a per day, over a dt_hours step.
  // Re-oxidation: the cell receives i_cell * (b_cell / B_total) of the
  // current; gamma I / (m F) converts ampere to mg mediator per second.
  const double reox_scale =
      p.gamma * i_cell * 3600.0 * dt_hours / (p.electrons * p.faraday * total_biomass * total_biomass);
  for (int c = 0; c < lat.size(); ++c) {
    if (lat.kind(c) != CellKind::Biofilm) continue;
    const double b_cell = state.c_bio[c] * cell_volume_l;
    double m = state.m_ox[c] - p.mediator_yield * q_a[c] * dt_hours / 24.0 + reox_scale * b_cell;
    if (m < 0.0) {
      m = 0.0;
      ++stats.clamped_low;
    } else if (m > p.m_total) {
      m = p.m_total;
      ++stats.clamped_high;
    }
    state.m_ox[c] = m;
  }
  return stats;
}

}  // namespace mfc
