#pragma once

#include <vector>

#include "mfc/grid.hpp"

namespace mfc {

struct BiofilmState;

/// Bio-electrochemical constants. Units follow the configuration reference:
/// the mediator pool is tracked per unit biomass (mg mediator / mg biomass),
/// consumption rates are per day, currents in ampere, potentials in volt.
struct ElectroParams {
  double m_total = 0.05;        // mediator per biomass, mg/mg
  double mediator_yield = 0.5687; // mg mediator reduced per mg substrate
  double gamma = 663400.0;      // mediator molar mass, mg/mol
  double electrons = 2.0;       // electrons per mediator reduction
  double faraday = 96485.0;     // C/mol
  double v_a = 0.0663;          // anode compartment volume, L
  double q_max = 8.48;          // max consumption, mg substrate / mg biomass / day
  double k_s = 20.0;            // substrate half saturation, mg/L
  double k_mox = 0.001;         // oxidised-mediator half saturation, mg/mg
  double i0 = 0.001;            // exchange current density, A/m^2
  double anode_area = 1.248e-2; // m^2
  double e0 = 0.7;              // open circuit voltage, V
  double r_int = 360.0;         // ohm
  double r_ext = 360.0;         // ohm
  double r_gas = 8.314;         // J/(mol K)
  double temperature = 298.15;  // K
  double epsilon = 5e-6;        // current bound constant at low M_red, mg/mg
  double mred_floor = 5e-11;    // below this M_red the mediator counts as depleted

  double thermal_voltage() const { return r_gas * temperature / faraday; }            // RT/F
  double transfer_voltage() const { return thermal_voltage() / electrons; }           // RT/(mF)
  double exchange_current() const { return anode_area * i0; }                         // A
};

/// Double Monod consumption rate, mg substrate / mg biomass / day.
double monod_rate(double c_s, double m_ox, const ElectroParams& p);

/// Nernst concentration overpotential, V. Requires m_red above the depletion
/// floor; callers take the I=0 branch below it.
double concentration_overpotential(double m_red, const ElectroParams& p);

/// Linearised Butler-Volmer activation overpotential, V.
double activation_overpotential(double i_cell, double m_ox, double m_red, const ElectroParams& p);

/// Closed-form solution of the implicit current equation: the activation
/// overpotential is linear in I, so with s = M_red/(eps+M_red) and
/// K = RT/(mF) * (M_ox/M_red) / (A_a I_0),
///   I = s (E_0 - n_conc) / (R_int + R_ext + s K),
/// clamped at zero. Returns 0 A when the mediator is depleted.
double solve_cell_current(double n_conc, double m_ox, double m_red, const ElectroParams& p);

/// Ohm's law over the external load: V = I * R_ext.
double cell_voltage(double i_cell, const ElectroParams& p);

/// One hourly output sample. Mediator fractions are stored as exact
/// complements so their sum is 1 by construction.
struct ElectricalRecord {
  int hour = 0;
  double i_cell_a = 0.0;
  double v_cell_v = 0.0;
  double n_conc_v = 0.0;
  double n_act_v = 0.0;
  double m_red_frac = 0.0;
  double m_ox_frac = 1.0;
  double total_biomass_mg = 0.0;
  double mean_cs_mg_l = 0.0;
};

struct MediatorAggregates {
  double total_biomass_mg = 0.0;
  double m_ox_mean = 0.0;   // biomass-weighted, mg/mg
  double m_red_mean = 0.0;  // m_total - m_ox_mean
};

/// Biomass-weighted mediator means over all biofilm cells.
MediatorAggregates aggregate_mediator(const Lattice& lat, const BiofilmState& state,
                                      const ElectroParams& p, double cell_volume_l);

struct MediatorUpdateStats {
  long clamped_low = 0;
  long clamped_high = 0;
};

/// Hourly per-cell mediator balance: consumption reduces M_ox by
/// Y q_a dt/24 and the cell's share of the cell current (proportional to its
/// biomass) re-oxidises it. M_ox is clamped to [0, M_total]; M_red is always
/// the exact complement.
MediatorUpdateStats update_mediator(const Lattice& lat, BiofilmState& state,
                                    const std::vector<double>& q_a, double i_cell,
                                    const ElectroParams& p, double dt_hours,
                                    double cell_volume_l);

}  // namespace mfc
