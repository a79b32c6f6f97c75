#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mfc/ade.hpp"
#include "mfc/biofilm.hpp"
#include "mfc/electro.hpp"
#include "mfc/flow.hpp"

namespace mfc {

/// Physical-to-lattice conversions. Each solver runs in its own time step,
/// fixed by diffusive scaling against its Table of transport coefficients;
/// the outer loop advances one hour per iteration.
struct UnitScales {
  double dx_mm = 1.0;
  double depth_mm = 17.0;      // out-of-plane compartment depth
  double dt_flow_s = 0.0;      // seconds per flow-lattice step
  double dt_ade_s = 0.0;       // seconds per scalar-lattice step
  double dt_outer_h = 1.0;     // hours per outer iteration

  double cell_volume_l() const { return dx_mm * dx_mm * depth_mm * 1e-6; }
};

/// Fully resolved simulation configuration. Every knob is a flat dotted key
/// in the config file; unspecified keys take the defaults below.
struct SimulationConfig {
  // lattice.*
  int width = 60;
  int height = 65;
  double porosity = 0.874;
  std::uint64_t geometry_seed = 1;
  int electrode_span_x = 48;   // columns available to electrode blobs
  std::string mask_path;       // when set, overrides the generator

  // units.*
  double dx_mm = 1.0;
  double depth_mm = 17.0;

  // flow.*
  double flow_tau = 0.6706;
  double viscosity_mm2_s = 1.004;
  double inlet_velocity_mm_s = 1.758e-2;
  int flow_max_steps = 200000;
  double flow_tolerance = 1e-8;
  int flow_check_every = 100;

  // ade.*
  double ade_tau = 0.5036;
  double diffusivity_mm2_s = 0.0012;
  double c_in = 410.0;
  int ade_max_steps = 2000000;
  double ade_tolerance = 1e-8;
  int ade_check_every = 100;
  // How the frozen flow velocity enters the scalar lattice: "flow" passes
  // the flow-lattice values through unchanged, "physical" rescales by
  // dt_ade/dt_flow, a number applies a custom factor. The scalar step then
  // represents dt_flow * scale seconds of transport, and the consumption
  // sink runs on that same clock (see sink_dt_s), so the supply/demand
  // budget is physical in every mode. The rescaled option reaches lattice
  // velocities near 0.1 in throat cells, beyond the stability margin of the
  // scalar lattice at tau_d near 1/2, so pass-through is the default; the
  // cost is a lattice diffusivity above the physical one, which is the
  // least influential transport term at this Peclet number.
  std::string ade_velocity_mode = "flow";

  // electro.*
  double m_total = 0.05;
  double mediator_yield = 0.5687;
  double gamma = 663400.0;
  double electrons = 2.0;
  double faraday = 96485.0;
  double v_a = 0.0663;
  double q_max = 8.48;
  double k_s = 20.0;
  double k_mox_ratio = 0.02;       // K_Mox = ratio * M_total
  double i0 = 0.001;
  // Electrode slab cross-section is 48x65 mm; the wetted surface of the
  // porous medium is taken as twice the two planar faces.
  double anode_area_m2 = 1.248e-2;
  double e0 = 0.7;
  double r_int = 360.0;
  double r_ext = 360.0;
  double r_gas = 8.314;
  double temperature_k = 298.15;
  double epsilon_ratio = 1e-4;     // eps = ratio * M_total
  double mred_floor_ratio = 1e-9;  // depletion floor = ratio * M_total

  // biofilm.*
  int k_ata = 200;
  double c0_bio = 450.0;
  double c_max_bio = 512.5;
  double spread_fraction = 0.4;
  // Biomass yield on substrate, the calibration knob for the voltage rise.
  // Values much above this pack the pore space before the 72 h horizon.
  double growth_yield = 0.03;
  std::string attach_front = "electrode";  // or "electrode_or_biofilm"

  // run.*
  int hours = 72;
  std::uint64_t seed = 1;
  int snapshot_every = 0;          // 0: final hour only
  std::string out_dir = "out";

  // Derived views.
  UnitScales units() const;
  FlowParams flow_params() const;      // inlet velocity in lattice units
  AdeParams ade_params() const;
  ElectroParams electro_params() const;
  BiofilmParams biofilm_params() const;
  double ade_velocity_scale() const;   // flow-lattice u -> scalar-lattice u
  double sink_dt_s() const;            // seconds of consumption per scalar step

  /// Range/consistency checks shared by file parsing and CLI overrides.
  void validate() const;

  /// Sorted key=value dump of every setting (deterministic echo).
  std::map<std::string, std::string> echo() const;
  std::string echo_text() const;
};

/// Parses the flat key=value config format ('#' comments, blank lines ok).
/// Unknown keys, type mismatches and out-of-range values raise ConfigError
/// with the offending key path. An empty file yields the defaults.
SimulationConfig parse_config_text(const std::string& text);
SimulationConfig parse_config_file(const std::string& path);

}  // namespace mfc
