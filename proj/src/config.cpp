#include "mfc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "mfc/errors.hpp"

namespace mfc {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) throw ConfigError("config key '" + key + "': " + why);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace


UnitScales SimulationConfig::units() const {
  UnitScales u;
  u.dx_mm = dx_mm;
  u.depth_mm = depth_mm;
  const double nu_lat = (flow_tau - 0.5) / 3.0;
  const double d_lat = (ade_tau - 0.5) / 3.0;
  u.dt_flow_s = nu_lat * dx_mm * dx_mm / viscosity_mm2_s;
  u.dt_ade_s = d_lat * dx_mm * dx_mm / diffusivity_mm2_s;
  return u;
}

FlowParams SimulationConfig::flow_params() const {
  FlowParams p;
  p.tau = flow_tau;
  const UnitScales u = units();
  p.inlet_velocity = inlet_velocity_mm_s * u.dt_flow_s / u.dx_mm;
  p.max_steps = flow_max_steps;
  p.tolerance = flow_tolerance;
  p.check_every = flow_check_every;
  return p;
}

AdeParams SimulationConfig::ade_params() const {
  AdeParams p;
  p.tau_d = ade_tau;
  p.c_in = c_in;
  p.k_s = k_s;
  p.max_steps = ade_max_steps;
  p.tolerance = ade_tolerance;
  p.check_every = ade_check_every;
  return p;
}

double SimulationConfig::sink_dt_s() const {
  return ade_velocity_scale() * units().dt_flow_s;
}

double SimulationConfig::ade_velocity_scale() const {
  if (ade_velocity_mode == "flow") return 1.0;
  if (ade_velocity_mode == "physical") {
    const UnitScales u = units();
    return u.dt_ade_s / u.dt_flow_s;
  }
  return parse_double("ade.velocity_scale", ade_velocity_mode);
}

ElectroParams SimulationConfig::electro_params() const {
  ElectroParams p;
  p.m_total = m_total;
  p.mediator_yield = mediator_yield;
  p.gamma = gamma;
  p.electrons = electrons;
  p.faraday = faraday;
  p.v_a = v_a;
  p.q_max = q_max;
  p.k_s = k_s;
  p.k_mox = k_mox_ratio * m_total;
  p.i0 = i0;
  p.anode_area = anode_area_m2;
  p.e0 = e0;
  p.r_int = r_int;
  p.r_ext = r_ext;
  p.r_gas = r_gas;
  p.temperature = temperature_k;
  p.epsilon = epsilon_ratio * m_total;
  p.mred_floor = mred_floor_ratio * m_total;
  return p;
}

BiofilmParams SimulationConfig::biofilm_params() const {
  BiofilmParams p;
  p.k_ata = k_ata;
  p.c0 = c0_bio;
  p.c_max = c_max_bio;
  p.spread_fraction = spread_fraction;
  p.growth_yield = growth_yield;
  p.attach_front = attach_front == "electrode" ? AttachFront::Electrode
                                               : AttachFront::ElectrodeOrBiofilm;
  return p;
}


void SimulationConfig::validate() const {
  require(width >= 4 && height >= 4, "lattice.width/height", "must be at least 4");
  require(porosity > 0.0 && porosity <= 1.0, "lattice.porosity", "must lie in (0, 1]");
  require(electrode_span_x >= 0, "lattice.electrode_span_x", "must be non-negative");
  require(dx_mm > 0.0, "units.dx_mm", "must be positive");
  require(depth_mm > 0.0, "units.depth_mm", "must be positive");
  require(flow_tau > 0.5, "flow.tau", "must exceed 0.5 for BGK stability");
  require(viscosity_mm2_s > 0.0, "flow.viscosity_mm2_s", "must be positive");
  require(inlet_velocity_mm_s >= 0.0, "flow.inlet_velocity_mm_s", "must be non-negative");
  require(flow_max_steps > 0, "flow.max_steps", "must be positive");
  require(flow_tolerance > 0.0, "flow.tolerance", "must be positive");
  require(flow_check_every > 0, "flow.check_every", "must be positive");
  require(ade_tau > 0.5, "ade.tau", "must exceed 0.5 for BGK stability");
  require(diffusivity_mm2_s > 0.0, "ade.diffusivity_mm2_s", "must be positive");
  require(c_in >= 0.0, "ade.c_in_mg_l", "must be non-negative");
  require(ade_max_steps > 0, "ade.max_steps", "must be positive");
  require(ade_tolerance > 0.0, "ade.tolerance", "must be positive");
  require(ade_check_every > 0, "ade.check_every", "must be positive");
  if (ade_velocity_mode != "flow" && ade_velocity_mode != "physical")
    require(parse_double("ade.velocity_scale", ade_velocity_mode) > 0.0, "ade.velocity_scale",
            "must be 'flow', 'physical' or a positive number");
  require(m_total > 0.0, "electro.m_total", "must be positive");
  require(mediator_yield > 0.0, "electro.mediator_yield", "must be positive");
  require(gamma > 0.0, "electro.gamma_mg_mol", "must be positive");
  require(electrons >= 1.0 && std::floor(electrons) == electrons, "electro.electrons",
          "must be a positive integer");
  require(faraday > 0.0, "electro.faraday_c_mol", "must be positive");
  require(v_a > 0.0, "electro.v_a_l", "must be positive");
  require(q_max > 0.0, "electro.q_max_per_day", "must be positive");
  require(k_s > 0.0, "electro.k_s_mg_l", "must be positive");
  require(k_mox_ratio > 0.0, "electro.k_mox_ratio", "must be positive");
  require(i0 > 0.0, "electro.i0_a_m2", "must be positive");
  require(anode_area_m2 > 0.0, "electro.anode_area_m2", "must be positive");
  require(e0 > 0.0, "electro.e0_v", "must be positive");
  require(r_int > 0.0, "electro.r_int_ohm", "must be positive");
  require(r_ext > 0.0, "electro.r_ext_ohm", "must be positive");
  require(r_gas > 0.0, "electro.r_gas", "must be positive");
  require(temperature_k > 0.0, "electro.temperature_k", "must be positive");
  require(epsilon_ratio > 0.0, "electro.epsilon_ratio", "must be positive");
  require(mred_floor_ratio > 0.0, "electro.mred_floor_ratio", "must be positive");
  require(k_ata >= 0, "biofilm.k_ata", "must be non-negative");
  require(c0_bio > 0.0, "biofilm.c0_mg_l", "must be positive");
  require(c_max_bio > c0_bio, "biofilm.cmax_mg_l", "must exceed biofilm.c0_mg_l");
  require(spread_fraction > 0.0 && spread_fraction < 1.0, "biofilm.spread_fraction",
          "must lie in (0, 1)");
  require(growth_yield >= 0.0, "biofilm.growth_yield", "must be non-negative");
  require(attach_front == "electrode" || attach_front == "electrode_or_biofilm",
          "biofilm.attach_front", "must be 'electrode' or 'electrode_or_biofilm'");
  require(hours >= 1, "run.hours", "must be at least 1");
  require(snapshot_every >= 0, "run.snapshot_every", "must be non-negative");

  const FlowParams fp = flow_params();
  require(fp.inlet_velocity < 0.1, "flow.inlet_velocity_mm_s",
          "maps to " + fmt(fp.inlet_velocity) + " lattice units; must stay below 0.1");
}

std::map<std::string, std::string> SimulationConfig::echo() const {
  std::map<std::string, std::string> kv;
  kv["lattice.width"] = std::to_string(width);
  kv["lattice.height"] = std::to_string(height);
  kv["lattice.porosity"] = fmt(porosity);
  kv["lattice.seed"] = std::to_string(geometry_seed);
  kv["lattice.electrode_span_x"] = std::to_string(electrode_span_x);
  kv["lattice.mask_path"] = mask_path;
  kv["units.dx_mm"] = fmt(dx_mm);
  kv["units.depth_mm"] = fmt(depth_mm);
  kv["flow.tau"] = fmt(flow_tau);
  kv["flow.viscosity_mm2_s"] = fmt(viscosity_mm2_s);
  kv["flow.inlet_velocity_mm_s"] = fmt(inlet_velocity_mm_s);
  kv["flow.max_steps"] = std::to_string(flow_max_steps);
  kv["flow.tolerance"] = fmt(flow_tolerance);
  kv["flow.check_every"] = std::to_string(flow_check_every);
  kv["ade.tau"] = fmt(ade_tau);
  kv["ade.diffusivity_mm2_s"] = fmt(diffusivity_mm2_s);
  kv["ade.c_in_mg_l"] = fmt(c_in);
  kv["ade.max_steps"] = std::to_string(ade_max_steps);
  kv["ade.velocity_scale"] = ade_velocity_mode;
  kv["ade.tolerance"] = fmt(ade_tolerance);
  kv["ade.check_every"] = std::to_string(ade_check_every);
  kv["electro.m_total"] = fmt(m_total);
  kv["electro.mediator_yield"] = fmt(mediator_yield);
  kv["electro.gamma_mg_mol"] = fmt(gamma);
  kv["electro.electrons"] = fmt(electrons);
  kv["electro.faraday_c_mol"] = fmt(faraday);
  kv["electro.v_a_l"] = fmt(v_a);
  kv["electro.q_max_per_day"] = fmt(q_max);
  kv["electro.k_s_mg_l"] = fmt(k_s);
  kv["electro.k_mox_ratio"] = fmt(k_mox_ratio);
  kv["electro.i0_a_m2"] = fmt(i0);
  kv["electro.anode_area_m2"] = fmt(anode_area_m2);
  kv["electro.e0_v"] = fmt(e0);
  kv["electro.r_int_ohm"] = fmt(r_int);
  kv["electro.r_ext_ohm"] = fmt(r_ext);
  kv["electro.r_gas"] = fmt(r_gas);
  kv["electro.temperature_k"] = fmt(temperature_k);
  kv["electro.epsilon_ratio"] = fmt(epsilon_ratio);
  kv["electro.mred_floor_ratio"] = fmt(mred_floor_ratio);
  kv["biofilm.k_ata"] = std::to_string(k_ata);
  kv["biofilm.c0_mg_l"] = fmt(c0_bio);
  kv["biofilm.cmax_mg_l"] = fmt(c_max_bio);
  kv["biofilm.spread_fraction"] = fmt(spread_fraction);
  kv["biofilm.growth_yield"] = fmt(growth_yield);
  kv["biofilm.attach_front"] = attach_front;
  kv["run.hours"] = std::to_string(hours);
  kv["run.seed"] = std::to_string(seed);
  kv["run.snapshot_every"] = std::to_string(snapshot_every);
  kv["run.out_dir"] = out_dir;
  return kv;
}

std::string SimulationConfig::echo_text() const {
  std::string out;
  for (const auto& [k, v] : echo()) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

namespace {

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + value + "'");
  return v;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

SimulationConfig parse_config_text(const std::string& text) {
  SimulationConfig cfg;

  std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters;
  auto dbl = [&](const char* key, double& field) {
    setters[key] = [&field](const std::string& k, const std::string& v) { field = parse_double(k, v); };
  };
  auto intf = [&](const char* key, int& field) {
    setters[key] = [&field](const std::string& k, const std::string& v) {
      field = int(parse_int(k, v));
    };
  };
  auto u64f = [&](const char* key, std::uint64_t& field) {
    setters[key] = [&field](const std::string& k, const std::string& v) { field = parse_u64(k, v); };
  };
  auto strf = [&](const char* key, std::string& field) {
    setters[key] = [&field](const std::string&, const std::string& v) { field = v; };
  };

  intf("lattice.width", cfg.width);
  intf("lattice.height", cfg.height);
  dbl("lattice.porosity", cfg.porosity);
  u64f("lattice.seed", cfg.geometry_seed);
  intf("lattice.electrode_span_x", cfg.electrode_span_x);
  strf("lattice.mask_path", cfg.mask_path);
  dbl("units.dx_mm", cfg.dx_mm);
  dbl("units.depth_mm", cfg.depth_mm);
  dbl("flow.tau", cfg.flow_tau);
  dbl("flow.viscosity_mm2_s", cfg.viscosity_mm2_s);
  dbl("flow.inlet_velocity_mm_s", cfg.inlet_velocity_mm_s);
  intf("flow.max_steps", cfg.flow_max_steps);
  dbl("flow.tolerance", cfg.flow_tolerance);
  intf("flow.check_every", cfg.flow_check_every);
  dbl("ade.tau", cfg.ade_tau);
  dbl("ade.diffusivity_mm2_s", cfg.diffusivity_mm2_s);
  dbl("ade.c_in_mg_l", cfg.c_in);
  intf("ade.max_steps", cfg.ade_max_steps);
  strf("ade.velocity_scale", cfg.ade_velocity_mode);
  dbl("ade.tolerance", cfg.ade_tolerance);
  intf("ade.check_every", cfg.ade_check_every);
  dbl("electro.m_total", cfg.m_total);
  dbl("electro.mediator_yield", cfg.mediator_yield);
  dbl("electro.gamma_mg_mol", cfg.gamma);
  dbl("electro.electrons", cfg.electrons);
  dbl("electro.faraday_c_mol", cfg.faraday);
  dbl("electro.v_a_l", cfg.v_a);
  dbl("electro.q_max_per_day", cfg.q_max);
  dbl("electro.k_s_mg_l", cfg.k_s);
  dbl("electro.k_mox_ratio", cfg.k_mox_ratio);
  dbl("electro.i0_a_m2", cfg.i0);
  dbl("electro.anode_area_m2", cfg.anode_area_m2);
  dbl("electro.e0_v", cfg.e0);
  dbl("electro.r_int_ohm", cfg.r_int);
  dbl("electro.r_ext_ohm", cfg.r_ext);
  dbl("electro.r_gas", cfg.r_gas);
  dbl("electro.temperature_k", cfg.temperature_k);
  dbl("electro.epsilon_ratio", cfg.epsilon_ratio);
  dbl("electro.mred_floor_ratio", cfg.mred_floor_ratio);
  intf("biofilm.k_ata", cfg.k_ata);
  dbl("biofilm.c0_mg_l", cfg.c0_bio);
  dbl("biofilm.cmax_mg_l", cfg.c_max_bio);
  dbl("biofilm.spread_fraction", cfg.spread_fraction);
  dbl("biofilm.growth_yield", cfg.growth_yield);
  strf("biofilm.attach_front", cfg.attach_front);
  intf("run.hours", cfg.hours);
  u64f("run.seed", cfg.seed);
  intf("run.snapshot_every", cfg.snapshot_every);
  strf("run.out_dir", cfg.out_dir);

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw ConfigError("config key '" + key + "': unknown key (line " + std::to_string(line_no) + ")");
    it->second(key, value);
  }

  cfg.validate();
  return cfg;
}

SimulationConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace mfc
