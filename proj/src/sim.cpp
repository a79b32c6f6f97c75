#include "mfc/sim.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "mfc/errors.hpp"
#include "mfc/io.hpp"

namespace mfc {

std::unique_ptr<Lattice> Simulation::build_lattice(const SimulationConfig& cfg) {
  if (!cfg.mask_path.empty())
    return std::make_unique<Lattice>(Lattice::from_mask(read_text_file(cfg.mask_path), cfg.dx_mm));
  return std::make_unique<Lattice>(generate_random_electrode(
      cfg.width, cfg.height, cfg.porosity, cfg.geometry_seed, cfg.electrode_span_x, cfg.dx_mm));
}

Simulation::Simulation(SimulationConfig cfg) : Simulation(cfg, build_lattice(cfg)) {}

Simulation::Simulation(SimulationConfig cfg, std::unique_ptr<Lattice> lattice)
    : cfg_(std::move(cfg)),
      lat_(std::move(lattice)),
      flow_(*lat_, cfg_.flow_params()),
      ade_(*lat_, cfg_.ade_params()),
      bio_(lat_->size()),
      ep_(cfg_.electro_params()),
      bp_(cfg_.biofilm_params()),
      rng_(cfg_.seed) {}

std::vector<double> Simulation::build_sink() const {
  // Substrate removed per scalar step at full substrate saturation:
  // q_max * sat(M_ox) * C_bio. The per-day rate is mapped onto the seconds
  // of transport one scalar step represents, so consumption and advective
  // supply share a clock.
  const double per_step = cfg_.sink_dt_s() / 86400.0;
  std::vector<double> sink(size_t(lat_->size()), 0.0);
  for (int c = 0; c < lat_->size(); ++c) {
    if (lat_->kind(c) != CellKind::Biofilm) continue;
    const double m_ox = bio_.m_ox[c];
    const double sat_m = m_ox > 0.0 ? m_ox / (m_ox + ep_.k_mox) : 0.0;
    sink[c] = ep_.q_max * sat_m * bio_.c_bio[c] * per_step;
  }
  return sink;
}

void Simulation::step_hour(const std::function<void(const ElectricalRecord&)>& mid_hook) {
  HourStats hs;
  hs.hour = hour_;

  // (a) Fluid dynamics with the updated biofilm as impermeable obstacles.
  hs.flow = flow_.run_to_steady();

  // (b) Substrate transport over the frozen flow field.
  const double scale = cfg_.ade_velocity_scale();
  std::vector<double> ux(flow_.ux()), uy(flow_.uy());
  for (double& v : ux) v *= scale;
  for (double& v : uy) v *= scale;
  ade_.set_velocity(ux, uy);
  ade_.set_sink(build_sink());
  const int parity = hour_ & 1;
  if (!ade_saved_[parity].empty()) ade_.distributions() = ade_saved_[parity];
  hs.ade = ade_.run_to_steady();
  ade_saved_[parity] = ade_.distributions();

  // (c) Electrical outputs and the mediator balance.
  const std::vector<double>& cs = ade_.concentration();
  std::vector<double> q_a(size_t(lat_->size()), 0.0);
  for (int c = 0; c < lat_->size(); ++c)
    if (lat_->kind(c) == CellKind::Biofilm) q_a[c] = monod_rate(cs[c], bio_.m_ox[c], ep_);

  const double cell_volume = cfg_.units().cell_volume_l();
  const MediatorAggregates agg = aggregate_mediator(*lat_, bio_, ep_, cell_volume);

  ElectricalRecord rec;
  rec.hour = hour_;
  rec.total_biomass_mg = agg.total_biomass_mg;
  if (agg.total_biomass_mg > 0.0 && agg.m_red_mean > ep_.mred_floor) {
    rec.n_conc_v = concentration_overpotential(agg.m_red_mean, ep_);
    rec.i_cell_a = solve_cell_current(rec.n_conc_v, agg.m_ox_mean, agg.m_red_mean, ep_);
    rec.n_act_v = activation_overpotential(rec.i_cell_a, agg.m_ox_mean, agg.m_red_mean, ep_);
    rec.v_cell_v = cell_voltage(rec.i_cell_a, ep_);
    rec.m_ox_frac = agg.m_ox_mean / ep_.m_total;
    rec.m_red_frac = 1.0 - rec.m_ox_frac;
  } else if (agg.total_biomass_mg > 0.0) {
    // Mediator depleted: no driving redox pool, the cell produces nothing.
    rec.m_ox_frac = agg.m_ox_mean / ep_.m_total;
    rec.m_red_frac = 1.0 - rec.m_ox_frac;
  }
  double cs_sum = 0.0;
  long cs_cells = 0;
  for (int c = 0; c < lat_->size(); ++c) {
    if (lat_->is_ade_solid(c)) continue;
    cs_sum += cs[c];
    ++cs_cells;
  }
  rec.mean_cs_mg_l = cs_cells > 0 ? cs_sum / double(cs_cells) : 0.0;
  records_.push_back(rec);

  if (agg.total_biomass_mg > 0.0) {
    const MediatorUpdateStats ms =
        update_mediator(*lat_, bio_, q_a, rec.i_cell_a, ep_, 1.0, cell_volume);
    hs.mediator_clamps = ms.clamped_low + ms.clamped_high;
    clamp_events_ += hs.mediator_clamps;
  }

  if (mid_hook) mid_hook(rec);

  // (d) Biofilm formation: attach, grow, spread.
  hs.attached = attach(*lat_, bio_, bp_, ep_, rng_);
  grow(*lat_, bio_, q_a, bp_, 1.0);
  spread(*lat_, bio_, bp_, rng_);

  hour_stats_.push_back(hs);
  ++hour_;
}

SimulationResult Simulation::run(const std::function<void(const ElectricalRecord&)>& mid_hook) {
  SimulationResult res;
  try {
    while (hour_ < cfg_.hours) step_hour(mid_hook);
  } catch (const CloggedError& e) {
    res.status = RunStatus::Clogged;
    res.message = e.what();
  } catch (const NotPercolatingError& e) {
    // Mid-run loss of percolation means the biofilm sealed the channel.
    res.status = hour_ > 0 ? RunStatus::Clogged : RunStatus::NonConvergence;
    res.message = e.what();
  } catch (const NonConvergenceError& e) {
    res.status = RunStatus::NonConvergence;
    res.message = e.what();
  }
  res.records = records_;
  res.hour_stats = hour_stats_;
  res.mediator_clamp_events = clamp_events_;
  return res;
}

namespace {

constexpr char kMagic[9] = "MFCKPT01";

void put_u64(std::ostream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }
void put_i32(std::ostream& out, std::int32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::ostream& out, double v) { out.write(reinterpret_cast<const char*>(&v), 8); }

void put_string(std::ostream& out, const std::string& s) {
  put_u64(out, s.size());
  out.write(s.data(), std::streamsize(s.size()));
}

void put_doubles(std::ostream& out, const std::vector<double>& v) {
  put_u64(out, v.size());
  out.write(reinterpret_cast<const char*>(v.data()), std::streamsize(v.size() * 8));
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

std::int32_t get_i32(std::istream& in) {
  std::int32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

double get_f64(std::istream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

std::string get_string(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  std::string s(n, '\0');
  in.read(s.data(), std::streamsize(n));
  return s;
}

std::vector<double> get_doubles(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  std::vector<double> v(n);
  in.read(reinterpret_cast<char*>(v.data()), std::streamsize(n * 8));
  return v;
}

/// Physics portion of the config echo; run.* keys may differ across a resume.
std::string physics_echo(const SimulationConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg.echo()) {
    if (k.rfind("run.", 0) == 0) continue;
    out += k + " = " + v + "\n";
  }
  return out;
}

}  // namespace

void Simulation::save_checkpoint(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  out.write(kMagic, 8);
  put_string(out, physics_echo(cfg_));
  put_i32(out, lat_->width());
  put_i32(out, lat_->height());
  put_f64(out, lat_->dx_mm());
  put_string(out, lat_->to_mask());
  put_doubles(out, flow_.distributions());
  put_doubles(out, ade_.distributions());
  put_doubles(out, bio_.c_bio);
  put_doubles(out, bio_.m_ox);
  put_doubles(out, ade_saved_[0]);
  put_doubles(out, ade_saved_[1]);
  put_string(out, rng_.serialize());
  put_u64(out, std::uint64_t(hour_));
  put_u64(out, std::uint64_t(clamp_events_));
  put_u64(out, records_.size());
  for (const auto& r : records_) {
    put_i32(out, r.hour);
    put_f64(out, r.i_cell_a);
    put_f64(out, r.v_cell_v);
    put_f64(out, r.n_conc_v);
    put_f64(out, r.n_act_v);
    put_f64(out, r.m_red_frac);
    put_f64(out, r.m_ox_frac);
    put_f64(out, r.total_biomass_mg);
    put_f64(out, r.mean_cs_mg_l);
  }
  if (!out) throw IoError("checkpoint write failed: " + path);
}

Simulation Simulation::load_checkpoint(const std::string& path, const SimulationConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0)
    throw IoError("not a checkpoint file (bad magic): " + path);

  const std::string saved_physics = get_string(in);
  if (saved_physics != physics_echo(cfg))
    throw ConfigError("checkpoint was produced with a different physics configuration");

  get_i32(in);  // width, carried by the mask
  get_i32(in);  // height
  const double dx = get_f64(in);
  auto lat = std::make_unique<Lattice>(Lattice::from_mask(get_string(in), dx));

  Simulation sim(cfg, std::move(lat));
  sim.flow_.distributions() = get_doubles(in);
  sim.ade_.distributions() = get_doubles(in);
  sim.bio_.c_bio = get_doubles(in);
  sim.bio_.m_ox = get_doubles(in);
  sim.ade_saved_[0] = get_doubles(in);
  sim.ade_saved_[1] = get_doubles(in);
  sim.rng_.deserialize(get_string(in));
  sim.hour_ = int(get_u64(in));
  sim.clamp_events_ = long(get_u64(in));
  const std::uint64_t n_records = get_u64(in);
  sim.records_.resize(n_records);
  for (auto& r : sim.records_) {
    r.hour = get_i32(in);
    r.i_cell_a = get_f64(in);
    r.v_cell_v = get_f64(in);
    r.n_conc_v = get_f64(in);
    r.n_act_v = get_f64(in);
    r.m_red_frac = get_f64(in);
    r.m_ox_frac = get_f64(in);
    r.total_biomass_mg = get_f64(in);
    r.mean_cs_mg_l = get_f64(in);
  }
  if (!in) throw IoError("checkpoint truncated: " + path);
  return sim;
}

}  // namespace mfc
