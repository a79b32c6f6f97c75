#include "mfc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mfc/errors.hpp"

namespace mfc {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_timeseries(const std::vector<ElectricalRecord>& records, const std::string& path) {
  auto out = open_out(path);
  out << "hour,I_mA,V_mV,n_conc_V,n_act_V,Mred_frac,Mox_frac,total_biomass_mg,mean_Cs_mgL\n";
  for (const auto& r : records) {
    out << r.hour << ',' << num(r.i_cell_a * 1e3) << ',' << num(r.v_cell_v * 1e3) << ','
        << num(r.n_conc_v) << ',' << num(r.n_act_v) << ',' << num(r.m_red_frac) << ','
        << num(r.m_ox_frac) << ',' << num(r.total_biomass_mg) << ',' << num(r.mean_cs_mg_l)
        << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_matrix_csv(const std::vector<double>& field, int width, int height,
                      const std::string& path) {
  auto out = open_out(path);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x) out << ',';
      out << num(field[size_t(y) * width + x]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_mask(const Lattice& lat, const std::string& path) {
  auto out = open_out(path);
  out << lat.to_mask();
  if (!out) throw IoError("write failed: " + path);
}

std::pair<double, double> write_pgm(const std::vector<double>& field, int width, int height,
                                    const std::string& path) {
  double lo = field.empty() ? 0.0 : field[0];
  double hi = lo;
  for (double v : field) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;

  auto out = open_out(path);
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double v = field[size_t(y) * width + x];
      const int g = int(255.0 * (v - lo) / span + 0.5);
      if (x) out << ' ';
      out << g;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
  return {lo, hi};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::ordered_json j;
  j["version"] = manifest.version;
  j["status"] = manifest.status;
  j["hours_completed"] = manifest.hours_completed;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["mediator_clamp_events"] = manifest.mediator_clamp_events;
  j["config"] = manifest.config_echo;
  j["artifacts"] = manifest.artifacts;
  if (!manifest.normalizations.empty()) j["pgm_normalization"] = manifest.normalizations;
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace mfc
