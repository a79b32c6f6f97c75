#pragma once

#include <map>
#include <string>
#include <vector>

#include "mfc/electro.hpp"
#include "mfc/grid.hpp"

namespace mfc {

/// Hourly time series as CSV: header row, one row per record, LF endings,
/// nine significant digits. Currents are reported in mA, voltages in mV.
void write_timeseries(const std::vector<ElectricalRecord>& records, const std::string& path);

/// Matrix-form CSV, row-major, nine significant digits.
void write_matrix_csv(const std::vector<double>& field, int width, int height,
                      const std::string& path);

/// Cell-kind mask in the grid alphabet; round-trips through Lattice::from_mask.
void write_mask(const Lattice& lat, const std::string& path);

/// 8-bit ASCII portable graymap with per-field min-max normalization.
/// Returns {min, max} used for the scaling.
std::pair<double, double> write_pgm(const std::vector<double>& field, int width, int height,
                                    const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Run manifest: resolved config echo, artifact list, seeds, timestamps and
/// termination status, as JSON.
struct RunManifest {
  std::map<std::string, std::string> config_echo;
  std::vector<std::string> artifacts;
  std::map<std::string, std::string> normalizations;  // pgm file -> "min,max"
  std::string version;
  std::string started_at;
  std::string finished_at;
  std::string status;  // completed | clogged | non-convergence | error
  int hours_completed = 0;
  long mediator_clamp_events = 0;
};

void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace mfc
