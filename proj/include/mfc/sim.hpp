#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mfc/ade.hpp"
#include "mfc/biofilm.hpp"
#include "mfc/config.hpp"
#include "mfc/electro.hpp"
#include "mfc/flow.hpp"
#include "mfc/grid.hpp"
#include "mfc/rng.hpp"
#include "mfc/solve_stats.hpp"

namespace mfc {

struct HourStats {
  int hour = 0;
  SolveStats flow;
  SolveStats ade;
  int attached = 0;
  long mediator_clamps = 0;
};

enum class RunStatus { Completed, Clogged, NonConvergence };

struct SimulationResult {
  RunStatus status = RunStatus::Completed;
  std::string message;
  std::vector<ElectricalRecord> records;
  std::vector<HourStats> hour_stats;
  long mediator_clamp_events = 0;
  int hours_completed() const { return int(records.size()); }
};

/// The hourly outer loop: flow to steady state over the current obstacle
/// set, substrate transport to steady state over the frozen flow, the
/// electrochemical update, then biofilm attachment, growth and spreading.
/// Both lattice solves warm-start from the previous hour's fields.
class Simulation {
public:
  explicit Simulation(SimulationConfig cfg);
  Simulation(Simulation&&) = default;

  /// Runs one hour. The mid-hour hook fires after the electrical record is
  /// appended and before the biofilm phase mutates the lattice, so callers
  /// can snapshot a consistent (fields, geometry) pair.
  /// Throws CloggedError / NonConvergenceError / BlowupError.
  void step_hour(const std::function<void(const ElectricalRecord&)>& mid_hook = {});

  /// Runs to the configured horizon, converting clogging and non-convergence
  /// into a terminated result with the records produced so far.
  SimulationResult run(const std::function<void(const ElectricalRecord&)>& mid_hook = {});

  int hour() const { return hour_; }
  const Lattice& lattice() const { return *lat_; }
  const SimulationConfig& config() const { return cfg_; }
  const std::vector<ElectricalRecord>& records() const { return records_; }
  const std::vector<HourStats>& hour_stats() const { return hour_stats_; }
  long mediator_clamp_events() const { return clamp_events_; }
  const BiofilmState& biofilm() const { return bio_; }

  // Fields of the most recent hour (valid inside the mid-hour hook and after
  // any completed hour).
  const std::vector<double>& ux() const { return flow_.ux(); }
  const std::vector<double>& uy() const { return flow_.uy(); }
  const std::vector<double>& rho() const { return flow_.rho(); }
  const std::vector<double>& concentration() const { return ade_.concentration(); }

  void save_checkpoint(const std::string& path) const;
  static Simulation load_checkpoint(const std::string& path, const SimulationConfig& cfg);

private:
  Simulation(SimulationConfig cfg, std::unique_ptr<Lattice> lattice);

  std::vector<double> build_sink() const;
  static std::unique_ptr<Lattice> build_lattice(const SimulationConfig& cfg);

  SimulationConfig cfg_;
  std::unique_ptr<Lattice> lat_;  // heap-owned: solvers keep references across moves
  FlowSolver flow_;
  AdeSolver ade_;
  BiofilmState bio_;
  ElectroParams ep_;
  BiofilmParams bp_;
  Rng rng_;
  int hour_ = 0;
  // The mediator balance relaxes on a two-hour cycle, so each scalar solve
  // warm-starts from the field of the same parity hour.
  std::vector<double> ade_saved_[2];
  std::vector<ElectricalRecord> records_;
  std::vector<HourStats> hour_stats_;
  long clamp_events_ = 0;
};

}  // namespace mfc
