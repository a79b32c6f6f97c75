#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfc/bench.hpp"
#include "mfc/config.hpp"
#include "mfc/errors.hpp"
#include "mfc/io.hpp"
#include "mfc/sim.hpp"
#include "mfc/version.hpp"

namespace fs = std::filesystem;
using namespace mfc;

namespace {

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  std::string geometry;
  std::string resume;
  std::string checkpoint_out;
  int hours = -1;
  long long seed = -1;
  int snapshot_every = -1;
  bool pgm = false;
};

SimulationConfig load_config(const RunOptions& opt) {
  SimulationConfig cfg =
      opt.config_path.empty() ? SimulationConfig{} : parse_config_file(opt.config_path);
  if (opt.hours >= 0) cfg.hours = opt.hours;
  if (opt.seed >= 0) cfg.seed = std::uint64_t(opt.seed);
  if (opt.snapshot_every >= 0) cfg.snapshot_every = opt.snapshot_every;
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (!opt.geometry.empty()) cfg.mask_path = opt.geometry;
  cfg.validate();
  return cfg;
}

int run_command(const RunOptions& opt) {
  const SimulationConfig cfg = load_config(opt);
  fs::create_directories(cfg.out_dir);

  RunManifest manifest;
  manifest.version = kVersion;
  manifest.config_echo = cfg.echo();
  manifest.started_at = iso_now();

  Simulation sim = opt.resume.empty() ? Simulation(cfg)
                                      : Simulation::load_checkpoint(opt.resume, cfg);

  auto out_path = [&](const std::string& name) { return (fs::path(cfg.out_dir) / name).string(); };
  auto push_artifact = [&](const std::string& path) {
    manifest.artifacts.push_back(fs::path(path).filename().string());
  };

  auto snapshot = [&](int hour) {
    const auto& lat = sim.lattice();
    const auto tag = "_h" + std::to_string(hour);
    struct Field {
      const char* name;
      const std::vector<double>* data;
    };
    const Field fields[] = {{"ux", &sim.ux()},
                            {"uy", &sim.uy()},
                            {"rho", &sim.rho()},
                            {"conc", &sim.concentration()},
                            {"cbio", &sim.biofilm().c_bio}};
    for (const auto& f : fields) {
      const std::string path = out_path(std::string(f.name) + tag + ".csv");
      write_matrix_csv(*f.data, lat.width(), lat.height(), path);
      push_artifact(path);
      if (opt.pgm) {
        const std::string pgm_path = out_path(std::string(f.name) + tag + ".pgm");
        const auto [lo, hi] = write_pgm(*f.data, lat.width(), lat.height(), pgm_path);
        push_artifact(pgm_path);
        char norm[64];
        std::snprintf(norm, sizeof norm, "%.9g,%.9g", lo, hi);
        manifest.normalizations[fs::path(pgm_path).filename().string()] = norm;
      }
    }
    const std::string geom_path = out_path("geom" + tag + ".txt");
    write_mask(lat, geom_path);
    push_artifact(geom_path);
  };

  const int last_hour = cfg.hours - 1;
  SimulationResult result = sim.run([&](const ElectricalRecord& rec) {
    const bool cadence = cfg.snapshot_every > 0 && rec.hour % cfg.snapshot_every == 0;
    if (cadence || rec.hour == last_hour) snapshot(rec.hour);
  });

  const std::string series_path = out_path("outputs.csv");
  write_timeseries(result.records, series_path);
  push_artifact(series_path);

  if (!opt.checkpoint_out.empty()) {
    sim.save_checkpoint(opt.checkpoint_out);
    std::cout << "checkpoint written to " << opt.checkpoint_out << "\n";
  }

  manifest.finished_at = iso_now();
  manifest.hours_completed = result.hours_completed();
  manifest.mediator_clamp_events = result.mediator_clamp_events;
  switch (result.status) {
    case RunStatus::Completed: manifest.status = "completed"; break;
    case RunStatus::Clogged: manifest.status = "clogged"; break;
    case RunStatus::NonConvergence: manifest.status = "non-convergence"; break;
  }
  write_manifest(manifest, out_path("run_manifest.json"));

  if (!result.records.empty()) {
    const auto& last = result.records.back();
    std::printf("hours %d/%d  I = %.4g mA  V = %.4g mV  biomass = %.4g mg\n",
                result.hours_completed(), cfg.hours, last.i_cell_a * 1e3, last.v_cell_v * 1e3,
                last.total_biomass_mg);
  }

  if (result.status == RunStatus::Clogged) {
    std::cerr << "terminated early: " << result.message << "\n";
    return 4;
  }
  if (result.status == RunStatus::NonConvergence) {
    std::cerr << "terminated early: " << result.message << "\n";
    return 3;
  }
  return 0;
}

int validate_command(const std::string& config_path) {
  const SimulationConfig cfg =
      config_path.empty() ? SimulationConfig{} : parse_config_file(config_path);
  cfg.validate();
  std::cout << cfg.echo_text();
  std::cout << "config ok\n";
  return 0;
}

int bench_command(const std::string& which) {
  if (which == "poiseuille") {
    std::vector<PoiseuilleResult> results;
    for (int width : {16, 32, 64}) {
      results.push_back(bench_poiseuille(width));
      std::printf("poiseuille width %2d: relative L2 error %.6e (%d steps)\n", width,
                  results.back().l2_error, results.back().steps);
    }
    std::printf("observed convergence order: %.3f\n", observed_order(results));
    return 0;
  }
  if (which == "diffusion") {
    const DiffusionResult res = bench_diffusion();
    std::printf("step profile vs erfc: Linf %.6e\n", res.erf_linf);
    std::printf("pulse diffusivity: measured %.6e, expected %.6e (%.3f%% off)\n",
                res.measured_diffusivity, res.expected_diffusivity,
                100.0 * std::abs(res.measured_diffusivity / res.expected_diffusivity - 1.0));
    return 0;
  }
  std::cerr << "unknown bench suite '" << which << "' (expected poiseuille or diffusion)\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mfc-lbm: lattice Boltzmann microbial fuel cell anode simulator"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "run a simulation");
  run->add_option("--config", run_opt.config_path, "config file (defaults apply when omitted)");
  run->add_option("--seed", run_opt.seed, "override run.seed");
  run->add_option("--hours", run_opt.hours, "override run.hours");
  run->add_option("--out-dir", run_opt.out_dir, "override run.out_dir");
  run->add_option("--snapshot-every", run_opt.snapshot_every, "override run.snapshot_every");
  run->add_option("--geometry", run_opt.geometry, "geometry mask file (overrides the generator)");
  run->add_option("--resume", run_opt.resume, "resume from a checkpoint file");
  run->add_option("--checkpoint-out", run_opt.checkpoint_out, "write a checkpoint when done");
  run->add_flag("--pgm", run_opt.pgm, "also write greymap images per snapshot field");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "parse and echo a config");
  validate->add_option("--config", validate_config, "config file");

  std::string bench_which;
  auto* bench = app.add_subcommand("bench", "run an analytic validation suite");
  bench->add_option("suite", bench_which, "poiseuille | diffusion")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(run_opt);
    if (validate->parsed()) return validate_command(validate_config);
    if (bench->parsed()) return bench_command(bench_which);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MaskParseError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 2;
  } catch (const NotPercolatingError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergenceError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const CloggedError& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
