#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mfc/ade.hpp"
#include "mfc/config.hpp"
#include "mfc/errors.hpp"
#include "mfc/flow.hpp"
#include "mfc/io.hpp"
#include "mfc/sim.hpp"

using namespace mfc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("mfc_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return read_text_file(p.string()); }

// Small, quick configuration: open channel with a few obstacles, short runs.
// Attachment is kept light so the little domain cannot seal mid-test.
SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.width = 26;
  cfg.height = 20;
  cfg.porosity = 0.93;
  cfg.electrode_span_x = 8;
  cfg.geometry_seed = 3;
  cfg.k_ata = 6;
  cfg.hours = 4;
  cfg.flow_tolerance = 1e-9;
  cfg.ade_tolerance = 1e-9;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("empty text yields the documented defaults") {
    const SimulationConfig cfg = parse_config_text("");
    CHECK(cfg.r_ext == 360.0);
    CHECK(cfg.r_int == 360.0);
    CHECK(cfg.q_max == 8.48);
    CHECK(cfg.c_in == 410.0);
    CHECK(cfg.porosity == 0.874);
    CHECK(cfg.width == 60);
    CHECK(cfg.height == 65);
    CHECK(cfg.k_ata == 200);
    CHECK(cfg.c0_bio == 450.0);
    CHECK(cfg.c_max_bio == 512.5);
    CHECK(cfg.spread_fraction == 0.4);
    CHECK(cfg.flow_tau == 0.6706);
    CHECK(cfg.ade_tau == 0.5036);
    CHECK(cfg.mediator_yield == 0.5687);
    CHECK(cfg.hours == 72);
  }
  SUBCASE("comments, blanks and overrides") {
    const SimulationConfig cfg = parse_config_text(
        "# comment\n"
        "\n"
        "electro.r_ext_ohm = 720   # load\n"
        "run.hours = 7\n");
    CHECK(cfg.r_ext == 720.0);
    CHECK(cfg.hours == 7);
    CHECK(cfg.r_int == 360.0);
  }
  SUBCASE("out-of-range porosity names the key") {
    try {
      parse_config_text("lattice.porosity = 1.5\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("lattice.porosity") != std::string::npos);
    }
  }
  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config_text("electro.r_extt_ohm = 360\n"), ConfigError);
  }
  SUBCASE("type mismatches are rejected with the key path") {
    try {
      parse_config_text("flow.tau = fast\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("flow.tau") != std::string::npos);
    }
  }
  SUBCASE("values round-trip through the echo") {
    const SimulationConfig cfg = parse_config_text("electro.r_ext_ohm = 360\n");
    const auto kv = cfg.echo();
    CHECK(kv.at("electro.r_ext_ohm") == "360");
    const SimulationConfig again = parse_config_text(cfg.echo_text());
    CHECK(again.echo() == cfg.echo());
  }
  SUBCASE("missing file reports the path") {
    CHECK_THROWS_AS(parse_config_file("/nonexistent/mfc.cfg"), ConfigError);
  }
}

TEST_CASE("time series CSV") {
  const fs::path dir = temp_dir("ts");
  std::vector<ElectricalRecord> records;
  for (int h = 0; h < 72; ++h) {
    ElectricalRecord r;
    r.hour = h;
    r.i_cell_a = 0.91e-3;
    r.v_cell_v = 0.3276;
    r.m_ox_frac = 0.25;
    r.m_red_frac = 0.75;
    records.push_back(r);
  }
  const std::string path = (dir / "outputs.csv").string();
  write_timeseries(records, path);
  const std::string text = slurp(path);

  SUBCASE("72 records make 73 lines with a header") {
    int lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 73);
    CHECK(text.rfind("hour,I_mA,V_mV,", 0) == 0);
    CHECK(text.find("\r") == std::string::npos);
  }
  SUBCASE("current is rendered in mA") { CHECK(text.find(",0.91,") != std::string::npos); }
  SUBCASE("rewrite is byte-identical") {
    const std::string again = (dir / "outputs2.csv").string();
    write_timeseries(records, again);
    CHECK(slurp(again) == text);
  }
}

TEST_CASE("snapshot writers") {
  const fs::path dir = temp_dir("snap");
  Lattice lat = generate_random_electrode(20, 12, 0.85, 2);
  std::vector<double> field(lat.size());
  for (int i = 0; i < lat.size(); ++i) field[i] = 0.5 * i;

  SUBCASE("matrix csv shape") {
    const std::string path = (dir / "ux_h0.csv").string();
    write_matrix_csv(field, lat.width(), lat.height(), path);
    const std::string text = slurp(path);
    int lines = 0, commas = 0;
    for (char c : text) {
      lines += c == '\n';
      commas += c == ',';
    }
    CHECK(lines == lat.height());
    CHECK(commas == (lat.width() - 1) * lat.height());
  }
  SUBCASE("mask export round-trips through the loader") {
    const std::string path = (dir / "geom_h0.txt").string();
    write_mask(lat, path);
    const Lattice back = Lattice::from_mask(slurp(path));
    CHECK(back.to_mask() == lat.to_mask());
  }
  SUBCASE("pgm is normalized to the recorded extrema") {
    const std::string path = (dir / "ux_h0.pgm").string();
    const auto [lo, hi] = write_pgm(field, lat.width(), lat.height(), path);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(0.5 * (lat.size() - 1)));
    const std::string text = slurp(path);
    CHECK(text.rfind("P2\n", 0) == 0);
  }
  SUBCASE("uniform field writes a constant matrix") {
    std::fill(field.begin(), field.end(), 3.25);
    const std::string path = (dir / "c.csv").string();
    write_matrix_csv(field, lat.width(), lat.height(), path);
    const std::string text = slurp(path);
    CHECK(text.find("3.25") != std::string::npos);
    CHECK(text.find("3.26") == std::string::npos);
  }
}

TEST_CASE("manifest lists what was written") {
  const fs::path dir = temp_dir("manifest");
  RunManifest m;
  m.version = "test";
  m.status = "completed";
  m.hours_completed = 3;
  m.config_echo = {{"run.hours", "3"}};
  m.artifacts = {"outputs.csv", "geom_h2.txt"};
  const std::string path = (dir / "run_manifest.json").string();
  write_manifest(m, path);
  const std::string text = slurp(path);
  CHECK(text.find("outputs.csv") != std::string::npos);
  CHECK(text.find("geom_h2.txt") != std::string::npos);
  CHECK(text.find("completed") != std::string::npos);
}

TEST_CASE("hour zero reproduces the standalone no-biofilm fields") {
  SimulationConfig cfg = small_config();
  cfg.hours = 1;
  cfg.k_ata = 0;  // keep the lattice biofilm-free so the direct solve matches
  Simulation sim(cfg);
  sim.step_hour();

  Lattice lat = Lattice::from_mask(sim.lattice().to_mask());
  FlowSolver flow(lat, cfg.flow_params());
  flow.run_to_steady();
  CHECK(flow.ux() == sim.ux());
  CHECK(flow.uy() == sim.uy());

  AdeSolver ade(lat, cfg.ade_params());
  const double scale = cfg.ade_velocity_scale();
  std::vector<double> ux(flow.ux()), uy(flow.uy());
  for (double& v : ux) v *= scale;
  for (double& v : uy) v *= scale;
  ade.set_velocity(ux, uy);
  ade.run_to_steady();
  CHECK(ade.concentration() == sim.concentration());
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const SimulationConfig cfg = small_config();
  Simulation a(cfg);
  Simulation b(cfg);
  const auto ra = a.run();
  const auto rb = b.run();
  REQUIRE(ra.records.size() == rb.records.size());
  for (size_t i = 0; i < ra.records.size(); ++i) {
    CHECK(ra.records[i].i_cell_a == rb.records[i].i_cell_a);
    CHECK(ra.records[i].v_cell_v == rb.records[i].v_cell_v);
    CHECK(ra.records[i].m_ox_frac == rb.records[i].m_ox_frac);
  }
  CHECK(a.lattice().to_mask() == b.lattice().to_mask());

  SimulationConfig other = cfg;
  other.seed = cfg.seed + 1;
  Simulation c(other);
  c.run();
  CHECK(a.lattice().to_mask() != c.lattice().to_mask());
}

TEST_CASE("exactly one record per completed hour") {
  SimulationConfig cfg = small_config();
  cfg.hours = 1;
  Simulation sim(cfg);
  const auto res = sim.run();
  CHECK(res.status == RunStatus::Completed);
  CHECK(res.records.size() == 1);
  CHECK(res.records[0].hour == 0);
  CHECK(res.hour_stats.size() == 1);
}

TEST_CASE("mediator fractions close for every record") {
  SimulationConfig cfg = small_config();
  cfg.hours = 5;
  Simulation sim(cfg);
  const auto res = sim.run();
  for (const auto& r : res.records) {
    CHECK(std::abs(r.m_red_frac + r.m_ox_frac - 1.0) <= 1e-12);
    CHECK(r.i_cell_a >= 0.0);
    CHECK(r.v_cell_v >= 0.0);
  }
}

TEST_CASE("zero attachment yields zero current at every hour") {
  SimulationConfig cfg = small_config();
  cfg.k_ata = 0;
  cfg.hours = 3;
  Simulation sim(cfg);
  const auto res = sim.run();
  CHECK(res.status == RunStatus::Completed);
  for (const auto& r : res.records) {
    CHECK(r.i_cell_a == 0.0);
    CHECK(r.total_biomass_mg == 0.0);
  }
}

TEST_CASE("zero inlet substrate yields zero current") {
  SimulationConfig cfg = small_config();
  cfg.c_in = 0.0;
  cfg.hours = 3;
  Simulation sim(cfg);
  const auto res = sim.run();
  CHECK(res.status == RunStatus::Completed);
  for (const auto& r : res.records) CHECK(r.i_cell_a == 0.0);
}

TEST_CASE("checkpoint resume continues bit-identically") {
  SimulationConfig cfg = small_config();
  cfg.hours = 6;

  Simulation straight(cfg);
  const auto full = straight.run();
  REQUIRE(full.status == RunStatus::Completed);

  const fs::path dir = temp_dir("ckpt");
  const std::string ckpt = (dir / "state.ckpt").string();
  SimulationConfig half = cfg;
  half.hours = 3;
  Simulation first(half);
  first.run();
  first.save_checkpoint(ckpt);

  Simulation resumed = Simulation::load_checkpoint(ckpt, cfg);
  CHECK(resumed.hour() == 3);
  const auto rest = resumed.run();
  REQUIRE(rest.records.size() == full.records.size());
  for (size_t i = 0; i < full.records.size(); ++i) {
    CHECK(rest.records[i].i_cell_a == full.records[i].i_cell_a);
    CHECK(rest.records[i].v_cell_v == full.records[i].v_cell_v);
    CHECK(rest.records[i].m_ox_frac == full.records[i].m_ox_frac);
    CHECK(rest.records[i].mean_cs_mg_l == full.records[i].mean_cs_mg_l);
  }
  CHECK(resumed.lattice().to_mask() == straight.lattice().to_mask());
  CHECK(resumed.concentration() == straight.concentration());
  CHECK(resumed.ux() == straight.ux());
}

TEST_CASE("checkpoint rejects a different physics configuration") {
  SimulationConfig cfg = small_config();
  cfg.hours = 2;
  Simulation sim(cfg);
  sim.run();
  const fs::path dir = temp_dir("ckpt_mismatch");
  const std::string ckpt = (dir / "state.ckpt").string();
  sim.save_checkpoint(ckpt);

  SimulationConfig other = cfg;
  other.r_ext = 999.0;
  CHECK_THROWS_AS(Simulation::load_checkpoint(ckpt, other), ConfigError);

  SimulationConfig more_hours = cfg;
  more_hours.hours = 10;  // run-scope keys may differ
  CHECK_NOTHROW(Simulation::load_checkpoint(ckpt, more_hours));
}

TEST_CASE("a sealed domain terminates gracefully as clogged") {
  // Aggressive growth in a small domain packs the pore space within hours.
  SimulationConfig cfg = small_config();
  cfg.width = 12;
  cfg.height = 8;
  cfg.porosity = 0.8;
  cfg.electrode_span_x = 0;
  cfg.k_ata = 500;
  cfg.growth_yield = 3.0;
  cfg.attach_front = "electrode_or_biofilm";
  cfg.hours = 48;
  Simulation sim(cfg);
  const auto res = sim.run();
  CHECK(res.status == RunStatus::Clogged);
  CHECK(!res.records.empty());
  CHECK(res.records.size() < 48);
  CHECK(!res.message.empty());
}
