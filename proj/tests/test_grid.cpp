#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mfc/errors.hpp"
#include "mfc/grid.hpp"

using namespace mfc;

namespace {

// Independent front oracle: plain neighbour scan, no shared code path with
// interface_cells beyond the lattice accessors.
int brute_force_front_count(const Lattice& lat) {
  int count = 0;
  for (int y = 0; y < lat.height(); ++y)
    for (int x = 0; x < lat.width(); ++x) {
      if (lat.kind(x, y) != CellKind::Fluid) continue;
      bool hit = false;
      const int dx[4] = {1, -1, 0, 0};
      const int dy[4] = {0, 0, 1, -1};
      for (int n = 0; n < 4; ++n) {
        const int nx = x + dx[n], ny = y + dy[n];
        if (!lat.in_bounds(nx, ny)) continue;
        const CellKind k = lat.kind(nx, ny);
        if (k == CellKind::ElectrodeSolid || k == CellKind::Biofilm) hit = true;
      }
      if (hit) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("generated electrode meets the target porosity") {
  const Lattice lat = generate_random_electrode(60, 65, 0.874, 1, 48);
  CHECK(lat.porosity() >= 0.854);
  CHECK(lat.porosity() <= 0.894);
  CHECK(lat.percolates());
}

TEST_CASE("porosity 1 yields no electrode cells") {
  const Lattice lat = generate_random_electrode(60, 65, 1.0, 1, 48);
  int solids = 0;
  for (int i = 0; i < lat.size(); ++i)
    if (lat.kind(i) == CellKind::ElectrodeSolid) ++solids;
  CHECK(solids == 0);
  CHECK(lat.porosity() == 1.0);
}

TEST_CASE("generation is deterministic for a fixed seed") {
  const Lattice a = generate_random_electrode(60, 65, 0.874, 1, 48);
  const Lattice b = generate_random_electrode(60, 65, 0.874, 1, 48);
  CHECK(a.to_mask() == b.to_mask());
  const Lattice c = generate_random_electrode(60, 65, 0.874, 2, 48);
  CHECK(a.to_mask() != c.to_mask());
}

TEST_CASE("non-percolating porosity is rejected") {
  CHECK_THROWS_AS(generate_random_electrode(20, 20, 0.02, 1), NotPercolatingError);
}

TEST_CASE("boundary bands are laid out as a channel") {
  const Lattice lat(10, 8);
  for (int x = 0; x < 10; ++x) {
    CHECK(lat.kind(x, 0) == CellKind::Wall);
    CHECK(lat.kind(x, 7) == CellKind::Wall);
  }
  for (int y = 1; y < 7; ++y) {
    CHECK(lat.kind(0, y) == CellKind::Inlet);
    CHECK(lat.kind(9, y) == CellKind::Outlet);
  }
  CHECK(lat.kind(4, 3) == CellKind::Fluid);
  CHECK(lat.percolates());
}

TEST_CASE("boundary bands are immutable") {
  Lattice lat(10, 8);
  CHECK_THROWS_AS(lat.set_kind(0, 3, CellKind::Fluid), std::logic_error);
  CHECK_THROWS_AS(lat.set_kind(4, 0, CellKind::Fluid), std::logic_error);
  CHECK_THROWS_AS(lat.set_kind(9, 3, CellKind::Biofilm), std::logic_error);
  CHECK_NOTHROW(lat.set_kind(4, 3, CellKind::Biofilm));
}

TEST_CASE("mask loading") {
  SUBCASE("all-fluid mask") {
    std::string mask;
    for (int i = 0; i < 10; ++i) mask += "..........\n";
    const Lattice lat = Lattice::from_mask(mask);
    CHECK(lat.width() == 10);
    CHECK(lat.height() == 10);
    for (int i = 0; i < lat.size(); ++i) CHECK(lat.kind(i) == CellKind::Fluid);
  }
  SUBCASE("single solid cell") {
    std::string mask;
    for (int y = 0; y < 10; ++y) {
      for (int x = 0; x < 10; ++x) mask += (x == 5 && y == 5) ? '#' : '.';
      mask += '\n';
    }
    const Lattice lat = Lattice::from_mask(mask);
    CHECK(lat.kind(5, 5) == CellKind::ElectrodeSolid);
    CHECK(lat.kind(4, 5) == CellKind::Fluid);
  }
  SUBCASE("unknown character reports its position") {
    try {
      Lattice::from_mask("....\n..Z.\n....\n....\n");
      FAIL("expected MaskParseError");
    } catch (const MaskParseError& e) {
      CHECK(e.row == 2);
      CHECK(e.col == 3);
    }
  }
  SUBCASE("ragged rows are rejected") {
    CHECK_THROWS_AS(Lattice::from_mask("....\n...\n....\n....\n"), MaskParseError);
  }
}

TEST_CASE("mask round-trips exactly") {
  const Lattice lat = generate_random_electrode(30, 25, 0.8, 7);
  const Lattice back = Lattice::from_mask(lat.to_mask());
  CHECK(back.to_mask() == lat.to_mask());
  CHECK(back.width() == lat.width());
  for (int i = 0; i < lat.size(); ++i) CHECK(back.kind(i) == lat.kind(i));
}

TEST_CASE("interface cells") {
  SUBCASE("single solid is surrounded by four front cells") {
    Lattice lat(12, 12);
    lat.set_kind(5, 5, CellKind::ElectrodeSolid);
    const auto front = interface_cells(lat);
    REQUIRE(front.size() == 4);
    std::set<std::pair<int, int>> got;
    for (const auto& c : front) got.insert({c.x, c.y});
    const std::set<std::pair<int, int>> want{{4, 5}, {6, 5}, {5, 4}, {5, 6}};
    CHECK(got == want);
  }
  SUBCASE("all-fluid lattice has an empty front") {
    const Lattice lat(12, 12);
    CHECK(interface_cells(lat).empty());
  }
  SUBCASE("count matches the brute-force neighbour scan on generated geometry") {
    Lattice lat = generate_random_electrode(60, 65, 0.874, 1, 48);
    CHECK(!interface_cells(lat).empty());
    CHECK(int(interface_cells(lat).size()) == brute_force_front_count(lat));
    // also with some biofilm present
    const auto front = interface_cells(lat);
    for (size_t i = 0; i < front.size(); i += 3)
      lat.set_kind(front[i].x, front[i].y, CellKind::Biofilm);
    CHECK(int(interface_cells(lat).size()) == brute_force_front_count(lat));
  }
  SUBCASE("front cells come in row-major order") {
    Lattice lat(12, 12);
    lat.set_kind(3, 3, CellKind::ElectrodeSolid);
    lat.set_kind(8, 8, CellKind::ElectrodeSolid);
    const auto front = interface_cells(lat);
    for (size_t i = 1; i < front.size(); ++i) {
      const bool ordered = front[i].y > front[i - 1].y ||
                           (front[i].y == front[i - 1].y && front[i].x > front[i - 1].x);
      CHECK(ordered);
    }
  }
}

TEST_CASE("electrode front excludes biofilm-only neighbourhoods") {
  Lattice lat(12, 12);
  lat.set_kind(5, 5, CellKind::ElectrodeSolid);
  lat.set_kind(5, 6, CellKind::Biofilm);
  const auto elec = electrode_front_cells(lat);
  CHECK(elec.size() == 3);  // the cell at (5,6) is occupied by biofilm
  const auto both = interface_cells(lat);
  CHECK(both.size() == 6);  // bare electrode faces plus the biofilm cell's own fluid neighbours
}

TEST_CASE("porosity") {
  SUBCASE("all-fluid interior") {
    const Lattice lat(10, 10);
    CHECK(lat.porosity() == 1.0);
  }
  SUBCASE("half solids") {
    Lattice lat(10, 10);
    int flipped = 0;
    for (int y = 1; y < 9 && flipped < 32; ++y)
      for (int x = 1; x < 9 && flipped < 32; ++x) {
        lat.set_kind(x, y, CellKind::ElectrodeSolid);
        ++flipped;
      }
    CHECK(lat.porosity() == doctest::Approx(0.5));
  }
}

TEST_CASE("percolation detects a sealed domain") {
  Lattice lat(10, 8);
  for (int y = 1; y < 7; ++y) lat.set_kind(4, y, CellKind::ElectrodeSolid);
  CHECK(!lat.percolates());
}
