#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mfc {

enum class CellKind : std::uint8_t { Fluid, ElectrodeSolid, Biofilm, Wall, Inlet, Outlet };

struct Coord {
  int x = 0;
  int y = 0;
  bool operator==(const Coord&) const = default;
};

/// Discrete 2D domain: cell classification plus the boundary bands
/// (walls top/bottom, inlet column x=0, outlet column x=width-1).
/// Row-major storage, index = y*width + x.
class Lattice {
public:
  /// Channel layout: Wall rows at y=0 and y=height-1, Inlet column at x=0,
  /// Outlet column at x=width-1, Fluid elsewhere. Corners are Wall.
  Lattice(int width, int height, double dx_mm = 1.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double dx_mm() const { return dx_mm_; }
  int size() const { return width_ * height_; }
  int index(int x, int y) const { return y * width_ + x; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

  CellKind kind(int x, int y) const { return kinds_[index(x, y)]; }
  CellKind kind(int i) const { return kinds_[i]; }

  /// Boundary bands (Wall/Inlet/Outlet) are immutable for the whole run.
  void set_kind(int x, int y, CellKind k);

  /// Bumped on every kind change; solvers use it to refresh cached tables.
  std::uint64_t version() const { return version_; }

  /// Obstacles for the flow solver: electrode, biofilm and chassis walls.
  bool is_flow_obstacle(int i) const {
    const CellKind k = kinds_[i];
    return k == CellKind::ElectrodeSolid || k == CellKind::Biofilm || k == CellKind::Wall;
  }
  bool is_flow_obstacle(int x, int y) const { return is_flow_obstacle(index(x, y)); }

  /// Obstacles for the scalar solver: biofilm stays transport-active.
  bool is_ade_solid(int i) const {
    const CellKind k = kinds_[i];
    return k == CellKind::ElectrodeSolid || k == CellKind::Wall;
  }
  bool is_ade_solid(int x, int y) const { return is_ade_solid(index(x, y)); }

  /// Fraction of non-electrode cells in the interior (boundary bands excluded).
  double porosity() const;

  /// True if a fluid path connects the inlet column to the outlet column
  /// (4-connected flood fill through non-obstacle cells).
  bool percolates() const;

  /// Converts fluid cells unreachable from the inlet into electrode solid.
  void fill_enclosed_pores();

  /// Mask round-trip. Alphabet: '.'=Fluid '#'=ElectrodeSolid 'B'=Biofilm
  /// 'W'=Wall 'I'=Inlet 'O'=Outlet.
  static Lattice from_mask(std::string_view text, double dx_mm = 1.0);
  std::string to_mask() const;

private:
  Lattice() = default;
  int width_ = 0;
  int height_ = 0;
  double dx_mm_ = 1.0;
  std::uint64_t version_ = 0;
  std::vector<CellKind> kinds_;
};

/// Porous electrode generator: random 2-6 cell blobs dropped inside the
/// electrode span until the solid fraction meets 1-porosity, re-rolled until
/// the pore space percolates. Pure function of its arguments.
/// electrode_span_x limits blob placement to a centered band of columns
/// (0 selects the whole interior).
Lattice generate_random_electrode(int width, int height, double target_porosity,
                                  std::uint64_t seed, int electrode_span_x = 0,
                                  double dx_mm = 1.0);

/// Fluid cells with at least one 4-neighbour that is electrode or biofilm,
/// row-major order.
std::vector<Coord> interface_cells(const Lattice& lat);

/// Fluid cells with at least one 4-neighbour that is electrode, row-major
/// order. The attachment front: bare electrode surface still open to the flow.
std::vector<Coord> electrode_front_cells(const Lattice& lat);

}  // namespace mfc
