#include "mfc/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "mfc/errors.hpp"
#include "mfc/rng.hpp"

namespace mfc {

namespace {

constexpr std::array<int, 4> kNx = {1, -1, 0, 0};
constexpr std::array<int, 4> kNy = {0, 0, 1, -1};

char kind_to_char(CellKind k) {
  switch (k) {
    case CellKind::Fluid: return '.';
    case CellKind::ElectrodeSolid: return '#';
    case CellKind::Biofilm: return 'B';
    case CellKind::Wall: return 'W';
    case CellKind::Inlet: return 'I';
    case CellKind::Outlet: return 'O';
  }
  return '?';
}

bool char_to_kind(char c, CellKind& out) {
  switch (c) {
    case '.': out = CellKind::Fluid; return true;
    case '#': out = CellKind::ElectrodeSolid; return true;
    case 'B': out = CellKind::Biofilm; return true;
    case 'W': out = CellKind::Wall; return true;
    case 'I': out = CellKind::Inlet; return true;
    case 'O': out = CellKind::Outlet; return true;
    default: return false;
  }
}

}  // namespace

Lattice::Lattice(int width, int height, double dx_mm)
    : width_(width), height_(height), dx_mm_(dx_mm), kinds_(size_t(width) * height, CellKind::Fluid) {
  if (width < 4 || height < 4) throw ConfigError("lattice dimensions must be at least 4x4");
  if (dx_mm <= 0.0) throw ConfigError("lattice spacing must be positive");
  for (int x = 0; x < width_; ++x) {
    kinds_[index(x, 0)] = CellKind::Wall;
    kinds_[index(x, height_ - 1)] = CellKind::Wall;
  }
  for (int y = 1; y < height_ - 1; ++y) {
    kinds_[index(0, y)] = CellKind::Inlet;
    kinds_[index(width_ - 1, y)] = CellKind::Outlet;
  }
}

void Lattice::set_kind(int x, int y, CellKind k) {
  CellKind& cur = kinds_[index(x, y)];
  if (cur == CellKind::Wall || cur == CellKind::Inlet || cur == CellKind::Outlet)
    throw std::logic_error("boundary band cells are immutable");
  cur = k;
  ++version_;
}

double Lattice::porosity() const {
  long interior = 0;
  long open = 0;
  for (int y = 1; y < height_ - 1; ++y) {
    for (int x = 1; x < width_ - 1; ++x) {
      const CellKind k = kind(x, y);
      if (k == CellKind::Wall || k == CellKind::Inlet || k == CellKind::Outlet) continue;
      ++interior;
      if (k != CellKind::ElectrodeSolid) ++open;
    }
  }
  if (interior == 0) return 1.0;
  return double(open) / double(interior);
}

void Lattice::fill_enclosed_pores() {
  std::vector<char> seen(kinds_.size(), 0);
  std::queue<int> frontier;
  for (int i = 0; i < size(); ++i) {
    if (kinds_[i] == CellKind::Inlet) {
      seen[i] = 1;
      frontier.push(i);
    }
  }
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    const int x = i % width_;
    const int y = i / width_;
    for (int n = 0; n < 4; ++n) {
      const int nx = x + kNx[n];
      const int ny = y + kNy[n];
      if (!in_bounds(nx, ny)) continue;
      const int j = index(nx, ny);
      if (seen[j] || is_flow_obstacle(j)) continue;
      seen[j] = 1;
      frontier.push(j);
    }
  }
  for (int i = 0; i < size(); ++i)
    if (kinds_[i] == CellKind::Fluid && !seen[i]) {
      kinds_[i] = CellKind::ElectrodeSolid;
      ++version_;
    }
}

bool Lattice::percolates() const {
  std::vector<char> seen(kinds_.size(), 0);
  std::queue<int> frontier;
  for (int i = 0; i < size(); ++i) {
    if (kinds_[i] == CellKind::Inlet) {
      seen[i] = 1;
      frontier.push(i);
    }
  }
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    if (kinds_[i] == CellKind::Outlet) return true;
    const int x = i % width_;
    const int y = i / width_;
    for (int n = 0; n < 4; ++n) {
      const int nx = x + kNx[n];
      const int ny = y + kNy[n];
      if (!in_bounds(nx, ny)) continue;
      const int j = index(nx, ny);
      if (seen[j] || is_flow_obstacle(j)) continue;
      seen[j] = 1;
      frontier.push(j);
    }
  }
  return false;
}

Lattice Lattice::from_mask(std::string_view text, double dx_mm) {
  std::vector<std::string> rows;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      rows.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) rows.push_back(cur);
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw MaskParseError("empty geometry mask", 1, 1);

  const int h = int(rows.size());
  const int w = int(rows[0].size());
  for (int y = 0; y < h; ++y) {
    if (int(rows[y].size()) != w)
      throw MaskParseError("ragged mask row, expected width " + std::to_string(w), y + 1,
                           int(rows[y].size()) + 1);
  }

  Lattice lat;
  lat.width_ = w;
  lat.height_ = h;
  lat.dx_mm_ = dx_mm;
  lat.kinds_.assign(size_t(w) * h, CellKind::Fluid);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      CellKind k;
      if (!char_to_kind(rows[y][x], k))
        throw MaskParseError(std::string("unknown mask character '") + rows[y][x] + "'", y + 1, x + 1);
      lat.kinds_[lat.index(x, y)] = k;
    }
  }
  return lat;
}

std::string Lattice::to_mask() const {
  std::string out;
  out.reserve(size_t(width_ + 1) * height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.push_back(kind_to_char(kind(x, y)));
    out.push_back('\n');
  }
  return out;
}

Lattice generate_random_electrode(int width, int height, double target_porosity,
                                  std::uint64_t seed, int electrode_span_x, double dx_mm) {
  if (target_porosity <= 0.0 || target_porosity > 1.0)
    throw ConfigError("target porosity must lie in (0, 1]");
  if (width < 4 || height < 4) throw ConfigError("lattice dimensions must be at least 4x4");

  const int interior_w = width - 2;
  const int interior_h = height - 2;
  int span = electrode_span_x > 0 ? std::min(electrode_span_x, interior_w) : interior_w;
  const int x_lo = 1 + (interior_w - span) / 2;
  const int x_hi = x_lo + span - 1;

  const long interior_cells = long(interior_w) * interior_h;
  const long target_solids = std::lround((1.0 - target_porosity) * double(interior_cells));

  Rng rng(seed);
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Lattice lat(width, height, dx_mm);
    long solids = 0;
    long stalls = 0;
    // Drop seed-grown blobs of 2-6 cells until the solid budget is met.
    while (solids < target_solids && stalls < 100000) {
      const int sx = x_lo + int(rng.bounded(std::uint64_t(x_hi - x_lo + 1)));
      const int sy = 1 + int(rng.bounded(std::uint64_t(interior_h)));
      if (lat.kind(sx, sy) != CellKind::Fluid) {
        ++stalls;
        continue;
      }
      const int blob_target = 2 + int(rng.bounded(5));
      std::vector<Coord> blob{{sx, sy}};
      lat.set_kind(sx, sy, CellKind::ElectrodeSolid);
      ++solids;
      int tries = 0;
      while (int(blob.size()) < blob_target && solids < target_solids && tries < 16) {
        const Coord base = blob[rng.bounded(blob.size())];
        const int dir = int(rng.bounded(4));
        const int nx = base.x + kNx[dir];
        const int ny = base.y + kNy[dir];
        ++tries;
        if (nx < x_lo || nx > x_hi || ny < 1 || ny > interior_h) continue;
        if (lat.kind(nx, ny) != CellKind::Fluid) continue;
        lat.set_kind(nx, ny, CellKind::ElectrodeSolid);
        blob.push_back({nx, ny});
        ++solids;
      }
    }
    if (solids < target_solids) continue;
    // Fluid pockets with no path to the inlet are dead volume; fold them
    // into the electrode so the biofilm never walks into a sealed region.
    lat.fill_enclosed_pores();
    if (std::abs(lat.porosity() - target_porosity) > 0.02) continue;
    if (lat.percolates()) return lat;
  }
  throw NotPercolatingError("domain not percolating: no inlet-outlet fluid path at porosity " +
                            std::to_string(target_porosity));
}

namespace {

template <typename Pred>
std::vector<Coord> front_cells(const Lattice& lat, Pred neighbour_counts) {
  std::vector<Coord> out;
  for (int y = 0; y < lat.height(); ++y) {
    for (int x = 0; x < lat.width(); ++x) {
      if (lat.kind(x, y) != CellKind::Fluid) continue;
      bool on_front = false;
      for (int n = 0; n < 4 && !on_front; ++n) {
        const int nx = x + kNx[n];
        const int ny = y + kNy[n];
        if (!lat.in_bounds(nx, ny)) continue;
        on_front = neighbour_counts(lat.kind(nx, ny));
      }
      if (on_front) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace

std::vector<Coord> interface_cells(const Lattice& lat) {
  return front_cells(lat, [](CellKind k) {
    return k == CellKind::ElectrodeSolid || k == CellKind::Biofilm;
  });
}

std::vector<Coord> electrode_front_cells(const Lattice& lat) {
  return front_cells(lat, [](CellKind k) { return k == CellKind::ElectrodeSolid; });
}

}  // namespace mfc
