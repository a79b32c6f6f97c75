#include "mfc/biofilm.hpp"

#include <algorithm>
#include <array>

#include "mfc/errors.hpp"

namespace mfc {

namespace {
constexpr std::array<int, 4> kNx = {1, -1, 0, 0};
constexpr std::array<int, 4> kNy = {0, 0, 1, -1};
}  // namespace

int attach(Lattice& lat, BiofilmState& state, const BiofilmParams& bp, const ElectroParams& ep,
           Rng& rng) {
  if (bp.k_ata <= 0) return 0;
  std::vector<Coord> front = bp.attach_front == AttachFront::Electrode
                                 ? electrode_front_cells(lat)
                                 : interface_cells(lat);
  if (front.empty()) return 0;

  const size_t k = std::min<size_t>(size_t(bp.k_ata), front.size());
  // Partial Fisher-Yates over the row-major front list.
  for (size_t j = 0; j < k; ++j) {
    const size_t pick = j + size_t(rng.bounded(front.size() - j));
    std::swap(front[j], front[pick]);
  }
  for (size_t j = 0; j < k; ++j) {
    const Coord c = front[j];
    lat.set_kind(c.x, c.y, CellKind::Biofilm);
    const int i = lat.index(c.x, c.y);
    state.c_bio[i] = bp.c0;
    state.m_ox[i] = ep.m_total;  // new biomass arrives fully oxidised
  }
  return int(k);
}

void grow(const Lattice& lat, BiofilmState& state, const std::vector<double>& q_a,
          const BiofilmParams& bp, double dt_hours) {
  for (int c = 0; c < lat.size(); ++c) {
    if (lat.kind(c) != CellKind::Biofilm) continue;
    state.c_bio[c] *= 1.0 + bp.growth_yield * q_a[c] * dt_hours / 24.0;
    // Mediator per unit biomass is unchanged: the pool grows with the biomass.
  }
}

namespace {

/// Random walk from `origin` through contiguous biofilm cells until a cell
/// with a fluid neighbour turns up. Loops in the walk are erased so the
/// returned path is simple; `freed` is the fluid cell found at its end.
std::vector<int> walk_to_free_cell(const Lattice& lat, int origin, Rng& rng, int& freed) {
  const int W = lat.width();
  const long max_steps = 10L * 2L * (lat.width() + lat.height());
  std::vector<int> path{origin};
  long steps = 0;
  while (steps <= max_steps) {
    ++steps;
    const int cur = path.back();
    const int x = cur % W;
    const int y = cur / W;
    const int dir = int(rng.bounded(4));
    const int nx = x + kNx[dir];
    const int ny = y + kNy[dir];
    if (!lat.in_bounds(nx, ny)) continue;
    const int next = lat.index(nx, ny);
    const CellKind k = lat.kind(next);
    if (k == CellKind::Fluid) {
      freed = next;
      return path;
    }
    if (k != CellKind::Biofilm) continue;  // solids and bands block the walk
    const auto seen = std::find(path.begin(), path.end(), next);
    if (seen != path.end()) {
      path.erase(seen + 1, path.end());  // loop erasure keeps the path simple
    } else {
      path.push_back(next);
    }
  }
  throw CloggedError("biofilm clogged: random walk found no free cell");
}

}  // namespace

void spread(Lattice& lat, BiofilmState& state, const BiofilmParams& bp, Rng& rng) {
  constexpr int kMaxSweeps = 1024;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool any = false;
    for (int origin = 0; origin < lat.size(); ++origin) {
      if (lat.kind(origin) != CellKind::Biofilm) continue;
      if (state.c_bio[origin] <= bp.c_max) continue;
      any = true;

      int freed = -1;
      std::vector<int> path = walk_to_free_cell(lat, origin, rng, freed);

      // Shift biomass (and its mediator) one step back along the path so the
      // freed cell fills from the path's end and the origin's neighbour
      // opens up, then move the spread fraction into that opening.
      const int fx = freed % lat.width();
      const int fy = freed / lat.width();
      lat.set_kind(fx, fy, CellKind::Biofilm);
      for (size_t j = path.size(); j-- > 1;) {
        const int dst = (j == path.size() - 1) ? freed : path[j + 1];
        state.c_bio[dst] = state.c_bio[path[j]];
        state.m_ox[dst] = state.m_ox[path[j]];
      }
      const int opening = path.size() > 1 ? path[1] : freed;
      const double moved = bp.spread_fraction * state.c_bio[origin];
      state.c_bio[opening] = moved;
      state.m_ox[opening] = state.m_ox[origin];
      state.c_bio[origin] -= moved;
    }
    if (!any) return;
  }
  throw CloggedError("biofilm spreading failed to settle below the threshold");
}

}  // namespace mfc
