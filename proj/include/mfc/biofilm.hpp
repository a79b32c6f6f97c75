#pragma once

#include <vector>

#include "mfc/electro.hpp"
#include "mfc/grid.hpp"
#include "mfc/rng.hpp"

namespace mfc {

enum class AttachFront {
  Electrode,           // fluid cells touching bare electrode (default)
  ElectrodeOrBiofilm,  // fluid cells touching electrode or biofilm
};

struct BiofilmParams {
  int k_ata = 200;             // attachment sites colonised per hour
  double c0 = 450.0;           // initial biomass concentration, mg/L
  double c_max = 512.5;        // spreading threshold, mg/L
  double spread_fraction = 0.4;
  double growth_yield = 0.03;  // mg biomass per mg substrate (calibration knob)
  AttachFront attach_front = AttachFront::Electrode;
};

/// Per-cell biomass concentration (mg/L) and oxidised mediator per unit
/// biomass (mg/mg). Cells carry biomass exactly where the lattice kind is
/// Biofilm; M_red is implicit as m_total - m_ox, so the mediator closure
/// holds by construction.
struct BiofilmState {
  explicit BiofilmState(int cells) : c_bio(cells, 0.0), m_ox(cells, 0.0) {}
  std::vector<double> c_bio;
  std::vector<double> m_ox;

  double total_biomass(double cell_volume_l) const {
    double sum = 0.0;
    for (double v : c_bio) sum += v;
    return sum * cell_volume_l;
  }
};

/// Colonises up to k_ata distinct free front cells, chosen uniformly at
/// random; each new cell starts at c0 with a fully oxidised mediator pool.
/// Returns the number of cells attached.
int attach(Lattice& lat, BiofilmState& state, const BiofilmParams& bp, const ElectroParams& ep,
           Rng& rng);

/// Biomass growth from the consumption rate field (per day); the mediator
/// pool grows in proportion, so the per-biomass mediator state is unchanged.
void grow(const Lattice& lat, BiofilmState& state, const std::vector<double>& q_a,
          const BiofilmParams& bp, double dt_hours);

/// Threshold-triggered spreading. Cells above c_max shed spread_fraction of
/// their biomass into a free neighbour, using a loop-erased random walk
/// through the biofilm to make room when boxed in. Biomass and mediator mass
/// are conserved exactly. Throws CloggedError when no free cell is reachable
/// within the walk budget.
void spread(Lattice& lat, BiofilmState& state, const BiofilmParams& bp, Rng& rng);

}  // namespace mfc
