#pragma once

#include <map>
#include <string>

#include "qspeed/cmatrix.hpp"
#include "qspeed/states.hpp"
#include "qspeed/swapnet.hpp"

namespace qspeed {
namespace fixtures {

// Reconstructed experimental data: four two-qubit state matrices (one phi+
// and one phi- per photon-pair source) and two four-outcome Bell-measurement
// effect sets. Values carry ~1e-4 rounding, so states validate against the
// relaxed reconstruction tolerances and the effect sets allow a 2e-2
// completeness deviation (actual deviation is ~1.4e-4).

DensityMatrix copy1_phi_plus();
DensityMatrix copy1_phi_minus();
DensityMatrix copy2_phi_plus();
DensityMatrix copy2_phi_minus();

// p * phi+ + (1-p) * phi- built from one copy's reconstructed pair.
DensityMatrix copy_mixture(int copy, double p);

EffectSet bsm1_effects();
EffectSet bsm2_effects();

// Individual reconstructed projector, bsm in {1, 2}.
CMatrix bsm_projector(int bsm, BellOutcome outcome);

// Raw fixture matrices keyed by canonical file stem (copy1_phi_plus,
// bsm2_psi_minus, ...), exactly as shipped in fixtures/*.json.
const std::map<std::string, CMatrix>& all_raw();

}  // namespace fixtures
}  // namespace qspeed
