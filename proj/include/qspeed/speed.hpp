#pragma once

#include "qspeed/cmatrix.hpp"
#include "qspeed/states.hpp"

namespace qspeed {

struct SpeedResult {
  double squared_speed = 0.0;  // S_tau
  double speed = 0.0;          // s_tau = sqrt(2 S_tau)
  double tau = 0.0;
  double purity = 0.0;         // Tr rho^2
  double overlap = 0.0;        // Tr(rho rho_tau)
  bool clipped = false;        // negative raw value clipped to zero
};

// Squared speed of evolution under exp(-i H tau):
//   S_tau = (Tr rho^2 - Tr(rho rho_tau)) / tau^2.
SpeedResult squared_speed_tau(const DensityMatrix& rho, const CMatrix& H,
                              double tau);

// Instantaneous limit S_0 = -(1/2) Tr([rho, H]^2).
double squared_speed_zero(const DensityMatrix& rho, const CMatrix& H);

// Assembles S_tau from separately measured purity and overlap; negative
// differences (possible with noisy estimates) clip to zero with a flag.
SpeedResult speed_from_measurements(double purity, double overlap, double tau);

struct WitnessVerdict {
  double s_value = 0.0;
  double threshold = 0.0;        // n/4
  bool entangled_useful = false; // strict s_value > threshold
};

// Additive spin-1/2 generators on n >= 2 qubits: squared speed above n/4
// certifies entanglement. Errors on n < 2 or negative s_value.
WitnessVerdict entanglement_witness(double s_value, int n);

struct SandwichBounds {
  double lower = 0.0;   // S_0
  double i_f = 0.0;     // sldf
  double upper = 0.0;   // sqrt((d-1)/(d Tr rho^2 - 1)) * S_0
};

// Two-sided estimate of the SLDF from the instantaneous squared speed,
// valid away from the maximally mixed state. Errors when
// d * purity - 1 <= 1e-12 (bound diverges).
SandwichBounds depolarized_sandwich(const DensityMatrix& rho, const CMatrix& H);

}  // namespace qspeed
