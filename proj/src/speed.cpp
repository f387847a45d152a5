#include "qspeed/speed.hpp"

#include <cmath>

#include "qspeed/dynamics.hpp"
#include "qspeed/fisher.hpp"

namespace qspeed {

SpeedResult squared_speed_tau(const DensityMatrix& rho, const CMatrix& H,
                              double tau) {
  require_hermitian(H, default_tolerances().validation, "squared_speed_tau H");
  if (H.rows() != rho.dim())
    throw ValidationError("squared_speed_tau: dimension mismatch");
  if (tau <= 0.0)
    throw ValidationError("squared_speed_tau: tau must be positive");
  const CMatrix U = unitary_of(H, tau);
  const CMatrix evolved = U * rho.matrix() * U.adjoint();
  const double purity = rho.purity();
  const double overlap = trace_product(rho.matrix(), evolved);
  return speed_from_measurements(purity, overlap, tau);
}

double squared_speed_zero(const DensityMatrix& rho, const CMatrix& H) {
  require_hermitian(H, default_tolerances().validation,
                    "squared_speed_zero H");
  if (H.rows() != rho.dim())
    throw ValidationError("squared_speed_zero: dimension mismatch");
  const CMatrix comm = rho.matrix() * H - H * rho.matrix();
  // -(1/2) Tr([rho, H]^2); the commutator is anti-hermitian, so the trace of
  // its square is real and non-positive.
  return -0.5 * trace_product(comm, comm);
}

SpeedResult speed_from_measurements(double purity, double overlap,
                                    double tau) {
  if (tau <= 0.0)
    throw ValidationError("speed_from_measurements: tau must be positive");
  SpeedResult r;
  r.tau = tau;
  r.purity = purity;
  r.overlap = overlap;
  double s = (purity - overlap) / (tau * tau);
  if (s < 0.0) {
    s = 0.0;
    r.clipped = true;
  }
  r.squared_speed = s;
  r.speed = std::sqrt(2.0 * s);
  return r;
}

WitnessVerdict entanglement_witness(double s_value, int n) {
  if (n < 2)
    throw ValidationError(
        "entanglement_witness: needs at least 2 subsystems");
  if (s_value < 0.0)
    throw ValidationError("entanglement_witness: squared speed must be >= 0");
  WitnessVerdict v;
  v.s_value = s_value;
  v.threshold = n / 4.0;
  v.entangled_useful = s_value > v.threshold;  // strict inequality
  return v;
}

SandwichBounds depolarized_sandwich(const DensityMatrix& rho,
                                    const CMatrix& H) {
  SandwichBounds b;
  b.lower = squared_speed_zero(rho, H);
  b.i_f = sldf(rho, H);
  const double d = rho.dim();
  const double denom = d * rho.purity() - 1.0;
  if (denom <= 1e-12) {
    throw ValidationError(
        "depolarized_sandwich: state too close to maximally mixed (bound "
        "diverges)");
  }
  b.upper = std::sqrt((d - 1.0) / denom) * b.lower;
  return b;
}

}  // namespace qspeed
