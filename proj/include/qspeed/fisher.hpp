#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qspeed/cmatrix.hpp"
#include "qspeed/states.hpp"

namespace qspeed {

// Standard matrix-monotone (Chentsov-Morozova) function: normalized f(1)=1,
// symmetric f(x) = x f(1/x), monotone on (0, inf). at_zero = lim_{x->0} f(x).
struct CMFunction {
  std::string name;
  std::function<double(double)> eval;
  double at_zero = 0.0;
};

// f(x) = (1+x)/2, f(0) = 1/2 -> symmetric-logarithmic-derivative metric.
const CMFunction& cm_sld();
// f(x) = ((1+sqrt(x))/2)^2, f(0) = 1/4 -> Wigner-Yanase metric.
const CMFunction& cm_wy();

struct CMCheckReport {
  bool normalized = false;   // f(1) == 1
  bool symmetric = false;    // f(x) == x f(1/x) on the grid
  bool monotone = false;     // nondecreasing on the grid
  double max_symmetry_violation = 0.0;
  bool ok() const { return normalized && symmetric && monotone; }
};

// Checks the CM-function properties on a dyadic grid 2^-10 .. 2^10.
CMCheckReport check_cm_function(const CMFunction& f, double tol = 1e-9);

// Quantum Fisher information for the metric induced by f:
//   I_f = (1/4) sum_{i != j} (li - lj)^2 / (lj f(li/lj)) |<i|H|j>|^2
// Degenerate pairs (|li - lj| <= degeneracy tol) drop out. Pairs with
// lj <= zero tol contribute the regular limit li / f(0) per unit |H_ij|^2
// when f(0) > 0, and raise for a non-regular metric (f(0) == 0) when the
// matrix element is nonzero.
double qfi_f(const DensityMatrix& rho, const CMatrix& H, const CMFunction& f,
             const Tolerances& tol = default_tolerances());

// Symmetric-logarithmic-derivative Fisher information,
//   I_F = (1/2) sum_{i,j} (li - lj)^2 / (li + lj) |<i|H|j>|^2,
// skipping pairs with li + lj below the zero tolerance. Coincides with
// qfi_f(rho, H, cm_sld()) and, for pure states, with variance(rho, H).
double sldf(const DensityMatrix& rho, const CMatrix& H,
            const Tolerances& tol = default_tolerances());

// V(rho, H) = <H^2> - <H>^2. Upper bound of the whole I_f family in this
// normalization; saturated by sldf on pure states.
double variance(const DensityMatrix& rho, const CMatrix& H);

}  // namespace qspeed
