#pragma once

#include <memory>

#include "qspeed/cmatrix.hpp"

namespace qspeed {

// Validated density matrix. Construction checks hermiticity, unit trace and
// positivity, then stores the spectrum (eigenvalues in [-psd_tol, 0) clipped
// to exact zeros). Instances are immutable; copies share the cached spectrum.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const CMatrix& m,
                                   const Tolerances& tol = default_tolerances());

  // Explicit repair: clip all negative eigenvalues to zero and renormalize the
  // trace. Never applied silently; callers opt in for out-of-tolerance data.
  static DensityMatrix repaired(const CMatrix& m);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double purity() const;
  const Spectrum& spectrum() const { return *spec_; }

 private:
  DensityMatrix(CMatrix m, std::shared_ptr<const Spectrum> s)
      : m_(std::move(m)), spec_(std::move(s)) {}
  CMatrix m_;
  std::shared_ptr<const Spectrum> spec_;
};

// Validated unit-norm pure state.
class PureState {
 public:
  static PureState from_vector(const CVector& v,
                               const Tolerances& tol = default_tolerances());
  const CVector& vector() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  DensityMatrix projector() const;

 private:
  explicit PureState(CVector v) : v_(std::move(v)) {}
  CVector v_;
};

// Hilbert-Schmidt overlap Tr(a b); real, in [0, 1] for states.
double hs_overlap(const DensityMatrix& a, const DensityMatrix& b);

// Fidelity of a density matrix against a pure target: <psi|rho|psi>.
double fidelity_pure(const PureState& psi, const DensityMatrix& rho);

// Two-qubit Bell states in the computational basis |00>,|01>,|10>,|11>.
const PureState& bell_phi_plus();
const PureState& bell_phi_minus();
const PureState& bell_psi_plus();
const PureState& bell_psi_minus();

// p |phi+><phi+| + (1-p) |phi-><phi-| ; requires p in [0, 1].
DensityMatrix bell_mixture(double p);

}  // namespace qspeed
