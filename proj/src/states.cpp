#include "qspeed/states.hpp"

#include <cmath>

namespace qspeed {

namespace {

std::shared_ptr<const Spectrum> validate_state(const CMatrix& m,
                                               const Tolerances& tol) {
  require_hermitian(m, tol.validation, "density matrix");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.validation) {
    throw ValidationError("density matrix: trace " + std::to_string(tr) +
                          " deviates from 1 beyond tol " +
                          std::to_string(tol.validation));
  }
  auto spec = std::make_shared<Spectrum>(eig_hermitian(m, tol));
  const double min_eig = spec->eigenvalues(spec->eigenvalues.size() - 1);
  if (min_eig < -tol.psd) {
    throw ValidationError("density matrix: negative eigenvalue " +
                          std::to_string(min_eig) + " below -" +
                          std::to_string(tol.psd));
  }
  // Clip the numerically-negative tail so downstream spectral formulas see a
  // genuine state.
  for (Eigen::Index i = 0; i < spec->eigenvalues.size(); ++i) {
    if (spec->eigenvalues(i) < 0.0) spec->eigenvalues(i) = 0.0;
  }
  return spec;
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const CMatrix& m,
                                         const Tolerances& tol) {
  auto spec = validate_state(m, tol);
  return DensityMatrix(0.5 * (m + m.adjoint()), std::move(spec));
}

DensityMatrix DensityMatrix::repaired(const CMatrix& m) {
  require_hermitian(m, 1e-6, "density matrix (repair)");
  Spectrum spec = eig_hermitian(m, reconstructed_data_tolerances());
  RVector clipped = spec.eigenvalues.cwiseMax(0.0);
  const double total = clipped.sum();
  if (total <= 0.0)
    throw ValidationError("density matrix (repair): no positive weight");
  clipped /= total;
  CMatrix rebuilt = spec.eigenvectors * clipped.asDiagonal() *
                    spec.eigenvectors.adjoint();
  return from_matrix(0.5 * (rebuilt + rebuilt.adjoint()));
}

double DensityMatrix::purity() const { return m_.squaredNorm(); }

PureState PureState::from_vector(const CVector& v, const Tolerances& tol) {
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > tol.validation) {
    throw ValidationError("pure state: norm " + std::to_string(norm) +
                          " deviates from 1");
  }
  return PureState(v / norm);
}

DensityMatrix PureState::projector() const {
  return DensityMatrix::from_matrix(v_ * v_.adjoint());
}

double hs_overlap(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw ValidationError("hs_overlap: dimension mismatch");
  return trace_product(a.matrix(), b.matrix());
}

double fidelity_pure(const PureState& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim())
    throw ValidationError("fidelity_pure: dimension mismatch");
  return (psi.vector().adjoint() * rho.matrix() * psi.vector())(0).real();
}

namespace {

PureState make_bell(int a, int b, double sign) {
  CVector v = CVector::Zero(4);
  const double inv = 1.0 / std::sqrt(2.0);
  v(a) = inv;
  v(b) = sign * inv;
  return PureState::from_vector(v);
}

}  // namespace

const PureState& bell_phi_plus() {
  static const PureState s = make_bell(0, 3, 1.0);
  return s;
}

const PureState& bell_phi_minus() {
  static const PureState s = make_bell(0, 3, -1.0);
  return s;
}

const PureState& bell_psi_plus() {
  static const PureState s = make_bell(1, 2, 1.0);
  return s;
}

const PureState& bell_psi_minus() {
  static const PureState s = make_bell(1, 2, -1.0);
  return s;
}

DensityMatrix bell_mixture(double p) {
  if (p < 0.0 || p > 1.0)
    throw ValidationError("bell_mixture: p must lie in [0, 1]");
  const CVector& up = bell_phi_plus().vector();
  const CVector& dn = bell_phi_minus().vector();
  CMatrix m = p * (up * up.adjoint()) + (1.0 - p) * (dn * dn.adjoint());
  return DensityMatrix::from_matrix(m);
}

}  // namespace qspeed
