#include "qspeed/dynamics.hpp"

#include <cmath>

namespace qspeed {

SpinAxis axis_from_name(const std::string& name) {
  if (name == "x" || name == "X") return SpinAxis::X;
  if (name == "y" || name == "Y") return SpinAxis::Y;
  if (name == "z" || name == "Z") return SpinAxis::Z;
  throw ValidationError("unknown spin axis '" + name + "' (expected x|y|z)");
}

const char* axis_name(SpinAxis axis) {
  switch (axis) {
    case SpinAxis::X: return "x";
    case SpinAxis::Y: return "y";
    case SpinAxis::Z: return "z";
  }
  throw ValidationError("invalid SpinAxis value");
}

CMatrix pauli(SpinAxis axis) {
  CMatrix m(2, 2);
  switch (axis) {
    case SpinAxis::X:
      m << 0, 1, 1, 0;
      break;
    case SpinAxis::Y:
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case SpinAxis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

CMatrix spin_half(SpinAxis axis) { return 0.5 * pauli(axis); }

CMatrix additive_hamiltonian(const CMatrix& h, int n) {
  require_hermitian(h, default_tolerances().validation,
                    "additive_hamiltonian site term");
  if (h.rows() != 2)
    throw ValidationError("additive_hamiltonian: site term must be 2x2");
  if (n < 1 || n > 10)
    throw ValidationError("additive_hamiltonian: n must lie in [1, 10]");
  const Eigen::Index d = Eigen::Index(1) << n;
  CMatrix total = CMatrix::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    CMatrix term = CMatrix::Identity(1, 1);
    for (int s = 0; s < n; ++s) {
      term = tensor(term, s == k ? h : CMatrix(CMatrix::Identity(2, 2)));
    }
    total += term;
  }
  return total;
}

CMatrix unitary_of(const CMatrix& H, double tau) {
  Spectrum spec = eig_hermitian(H);
  CVector phases(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(cplx(0.0, -tau * spec.eigenvalues(i)));
  }
  return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

DensityMatrix evolve(const DensityMatrix& rho, const CMatrix& U,
                     const Tolerances& tol) {
  require_unitary(U, tol.validation, "evolve U");
  if (U.rows() != rho.dim())
    throw ValidationError("evolve: dimension mismatch");
  CMatrix out = U * rho.matrix() * U.adjoint();
  return DensityMatrix::from_matrix(out, tol);
}

}  // namespace qspeed
