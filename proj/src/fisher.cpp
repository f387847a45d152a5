#include "qspeed/fisher.hpp"

#include <cmath>

namespace qspeed {

const CMFunction& cm_sld() {
  static const CMFunction f{"sld", [](double x) { return 0.5 * (1.0 + x); },
                            0.5};
  return f;
}

const CMFunction& cm_wy() {
  static const CMFunction f{
      "wy",
      [](double x) {
        const double s = 0.5 * (1.0 + std::sqrt(x));
        return s * s;
      },
      0.25};
  return f;
}

CMCheckReport check_cm_function(const CMFunction& f, double tol) {
  CMCheckReport report;
  report.normalized = std::abs(f.eval(1.0) - 1.0) <= tol;
  report.symmetric = true;
  report.monotone = true;
  double prev = -1.0;
  for (int k = -10; k <= 10; ++k) {
    const double x = std::ldexp(1.0, k);
    const double fx = f.eval(x);
    const double sym = std::abs(fx - x * f.eval(1.0 / x));
    report.max_symmetry_violation =
        std::max(report.max_symmetry_violation, sym);
    if (sym > tol * std::max(1.0, fx)) report.symmetric = false;
    if (fx < prev - tol) report.monotone = false;
    prev = fx;
  }
  return report;
}

namespace {

void check_dims(const DensityMatrix& rho, const CMatrix& H,
                const char* what) {
  require_hermitian(H, default_tolerances().validation,
                    std::string(what) + " H");
  if (H.rows() != rho.dim())
    throw ValidationError(std::string(what) + ": dimension mismatch");
}

}  // namespace

double qfi_f(const DensityMatrix& rho, const CMatrix& H, const CMFunction& f,
             const Tolerances& tol) {
  check_dims(rho, H, "qfi_f");
  const Spectrum& spec = rho.spectrum();
  const Eigen::Index n = rho.dim();
  // Matrix elements of H in the eigenbasis.
  const CMatrix Hij = spec.eigenvectors.adjoint() * H * spec.eigenvectors;

  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double li = spec.eigenvalues(i);
      const double lj = spec.eigenvalues(j);
      if (std::abs(li - lj) <= tol.degeneracy) continue;
      const double w = std::norm(Hij(i, j));
      if (w == 0.0) continue;
      double term;
      if (lj <= tol.zero_eig) {
        // lim_{lj -> 0} (li - lj)^2 / (lj f(li/lj)) = li / f(0).
        if (f.at_zero <= 0.0) {
          throw ValidationError(
              "qfi_f: non-regular metric (f(0) = 0) on a rank-deficient "
              "state");
        }
        term = li / f.at_zero;
      } else {
        const double diff = li - lj;
        term = diff * diff / (lj * f.eval(li / lj));
      }
      total += term * w;
    }
  }
  return 0.25 * total;
}

double sldf(const DensityMatrix& rho, const CMatrix& H,
            const Tolerances& tol) {
  check_dims(rho, H, "sldf");
  const Spectrum& spec = rho.spectrum();
  const Eigen::Index n = rho.dim();
  const CMatrix Hij = spec.eigenvectors.adjoint() * H * spec.eigenvectors;

  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double li = spec.eigenvalues(i);
      const double lj = spec.eigenvalues(j);
      if (li + lj <= tol.zero_eig) continue;
      const double diff = li - lj;
      total += diff * diff / (li + lj) * std::norm(Hij(i, j));
    }
  }
  return 0.5 * total;
}

double variance(const DensityMatrix& rho, const CMatrix& H) {
  check_dims(rho, H, "variance");
  const double h2 = trace_product(rho.matrix(), CMatrix(H * H));
  const double h1 = trace_product(rho.matrix(), H);
  return h2 - h1 * h1;
}

}  // namespace qspeed
