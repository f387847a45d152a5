#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qspeed/tolerances.hpp"

namespace qspeed {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using cplx = std::complex<double>;

// Raised whenever an input fails a precondition. The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

double max_abs(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol);
bool is_unitary(const CMatrix& m, double tol);

// Throwing variants; `what` names the offending argument in the message.
void require_square(const CMatrix& m, const std::string& what);
void require_hermitian(const CMatrix& m, double tol, const std::string& what);
void require_unitary(const CMatrix& m, double tol, const std::string& what);

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

// Partial trace over the subsystems NOT listed in `keep`. `dims` are the factor
// dimensions in tensor order; `keep` lists kept subsystem indices (ascending).
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

// Subsystem reordering: slot k of the result holds old subsystem perm[k].
CMatrix permute_subsystems(const CMatrix& m, const std::vector<int>& dims,
                           const std::vector<int>& perm);

// Eigendecomposition of a Hermitian matrix with a deterministic presentation:
// eigenvalues descending, each eigenvector's first non-negligible component made
// real positive, exact ties ordered lexicographically by the phase-fixed vectors.
struct Spectrum {
  RVector eigenvalues;   // descending
  CMatrix eigenvectors;  // columns, phase-fixed
};

Spectrum eig_hermitian(const CMatrix& m,
                       const Tolerances& tol = default_tolerances());

// Tr(a b) for Hermitian a, b (real up to rounding; the real part is returned).
double trace_product(const CMatrix& a, const CMatrix& b);

}  // namespace qspeed
