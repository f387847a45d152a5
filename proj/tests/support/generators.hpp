#pragma once

// Seeded generators for property tests: random states, Hamiltonians and
// channels with reproducible streams.

#include <random>
#include <vector>

#include "qspeed/cmatrix.hpp"
#include "qspeed/states.hpp"

namespace qspeed::testgen {

inline CMatrix random_ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

// Full-rank random density matrix (Hilbert-Schmidt ensemble).
inline DensityMatrix random_density(int dim, std::mt19937_64& rng) {
  const CMatrix g = random_ginibre(dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(rho);
}

// Rank-deficient random state: a mixture of `rank` random pure states.
inline DensityMatrix random_low_rank(int dim, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix rho = CMatrix::Zero(dim, dim);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  double total = 0.0;
  for (int r = 0; r < rank; ++r) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(normal(rng), normal(rng));
    v.normalize();
    const double w = unif(rng);
    rho += w * (v * v.adjoint());
    total += w;
  }
  rho /= total;
  return DensityMatrix::from_matrix(rho);
}

inline CVector random_pure(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(normal(rng), normal(rng));
  v.normalize();
  return v;
}

inline CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  const CMatrix g = random_ginibre(dim, rng);
  return 0.5 * (g + g.adjoint());
}

inline CMatrix random_unitary(int dim, std::mt19937_64& rng) {
  const Spectrum s = eig_hermitian(random_hermitian(dim, rng));
  std::uniform_real_distribution<double> unif(0.0, 6.283185307179586);
  CVector phases(dim);
  for (int i = 0; i < dim; ++i) phases(i) = std::exp(cplx(0.0, unif(rng)));
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

// A channel commuting with exp(-i H t): random convex mixture of
//  - dephasing onto H's eigenprojectors,
//  - unitaries generated by H itself,
//  - replacement by the maximally mixed state.
struct CovariantChannel {
  std::vector<CMatrix> projectors;  // H eigenprojectors
  double dephase_weight = 0.0;
  double depolarize_weight = 0.0;
  std::vector<double> unitary_weights;
  std::vector<CMatrix> unitaries;  // exp(-i H s_j)

  CMatrix apply(const CMatrix& rho) const {
    const int dim = static_cast<int>(rho.rows());
    CMatrix out = CMatrix::Zero(dim, dim);
    for (const CMatrix& p : projectors) out += dephase_weight * p * rho * p;
    out += depolarize_weight * (rho.trace() / static_cast<double>(dim)) *
           CMatrix::Identity(dim, dim);
    for (std::size_t j = 0; j < unitaries.size(); ++j)
      out += unitary_weights[j] * unitaries[j] * rho * unitaries[j].adjoint();
    return out;
  }
};

inline CovariantChannel random_covariant_channel(const CMatrix& hamiltonian,
                                                 std::mt19937_64& rng,
                                                 int n_unitaries = 2) {
  CovariantChannel ch;
  const Spectrum s = eig_hermitian(hamiltonian);
  const int dim = static_cast<int>(hamiltonian.rows());
  for (int i = 0; i < dim; ++i) {
    const CVector v = s.eigenvectors.col(i);
    ch.projectors.push_back(v * v.adjoint());
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> weights(2 + n_unitaries);
  double total = 0.0;
  for (double& w : weights) {
    w = unif(rng);
    total += w;
  }
  for (double& w : weights) w /= total;
  ch.dephase_weight = weights[0];
  ch.depolarize_weight = weights[1];
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (int j = 0; j < n_unitaries; ++j) {
    ch.unitary_weights.push_back(weights[2 + j]);
    const double t = time(rng);
    CVector phases(dim);
    for (int i = 0; i < dim; ++i)
      phases(i) = std::exp(cplx(0.0, -s.eigenvalues(i) * t));
    ch.unitaries.push_back(s.eigenvectors * phases.asDiagonal() *
                           s.eigenvectors.adjoint());
  }
  return ch;
}

}  // namespace qspeed::testgen
