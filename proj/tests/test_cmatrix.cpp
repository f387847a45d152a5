#include <doctest.h>

#include <cstring>
#include <random>

#include "qspeed/cmatrix.hpp"
#include "support/generators.hpp"

using namespace qspeed;

TEST_SUITE("cmatrix") {

TEST_CASE("tensor product layout and values") {
  CMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, cplx(0, 1), 5, 6;
  const CMatrix t = tensor(a, b);
  REQUIRE(t.rows() == 4);
  CHECK(t(0, 1) == cplx(0, 1));     // a00 * b01
  CHECK(t(3, 0) == cplx(15, 0));    // a10 * b10
  CHECK(t(3, 3) == cplx(24, 0));    // a11 * b11

  CVector u(2), v(2);
  u << 1, 0;
  v << 0, 1;
  const CVector w = tensor(u, v);
  CHECK(w(1) == cplx(1, 0));
  CHECK(w.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("partial trace recovers tensor factors") {
  std::mt19937_64 rng(11);
  const CMatrix a = testgen::random_density(2, rng).matrix();
  const CMatrix b = testgen::random_density(3, rng).matrix();
  const CMatrix ab = tensor(a, b);
  CHECK(max_abs(partial_trace(ab, {2, 3}, {0}) - a) < 1e-12);
  CHECK(max_abs(partial_trace(ab, {2, 3}, {1}) - b) < 1e-12);
  CHECK(max_abs(partial_trace(ab, {2, 3}, {0, 1}) - ab) < 1e-12);
}

TEST_CASE("partial trace of a Bell projector is maximally mixed") {
  CVector phi(4);
  phi << 1, 0, 0, 1;
  phi /= std::sqrt(2.0);
  const CMatrix proj = phi * phi.adjoint();
  const CMatrix reduced = partial_trace(proj, {2, 2}, {0});
  CHECK(max_abs(reduced - 0.5 * CMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("permute_subsystems places old subsystem perm[k] at slot k") {
  std::mt19937_64 rng(12);
  const CMatrix a = testgen::random_density(2, rng).matrix();
  const CMatrix b = testgen::random_density(2, rng).matrix();
  const CMatrix c = testgen::random_density(2, rng).matrix();
  const CMatrix abc = tensor(tensor(a, b), c);
  const CMatrix bac = tensor(tensor(b, a), c);
  CHECK(max_abs(permute_subsystems(abc, {2, 2, 2}, {1, 0, 2}) - bac) < 1e-13);

  // Wire reorder used by the two-copy network.
  const CMatrix d = testgen::random_density(2, rng).matrix();
  const CMatrix a1b1a2b2 = tensor(tensor(tensor(a, b), c), d);
  const CMatrix a1a2b1b2 = tensor(tensor(tensor(a, c), b), d);
  CHECK(max_abs(permute_subsystems(a1b1a2b2, {2, 2, 2, 2}, {0, 2, 1, 3}) -
                a1a2b1b2) < 1e-13);
}

TEST_CASE("eig_hermitian: descending, reconstructing, phase-fixed") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix h = testgen::random_hermitian(5, rng);
    const Spectrum s = eig_hermitian(h);
    for (int i = 0; i + 1 < 5; ++i)
      CHECK(s.eigenvalues(i) >= s.eigenvalues(i + 1));
    const CMatrix rebuilt = s.eigenvectors *
                            s.eigenvalues.cast<cplx>().asDiagonal() *
                            s.eigenvectors.adjoint();
    CHECK(max_abs(rebuilt - h) < 1e-10);
    CHECK(max_abs(s.eigenvectors.adjoint() * s.eigenvectors -
                  CMatrix::Identity(5, 5)) < 1e-10);
    // Phase fix: first non-negligible component of each column is real >= 0.
    for (int c = 0; c < 5; ++c) {
      for (int r = 0; r < 5; ++r) {
        const cplx v = s.eigenvectors(r, c);
        if (std::abs(v) > 1e-7) {
          CHECK(std::abs(v.imag()) < 1e-10);
          CHECK(v.real() > 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("eig_hermitian is bitwise deterministic") {
  std::mt19937_64 rng(14);
  const CMatrix h = testgen::random_hermitian(6, rng);
  const Spectrum s1 = eig_hermitian(h);
  const Spectrum s2 = eig_hermitian(h);
  CHECK(std::memcmp(s1.eigenvalues.data(), s2.eigenvalues.data(),
                    sizeof(double) * 6) == 0);
  CHECK(std::memcmp(s1.eigenvectors.data(), s2.eigenvectors.data(),
                    sizeof(cplx) * 36) == 0);
}

TEST_CASE("eig_hermitian handles full degeneracy deterministically") {
  const CMatrix id = CMatrix::Identity(4, 4);
  const Spectrum s = eig_hermitian(id);
  CHECK(max_abs(s.eigenvectors * s.eigenvectors.adjoint() - id) < 1e-12);
  const Spectrum s2 = eig_hermitian(id);
  CHECK(max_abs(s.eigenvectors - s2.eigenvectors) == 0.0);
}

TEST_CASE("trace_product equals Tr(ab)") {
  std::mt19937_64 rng(15);
  const CMatrix a = testgen::random_hermitian(4, rng);
  const CMatrix b = testgen::random_hermitian(4, rng);
  CHECK(trace_product(a, b) == doctest::Approx((a * b).trace().real()).epsilon(1e-12));
}

TEST_CASE("validation helpers throw on bad input") {
  CMatrix m(2, 2);
  m << 1, cplx(0, 1), cplx(0, 1), 1;  // not hermitian (both off-diag +i)
  CHECK_THROWS_AS(require_hermitian(m, 1e-10, "m"), ValidationError);
  CHECK_THROWS_AS(require_unitary(2.0 * CMatrix::Identity(2, 2), 1e-10, "u"),
                  ValidationError);
  CHECK_NOTHROW(require_unitary(CMatrix::Identity(3, 3), 1e-10, "u"));
  CHECK_THROWS_AS(require_square(CMatrix::Zero(2, 3), "z"), ValidationError);
}

}  // TEST_SUITE
