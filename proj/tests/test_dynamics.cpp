#include <doctest.h>

#include "qspeed/dynamics.hpp"
#include "qspeed/states.hpp"

using namespace qspeed;

TEST_SUITE("dynamics") {

TEST_CASE("Pauli algebra") {
  const CMatrix x = pauli(SpinAxis::X);
  const CMatrix y = pauli(SpinAxis::Y);
  const CMatrix z = pauli(SpinAxis::Z);
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(max_abs(x * x - id) < 1e-15);
  CHECK(max_abs(y * y - id) < 1e-15);
  CHECK(max_abs(z * z - id) < 1e-15);
  CHECK(max_abs(x * y + y * x) < 1e-15);                       // anticommute
  CHECK(max_abs(x * y - y * x - cplx(0, 2) * z) < 1e-15);      // [x,y] = 2iz
  CHECK(max_abs(spin_half(SpinAxis::Y) - 0.5 * y) < 1e-15);
}

TEST_CASE("axis names round-trip") {
  CHECK(axis_from_name("x") == SpinAxis::X);
  CHECK(axis_from_name("Z") == SpinAxis::Z);
  CHECK(axis_name(SpinAxis::Y) == std::string("y"));
  CHECK_THROWS_AS(axis_from_name("w"), ValidationError);
}

TEST_CASE("additive Hamiltonian is a sum of single-site terms") {
  const CMatrix h = spin_half(SpinAxis::Z);
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(max_abs(additive_hamiltonian(h, 1) - h) < 1e-15);
  CHECK(max_abs(additive_hamiltonian(h, 2) - (tensor(h, id) + tensor(id, h))) <
        1e-15);
  const CMatrix h3 = additive_hamiltonian(h, 3);
  CHECK(h3.rows() == 8);
  CHECK(h3(0, 0).real() == doctest::Approx(1.5));   // all spins up: 3 * 1/2
  CHECK(h3(7, 7).real() == doctest::Approx(-1.5));
  CHECK_THROWS_AS(additive_hamiltonian(h, 0), ValidationError);
  CHECK_THROWS_AS(additive_hamiltonian(h, 11), ValidationError);
}

TEST_CASE("unitary_of matches the exponential") {
  const CMatrix h = additive_hamiltonian(spin_half(SpinAxis::X), 2);
  CHECK(max_abs(unitary_of(h, 0.0) - CMatrix::Identity(4, 4)) < 1e-14);

  const double tau = 1e-5;
  const CMatrix u = unitary_of(h, tau);
  const CMatrix series = CMatrix::Identity(4, 4) - cplx(0, tau) * h -
                         0.5 * tau * tau * h * h;
  CHECK(max_abs(u - series) < 1e-13);
  CHECK(is_unitary(unitary_of(h, 2.7), 1e-12));

  // Composition: U(a) U(b) = U(a + b).
  CHECK(max_abs(unitary_of(h, 0.4) * unitary_of(h, 0.9) - unitary_of(h, 1.3)) <
        1e-12);
}

TEST_CASE("evolution preserves purity and spectrum") {
  const DensityMatrix rho = bell_mixture(0.3);
  const CMatrix h = additive_hamiltonian(spin_half(SpinAxis::Y), 2);
  const DensityMatrix out = evolve(rho, unitary_of(h, 0.8));
  CHECK(out.purity() == doctest::Approx(rho.purity()).epsilon(1e-12));
  CHECK(max_abs(out.spectrum().eigenvalues - rho.spectrum().eigenvalues) <
        1e-12);
}

TEST_CASE("known overlap after z-axis evolution") {
  // Tr(rho_p U rho_p U+) = purity - (1-2p)^2 sin^2(tau) for the Bell mixture
  // under the additive z generator.
  const double p = 0.3, tau = 0.5235987755982988;  // pi/6
  const DensityMatrix rho = bell_mixture(p);
  const CMatrix u =
      unitary_of(additive_hamiltonian(spin_half(SpinAxis::Z), 2), tau);
  const double overlap = hs_overlap(rho, evolve(rho, u));
  const double expect =
      rho.purity() - (1 - 2 * p) * (1 - 2 * p) * std::pow(std::sin(tau), 2);
  CHECK(overlap == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("evolve rejects non-unitary and mismatched operators") {
  const DensityMatrix rho = bell_mixture(0.5);
  CHECK_THROWS_AS(evolve(rho, 2.0 * CMatrix::Identity(4, 4)), ValidationError);
  CHECK_THROWS_AS(evolve(rho, CMatrix::Identity(2, 2)), ValidationError);
}

}  // TEST_SUITE
