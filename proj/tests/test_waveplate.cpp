#include <doctest.h>

#include <cmath>
#include <random>

#include "qspeed/waveplate.hpp"

using namespace qspeed;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

EulerAngles random_triple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-2.0 * kPi, 2.0 * kPi);
  return {unif(rng), unif(rng), unif(rng)};
}
}  // namespace

TEST_SUITE("waveplate") {

TEST_CASE("plates are unitary with the expected periodicities") {
  for (JonesConvention conv :
       {JonesConvention::Diagonal, JonesConvention::Computational}) {
    for (double theta : {0.0, 0.3, -1.2, 2.9}) {
      CHECK(is_unitary(qwp(theta, conv), 1e-12));
      CHECK(is_unitary(hwp(theta, conv), 1e-12));
      CHECK(max_abs(qwp(theta + kPi, conv) - qwp(theta, conv)) < 1e-12);
      CHECK(max_abs(hwp(theta + kPi / 2, conv) + hwp(theta, conv)) < 1e-12);
    }
  }
}

TEST_CASE("quarter plates square to half plates") {
  for (JonesConvention conv :
       {JonesConvention::Diagonal, JonesConvention::Computational}) {
    const CMatrix q = qwp(0.7, conv);
    CHECK(equal_up_to_phase(q * q, hwp(0.7, conv), 1e-12));
  }
  // Four quarter turns: identity in the literal convention, -I in the
  // rotated-frame convention.
  const CMatrix q4c = qwp(0.7, JonesConvention::Computational);
  CHECK(max_abs(q4c * q4c * q4c * q4c - CMatrix::Identity(2, 2)) < 1e-12);
  const CMatrix q4d = qwp(0.7, JonesConvention::Diagonal);
  CHECK(max_abs(q4d * q4d * q4d * q4d + CMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("euler_unitary builds half-angle rotations") {
  CHECK(max_abs(euler_unitary({0, 0, 0}) - CMatrix::Identity(2, 2)) < 1e-15);

  const double xi = 0.8;
  const CMatrix u = euler_unitary({xi, 0, 0});
  CMatrix ry(2, 2);  // exp(-i xi sigma_y / 2)
  ry << std::cos(xi / 2), -std::sin(xi / 2), std::sin(xi / 2),
      std::cos(xi / 2);
  CHECK(max_abs(u - ry) < 1e-13);

  const CMatrix ux = euler_unitary({0, xi, 0});
  CMatrix rx(2, 2);
  rx << std::cos(xi / 2), cplx(0, -std::sin(xi / 2)),
      cplx(0, -std::sin(xi / 2)), std::cos(xi / 2);
  CHECK(max_abs(ux - rx) < 1e-13);
}

TEST_CASE("identity decompositions") {
  // Literal convention: the plate product is exactly the identity.
  const WaveplateSequence idc = decompose({0, 0, 0}, JonesConvention::Computational);
  CHECK(max_abs(compose(idc, JonesConvention::Computational) -
                CMatrix::Identity(2, 2)) < 1e-12);

  // Rotated-frame convention: the synthesized identity is (45, 135, 45)
  // degrees, composing to +i times the identity; the half-wave plate at 135
  // degrees differs from 45 degrees by a sign, so the published all-45 row
  // composes to -i times the identity.
  const WaveplateSequence idd = decompose({0, 0, 0}, JonesConvention::Diagonal);
  CHECK(idd.theta1 == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(idd.theta2 == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
  CHECK(idd.theta3 == doctest::Approx(kPi / 4).epsilon(1e-12));
  const CMatrix prod = compose(idd, JonesConvention::Diagonal);
  CHECK(max_abs(prod - cplx(0, 1) * CMatrix::Identity(2, 2)) < 1e-12);
  const CMatrix all45 = compose({kPi / 4, kPi / 4, kPi / 4},
                                JonesConvention::Diagonal);
  CHECK(max_abs(all45 - cplx(0, -1) * CMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("plain-map example in the literal convention") {
  // xi = pi/6, eta = zeta = 0 maps to theta = (0, xi/4, xi/2).
  const WaveplateSequence s =
      decompose({kPi / 6, 0, 0}, JonesConvention::Computational);
  CHECK(std::abs(s.theta1) < 1e-12);
  CHECK(s.theta2 == doctest::Approx(kPi / 24).epsilon(1e-12));
  CHECK(s.theta3 == doctest::Approx(kPi / 12).epsilon(1e-12));
}

TEST_CASE("round-trip on random Euler triples") {
  auto rng = make_rng(61);
  for (int t = 0; t < 100; ++t) {
    const EulerAngles e = random_triple(rng);
    const CMatrix target = euler_unitary(e);
    for (JonesConvention conv :
         {JonesConvention::Diagonal, JonesConvention::Computational}) {
      const WaveplateSequence s = decompose(e, conv);
      CHECK(equal_up_to_phase(compose(s, conv), target, 1e-9));
    }
  }
}

TEST_CASE("theta2 is only defined modulo a half period") {
  auto rng = make_rng(62);
  for (int t = 0; t < 20; ++t) {
    const EulerAngles e = random_triple(rng);
    for (JonesConvention conv :
         {JonesConvention::Diagonal, JonesConvention::Computational}) {
      WaveplateSequence s = decompose(e, conv);
      s.theta2 += kPi / 2;  // hwp flips sign only: same gate up to phase
      CHECK(equal_up_to_phase(compose(s, conv), euler_unitary(e), 1e-9));
    }
  }
}

TEST_CASE("equal_up_to_phase semantics") {
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(equal_up_to_phase(cplx(0, 1) * id, id, 1e-12));
  CHECK(equal_up_to_phase(std::exp(cplx(0, 0.7)) * id, id, 1e-12));
  CMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  CHECK_FALSE(equal_up_to_phase(flip, id, 1e-12));
  CHECK_THROWS_AS(equal_up_to_phase(2.0 * id, id, 1e-12), ValidationError);
}

TEST_CASE("convention names round-trip") {
  CHECK(convention_from_name("diagonal") == JonesConvention::Diagonal);
  CHECK(convention_from_name("da") == JonesConvention::Diagonal);
  CHECK(convention_from_name("computational") == JonesConvention::Computational);
  CHECK(convention_from_name("hv") == JonesConvention::Computational);
  CHECK_THROWS_AS(convention_from_name("other"), ValidationError);
  CHECK(std::string(convention_name(JonesConvention::Diagonal)) == "diagonal");
}

}  // TEST_SUITE
