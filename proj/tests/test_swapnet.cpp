#include <doctest.h>

#include <cmath>
#include <random>

#include "qspeed/dynamics.hpp"
#include "qspeed/fixtures.hpp"
#include "qspeed/speed.hpp"
#include "qspeed/swapnet.hpp"
#include "support/generators.hpp"

using namespace qspeed;

namespace {
constexpr double kTau = 0.5235987755982988;  // pi/6
}

TEST_SUITE("swapnet") {

TEST_CASE("singlet projector and local swap") {
  const CMatrix proj = singlet_projector();
  CHECK(max_abs(proj - bell_psi_minus().projector().matrix()) < 1e-15);
  CHECK(max_abs(proj * proj - proj) < 1e-14);

  const CMatrix v = local_swap();
  CHECK(max_abs(v - (CMatrix::Identity(4, 4) - 2.0 * proj)) < 1e-14);
  CHECK(max_abs(v * v - CMatrix::Identity(4, 4)) < 1e-14);
  CHECK(is_hermitian(v, 1e-14));

  // V (a (x) b) V = b (x) a.
  std::mt19937_64 rng(51);
  const CMatrix a = testgen::random_density(2, rng).matrix();
  const CMatrix b = testgen::random_density(2, rng).matrix();
  CHECK(max_abs(v * tensor(a, b) * v - tensor(b, a)) < 1e-13);
}

TEST_CASE("overlap via swap equals the algebraic overlap") {
  std::mt19937_64 rng(52);
  for (int n : {1, 2, 3}) {
    const int dim = 1 << n;
    const DensityMatrix rho = testgen::random_density(dim, rng);
    const DensityMatrix sigma = testgen::random_density(dim, rng);
    CHECK(overlap_via_swap(rho, sigma, n) ==
          doctest::Approx(hs_overlap(rho, sigma)).epsilon(1e-11));
    CHECK(overlap_via_swap(rho, rho, n) ==
          doctest::Approx(rho.purity()).epsilon(1e-11));
  }
  CHECK_THROWS_AS(overlap_via_swap(bell_mixture(0.5), bell_mixture(0.5), 1),
                  ValidationError);  // dimension mismatch with n
}

TEST_CASE("ideal Bell effects and visibility scaling") {
  const EffectSet ideal = ideal_bell_effects();
  REQUIRE(ideal.effects.size() == 4);
  CHECK(ideal.labels[0] == "phi+");
  CHECK(ideal.labels[3] == "psi-");
  CHECK(ideal.completeness_deviation < 1e-14);
  CHECK(max_abs(ideal.effects[3] - singlet_projector()) < 1e-14);

  const EffectSet noisy = ideal_bell_effects(0.8);
  CHECK(noisy.completeness_deviation < 1e-14);  // diagonals untouched
  const Spectrum s = eig_hermitian(noisy.effects[0]);
  CHECK(s.eigenvalues(0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.1).epsilon(1e-12));

  CHECK_THROWS_AS(ideal_bell_effects(1.2), ValidationError);
  CHECK_THROWS_AS(ideal_bell_effects(-0.1), ValidationError);
}

TEST_CASE("effect set validation") {
  std::vector<CMatrix> effects = {CMatrix::Identity(4, 4) * 0.5,
                                  CMatrix::Identity(4, 4) * 0.5};
  CHECK_NOTHROW(EffectSet::from_effects(effects, {"a", "b"}));
  effects[1] = CMatrix::Identity(4, 4) * 0.4;  // incomplete
  CHECK_THROWS_AS(EffectSet::from_effects(effects, {"a", "b"}),
                  ValidationError);
  effects[1] = -0.5 * CMatrix::Identity(4, 4);  // negative
  CHECK_THROWS_AS(EffectSet::from_effects(effects, {"a", "b"}),
                  ValidationError);
}

TEST_CASE("mixing schedule weights form the product distribution") {
  const MixingSchedule sched = MixingSchedule::for_p(0.3);
  const auto entries = sched.entries();
  double total = 0.0;
  for (const auto& e : entries) total += e.weight;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entries[0].weight == doctest::Approx(0.09));   // (0, 0): p^2
  CHECK(entries[0].qwp1_deg == 0.0);
  CHECK(entries[0].qwp2_deg == 0.0);
  CHECK(entries[1].weight == doctest::Approx(0.21));   // (0, 90)
  CHECK(entries[1].qwp2_deg == 90.0);
  CHECK(entries[3].weight == doctest::Approx(0.49));   // (90, 90): (1-p)^2
  CHECK(entries[3].qwp1_deg == 90.0);
  CHECK_THROWS_AS(MixingSchedule::for_p(1.01), ValidationError);
}

TEST_CASE("joint state is the product of the two runs' marginals") {
  const double p = 0.3;
  const DensityMatrix rho = bell_mixture(p);

  const DensityMatrix plain = two_copy_joint_state(p, SpinAxis::X, kTau, false);
  CHECK(plain.dim() == 16);
  CHECK(max_abs(plain.matrix() - tensor(rho.matrix(), rho.matrix())) < 1e-12);

  const DensityMatrix evolved = two_copy_joint_state(p, SpinAxis::X, kTau, true);
  const CMatrix u = unitary_of(additive_hamiltonian(spin_half(SpinAxis::X), 2), kTau);
  const CMatrix expect = tensor(rho.matrix(), u * rho.matrix() * u.adjoint());
  CHECK(max_abs(evolved.matrix() - expect) < 1e-12);
}

TEST_CASE("ideal pipeline reproduces the algebraic speed") {
  const NoiseModel ideal = NoiseModel::ideal();
  for (double p : {0.0, 0.3, 0.5, 0.8, 1.0}) {
    for (SpinAxis axis : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z}) {
      const DensityMatrix joint_p = two_copy_joint_state(p, axis, kTau, false);
      const DensityMatrix joint_o = two_copy_joint_state(p, axis, kTau, true);
      const double purity =
          swap_value_from_probs(bsm_joint_probs(joint_p, ideal.bsm1(), ideal.bsm2()));
      const double overlap =
          swap_value_from_probs(bsm_joint_probs(joint_o, ideal.bsm1(), ideal.bsm2()));
      const DensityMatrix rho = bell_mixture(p);
      CHECK(purity == doctest::Approx(rho.purity()).epsilon(1e-12).scale(1.0));

      const double s = (purity - overlap) / (kTau * kTau);
      const double exact =
          squared_speed_tau(rho, additive_hamiltonian(spin_half(axis), 2), kTau)
              .squared_speed;
      CHECK(s == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("reconstructed-apparatus pipeline regression values") {
  // Ideal states measured with the stored reconstructed projector sets.
  const NoiseModel noise = NoiseModel::reconstructed_apparatus();
  const ProtocolShots exact{};  // no sampling
  struct Case { double p; SpinAxis axis; double s; };
  const Case cases[] = {
      {1.0, SpinAxis::X, 0.87444}, {0.0, SpinAxis::Y, 0.78402},
      {0.0, SpinAxis::Z, 0.58618}, {1.0, SpinAxis::Z, 0.58325},
      {0.5, SpinAxis::X, 0.26352}, {0.5, SpinAxis::Y, 0.21613},
  };
  for (const Case& c : cases) {
    const ProtocolResult r =
        run_protocol_point({c.p, c.axis, kTau}, noise, exact);
    CHECK(r.s_estimate == doctest::Approx(c.s).epsilon(2e-5).scale(1.0));
    CHECK(r.error_bar == 0.0);
  }
}

TEST_CASE("visibility lowers the measured purity") {
  NoiseModel noisy;
  noisy.visibility = 0.9;
  const DensityMatrix joint = two_copy_joint_state(1.0, SpinAxis::X, kTau, false);
  const double v_ideal = swap_value_from_probs(
      bsm_joint_probs(joint, NoiseModel::ideal().bsm1(), NoiseModel::ideal().bsm2()));
  const double v_noisy =
      swap_value_from_probs(bsm_joint_probs(joint, noisy.bsm1(), noisy.bsm2()));
  CHECK(v_noisy < v_ideal);
}

TEST_CASE("count sampling is deterministic and seed-sensitive") {
  const DensityMatrix joint = two_copy_joint_state(0.3, SpinAxis::X, kTau, true);
  const NoiseModel ideal = NoiseModel::ideal();
  const JointProbabilities probs =
      bsm_joint_probs(joint, ideal.bsm1(), ideal.bsm2());

  const CountRecord a = sample_counts(probs, 100000, 7);
  const CountRecord b = sample_counts(probs, 100000, 7);
  REQUIRE(a.counts.size() == 16);
  CHECK(a.counts == b.counts);
  CHECK(a.labels[0] == "phi+,phi+");

  const CountRecord c = sample_counts(probs, 100000, 8);
  CHECK(a.counts != c.counts);

  // Multinomial mode hits the requested total exactly; Poisson fluctuates.
  const CountRecord m =
      sample_counts(probs, 100000, 7, SamplingMode::Multinomial);
  CHECK(m.total() == 100000);
  CHECK(std::abs(a.total() - 100000) < 2000);

  CHECK_THROWS_AS(sample_counts(probs, 0, 7), ValidationError);
}

TEST_CASE("estimates from exact frequencies match the exact swap value") {
  const DensityMatrix joint = two_copy_joint_state(0.4, SpinAxis::Y, kTau, true);
  const NoiseModel ideal = NoiseModel::ideal();
  const JointProbabilities probs =
      bsm_joint_probs(joint, ideal.bsm1(), ideal.bsm2());

  // Scale the probabilities to huge integer counts: the frequency estimate
  // must agree with the infinite-shot value to rounding.
  CountRecord rec;
  rec.shots = 1;
  const double scale = 1e15;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      rec.labels.push_back(std::string(bell_label(BellOutcome(i))) + "," +
                           bell_label(BellOutcome(j)));
      rec.counts.push_back(
          static_cast<std::int64_t>(std::llround(probs.table[i][j] * scale)));
    }
  const SwapEstimate est = estimate_from_counts(rec);
  CHECK(est.value ==
        doctest::Approx(swap_value_from_probs(probs)).epsilon(1e-10));

  // Binomial error of the +/-1-valued observable.
  CHECK(est.stderr_value ==
        doctest::Approx(std::sqrt((1 - est.value * est.value) / est.total))
            .epsilon(1e-12));
}

TEST_CASE("merging the phi outcomes leaves the estimate unchanged") {
  const DensityMatrix joint = two_copy_joint_state(0.3, SpinAxis::Z, kTau, false);
  const NoiseModel ideal = NoiseModel::ideal();
  const CountRecord rec = sample_counts(
      bsm_joint_probs(joint, ideal.bsm1(), ideal.bsm2()), 50000, 3);
  const CountRecord merged = merge_phi_outcomes(rec);
  CHECK(merged.labels.size() == 9);
  CHECK(merged.total() == rec.total());
  const SwapEstimate full = estimate_from_counts(rec);
  const SwapEstimate part = estimate_from_counts(merged);
  CHECK(full.value == doctest::Approx(part.value).epsilon(1e-14));
}

TEST_CASE("count records round-trip through JSON") {
  CountRecord rec;
  rec.labels = {"phi+,phi+", "psi-,psi-"};
  rec.counts = {12, 34};
  rec.shots = 46;
  rec.seed = 99;
  const CountRecord back = CountRecord::from_json(rec.to_json());
  CHECK(back.labels == rec.labels);
  CHECK(back.counts == rec.counts);
  CHECK(back.shots == rec.shots);
  CHECK(back.seed == rec.seed);
}

TEST_CASE("derived seeds separate streams") {
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));
  CHECK(derive_seed(42, 5) == derive_seed(42, 5));
}

TEST_CASE("sampled protocol is reproducible and statistically sane") {
  const ProtocolPoint point{0.9, SpinAxis::X, kTau};
  ProtocolShots budget;
  budget.shots = 200000;
  budget.mc_samples = 300;
  budget.seed = 42;

  const ProtocolResult r1 = run_protocol_point(point, NoiseModel::ideal(), budget);
  const ProtocolResult r2 = run_protocol_point(point, NoiseModel::ideal(), budget);
  CHECK(r1.s_estimate == r2.s_estimate);
  CHECK(r1.error_bar == r2.error_bar);
  CHECK(r1.error_bar > 0.0);
  REQUIRE(r1.purity_counts.size() == 1);
  CHECK(r1.purity_counts[0].counts == r2.purity_counts[0].counts);

  const double exact =
      squared_speed_tau(bell_mixture(0.9),
                        additive_hamiltonian(spin_half(SpinAxis::X), 2), kTau)
          .squared_speed;
  CHECK(std::abs(r1.s_estimate - exact) < 5.0 * r1.error_bar);
}

}  // TEST_SUITE
