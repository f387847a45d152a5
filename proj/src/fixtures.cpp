#include "qspeed/fixtures.hpp"

#include "fixtures_data.inc"

namespace qspeed {
namespace fixtures {

namespace {

CMatrix raw(const std::string& name) {
  for (const RawFixture& f : kRawFixtures) {
    if (name == f.name) {
      CMatrix m(f.dim, f.dim);
      for (int i = 0; i < f.dim; ++i)
        for (int j = 0; j < f.dim; ++j)
          m(i, j) = cplx(f.re[i * f.dim + j], f.im[i * f.dim + j]);
      return m;
    }
  }
  throw ValidationError("unknown fixture '" + name + "'");
}

DensityMatrix state_fixture(const std::string& name) {
  return DensityMatrix::from_matrix(raw(name), reconstructed_data_tolerances());
}

EffectSet effect_fixture(int bsm) {
  const std::string prefix = "bsm" + std::to_string(bsm) + "_";
  static const char* stems[] = {"phi_plus", "phi_minus", "psi_plus",
                                "psi_minus"};
  std::vector<CMatrix> effects;
  std::vector<std::string> labels;
  for (int k = 0; k < 4; ++k) {
    effects.push_back(raw(prefix + stems[k]));
    labels.push_back(bell_label(static_cast<BellOutcome>(k)));
  }
  // Reconstructed operators: completeness holds to ~1.4e-4, eigenvalues dip
  // to ~-4e-5; validate against the relaxed profile.
  return EffectSet::from_effects(std::move(effects), std::move(labels), 2e-2,
                                 reconstructed_data_tolerances());
}

}  // namespace

DensityMatrix copy1_phi_plus() { return state_fixture("copy1_phi_plus"); }
DensityMatrix copy1_phi_minus() { return state_fixture("copy1_phi_minus"); }
DensityMatrix copy2_phi_plus() { return state_fixture("copy2_phi_plus"); }
DensityMatrix copy2_phi_minus() { return state_fixture("copy2_phi_minus"); }

DensityMatrix copy_mixture(int copy, double p) {
  if (copy != 1 && copy != 2)
    throw ValidationError("copy_mixture: copy must be 1 or 2");
  if (p < 0.0 || p > 1.0)
    throw ValidationError("copy_mixture: p must lie in [0, 1]");
  const DensityMatrix plus = copy == 1 ? copy1_phi_plus() : copy2_phi_plus();
  const DensityMatrix minus =
      copy == 1 ? copy1_phi_minus() : copy2_phi_minus();
  CMatrix m = p * plus.matrix() + (1.0 - p) * minus.matrix();
  return DensityMatrix::from_matrix(m, reconstructed_data_tolerances());
}

EffectSet bsm1_effects() { return effect_fixture(1); }
EffectSet bsm2_effects() { return effect_fixture(2); }

CMatrix bsm_projector(int bsm, BellOutcome outcome) {
  if (bsm != 1 && bsm != 2)
    throw ValidationError("bsm_projector: bsm must be 1 or 2");
  const EffectSet set = bsm == 1 ? bsm1_effects() : bsm2_effects();
  return set.effects[static_cast<int>(outcome)];
}

const std::map<std::string, CMatrix>& all_raw() {
  static const std::map<std::string, CMatrix> m = [] {
    std::map<std::string, CMatrix> out;
    for (const RawFixture& f : kRawFixtures) out.emplace(f.name, raw(f.name));
    return out;
  }();
  return m;
}

}  // namespace fixtures
}  // namespace qspeed
