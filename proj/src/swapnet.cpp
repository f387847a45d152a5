#include "qspeed/swapnet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qspeed/fixtures.hpp"

namespace qspeed {

// ---------------------------------------------------------------------------
// Bell outcomes and swap algebra
// ---------------------------------------------------------------------------

const char* bell_label(BellOutcome o) {
  switch (o) {
    case BellOutcome::PhiPlus: return "phi+";
    case BellOutcome::PhiMinus: return "phi-";
    case BellOutcome::PsiPlus: return "psi+";
    case BellOutcome::PsiMinus: return "psi-";
  }
  throw ValidationError("invalid BellOutcome value");
}

BellOutcome bell_outcome_from_label(const std::string& l) {
  for (int k = 0; k < 4; ++k) {
    if (l == bell_label(static_cast<BellOutcome>(k)))
      return static_cast<BellOutcome>(k);
  }
  throw ValidationError("unknown Bell outcome label '" + l + "'");
}

CMatrix singlet_projector() {
  const CVector& v = bell_psi_minus().vector();
  return v * v.adjoint();
}

CMatrix local_swap() {
  return CMatrix::Identity(4, 4) - 2.0 * singlet_projector();
}

double overlap_via_swap(const DensityMatrix& rho, const DensityMatrix& sigma,
                        int n) {
  if (n < 1 || n > 12)
    throw ValidationError("overlap_via_swap: n must lie in [1, 12]");
  const Eigen::Index d = Eigen::Index(1) << n;
  if (rho.dim() != d || sigma.dim() != d)
    throw ValidationError("overlap_via_swap: states are not n-qubit states");

  // Joint state on (a_1..a_n, b_1..b_n); the swap of pair i acts on wires
  // (a_i, b_i), so reorder to pair-major layout (a_1 b_1 a_2 b_2 ...).
  CMatrix joint = tensor(rho.matrix(), sigma.matrix());
  std::vector<int> dims(2 * n, 2), perm(2 * n);
  for (int i = 0; i < n; ++i) {
    perm[2 * i] = i;
    perm[2 * i + 1] = n + i;
  }
  joint = permute_subsystems(joint, dims, perm);

  CMatrix swap_all = CMatrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) swap_all = tensor(swap_all, local_swap());
  return trace_product(swap_all, joint);
}

// ---------------------------------------------------------------------------
// Measurement apparatus
// ---------------------------------------------------------------------------

EffectSet EffectSet::from_effects(std::vector<CMatrix> effects,
                                  std::vector<std::string> labels,
                                  double completeness_tol,
                                  const Tolerances& tol) {
  if (effects.empty()) throw ValidationError("EffectSet: no effects");
  if (labels.size() != effects.size())
    throw ValidationError("EffectSet: label/effect count mismatch");
  const Eigen::Index d = effects[0].rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (size_t k = 0; k < effects.size(); ++k) {
    require_hermitian(effects[k], tol.validation,
                      "EffectSet effect '" + labels[k] + "'");
    if (effects[k].rows() != d)
      throw ValidationError("EffectSet: effect dimension mismatch");
    const Spectrum spec = eig_hermitian(effects[k], tol);
    const double min_eig = spec.eigenvalues(spec.eigenvalues.size() - 1);
    if (min_eig < -tol.psd) {
      throw ValidationError("EffectSet effect '" + labels[k] +
                            "': negative eigenvalue " +
                            std::to_string(min_eig));
    }
    sum += effects[k];
  }
  EffectSet set;
  set.effects = std::move(effects);
  set.labels = std::move(labels);
  set.completeness_deviation =
      max_abs(sum - CMatrix::Identity(d, d));
  if (set.completeness_deviation > completeness_tol) {
    throw ValidationError(
        "EffectSet: effects sum deviates from identity by " +
        std::to_string(set.completeness_deviation) + " (tol " +
        std::to_string(completeness_tol) + ")");
  }
  return set;
}

EffectSet ideal_bell_effects(double visibility) {
  if (visibility < 0.0 || visibility > 1.0)
    throw ValidationError("ideal_bell_effects: visibility must lie in [0, 1]");
  const PureState* bells[4] = {&bell_phi_plus(), &bell_phi_minus(),
                               &bell_psi_plus(), &bell_psi_minus()};
  std::vector<CMatrix> effects;
  std::vector<std::string> labels;
  for (int k = 0; k < 4; ++k) {
    const CVector& v = bells[k]->vector();
    CMatrix proj = v * v.adjoint();
    // Reduced interference: scale coherences, keep populations. The four
    // effects still sum to I and stay PSD (eigenvalues (1 +/- v)/2).
    CMatrix diag = proj.diagonal().asDiagonal();
    effects.push_back(diag + visibility * (proj - diag));
    labels.push_back(bell_label(static_cast<BellOutcome>(k)));
  }
  return EffectSet::from_effects(std::move(effects), std::move(labels));
}

NoiseModel NoiseModel::ideal() { return NoiseModel{}; }

NoiseModel NoiseModel::reconstructed_apparatus() {
  NoiseModel m;
  m.projector_source = ProjectorSource::Custom;
  m.custom_bsm1 = fixtures::bsm1_effects();
  m.custom_bsm2 = fixtures::bsm2_effects();
  return m;
}

namespace {

EffectSet resolve_effects(const NoiseModel& m, int pair) {
  switch (m.projector_source) {
    case ProjectorSource::Ideal:
      return ideal_bell_effects(m.visibility);
    case ProjectorSource::Fixture1:
      return fixtures::bsm1_effects();
    case ProjectorSource::Fixture2:
      return fixtures::bsm2_effects();
    case ProjectorSource::Custom: {
      const auto& opt = pair == 1 ? m.custom_bsm1 : m.custom_bsm2;
      if (!opt)
        throw ValidationError(
            "NoiseModel: custom projector source without custom effects");
      return *opt;
    }
  }
  throw ValidationError("invalid ProjectorSource value");
}

}  // namespace

EffectSet NoiseModel::bsm1() const { return resolve_effects(*this, 1); }
EffectSet NoiseModel::bsm2() const { return resolve_effects(*this, 2); }

// ---------------------------------------------------------------------------
// State preparation network
// ---------------------------------------------------------------------------

MixingSchedule MixingSchedule::for_p(double p) {
  if (p < 0.0 || p > 1.0)
    throw ValidationError("MixingSchedule: p must lie in [0, 1]");
  return MixingSchedule{p};
}

std::array<MixingSchedule::Entry, 4> MixingSchedule::entries() const {
  const double q = 1.0 - p;
  return {Entry{0.0, 0.0, p * p}, Entry{0.0, 90.0, p * q},
          Entry{90.0, 0.0, q * p}, Entry{90.0, 90.0, q * q}};
}

DensityMatrix two_copy_joint_state(double p, SpinAxis axis, double tau,
                                   bool evolve_second) {
  const MixingSchedule schedule = MixingSchedule::for_p(p);
  const CVector& plus = bell_phi_plus().vector();
  const CVector& minus = bell_phi_minus().vector();
  const CMatrix branch_plus = plus * plus.adjoint();
  const CMatrix branch_minus = minus * minus.adjoint();

  CMatrix u2 = CMatrix::Identity(4, 4);
  if (evolve_second) {
    u2 = unitary_of(additive_hamiltonian(spin_half(axis), 2), tau);
  }

  // Wires (A1 B1 A2 B2): copy 1 on the first pair, copy 2 on the second.
  CMatrix joint = CMatrix::Zero(16, 16);
  for (const auto& entry : schedule.entries()) {
    const CMatrix& c1 = entry.qwp1_deg == 0.0 ? branch_plus : branch_minus;
    const CMatrix& c2 = entry.qwp2_deg == 0.0 ? branch_plus : branch_minus;
    CMatrix second = evolve_second ? CMatrix(u2 * c2 * u2.adjoint()) : c2;
    joint += entry.weight * tensor(c1, second);
  }
  return DensityMatrix::from_matrix(joint);
}

// ---------------------------------------------------------------------------
// Outcome distributions, counts, estimates
// ---------------------------------------------------------------------------

double JointProbabilities::sum() const {
  double s = 0.0;
  for (const auto& row : table)
    for (double v : row) s += v;
  return s;
}

JointProbabilities bsm_joint_probs(const DensityMatrix& joint,
                                   const EffectSet& bsm1,
                                   const EffectSet& bsm2) {
  if (joint.dim() != 16)
    throw ValidationError("bsm_joint_probs: joint state must be 16-dim");
  if (bsm1.effects.size() != 4 || bsm2.effects.size() != 4)
    throw ValidationError("bsm_joint_probs: expected 4-outcome effect sets");
  for (const EffectSet* set : {&bsm1, &bsm2}) {
    if (set->effects[0].rows() != 4)
      throw ValidationError("bsm_joint_probs: effects must act on 2 qubits");
  }

  // Preparation layout (A1 B1 A2 B2) -> measurement layout (A1 A2 B1 B2).
  const CMatrix reordered =
      permute_subsystems(joint.matrix(), {2, 2, 2, 2}, {0, 2, 1, 3});

  JointProbabilities out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const CMatrix effect = tensor(bsm1.effects[i], bsm2.effects[j]);
      const double pr = trace_product(effect, reordered);
      if (pr < -1e-6) {
        throw ValidationError("bsm_joint_probs: outcome probability " +
                              std::to_string(pr) + " below -1e-6");
      }
      out.table[i][j] = pr;
    }
  }
  out.completeness_deviation = std::abs(1.0 - out.sum());
  const double allowed = 1e-8 + 2.0 * (bsm1.completeness_deviation +
                                       bsm2.completeness_deviation);
  if (out.completeness_deviation > allowed) {
    throw ValidationError(
        "bsm_joint_probs: probability table sum deviates from 1 by " +
        std::to_string(out.completeness_deviation));
  }
  return out;
}

double swap_value_from_probs(const JointProbabilities& probs) {
  double f1 = 0.0, f2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    f1 += probs.table[3][k];
    f2 += probs.table[k][3];
  }
  const double f12 = probs.table[3][3];
  return 1.0 - 2.0 * f1 - 2.0 * f2 + 4.0 * f12;
}

std::int64_t CountRecord::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += c;
  return t;
}

nlohmann::json CountRecord::to_json() const {
  return nlohmann::json{{"labels", labels},
                        {"counts", counts},
                        {"shots", shots},
                        {"seed", seed}};
}

CountRecord CountRecord::from_json(const nlohmann::json& j) {
  CountRecord r;
  r.labels = j.at("labels").get<std::vector<std::string>>();
  r.counts = j.at("counts").get<std::vector<std::int64_t>>();
  r.shots = j.at("shots").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (r.labels.size() != r.counts.size())
    throw ValidationError("CountRecord: label/count size mismatch");
  for (std::int64_t c : r.counts) {
    if (c < 0) throw ValidationError("CountRecord: negative count");
  }
  return r;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string joint_label(int i, int j) {
  return std::string(bell_label(static_cast<BellOutcome>(i))) + "," +
         bell_label(static_cast<BellOutcome>(j));
}

}  // namespace

// Derives an independent stream seed; used for Monte Carlo resamples so the
// stream assignment does not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

CountRecord sample_counts(const JointProbabilities& probs, std::int64_t shots,
                          std::uint64_t seed, SamplingMode mode) {
  if (shots < 1) throw ValidationError("sample_counts: shots must be >= 1");
  std::array<double, 16> p{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = probs.table[i][j];
      if (v < 0.0) {
        if (v < -1e-6)
          throw ValidationError("sample_counts: invalid probability " +
                                std::to_string(v));
        v = 0.0;  // clamp numerically-negative entries
      }
      p[i * 4 + j] = v;
    }
  }

  CountRecord rec;
  rec.shots = shots;
  rec.seed = seed;
  std::mt19937_64 rng(splitmix64(seed));

  if (mode == SamplingMode::Poisson) {
    // Independent counting channels, as in coincidence counting: the total
    // fluctuates around `shots`.
    for (int k = 0; k < 16; ++k) {
      rec.labels.push_back(joint_label(k / 4, k % 4));
      const double mean = static_cast<double>(shots) * p[k];
      std::int64_t c = 0;
      if (mean > 0.0) {
        std::poisson_distribution<std::int64_t> dist(mean);
        c = dist(rng);
      }
      rec.counts.push_back(c);
    }
  } else {
    // Exactly `shots` events split sequentially with binomial draws.
    double total = 0.0;
    for (double v : p) total += v;
    if (total <= 0.0)
      throw ValidationError("sample_counts: all probabilities vanish");
    std::int64_t remaining = shots;
    double mass_left = total;
    for (int k = 0; k < 16; ++k) {
      rec.labels.push_back(joint_label(k / 4, k % 4));
      std::int64_t c = 0;
      if (remaining > 0) {
        if (k == 15 || mass_left <= p[k]) {
          c = remaining;
        } else {
          const double q = p[k] / mass_left;
          std::binomial_distribution<std::int64_t> dist(remaining,
                                                        std::min(1.0, q));
          c = dist(rng);
        }
      }
      rec.counts.push_back(c);
      remaining -= c;
      mass_left -= p[k];
    }
  }
  return rec;
}

SwapEstimate estimate_from_counts(const CountRecord& counts) {
  const std::int64_t total = counts.total();
  if (total <= 0)
    throw ValidationError("estimate_from_counts: no counts recorded");

  double n1 = 0.0, n2 = 0.0, n12 = 0.0;
  for (size_t k = 0; k < counts.labels.size(); ++k) {
    const std::string& lbl = counts.labels[k];
    const auto comma = lbl.find(',');
    if (comma == std::string::npos)
      throw ValidationError("estimate_from_counts: malformed joint label '" +
                            lbl + "'");
    const std::string first = lbl.substr(0, comma);
    const std::string second = lbl.substr(comma + 1);
    const bool s1 = first == "psi-";
    const bool s2 = second == "psi-";
    const double c = static_cast<double>(counts.counts[k]);
    if (s1) n1 += c;
    if (s2) n2 += c;
    if (s1 && s2) n12 += c;
  }
  const double f1 = n1 / total;
  const double f2 = n2 / total;
  const double f12 = n12 / total;

  SwapEstimate est;
  est.total = total;
  est.value = 1.0 - 2.0 * f1 - 2.0 * f2 + 4.0 * f12;
  // The estimator averages a +/-1-valued observable (the product of the two
  // pairwise swap signs), so its variance is (1 - V^2)/N.
  est.stderr_value =
      std::sqrt(std::max(0.0, 1.0 - est.value * est.value) / total);
  return est;
}

CountRecord merge_phi_outcomes(const CountRecord& counts) {
  auto merge_part = [](const std::string& part) {
    return (part == "phi+" || part == "phi-") ? std::string("phi") : part;
  };
  CountRecord out;
  out.shots = counts.shots;
  out.seed = counts.seed;
  for (size_t k = 0; k < counts.labels.size(); ++k) {
    const std::string& lbl = counts.labels[k];
    const auto comma = lbl.find(',');
    if (comma == std::string::npos)
      throw ValidationError("merge_phi_outcomes: malformed joint label '" +
                            lbl + "'");
    const std::string merged =
        merge_part(lbl.substr(0, comma)) + "," + merge_part(lbl.substr(comma + 1));
    auto it = std::find(out.labels.begin(), out.labels.end(), merged);
    if (it == out.labels.end()) {
      out.labels.push_back(merged);
      out.counts.push_back(counts.counts[k]);
    } else {
      out.counts[it - out.labels.begin()] += counts.counts[k];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end protocol
// ---------------------------------------------------------------------------

ProtocolResult run_protocol_point(const ProtocolPoint& point,
                                  const NoiseModel& noise,
                                  const ProtocolShots& shots) {
  if (point.tau <= 0.0)
    throw ValidationError("run_protocol_point: tau must be positive");
  if (shots.mc_samples < 1)
    throw ValidationError("run_protocol_point: mc_samples must be >= 1");

  const EffectSet bsm1 = noise.bsm1();
  const EffectSet bsm2 = noise.bsm2();
  const DensityMatrix joint_purity =
      two_copy_joint_state(point.p, point.axis, point.tau, false);
  const DensityMatrix joint_overlap =
      two_copy_joint_state(point.p, point.axis, point.tau, true);
  const JointProbabilities probs_purity =
      bsm_joint_probs(joint_purity, bsm1, bsm2);
  const JointProbabilities probs_overlap =
      bsm_joint_probs(joint_overlap, bsm1, bsm2);

  ProtocolResult result;
  if (!shots.shots) {
    // Infinite-shot limit: frequencies are the exact probabilities.
    result.purity_estimate = swap_value_from_probs(probs_purity);
    result.overlap_estimate = swap_value_from_probs(probs_overlap);
    const SpeedResult s = speed_from_measurements(
        result.purity_estimate, result.overlap_estimate, point.tau);
    result.s_estimate = s.squared_speed;
    result.clipped = s.clipped;
    return result;
  }

  const std::int64_t n = *shots.shots;
  std::vector<double> s_values;
  s_values.reserve(shots.mc_samples);
  for (int r = 0; r < shots.mc_samples; ++r) {
    const CountRecord purity_counts = sample_counts(
        probs_purity, n, derive_seed(shots.seed, 2 * r), shots.mode);
    const CountRecord overlap_counts = sample_counts(
        probs_overlap, n, derive_seed(shots.seed, 2 * r + 1), shots.mode);
    const SwapEstimate purity_est = estimate_from_counts(purity_counts);
    const SwapEstimate overlap_est = estimate_from_counts(overlap_counts);
    const SpeedResult s = speed_from_measurements(
        purity_est.value, overlap_est.value, point.tau);
    s_values.push_back(s.squared_speed);
    if (r == 0) {
      result.purity_estimate = purity_est.value;
      result.overlap_estimate = overlap_est.value;
      result.purity_stderr = purity_est.stderr_value;
      result.overlap_stderr = overlap_est.stderr_value;
      result.s_estimate = s.squared_speed;
      result.clipped = s.clipped;
      result.purity_counts.push_back(purity_counts);
      result.overlap_counts.push_back(overlap_counts);
    }
  }

  if (s_values.size() > 1) {
    double mean = 0.0;
    for (double v : s_values) mean += v;
    mean /= s_values.size();
    double var = 0.0;
    for (double v : s_values) var += (v - mean) * (v - mean);
    var /= (s_values.size() - 1);
    result.error_bar = std::sqrt(var);
  }
  return result;
}

}  // namespace qspeed
