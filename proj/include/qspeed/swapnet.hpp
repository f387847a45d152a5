#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qspeed/cmatrix.hpp"
#include "qspeed/dynamics.hpp"
#include "qspeed/states.hpp"
#include "qspeed/speed.hpp"

namespace qspeed {

// ---------------------------------------------------------------------------
// Bell outcomes and swap algebra
// ---------------------------------------------------------------------------

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

const char* bell_label(BellOutcome o);                     // "phi+", ...
BellOutcome bell_outcome_from_label(const std::string& l);

// |psi-><psi-| on two qubits.
CMatrix singlet_projector();

// V = I4 - 2 |psi-><psi-| : hermitian, unitary, involutive swap of one
// subsystem pair.
CMatrix local_swap();

// Swap-trick overlap: Tr((tensor of local swaps) . rho (x) sigma) for n-qubit
// states; equals hs_overlap(rho, sigma).
double overlap_via_swap(const DensityMatrix& rho, const DensityMatrix& sigma,
                        int n);

// ---------------------------------------------------------------------------
// Measurement apparatus
// ---------------------------------------------------------------------------

// A POVM on one subsystem pair: four labeled PSD effects summing to I within
// a configurable completeness tolerance (reconstructed apparatus data is only
// approximately complete).
struct EffectSet {
  std::vector<CMatrix> effects;
  std::vector<std::string> labels;
  double completeness_deviation = 0.0;  // max-abs of (sum effects - I)

  static EffectSet from_effects(std::vector<CMatrix> effects,
                                std::vector<std::string> labels,
                                double completeness_tol = 1e-8,
                                const Tolerances& tol = default_tolerances());
};

// Bell-state-measurement effects: ideal projectors with their off-diagonal
// (interference) elements scaled by `visibility`.
EffectSet ideal_bell_effects(double visibility = 1.0);

enum class ProjectorSource { Ideal, Fixture1, Fixture2, Custom };

struct NoiseModel {
  double visibility = 1.0;
  ProjectorSource projector_source = ProjectorSource::Ideal;
  // Used when projector_source == Custom; bsm1 measures pair (A1 A2), bsm2
  // measures pair (B1 B2).
  std::optional<EffectSet> custom_bsm1;
  std::optional<EffectSet> custom_bsm2;

  static NoiseModel ideal();
  // Reconstructed-apparatus model: fixture set 1 on the A pair, fixture set 2
  // on the B pair.
  static NoiseModel reconstructed_apparatus();

  // Effects actually applied to each pair.
  EffectSet bsm1() const;
  EffectSet bsm2() const;
};

// ---------------------------------------------------------------------------
// State preparation network
// ---------------------------------------------------------------------------

// Classical mixing schedule for rho_p = p phi+ + (1-p) phi-: four runs with
// quarter-wave plates inserted (90 deg) or not (0 deg) on each copy's
// sign-flipping arm, time-weighted by the product distribution.
struct MixingSchedule {
  double p = 0.0;

  struct Entry {
    double qwp1_deg = 0.0;  // copy-1 plate: 0 = phi+, 90 = phi-
    double qwp2_deg = 0.0;  // copy-2 plate
    double weight = 0.0;
  };
  std::array<Entry, 4> entries() const;

  static MixingSchedule for_p(double p);  // validates p in [0,1]
};

// The four-qubit joint state (A1 B1 A2 B2) = rho_p (x) rho_p with
// exp(-i H tau), H = additive spin-1/2 generator, applied to copy 2 when
// evolve_second is set (overlap run) and omitted for the purity run.
DensityMatrix two_copy_joint_state(double p, SpinAxis axis, double tau,
                                   bool evolve_second);

// ---------------------------------------------------------------------------
// Outcome distributions, counts, estimates
// ---------------------------------------------------------------------------

struct JointProbabilities {
  // table[i][j] = P(bsm1 outcome i, bsm2 outcome j), Bell-outcome order.
  std::array<std::array<double, 4>, 4> table{};
  double completeness_deviation = 0.0;  // |1 - sum| of the table

  double sum() const;
};

// Applies the two BSMs to the joint state, reordering wires from the
// preparation layout (A1 B1 A2 B2) to the measurement layout (A1 A2 B1 B2).
JointProbabilities bsm_joint_probs(const DensityMatrix& joint,
                                   const EffectSet& bsm1,
                                   const EffectSet& bsm2);

// Infinite-shot swap estimate 1 - 2 f1 - 2 f2 + 4 f12 evaluated on exact
// probabilities.
double swap_value_from_probs(const JointProbabilities& probs);

struct CountRecord {
  std::vector<std::string> labels;  // joint labels "phi+,psi-" etc.
  std::vector<std::int64_t> counts;
  std::int64_t shots = 0;  // requested shots (Poisson totals may differ)
  std::uint64_t seed = 0;

  std::int64_t total() const;
  nlohmann::json to_json() const;
  static CountRecord from_json(const nlohmann::json& j);
};

enum class SamplingMode { Poisson, Multinomial };

// Independent per-index stream seed (splitmix of seed and index), so stream
// assignment is stable no matter how work is scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Draws counts for the 16 joint outcomes. Poisson mode draws each outcome
// independently with mean shots * p; multinomial mode distributes exactly
// `shots` events. Deterministic for fixed (probs, shots, seed, mode).
CountRecord sample_counts(const JointProbabilities& probs, std::int64_t shots,
                          std::uint64_t seed,
                          SamplingMode mode = SamplingMode::Poisson);

struct SwapEstimate {
  double value = 0.0;
  double stderr_value = 0.0;  // sqrt((1 - value^2) / total)
  std::int64_t total = 0;
};

// 1 - 2 f1 - 2 f2 + 4 f12 from observed frequencies, with the binomial error
// of the +/-1-valued swap observable.
SwapEstimate estimate_from_counts(const CountRecord& counts);

// Partial-determinism mode: merge the phi+ / phi- outcomes of each pair into
// one "phi" class, keeping psi+ and psi- resolved. The swap estimate is
// unaffected (it only needs psi- frequencies).
CountRecord merge_phi_outcomes(const CountRecord& counts);

// ---------------------------------------------------------------------------
// End-to-end protocol
// ---------------------------------------------------------------------------

struct ProtocolPoint {
  double p = 0.0;
  SpinAxis axis = SpinAxis::X;
  double tau = 0.0;
};

struct ProtocolShots {
  // nullopt = exact (infinite-shot) evaluation, no sampling.
  std::optional<std::int64_t> shots;
  int mc_samples = 1000;  // Monte Carlo resamples for the error bar
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::Poisson;
};

struct ProtocolResult {
  double s_estimate = 0.0;   // squared speed S_tau
  double error_bar = 0.0;    // std dev over Monte Carlo resamples (0 if exact)
  double purity_estimate = 0.0;
  double overlap_estimate = 0.0;
  double purity_stderr = 0.0;
  double overlap_stderr = 0.0;
  bool clipped = false;
  // Count records of the first resample (empty in exact mode).
  std::vector<CountRecord> purity_counts;
  std::vector<CountRecord> overlap_counts;
};

// Runs the full two-copy network at one parameter point: purity run (no
// evolution) and overlap run (copy 2 evolved), each sampled per the shot
// budget, assembled into S_tau. Error bar is the standard deviation of the
// S estimates over mc_samples independent resamples.
ProtocolResult run_protocol_point(const ProtocolPoint& point,
                                  const NoiseModel& noise,
                                  const ProtocolShots& shots);

}  // namespace qspeed
