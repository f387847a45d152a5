#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qspeed/cmatrix.hpp"
#include "qspeed/states.hpp"
#include "qspeed/swapnet.hpp"

namespace qspeed {

// ---------------------------------------------------------------------------
// Probes and count containers
// ---------------------------------------------------------------------------

// Single-qubit polarization probes H, V, D, A, R, L (computational basis:
// H = |0>, V = |1>, D/A = (|0> +/- |1>)/sqrt2, R/L = (|0> -/+ i|1>)/sqrt2).
struct ProbeSet {
  std::vector<std::string> labels;  // e.g. "HH", "HV", ... (36 for two qubits)
  std::vector<CVector> states;

  static const ProbeSet& two_qubit_products();  // all 36 products
  static CVector single_qubit(char label);      // one of H V D A R L
};

// Counts for state tomography: one entry per measurement setting (pair of
// Pauli bases, e.g. "XY"), four outcome counts (++, +-, -+, --) each.
struct StateCounts {
  std::vector<std::string> settings;
  std::vector<std::array<double, 4>> counts;

  static StateCounts exact_from_state(const DensityMatrix& rho,
                                      double shots_per_setting = 1.0);
  static StateCounts sampled_from_state(const DensityMatrix& rho,
                                        std::int64_t shots_per_setting,
                                        std::uint64_t seed);
  nlohmann::json to_json() const;
  static StateCounts from_json(const nlohmann::json& j);
};

// Counts for detector tomography: one entry per probe, K outcome counts.
struct DetectorCounts {
  std::vector<std::string> probes;  // labels into ProbeSet
  std::vector<std::vector<double>> counts;

  static DetectorCounts exact_from_effects(const EffectSet& effects,
                                           const ProbeSet& probes,
                                           double shots_per_probe = 1.0);
  static DetectorCounts sampled_from_effects(const EffectSet& effects,
                                             const ProbeSet& probes,
                                             std::int64_t shots_per_probe,
                                             std::uint64_t seed);
  nlohmann::json to_json() const;
  static DetectorCounts from_json(const nlohmann::json& j);
};

// ---------------------------------------------------------------------------
// Maximum-likelihood reconstruction
// ---------------------------------------------------------------------------

struct TomographyOptions {
  int max_iterations = 10000;
  double ll_gain_tol = 1e-10;  // stop when the log-likelihood gain drops below
  double dilution = 1.0;       // 1 = plain fixed-point; <1 mixes with identity
};

struct TomographyResult {
  CMatrix estimate;
  std::vector<double> log_likelihood;  // one entry per iteration
  int iterations = 0;
  bool converged = false;
};

// Iterative fixed-point state reconstruction (rho <- N[R rho R] with
// R = sum_k (f_k / p_k) E_k) from Pauli-pair settings. Errors when the
// settings do not span the operator space, naming the missing directions.
TomographyResult mle_state(const StateCounts& counts,
                           const TomographyOptions& opts = {});

struct DetectorResult {
  std::vector<TomographyResult> outcomes;   // one estimate per outcome
  double completeness_deviation = 0.0;      // max-abs of (sum estimates - I)
};

// Iterative detector reconstruction: effects updated by the probe-weighted
// fixed point and jointly renormalized through the canonical inverse-root
// rescaling so the estimates always sum to I.
DetectorResult mle_detector(const DetectorCounts& counts,
                            const ProbeSet& probes, int n_outcomes = 4,
                            const TomographyOptions& opts = {});

// Fidelity of trace-normalized PSD operators: (Tr sqrt(sqrt(a) b sqrt(a)))^2
// on a/Tr(a), b/Tr(b). Errors on (numerically) zero trace.
double operator_fidelity(const CMatrix& a, const CMatrix& b);

// Trace distance (1/2) ||a - b||_1 of two hermitian matrices.
double trace_distance(const CMatrix& a, const CMatrix& b);

}  // namespace qspeed
