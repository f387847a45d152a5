#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qspeed/config.hpp"
#include "qspeed/dynamics.hpp"

namespace qspeed {

// Threshold crossings of a monotone-piece scalar function of p, located by
// bisection on the exact pipeline.
struct Crossing {
  double p = 0.0;
  std::string direction;  // "rising" or "falling"
};

std::vector<Crossing> find_crossings(const std::function<double(double)>& f,
                                     double level, double lo, double hi,
                                     double tol = 1e-6);

// --- theory table -----------------------------------------------------------

struct TheoryRow {
  double p = 0.0;
  double i_f = 0.0;      // sldf(rho_p, H2)
  double s_tau = 0.0;    // squared speed at tau
  bool witness = false;  // s_tau > n/4 (n = 2)
};

struct TheoryReport {
  SpinAxis axis = SpinAxis::X;
  double tau = 0.0;
  std::vector<TheoryRow> rows;
  std::vector<Crossing> s_crossings;    // S_tau = 1/2
  std::vector<Crossing> i_f_crossings;  // I_F = 1/2
};

TheoryReport make_theory_report(const ExperimentConfig& cfg);

// --- sampled protocol sweep --------------------------------------------------

struct SweepRow {
  SpinAxis axis = SpinAxis::X;
  double p = 0.0;
  double s_exact = 0.0;
  double s_estimate = 0.0;
  double error_bar = 0.0;
  double s_fixture_copy1 = 0.0;  // exact speed of the reconstructed-state mix
  double s_fixture_copy2 = 0.0;
  bool witness = false;          // on the estimate
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

SweepReport make_sweep_report(const ExperimentConfig& cfg);

// --- tomography diagnostics ---------------------------------------------------

// Reconstructed matrices the diagnostics run on: compiled-in by default, or
// loaded from a directory of matrix-JSON files with the canonical names
// (copy1_phi_plus.json ... bsm2_psi_minus.json).
struct TomoInputs {
  std::vector<std::pair<std::string, DensityMatrix>> states;
  EffectSet bsm1;
  EffectSet bsm2;

  static TomoInputs builtin();
  static TomoInputs from_directory(const std::string& dir);
};

struct TomoReport {
  // State fidelities <bell|rho|bell> of the four reconstructed matrices.
  std::vector<std::pair<std::string, double>> state_fidelities;
  // Per-outcome operator fidelities of each reconstructed BSM vs ideal.
  std::vector<std::pair<std::string, double>> bsm1_fidelities;
  std::vector<std::pair<std::string, double>> bsm2_fidelities;
  double bsm1_mean = 0.0;
  double bsm2_mean = 0.0;
  double bsm1_completeness = 0.0;
  double bsm2_completeness = 0.0;
  // MLE self-consistency: exact counts from fixtures, reconstruct, compare.
  double state_mle_trace_distance = 0.0;
  bool state_mle_monotone = false;
  double detector_mle_max_trace_distance = 0.0;
  bool detector_mle_monotone = false;
};

TomoReport make_tomo_report(const TomoInputs& inputs);
TomoReport make_tomo_report();  // on the compiled-in matrices

// --- serialization ------------------------------------------------------------

// Reports embed the resolved config and library version; no timestamps, so
// identical configs yield byte-identical files.
nlohmann::json theory_report_json(const TheoryReport& r,
                                  const ExperimentConfig& cfg);
std::string theory_report_csv(const TheoryReport& r,
                              const ExperimentConfig& cfg);
nlohmann::json sweep_report_json(const SweepReport& r,
                                 const ExperimentConfig& cfg);
std::string sweep_report_csv(const SweepReport& r, const ExperimentConfig& cfg);
nlohmann::json tomo_report_json(const TomoReport& r);

void write_text_file(const std::string& path, const std::string& text);

// Formats a double with "%.12g" — the fixed CSV number format.
std::string format_double(double x);

}  // namespace qspeed
