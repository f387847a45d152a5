#include "qspeed/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qspeed/fisher.hpp"
#include "qspeed/fixtures.hpp"
#include "qspeed/matrix_json.hpp"
#include "qspeed/speed.hpp"
#include "qspeed/tomography.hpp"
#include "qspeed/version.hpp"

namespace qspeed {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::vector<Crossing> find_crossings(const std::function<double(double)>& f,
                                     double level, double lo, double hi,
                                     double tol) {
  if (!(hi > lo)) throw ValidationError("find_crossings: need hi > lo");
  std::vector<Crossing> out;
  const int grid = 200;
  double prev_x = lo;
  double prev_v = f(lo) - level;
  for (int k = 1; k <= grid; ++k) {
    const double x = lo + (hi - lo) * k / grid;
    const double v = f(x) - level;
    if ((prev_v <= 0.0 && v > 0.0) || (prev_v >= 0.0 && v < 0.0)) {
      double a = prev_x, b = x, fa = prev_v;
      while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid) - level;
        if ((fa <= 0.0) == (fm <= 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      Crossing c;
      c.p = 0.5 * (a + b);
      c.direction = v > 0.0 ? "rising" : "falling";
      out.push_back(c);
    }
    prev_x = x;
    prev_v = v;
  }
  return out;
}

TheoryReport make_theory_report(const ExperimentConfig& cfg) {
  const CMatrix H = additive_hamiltonian(spin_half(cfg.axis), 2);
  TheoryReport report;
  report.axis = cfg.axis;
  report.tau = cfg.tau;
  for (double p : cfg.p_grid) {
    TheoryRow row;
    row.p = p;
    const DensityMatrix rho = bell_mixture(p);
    row.i_f = sldf(rho, H);
    row.s_tau = squared_speed_tau(rho, H, cfg.tau).squared_speed;
    row.witness = entanglement_witness(row.s_tau, 2).entangled_useful;
    report.rows.push_back(row);
  }
  const auto s_of_p = [&](double p) {
    return squared_speed_tau(bell_mixture(p), H, cfg.tau).squared_speed;
  };
  const auto i_f_of_p = [&](double p) {
    return sldf(bell_mixture(p), H);
  };
  report.s_crossings = find_crossings(s_of_p, 0.5, 0.0, 1.0);
  report.i_f_crossings = find_crossings(i_f_of_p, 0.5, 0.0, 1.0);
  return report;
}

SweepReport make_sweep_report(const ExperimentConfig& cfg) {
  std::vector<SpinAxis> axes;
  if (cfg.all_axes) {
    axes = {SpinAxis::X, SpinAxis::Y, SpinAxis::Z};
  } else {
    axes = {cfg.axis};
  }

  SweepReport report;
  const NoiseModel noise = cfg.noise_model();
  for (size_t a = 0; a < axes.size(); ++a) {
    const SpinAxis axis = axes[a];
    const CMatrix H = additive_hamiltonian(spin_half(axis), 2);
    for (size_t i = 0; i < cfg.p_grid.size(); ++i) {
      const double p = cfg.p_grid[i];
      SweepRow row;
      row.axis = axis;
      row.p = p;
      row.s_exact =
          squared_speed_tau(bell_mixture(p), H, cfg.tau).squared_speed;
      row.s_fixture_copy1 =
          squared_speed_tau(fixtures::copy_mixture(1, p), H, cfg.tau)
              .squared_speed;
      row.s_fixture_copy2 =
          squared_speed_tau(fixtures::copy_mixture(2, p), H, cfg.tau)
              .squared_speed;

      ProtocolPoint point{p, axis, cfg.tau};
      ProtocolShots shots;
      shots.shots = cfg.shots;
      shots.mc_samples = cfg.mc_samples;
      shots.seed = derive_seed(cfg.seed, a * 1000 + i);
      shots.mode = cfg.sampling;
      const ProtocolResult res = run_protocol_point(point, noise, shots);
      row.s_estimate = res.s_estimate;
      row.error_bar = res.error_bar;
      row.witness = entanglement_witness(res.s_estimate, 2).entangled_useful;
      report.rows.push_back(row);
    }
  }
  return report;
}

TomoInputs TomoInputs::builtin() {
  TomoInputs in{{{"copy1_phi_plus", fixtures::copy1_phi_plus()},
                 {"copy1_phi_minus", fixtures::copy1_phi_minus()},
                 {"copy2_phi_plus", fixtures::copy2_phi_plus()},
                 {"copy2_phi_minus", fixtures::copy2_phi_minus()}},
                fixtures::bsm1_effects(),
                fixtures::bsm2_effects()};
  return in;
}

TomoInputs TomoInputs::from_directory(const std::string& dir) {
  const Tolerances tol = reconstructed_data_tolerances();
  auto state = [&](const std::string& stem) {
    return DensityMatrix::from_matrix(load_matrix(dir + "/" + stem + ".json"),
                                      tol);
  };
  auto effect_set = [&](int bsm) {
    static const char* stems[] = {"phi_plus", "phi_minus", "psi_plus",
                                  "psi_minus"};
    std::vector<CMatrix> effects;
    std::vector<std::string> labels;
    for (int k = 0; k < 4; ++k) {
      effects.push_back(load_matrix(dir + "/bsm" + std::to_string(bsm) + "_" +
                                    stems[k] + ".json"));
      labels.push_back(bell_label(static_cast<BellOutcome>(k)));
    }
    return EffectSet::from_effects(std::move(effects), std::move(labels),
                                   2e-2, tol);
  };
  TomoInputs in{{{"copy1_phi_plus", state("copy1_phi_plus")},
                 {"copy1_phi_minus", state("copy1_phi_minus")},
                 {"copy2_phi_plus", state("copy2_phi_plus")},
                 {"copy2_phi_minus", state("copy2_phi_minus")}},
                effect_set(1),
                effect_set(2)};
  return in;
}

TomoReport make_tomo_report() { return make_tomo_report(TomoInputs::builtin()); }

TomoReport make_tomo_report(const TomoInputs& inputs) {
  TomoReport report;

  for (const auto& [name, rho] : inputs.states) {
    const PureState& target = name.find("plus") != std::string::npos
                                  ? bell_phi_plus()
                                  : bell_phi_minus();
    report.state_fidelities.emplace_back(name, fidelity_pure(target, rho));
  }

  const EffectSet ideal = ideal_bell_effects();
  const EffectSet& bsm1 = inputs.bsm1;
  const EffectSet& bsm2 = inputs.bsm2;
  report.bsm1_completeness = bsm1.completeness_deviation;
  report.bsm2_completeness = bsm2.completeness_deviation;
  for (int k = 0; k < 4; ++k) {
    const double f1 = operator_fidelity(bsm1.effects[k], ideal.effects[k]);
    const double f2 = operator_fidelity(bsm2.effects[k], ideal.effects[k]);
    report.bsm1_fidelities.emplace_back(bsm1.labels[k], f1);
    report.bsm2_fidelities.emplace_back(bsm2.labels[k], f2);
    report.bsm1_mean += f1 / 4.0;
    report.bsm2_mean += f2 / 4.0;
  }

  // State MLE self-consistency: exact counts generated from the
  // reconstructed phi+ matrix of copy 1, reconstructed, compared.
  {
    const DensityMatrix& target = inputs.states.at(0).second;
    const StateCounts counts = StateCounts::exact_from_state(target);
    const TomographyResult mle = mle_state(counts);
    report.state_mle_trace_distance =
        trace_distance(mle.estimate, target.matrix());
    report.state_mle_monotone = true;
    for (size_t i = 1; i < mle.log_likelihood.size(); ++i) {
      if (mle.log_likelihood[i] < mle.log_likelihood[i - 1] - 1e-12)
        report.state_mle_monotone = false;
    }
  }

  // Detector MLE self-consistency: exact probe statistics from the
  // reconstructed measurement set 1, reconstructed, compared per outcome on
  // trace-normalized operators.
  {
    const ProbeSet& probes = ProbeSet::two_qubit_products();
    const DetectorCounts counts =
        DetectorCounts::exact_from_effects(bsm1, probes);
    const DetectorResult det = mle_detector(counts, probes, 4);
    for (int k = 0; k < 4; ++k) {
      const CMatrix& est = det.outcomes[k].estimate;
      const CMatrix a = est / est.trace().real();
      const CMatrix b = bsm1.effects[k] / bsm1.effects[k].trace().real();
      report.detector_mle_max_trace_distance = std::max(
          report.detector_mle_max_trace_distance, trace_distance(a, b));
    }
    report.detector_mle_monotone = true;
    const auto& lls = det.outcomes[0].log_likelihood;
    for (size_t i = 1; i < lls.size(); ++i) {
      if (lls[i] < lls[i - 1] - 1e-11) report.detector_mle_monotone = false;
    }
  }
  return report;
}

namespace {

nlohmann::json crossing_json(const std::vector<Crossing>& cs) {
  nlohmann::json out = nlohmann::json::array();
  for (const Crossing& c : cs) {
    out.push_back({{"p", c.p}, {"direction", c.direction}});
  }
  return out;
}

std::string csv_header(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "# " << kVersionString << "\n";
  out << "# config: " << cfg.to_json().dump() << "\n";
  return out.str();
}

}  // namespace

nlohmann::json theory_report_json(const TheoryReport& r,
                                  const ExperimentConfig& cfg) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TheoryRow& row : r.rows) {
    rows.push_back({{"p", row.p},
                    {"i_f", row.i_f},
                    {"s_tau", row.s_tau},
                    {"witness", row.witness}});
  }
  return nlohmann::json{{"version", kVersionString},
                        {"config", cfg.to_json()},
                        {"axis", axis_name(r.axis)},
                        {"tau", r.tau},
                        {"rows", rows},
                        {"s_crossings", crossing_json(r.s_crossings)},
                        {"i_f_crossings", crossing_json(r.i_f_crossings)}};
}

std::string theory_report_csv(const TheoryReport& r,
                              const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << csv_header(cfg);
  out << "p,i_f,s_tau,witness\n";
  for (const TheoryRow& row : r.rows) {
    out << format_double(row.p) << "," << format_double(row.i_f) << ","
        << format_double(row.s_tau) << ","
        << (row.witness ? "true" : "false") << "\n";
  }
  for (const Crossing& c : r.s_crossings) {
    out << "# s_tau crosses 0.5 (" << c.direction
        << ") at p = " << format_double(c.p) << "\n";
  }
  for (const Crossing& c : r.i_f_crossings) {
    out << "# i_f crosses 0.5 (" << c.direction
        << ") at p = " << format_double(c.p) << "\n";
  }
  return out.str();
}

nlohmann::json sweep_report_json(const SweepReport& r,
                                 const ExperimentConfig& cfg) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : r.rows) {
    rows.push_back({{"axis", axis_name(row.axis)},
                    {"p", row.p},
                    {"s_exact", row.s_exact},
                    {"s_estimate", row.s_estimate},
                    {"error_bar", row.error_bar},
                    {"s_fixture_copy1", row.s_fixture_copy1},
                    {"s_fixture_copy2", row.s_fixture_copy2},
                    {"witness", row.witness}});
  }
  return nlohmann::json{{"version", kVersionString},
                        {"config", cfg.to_json()},
                        {"threshold", 0.5},
                        {"rows", rows}};
}

std::string sweep_report_csv(const SweepReport& r,
                             const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << csv_header(cfg);
  out << "axis,p,s_exact,s_estimate,error_bar,s_fixture_copy1,"
         "s_fixture_copy2,witness\n";
  for (const SweepRow& row : r.rows) {
    out << axis_name(row.axis) << "," << format_double(row.p) << ","
        << format_double(row.s_exact) << "," << format_double(row.s_estimate)
        << "," << format_double(row.error_bar) << ","
        << format_double(row.s_fixture_copy1) << ","
        << format_double(row.s_fixture_copy2) << ","
        << (row.witness ? "true" : "false") << "\n";
  }
  return out.str();
}

nlohmann::json tomo_report_json(const TomoReport& r) {
  auto pairs = [](const std::vector<std::pair<std::string, double>>& v) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, x] : v) out[k] = x;
    return out;
  };
  return nlohmann::json{
      {"version", kVersionString},
      {"state_fidelities", pairs(r.state_fidelities)},
      {"bsm1_fidelities", pairs(r.bsm1_fidelities)},
      {"bsm2_fidelities", pairs(r.bsm2_fidelities)},
      {"bsm1_mean_fidelity", r.bsm1_mean},
      {"bsm2_mean_fidelity", r.bsm2_mean},
      {"bsm1_completeness_deviation", r.bsm1_completeness},
      {"bsm2_completeness_deviation", r.bsm2_completeness},
      {"state_mle_trace_distance", r.state_mle_trace_distance},
      {"state_mle_monotone", r.state_mle_monotone},
      {"detector_mle_max_trace_distance", r.detector_mle_max_trace_distance},
      {"detector_mle_monotone", r.detector_mle_monotone}};
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file " + path);
  out << text;
  if (!out) throw ValidationError("failed writing " + path);
}

}  // namespace qspeed
