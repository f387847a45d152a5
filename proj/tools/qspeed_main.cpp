#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qspeed/experiment.hpp"
#include "qspeed/matrix_json.hpp"
#include "qspeed/tomography.hpp"
#include "qspeed/version.hpp"
#include "qspeed/waveplate.hpp"

namespace {

using namespace qspeed;

struct CommonOpts {
  std::string config_file;
  std::string override_json;
  std::string axis;
  std::string shots;
  std::string projectors;
  std::string sampling;
  std::optional<double> tau;
  std::optional<double> visibility;
  std::optional<std::uint64_t> seed;
  std::optional<int> mc_samples;
  std::string output_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_file, "TOML config file");
  cmd->add_option("--override", opts.override_json,
                  "JSON object applied over the config");
  cmd->add_option("--tau", opts.tau, "evolution interval");
  cmd->add_option("--seed", opts.seed, "random seed");
  cmd->add_option("--shots", opts.shots, "shots per run, or 'exact'");
  cmd->add_option("--mc", opts.mc_samples, "Monte Carlo resamples");
  cmd->add_option("--visibility", opts.visibility,
                  "interference visibility in [0,1]");
  cmd->add_option("--projectors", opts.projectors,
                  "ideal|fixture1|fixture2|apparatus");
  cmd->add_option("--sampling", opts.sampling, "poisson|multinomial");
  cmd->add_option("--output-dir", opts.output_dir, "report directory");
}

ExperimentConfig resolve_config(const CommonOpts& opts,
                                const std::string& default_axis) {
  ExperimentConfig cfg = opts.config_file.empty()
                             ? ExperimentConfig::defaults()
                             : ExperimentConfig::from_toml_file(opts.config_file);
  if (opts.config_file.empty()) {
    if (default_axis == "all") cfg.all_axes = true;
  }
  if (!opts.override_json.empty()) cfg.apply_json_overrides(opts.override_json);

  // Direct flags win over both.
  if (!opts.axis.empty()) {
    if (opts.axis == "all") {
      cfg.all_axes = true;
    } else {
      cfg.all_axes = false;
      cfg.axis = axis_from_name(opts.axis);
    }
  }
  if (opts.tau) {
    if (*opts.tau <= 0.0) throw ValidationError("tau must be positive");
    cfg.tau = *opts.tau;
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (!opts.shots.empty()) {
    if (opts.shots == "exact") {
      cfg.shots.reset();
    } else {
      try {
        cfg.shots = std::stoll(opts.shots);
      } catch (const std::exception&) {
        throw ValidationError("shots must be an integer or 'exact'");
      }
      if (*cfg.shots < 1) throw ValidationError("shots must be >= 1");
    }
  }
  if (opts.mc_samples) {
    if (*opts.mc_samples < 1)
      throw ValidationError("mc_samples must be >= 1");
    cfg.mc_samples = *opts.mc_samples;
  }
  if (opts.visibility) {
    if (*opts.visibility < 0.0 || *opts.visibility > 1.0)
      throw ValidationError("visibility must lie in [0, 1]");
    cfg.visibility = *opts.visibility;
  }
  if (!opts.projectors.empty())
    cfg.projector_source = projector_source_from_name(opts.projectors);
  if (!opts.sampling.empty())
    cfg.sampling = sampling_mode_from_name(opts.sampling);
  if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
  return cfg;
}

int cmd_table2(const CommonOpts& opts) {
  ExperimentConfig cfg = resolve_config(opts, "x");
  if (cfg.all_axes)
    throw ValidationError("table2 reports one axis at a time (use --axis)");
  const TheoryReport report = make_theory_report(cfg);

  const std::string stem =
      cfg.output_dir + "/table2_" + axis_name(cfg.axis);
  write_text_file(stem + ".csv", theory_report_csv(report, cfg));
  write_text_file(stem + ".json",
                  theory_report_json(report, cfg).dump(2) + "\n");

  std::cout << "axis " << axis_name(cfg.axis) << ", tau "
            << format_double(cfg.tau) << "\n";
  for (const Crossing& c : report.s_crossings) {
    std::cout << "  squared speed crosses 0.5 (" << c.direction
              << ") at p = " << format_double(c.p) << "\n";
  }
  for (const Crossing& c : report.i_f_crossings) {
    std::cout << "  fisher information crosses 0.5 (" << c.direction
              << ") at p = " << format_double(c.p) << "\n";
  }
  std::cout << "wrote " << stem << ".csv and " << stem << ".json\n";
  return 0;
}

int cmd_fig3(const CommonOpts& opts) {
  ExperimentConfig cfg = resolve_config(opts, "all");
  if (!cfg.shots && opts.shots.empty() && opts.config_file.empty() &&
      opts.override_json.empty()) {
    cfg.shots = 1000000;  // default sampled sweep
  }
  const SweepReport report = make_sweep_report(cfg);

  const std::string stem = cfg.output_dir + "/fig3";
  write_text_file(stem + ".csv", sweep_report_csv(report, cfg));
  write_text_file(stem + ".json",
                  sweep_report_json(report, cfg).dump(2) + "\n");

  int certified = 0;
  for (const SweepRow& row : report.rows) certified += row.witness;
  std::cout << report.rows.size() << " points, " << certified
            << " certify entanglement (threshold 0.5)\n";
  std::cout << "wrote " << stem << ".csv and " << stem << ".json\n";
  return 0;
}

int cmd_tomo(const std::string& fixtures_dir, const std::string& counts_file,
             const CommonOpts& opts) {
  ExperimentConfig cfg = resolve_config(opts, "x");
  const TomoInputs inputs = fixtures_dir.empty()
                                ? TomoInputs::builtin()
                                : TomoInputs::from_directory(fixtures_dir);
  const TomoReport report = make_tomo_report(inputs);
  nlohmann::json j = tomo_report_json(report);

  if (!counts_file.empty()) {
    std::ifstream in(counts_file);
    if (!in) throw ValidationError("cannot open " + counts_file);
    nlohmann::json cj;
    in >> cj;
    const StateCounts counts = StateCounts::from_json(cj);
    const TomographyResult mle = mle_state(counts);
    j["user_state"] = {
        {"iterations", mle.iterations},
        {"converged", mle.converged},
        {"estimate", matrix_to_json(mle.estimate)},
        {"fidelity_phi_plus",
         fidelity_pure(bell_phi_plus(),
                       DensityMatrix::repaired(mle.estimate))}};
  }

  const std::string path = cfg.output_dir + "/tomo.json";
  write_text_file(path, j.dump(2) + "\n");

  std::cout << "state fidelities vs ideal Bell targets:\n";
  for (const auto& [name, f] : report.state_fidelities) {
    std::cout << "  " << name << ": " << format_double(f) << "\n";
  }
  std::cout << "measurement-operator mean fidelities: set1 "
            << format_double(report.bsm1_mean) << ", set2 "
            << format_double(report.bsm2_mean) << "\n";
  std::cout << "self-consistency: state trace distance "
            << format_double(report.state_mle_trace_distance)
            << " (monotone likelihood: "
            << (report.state_mle_monotone ? "yes" : "no")
            << "), detector max trace distance "
            << format_double(report.detector_mle_max_trace_distance)
            << " (monotone likelihood: "
            << (report.detector_mle_monotone ? "yes" : "no") << ")\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_decompose(double xi, double eta, double zeta,
                  const std::string& convention) {
  const JonesConvention conv = convention.empty()
                                   ? JonesConvention::Diagonal
                                   : convention_from_name(convention);
  const EulerAngles e{xi, eta, zeta};
  const WaveplateSequence seq = decompose(e, conv);
  const CMatrix target = euler_unitary(e);
  const CMatrix product = compose(seq, conv);
  const bool ok = equal_up_to_phase(product, target, 1e-9);

  const double deg = 180.0 / 3.141592653589793238462643383279502884;
  std::cout << "convention: " << convention_name(conv) << "\n";
  std::cout << "qwp1 theta1 = " << format_double(seq.theta1) << " rad ("
            << format_double(seq.theta1 * deg) << " deg)\n";
  std::cout << "hwp  theta2 = " << format_double(seq.theta2) << " rad ("
            << format_double(seq.theta2 * deg) << " deg)\n";
  std::cout << "qwp2 theta3 = " << format_double(seq.theta3) << " rad ("
            << format_double(seq.theta3 * deg) << " deg)\n";
  std::cout << "sequence reproduces the rotation up to global phase: "
            << (ok ? "yes" : "NO") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-copy state-speed experiment toolkit"};
  app.set_version_flag("--version", qspeed::kVersionString);
  app.require_subcommand(1);

  CommonOpts table2_opts, fig3_opts, tomo_opts;

  CLI::App* table2 =
      app.add_subcommand("table2", "exact Fisher/speed grid and thresholds");
  table2->add_option("--axis", table2_opts.axis, "x|y|z");
  add_common(table2, table2_opts);

  CLI::App* fig3 = app.add_subcommand(
      "fig3", "sampled two-copy protocol sweep with error bars");
  fig3->add_option("--axis", fig3_opts.axis, "all|x|y|z");
  add_common(fig3, fig3_opts);

  std::string fixtures_dir, counts_file;
  CLI::App* tomo = app.add_subcommand(
      "tomo", "reconstruction diagnostics on the stored apparatus data");
  tomo->add_option("--fixtures", fixtures_dir,
                   "directory of matrix-JSON fixture files");
  tomo->add_option("--state-counts", counts_file,
                   "JSON state-tomography counts to reconstruct");
  add_common(tomo, tomo_opts);

  double xi = 0.0, eta = 0.0, zeta = 0.0;
  std::string convention;
  CLI::App* dec = app.add_subcommand(
      "decompose", "quarter-half-quarter plate angles for a rotation");
  dec->add_option("--xi", xi, "first y-rotation angle (rad)")->required();
  dec->add_option("--eta", eta, "x-rotation angle (rad)")->required();
  dec->add_option("--zeta", zeta, "last y-rotation angle (rad)")->required();
  dec->add_option("--convention", convention, "diagonal|computational");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table2->parsed()) return cmd_table2(table2_opts);
    if (fig3->parsed()) return cmd_fig3(fig3_opts);
    if (tomo->parsed()) return cmd_tomo(fixtures_dir, counts_file, tomo_opts);
    if (dec->parsed()) return cmd_decompose(xi, eta, zeta, convention);
  } catch (const qspeed::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
