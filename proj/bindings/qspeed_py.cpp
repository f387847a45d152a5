#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qspeed/config.hpp"
#include "qspeed/dynamics.hpp"
#include "qspeed/fisher.hpp"
#include "qspeed/fixtures.hpp"
#include "qspeed/speed.hpp"
#include "qspeed/states.hpp"
#include "qspeed/swapnet.hpp"
#include "qspeed/tomography.hpp"
#include "qspeed/version.hpp"
#include "qspeed/waveplate.hpp"

namespace py = pybind11;
using namespace qspeed;

namespace {

DensityMatrix dm(const CMatrix& m) { return DensityMatrix::from_matrix(m); }

SpinAxis ax(const std::string& name) { return axis_from_name(name); }

const CMFunction& metric(const std::string& name) {
  if (name == "sld") return cm_sld();
  if (name == "wy") return cm_wy();
  throw ValidationError("unknown metric '" + name + "' (expected sld|wy)");
}

JonesConvention conv(const std::string& name) {
  return name.empty() ? JonesConvention::Diagonal : convention_from_name(name);
}

ProjectorSource psource(const std::string& name) {
  return projector_source_from_name(name);
}

NoiseModel make_noise(const std::string& projectors, double visibility) {
  const ProjectorSource src = psource(projectors);
  if (src == ProjectorSource::Custom) return NoiseModel::reconstructed_apparatus();
  NoiseModel n;
  n.visibility = visibility;
  n.projector_source = src;
  return n;
}

py::array_t<double> table_array(const JointProbabilities& probs) {
  py::array_t<double> out({4, 4});
  auto r = out.mutable_unchecked<2>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = probs.table[i][j];
  return out;
}

JointProbabilities table_from_array(const py::array_t<double>& a) {
  if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4)
    throw ValidationError("probability table must be 4x4");
  JointProbabilities probs;
  auto r = a.unchecked<2>();
  double total = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      probs.table[i][j] = r(i, j);
      total += r(i, j);
    }
  probs.completeness_deviation = std::abs(1.0 - total);
  return probs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "two-copy state-speed toolkit: Fisher information, speed "
            "witnesses, swap-network simulation, tomography, waveplates";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);

  // --- states -------------------------------------------------------------
  m.def("bell_phi_plus", [] { return CVector(bell_phi_plus().vector()); });
  m.def("bell_phi_minus", [] { return CVector(bell_phi_minus().vector()); });
  m.def("bell_psi_plus", [] { return CVector(bell_psi_plus().vector()); });
  m.def("bell_psi_minus", [] { return CVector(bell_psi_minus().vector()); });
  m.def(
      "bell_mixture", [](double p) { return bell_mixture(p).matrix(); },
      py::arg("p"), "p |phi+><phi+| + (1-p) |phi-><phi-|");
  m.def(
      "purity", [](const CMatrix& rho) { return dm(rho).purity(); },
      py::arg("rho"));
  m.def(
      "validate_state",
      [](const CMatrix& rho) { return dm(rho).matrix(); }, py::arg("rho"),
      "Checks hermiticity, unit trace and positivity; returns the "
      "hermitized matrix.");
  m.def(
      "repair_state",
      [](const CMatrix& rho) { return DensityMatrix::repaired(rho).matrix(); },
      py::arg("rho"),
      "Clips negative eigenvalues and renormalizes the trace; for "
      "reconstructed data with rounding noise.");
  m.def(
      "fidelity_pure",
      [](const CVector& psi, const CMatrix& rho) {
        return fidelity_pure(PureState::from_vector(psi), dm(rho));
      },
      py::arg("psi"), py::arg("rho"), "<psi| rho |psi>");

  // --- dynamics -----------------------------------------------------------
  m.def(
      "pauli", [](const std::string& a) { return pauli(ax(a)); },
      py::arg("axis"));
  m.def(
      "spin_half", [](const std::string& a) { return spin_half(ax(a)); },
      py::arg("axis"));
  m.def(
      "additive_hamiltonian",
      [](const std::string& a, int n) {
        return additive_hamiltonian(spin_half(ax(a)), n);
      },
      py::arg("axis"), py::arg("n"),
      "Sum of single-site spin-1/2 generators on n qubits.");
  m.def("unitary_of", &unitary_of, py::arg("hamiltonian"), py::arg("tau"));
  m.def(
      "evolve",
      [](const CMatrix& rho, const CMatrix& u) {
        return evolve(dm(rho), u).matrix();
      },
      py::arg("rho"), py::arg("u"));

  // --- fisher information -------------------------------------------------
  m.def(
      "sldf", [](const CMatrix& rho, const CMatrix& h) { return sldf(dm(rho), h); },
      py::arg("rho"), py::arg("h"),
      "Quantum Fisher information (symmetric logarithmic derivative metric).");
  m.def(
      "qfi",
      [](const CMatrix& rho, const CMatrix& h, const std::string& name) {
        return qfi_f(dm(rho), h, metric(name));
      },
      py::arg("rho"), py::arg("h"), py::arg("metric") = "sld",
      "Metric-adjusted Fisher information; metric is 'sld' or 'wy'.");
  m.def(
      "variance",
      [](const CMatrix& rho, const CMatrix& h) { return variance(dm(rho), h); },
      py::arg("rho"), py::arg("h"), "<H^2> - <H>^2");

  // --- speed and witnesses ------------------------------------------------
  py::class_<SpeedResult>(m, "SpeedResult")
      .def_readonly("squared_speed", &SpeedResult::squared_speed)
      .def_readonly("speed", &SpeedResult::speed)
      .def_readonly("tau", &SpeedResult::tau)
      .def_readonly("purity", &SpeedResult::purity)
      .def_readonly("overlap", &SpeedResult::overlap)
      .def_readonly("clipped", &SpeedResult::clipped)
      .def("__repr__", [](const SpeedResult& r) {
        return "SpeedResult(squared_speed=" + std::to_string(r.squared_speed) +
               ", tau=" + std::to_string(r.tau) + ")";
      });
  m.def(
      "squared_speed_tau",
      [](const CMatrix& rho, const CMatrix& h, double tau) {
        return squared_speed_tau(dm(rho), h, tau);
      },
      py::arg("rho"), py::arg("h"), py::arg("tau"));
  m.def(
      "squared_speed_zero",
      [](const CMatrix& rho, const CMatrix& h) {
        return squared_speed_zero(dm(rho), h);
      },
      py::arg("rho"), py::arg("h"));
  m.def("speed_from_measurements", &speed_from_measurements, py::arg("purity"),
        py::arg("overlap"), py::arg("tau"));

  py::class_<WitnessVerdict>(m, "WitnessVerdict")
      .def_readonly("s_value", &WitnessVerdict::s_value)
      .def_readonly("threshold", &WitnessVerdict::threshold)
      .def_readonly("entangled_useful", &WitnessVerdict::entangled_useful)
      .def("__repr__", [](const WitnessVerdict& w) {
        return std::string("WitnessVerdict(entangled_useful=") +
               (w.entangled_useful ? "True" : "False") + ")";
      });
  m.def("entanglement_witness", &entanglement_witness, py::arg("s_value"),
        py::arg("n"));

  py::class_<SandwichBounds>(m, "SandwichBounds")
      .def_readonly("lower", &SandwichBounds::lower)
      .def_readonly("i_f", &SandwichBounds::i_f)
      .def_readonly("upper", &SandwichBounds::upper);
  m.def(
      "depolarized_sandwich",
      [](const CMatrix& rho, const CMatrix& h) {
        return depolarized_sandwich(dm(rho), h);
      },
      py::arg("rho"), py::arg("h"));

  // --- swap network -------------------------------------------------------
  m.def("singlet_projector", &singlet_projector);
  m.def("local_swap", &local_swap);
  m.def(
      "overlap_via_swap",
      [](const CMatrix& rho, const CMatrix& sigma, int n) {
        return overlap_via_swap(dm(rho), dm(sigma), n);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("n"));
  m.def(
      "two_copy_joint_state",
      [](double p, const std::string& a, double tau, bool evolve_second) {
        return two_copy_joint_state(p, ax(a), tau, evolve_second).matrix();
      },
      py::arg("p"), py::arg("axis"), py::arg("tau"), py::arg("evolve_second"));
  m.def(
      "bsm_joint_probs",
      [](const CMatrix& joint, const std::string& projectors,
         double visibility) {
        const NoiseModel noise = make_noise(projectors, visibility);
        return table_array(bsm_joint_probs(dm(joint), noise.bsm1(),
                                           noise.bsm2()));
      },
      py::arg("joint"), py::arg("projectors") = "ideal",
      py::arg("visibility") = 1.0,
      "4x4 joint Bell-outcome probabilities of the two pair measurements.");
  m.def(
      "swap_value_from_probs",
      [](const py::array_t<double>& table) {
        return swap_value_from_probs(table_from_array(table));
      },
      py::arg("table"), "1 - 2 f1 - 2 f2 + 4 f12 on a 4x4 outcome table.");

  py::class_<ProtocolResult>(m, "ProtocolResult")
      .def_readonly("s_estimate", &ProtocolResult::s_estimate)
      .def_readonly("error_bar", &ProtocolResult::error_bar)
      .def_readonly("purity_estimate", &ProtocolResult::purity_estimate)
      .def_readonly("overlap_estimate", &ProtocolResult::overlap_estimate)
      .def_readonly("purity_stderr", &ProtocolResult::purity_stderr)
      .def_readonly("overlap_stderr", &ProtocolResult::overlap_stderr)
      .def_readonly("clipped", &ProtocolResult::clipped)
      .def("__repr__", [](const ProtocolResult& r) {
        return "ProtocolResult(s_estimate=" + std::to_string(r.s_estimate) +
               ", error_bar=" + std::to_string(r.error_bar) + ")";
      });
  m.def(
      "run_protocol_point",
      [](double p, const std::string& a, double tau,
         std::optional<std::int64_t> shots, int mc_samples,
         std::uint64_t seed, const std::string& projectors, double visibility,
         const std::string& sampling) {
        ProtocolPoint point{p, ax(a), tau};
        ProtocolShots budget;
        budget.shots = shots;
        budget.mc_samples = mc_samples;
        budget.seed = seed;
        budget.mode = sampling_mode_from_name(sampling);
        return run_protocol_point(point, make_noise(projectors, visibility),
                                  budget);
      },
      py::arg("p"), py::arg("axis"), py::arg("tau"),
      py::arg("shots") = std::nullopt, py::arg("mc_samples") = 1000,
      py::arg("seed") = 42, py::arg("projectors") = "ideal",
      py::arg("visibility") = 1.0, py::arg("sampling") = "poisson",
      "Full two-copy protocol at one point; shots=None evaluates exactly.");

  // --- tomography ----------------------------------------------------------
  py::class_<TomographyResult>(m, "TomographyResult")
      .def_readonly("estimate", &TomographyResult::estimate)
      .def_readonly("log_likelihood", &TomographyResult::log_likelihood)
      .def_readonly("iterations", &TomographyResult::iterations)
      .def_readonly("converged", &TomographyResult::converged);
  m.def(
      "state_counts_exact",
      [](const CMatrix& rho, double shots) {
        const StateCounts c = StateCounts::exact_from_state(dm(rho), shots);
        return py::make_tuple(c.settings, c.counts);
      },
      py::arg("rho"), py::arg("shots") = 1.0,
      "Expected Pauli-pair coincidence counts (settings, 4-outcome rows).");
  m.def(
      "state_counts_sampled",
      [](const CMatrix& rho, std::int64_t shots, std::uint64_t seed) {
        const StateCounts c = StateCounts::sampled_from_state(dm(rho), shots, seed);
        return py::make_tuple(c.settings, c.counts);
      },
      py::arg("rho"), py::arg("shots"), py::arg("seed") = 42);
  m.def(
      "mle_state",
      [](const std::vector<std::string>& settings,
         const std::vector<std::array<double, 4>>& counts) {
        StateCounts c;
        c.settings = settings;
        c.counts = counts;
        return mle_state(c);
      },
      py::arg("settings"), py::arg("counts"),
      "Maximum-likelihood density matrix from Pauli-pair counts.");
  m.def("operator_fidelity", &operator_fidelity, py::arg("a"), py::arg("b"),
        "Uhlmann fidelity of trace-normalized positive operators.");
  m.def("trace_distance", &trace_distance, py::arg("a"), py::arg("b"));

  // --- waveplates ----------------------------------------------------------
  m.def(
      "qwp",
      [](double theta, const std::string& c) { return qwp(theta, conv(c)); },
      py::arg("theta"), py::arg("convention") = "diagonal");
  m.def(
      "hwp",
      [](double theta, const std::string& c) { return hwp(theta, conv(c)); },
      py::arg("theta"), py::arg("convention") = "diagonal");
  m.def(
      "euler_unitary",
      [](double xi, double eta, double zeta) {
        return euler_unitary({xi, eta, zeta});
      },
      py::arg("xi"), py::arg("eta"), py::arg("zeta"),
      "exp(-i xi sy/2) exp(-i eta sx/2) exp(-i zeta sy/2) in spin operators "
      "(half-angle rotations).");
  m.def(
      "decompose",
      [](double xi, double eta, double zeta, const std::string& c) {
        const WaveplateSequence s = decompose({xi, eta, zeta}, conv(c));
        return py::make_tuple(s.theta1, s.theta2, s.theta3);
      },
      py::arg("xi"), py::arg("eta"), py::arg("zeta"),
      py::arg("convention") = "diagonal",
      "Quarter-half-quarter plate angles implementing the rotation.");
  m.def(
      "compose",
      [](double t1, double t2, double t3, const std::string& c) {
        return compose({t1, t2, t3}, conv(c));
      },
      py::arg("theta1"), py::arg("theta2"), py::arg("theta3"),
      py::arg("convention") = "diagonal");
  m.def("equal_up_to_phase", &equal_up_to_phase, py::arg("a"), py::arg("b"),
        py::arg("tol") = 1e-9);

  // --- stored apparatus data ------------------------------------------------
  m.def(
      "fixture",
      [](const std::string& name) {
        const auto& all = fixtures::all_raw();
        const auto it = all.find(name);
        if (it == all.end())
          throw ValidationError("unknown fixture '" + name + "'");
        return it->second;
      },
      py::arg("name"),
      "Raw reconstructed matrix by name (copy1_phi_plus, bsm2_psi_minus, ...).");
  m.def("fixture_names", [] {
    std::vector<std::string> names;
    for (const auto& [name, unused] : fixtures::all_raw()) names.push_back(name);
    return names;
  });
}
