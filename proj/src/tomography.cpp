#include "qspeed/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace qspeed {

// ---------------------------------------------------------------------------
// Probes and count containers
// ---------------------------------------------------------------------------

CVector ProbeSet::single_qubit(char label) {
  CVector v(2);
  const double inv = 1.0 / std::sqrt(2.0);
  switch (label) {
    case 'H': v << 1, 0; break;
    case 'V': v << 0, 1; break;
    case 'D': v << inv, inv; break;
    case 'A': v << inv, -inv; break;
    case 'R': v << inv, cplx(0, inv); break;
    case 'L': v << inv, cplx(0, -inv); break;
    default:
      throw ValidationError(std::string("unknown probe label '") + label +
                            "' (expected H V D A R L)");
  }
  return v;
}

const ProbeSet& ProbeSet::two_qubit_products() {
  static const ProbeSet set = [] {
    ProbeSet s;
    const std::string letters = "HVDARL";
    for (char a : letters) {
      for (char b : letters) {
        s.labels.push_back(std::string{a, b});
        s.states.push_back(tensor(single_qubit(a), single_qubit(b)));
      }
    }
    return s;
  }();
  return set;
}

namespace {

// Pauli-basis eigenstates, + outcome first: X -> (D, A), Y -> (R, L),
// Z -> (H, V).
std::pair<char, char> basis_kets(char basis) {
  switch (basis) {
    case 'X': return {'D', 'A'};
    case 'Y': return {'R', 'L'};
    case 'Z': return {'H', 'V'};
    default:
      throw ValidationError(std::string("unknown Pauli basis '") + basis +
                            "'");
  }
}

// The four rank-one projectors of a two-qubit Pauli-pair setting, outcome
// order (++, +-, -+, --).
std::vector<CMatrix> setting_projectors(const std::string& setting) {
  if (setting.size() != 2)
    throw ValidationError("setting label must name two Pauli bases, got '" +
                          setting + "'");
  const auto [k1p, k1m] = basis_kets(setting[0]);
  const auto [k2p, k2m] = basis_kets(setting[1]);
  std::vector<CMatrix> out;
  for (char a : {k1p, k1m}) {
    for (char b : {k2p, k2m}) {
      const CVector v =
          tensor(ProbeSet::single_qubit(a), ProbeSet::single_qubit(b));
      out.push_back(v * v.adjoint());
    }
  }
  return out;
}

std::vector<std::string> pauli_pair_settings() {
  std::vector<std::string> out;
  for (char a : {'X', 'Y', 'Z'})
    for (char b : {'X', 'Y', 'Z'}) out.push_back(std::string{a, b});
  return out;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return derive_seed(a, b);
}

// Splits `shots` events over `probs` (renormalized) with sequential binomial
// draws from `rng`.
std::vector<double> multinomial_draw(const std::vector<double>& probs,
                                     std::int64_t shots,
                                     std::mt19937_64& rng) {
  double mass = 0.0;
  for (double p : probs) mass += std::max(0.0, p);
  if (mass <= 0.0)
    throw ValidationError("sampling: all outcome probabilities vanish");
  std::vector<double> counts(probs.size(), 0.0);
  std::int64_t remaining = shots;
  double mass_left = mass;
  for (size_t k = 0; k < probs.size(); ++k) {
    const double p = std::max(0.0, probs[k]);
    if (remaining <= 0) break;
    if (k + 1 == probs.size() || mass_left <= p) {
      counts[k] = static_cast<double>(remaining);
      remaining = 0;
      break;
    }
    std::binomial_distribution<std::int64_t> dist(remaining,
                                                  std::min(1.0, p / mass_left));
    const std::int64_t c = dist(rng);
    counts[k] = static_cast<double>(c);
    remaining -= c;
    mass_left -= p;
  }
  return counts;
}

}  // namespace

StateCounts StateCounts::exact_from_state(const DensityMatrix& rho,
                                          double shots_per_setting) {
  if (rho.dim() != 4)
    throw ValidationError("state tomography expects a two-qubit state");
  StateCounts out;
  for (const std::string& setting : pauli_pair_settings()) {
    std::array<double, 4> row{};
    const auto projectors = setting_projectors(setting);
    for (int k = 0; k < 4; ++k) {
      row[k] = shots_per_setting *
               std::max(0.0, trace_product(projectors[k], rho.matrix()));
    }
    out.settings.push_back(setting);
    out.counts.push_back(row);
  }
  return out;
}

StateCounts StateCounts::sampled_from_state(const DensityMatrix& rho,
                                            std::int64_t shots_per_setting,
                                            std::uint64_t seed) {
  if (shots_per_setting < 1)
    throw ValidationError("sampled_from_state: shots must be >= 1");
  StateCounts out = exact_from_state(rho, 1.0);
  for (size_t s = 0; s < out.settings.size(); ++s) {
    std::mt19937_64 rng(mix(seed, s));
    const std::vector<double> probs(out.counts[s].begin(),
                                    out.counts[s].end());
    const auto drawn = multinomial_draw(probs, shots_per_setting, rng);
    for (int k = 0; k < 4; ++k) out.counts[s][k] = drawn[k];
  }
  return out;
}

nlohmann::json StateCounts::to_json() const {
  nlohmann::json rows = nlohmann::json::object();
  for (size_t s = 0; s < settings.size(); ++s) {
    rows[settings[s]] = counts[s];
  }
  return nlohmann::json{{"settings", rows}};
}

StateCounts StateCounts::from_json(const nlohmann::json& j) {
  StateCounts out;
  const auto& rows = j.at("settings");
  for (auto it = rows.begin(); it != rows.end(); ++it) {
    out.settings.push_back(it.key());
    const auto vals = it.value().get<std::vector<double>>();
    if (vals.size() != 4)
      throw ValidationError("state counts: setting '" + it.key() +
                            "' must have 4 outcome counts");
    std::array<double, 4> row{};
    std::copy(vals.begin(), vals.end(), row.begin());
    out.counts.push_back(row);
  }
  return out;
}

DetectorCounts DetectorCounts::exact_from_effects(const EffectSet& effects,
                                                  const ProbeSet& probes,
                                                  double shots_per_probe) {
  DetectorCounts out;
  for (size_t j = 0; j < probes.labels.size(); ++j) {
    const CVector& v = probes.states[j];
    const CMatrix proj = v * v.adjoint();
    std::vector<double> row;
    for (const CMatrix& e : effects.effects) {
      row.push_back(shots_per_probe * std::max(0.0, trace_product(proj, e)));
    }
    out.probes.push_back(probes.labels[j]);
    out.counts.push_back(std::move(row));
  }
  return out;
}

DetectorCounts DetectorCounts::sampled_from_effects(const EffectSet& effects,
                                                    const ProbeSet& probes,
                                                    std::int64_t shots_per_probe,
                                                    std::uint64_t seed) {
  if (shots_per_probe < 1)
    throw ValidationError("sampled_from_effects: shots must be >= 1");
  DetectorCounts out = exact_from_effects(effects, probes, 1.0);
  for (size_t j = 0; j < out.probes.size(); ++j) {
    std::mt19937_64 rng(mix(seed, j));
    out.counts[j] = multinomial_draw(out.counts[j], shots_per_probe, rng);
  }
  return out;
}

nlohmann::json DetectorCounts::to_json() const {
  nlohmann::json rows = nlohmann::json::object();
  for (size_t j = 0; j < probes.size(); ++j) rows[probes[j]] = counts[j];
  return nlohmann::json{{"probes", rows}};
}

DetectorCounts DetectorCounts::from_json(const nlohmann::json& j) {
  DetectorCounts out;
  const auto& rows = j.at("probes");
  for (auto it = rows.begin(); it != rows.end(); ++it) {
    out.probes.push_back(it.key());
    out.counts.push_back(it.value().get<std::vector<double>>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Maximum-likelihood reconstruction
// ---------------------------------------------------------------------------

namespace {

constexpr double kProbFloor = 1e-14;

void check_informationally_complete(const std::vector<std::string>& settings,
                                    const std::vector<CMatrix>& effects,
                                    Eigen::Index dim) {
  // Stack vectorized effects and rank-check the span.
  CMatrix design(static_cast<Eigen::Index>(effects.size()), dim * dim);
  for (size_t k = 0; k < effects.size(); ++k) {
    design.row(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const CVector>(effects[k].data(), dim * dim).transpose();
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(design);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  if (rank >= dim * dim) return;

  // Name what is missing: which single-qubit bases never appear per slot.
  std::string detail;
  for (int slot = 0; slot < 2; ++slot) {
    std::set<char> present;
    for (const std::string& s : settings) {
      if (static_cast<int>(s.size()) > slot) present.insert(s[slot]);
    }
    std::string missing;
    for (char b : {'X', 'Y', 'Z'}) {
      if (!present.count(b)) missing += b;
    }
    if (!missing.empty()) {
      detail += " qubit " + std::to_string(slot + 1) + " never measured in " +
                missing + ";";
    }
  }
  throw ValidationError(
      "state tomography: measurement settings span rank " +
      std::to_string(rank) + " of " + std::to_string(dim * dim) +
      " (informationally incomplete);" + detail);
}

}  // namespace

TomographyResult mle_state(const StateCounts& counts,
                           const TomographyOptions& opts) {
  if (counts.settings.empty())
    throw ValidationError("mle_state: no measurement settings");
  if (counts.settings.size() != counts.counts.size())
    throw ValidationError("mle_state: settings/counts size mismatch");

  // Assemble the flat effect list; each setting's projectors are weighted by
  // 1/#settings so the whole collection is a POVM.
  const double w = 1.0 / static_cast<double>(counts.settings.size());
  std::vector<CMatrix> effects;
  std::vector<double> freqs;
  double total = 0.0;
  for (size_t s = 0; s < counts.settings.size(); ++s) {
    const auto projectors = setting_projectors(counts.settings[s]);
    for (int k = 0; k < 4; ++k) {
      effects.push_back(w * projectors[k]);
      const double c = counts.counts[s][k];
      if (c < 0.0) throw ValidationError("mle_state: negative count");
      freqs.push_back(c);
      total += c;
    }
  }
  if (total <= 0.0) throw ValidationError("mle_state: all counts are zero");
  for (double& f : freqs) f /= total;

  const Eigen::Index d = effects[0].rows();
  check_informationally_complete(counts.settings, effects, d);

  TomographyResult result;
  CMatrix rho = CMatrix::Identity(d, d) / static_cast<double>(d);
  double ll_prev = -std::numeric_limits<double>::infinity();
  const double alpha = opts.dilution;
  for (int it = 0; it <= opts.max_iterations; ++it) {
    std::vector<double> ps(effects.size());
    double ll = 0.0;
    for (size_t k = 0; k < effects.size(); ++k) {
      ps[k] = std::max(trace_product(effects[k], rho), kProbFloor);
      ll += freqs[k] * std::log(ps[k]);
    }
    result.log_likelihood.push_back(ll);
    if (it > 2 && ll - ll_prev < opts.ll_gain_tol) {
      result.converged = true;
      result.iterations = it;
      break;
    }
    if (it == opts.max_iterations) {
      result.iterations = it;
      break;
    }
    ll_prev = ll;

    CMatrix R = CMatrix::Zero(d, d);
    for (size_t k = 0; k < effects.size(); ++k) {
      R += (freqs[k] / ps[k]) * effects[k];
    }
    if (alpha != 1.0) {
      R = (1.0 - alpha) * CMatrix::Identity(d, d) + alpha * R;
    }
    rho = R * rho * R;
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
  }
  result.estimate = rho;
  return result;
}

namespace {

CMatrix inverse_sqrt(const CMatrix& m) {
  const Spectrum spec = eig_hermitian(m, reconstructed_data_tolerances());
  RVector w = spec.eigenvalues.cwiseMax(kProbFloor);
  CMatrix out = spec.eigenvectors *
                w.cwiseSqrt().cwiseInverse().asDiagonal() *
                spec.eigenvectors.adjoint();
  return out;
}

}  // namespace

DetectorResult mle_detector(const DetectorCounts& counts,
                            const ProbeSet& probes, int n_outcomes,
                            const TomographyOptions& opts) {
  if (n_outcomes < 2)
    throw ValidationError("mle_detector: need at least 2 outcomes");
  if (counts.probes.size() != probes.labels.size())
    throw ValidationError(
        "mle_detector: counts do not cover the probe set (" +
        std::to_string(counts.probes.size()) + " of " +
        std::to_string(probes.labels.size()) + " probes)");

  const size_t n_probes = probes.labels.size();
  const Eigen::Index d = probes.states[0].size();

  // Probe design must span the operator space.
  {
    CMatrix design(static_cast<Eigen::Index>(n_probes), d * d);
    std::vector<CMatrix> projs;
    for (size_t j = 0; j < n_probes; ++j) {
      projs.push_back(probes.states[j] * probes.states[j].adjoint());
      design.row(static_cast<Eigen::Index>(j)) =
          Eigen::Map<const CVector>(projs[j].data(), d * d).transpose();
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < d * d) {
      throw ValidationError("mle_detector: probe set spans rank " +
                            std::to_string(qr.rank()) + " of " +
                            std::to_string(d * d) +
                            " (insufficient probes)");
    }
  }

  // Per-probe normalized frequencies.
  std::vector<std::vector<double>> freq(n_probes);
  for (size_t j = 0; j < n_probes; ++j) {
    auto it = std::find(counts.probes.begin(), counts.probes.end(),
                        probes.labels[j]);
    if (it == counts.probes.end())
      throw ValidationError("mle_detector: missing counts for probe '" +
                            probes.labels[j] + "'");
    const auto& row = counts.counts[it - counts.probes.begin()];
    if (static_cast<int>(row.size()) != n_outcomes)
      throw ValidationError("mle_detector: probe '" + probes.labels[j] +
                            "' has " + std::to_string(row.size()) +
                            " outcome counts, expected " +
                            std::to_string(n_outcomes));
    double total = 0.0;
    for (double c : row) {
      if (c < 0.0) throw ValidationError("mle_detector: negative count");
      total += c;
    }
    if (total <= 0.0)
      throw ValidationError("mle_detector: probe '" + probes.labels[j] +
                            "' has no counts");
    freq[j].resize(n_outcomes);
    for (int k = 0; k < n_outcomes; ++k) freq[j][k] = row[k] / total;
  }

  std::vector<CMatrix> probe_projs;
  for (size_t j = 0; j < n_probes; ++j) {
    probe_projs.push_back(probes.states[j] * probes.states[j].adjoint());
  }

  std::vector<CMatrix> est(
      n_outcomes, CMatrix::Identity(d, d) / static_cast<double>(n_outcomes));
  std::vector<double> lls;
  double ll_prev = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;

  for (int it = 0; it <= opts.max_iterations; ++it) {
    // P[j][k] = Tr(pi_j E_k), floored.
    std::vector<std::vector<double>> P(n_probes,
                                       std::vector<double>(n_outcomes));
    double ll = 0.0;
    for (size_t j = 0; j < n_probes; ++j) {
      for (int k = 0; k < n_outcomes; ++k) {
        P[j][k] = std::max(trace_product(probe_projs[j], est[k]), kProbFloor);
        ll += freq[j][k] * std::log(P[j][k]);
      }
    }
    lls.push_back(ll);
    if (it > 2 && ll - ll_prev < opts.ll_gain_tol) {
      converged = true;
      iterations = it;
      break;
    }
    if (it == opts.max_iterations) {
      iterations = it;
      break;
    }
    ll_prev = ll;

    std::vector<CMatrix> R(n_outcomes, CMatrix::Zero(d, d));
    for (int k = 0; k < n_outcomes; ++k) {
      for (size_t j = 0; j < n_probes; ++j) {
        R[k] += (freq[j][k] / P[j][k]) * probe_projs[j];
      }
    }
    CMatrix lambda = CMatrix::Zero(d, d);
    for (int k = 0; k < n_outcomes; ++k) {
      lambda += R[k] * est[k] * R[k];
    }
    // The joint inverse-root rescaling keeps sum_k E_k = I exactly.
    const CMatrix li = inverse_sqrt(0.5 * (lambda + lambda.adjoint()));
    for (int k = 0; k < n_outcomes; ++k) {
      CMatrix e = li * R[k] * est[k] * R[k] * li;
      est[k] = 0.5 * (e + e.adjoint());
    }
  }

  DetectorResult result;
  CMatrix sum = CMatrix::Zero(d, d);
  for (int k = 0; k < n_outcomes; ++k) {
    TomographyResult r;
    r.estimate = est[k];
    r.log_likelihood = lls;  // joint likelihood, shared across outcomes
    r.iterations = iterations;
    r.converged = converged;
    result.outcomes.push_back(std::move(r));
    sum += est[k];
  }
  result.completeness_deviation =
      max_abs(sum - CMatrix::Identity(d, d));
  return result;
}

double operator_fidelity(const CMatrix& a, const CMatrix& b) {
  require_hermitian(a, 1e-6, "operator_fidelity a");
  require_hermitian(b, 1e-6, "operator_fidelity b");
  if (a.rows() != b.rows())
    throw ValidationError("operator_fidelity: dimension mismatch");
  const double tra = a.trace().real();
  const double trb = b.trace().real();
  if (tra <= 1e-12 || trb <= 1e-12)
    throw ValidationError("operator_fidelity: zero-trace operator");

  const Tolerances tol = reconstructed_data_tolerances();
  const Spectrum sa = eig_hermitian(a, tol);
  const RVector wa = sa.eigenvalues.cwiseMax(0.0) / tra;
  const CMatrix sqrt_a = sa.eigenvectors * wa.cwiseSqrt().asDiagonal() *
                         sa.eigenvectors.adjoint();
  const CMatrix inner = sqrt_a * (b / trb) * sqrt_a;
  const Spectrum si = eig_hermitian(inner, tol);
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < si.eigenvalues.size(); ++i) {
    root_sum += std::sqrt(std::max(0.0, si.eigenvalues(i)));
  }
  return root_sum * root_sum;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  require_hermitian(a, 1e-6, "trace_distance a");
  require_hermitian(b, 1e-6, "trace_distance b");
  if (a.rows() != b.rows())
    throw ValidationError("trace_distance: dimension mismatch");
  const Spectrum spec =
      eig_hermitian(CMatrix(a - b), reconstructed_data_tolerances());
  return 0.5 * spec.eigenvalues.cwiseAbs().sum();
}

}  // namespace qspeed
