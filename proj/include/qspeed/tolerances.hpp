#pragma once

namespace qspeed {

// Central numeric tolerance configuration. Every validation and reconstruction
// check routes through one of these knobs so bounds are pinned in a single place.
struct Tolerances {
  double validation = 1e-10;      // hermiticity / trace / unitarity deviations
  double psd = 1e-10;             // most negative eigenvalue accepted in a state
  double reconstruction = 1e-9;   // round-trip and reconstruction checks
  double eig_clip = 1e-10;        // eigenvalues in [-eig_clip, 0) are clipped to 0
  double degeneracy = 1e-12;      // |l_i - l_j| below this counts as a degenerate pair
  double zero_eig = 1e-14;        // eigenvalue at or below this counts as exactly zero
};

const Tolerances& default_tolerances();

// Loosened validation profile for density matrices and projectors that come from
// experimental reconstruction (entries quoted to 4 decimal places).
Tolerances reconstructed_data_tolerances();

}  // namespace qspeed
