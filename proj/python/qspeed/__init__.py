"""Two-copy state-speed toolkit.

Numerical core for detecting metrologically useful entanglement from the
speed of states under collective spin rotations: metric-adjusted Fisher
information, speed witnesses, an exact simulator of the two-copy
swap-measurement network (with reconstructed-apparatus noise models),
maximum-likelihood tomography, and quarter-half-quarter waveplate
decompositions.
"""

from ._core import (  # noqa: F401
    ProtocolResult,
    SandwichBounds,
    SpeedResult,
    TomographyResult,
    ValidationError,
    WitnessVerdict,
    __version__,
    additive_hamiltonian,
    bell_mixture,
    bell_phi_minus,
    bell_phi_plus,
    bell_psi_minus,
    bell_psi_plus,
    bsm_joint_probs,
    compose,
    decompose,
    depolarized_sandwich,
    entanglement_witness,
    equal_up_to_phase,
    euler_unitary,
    evolve,
    fidelity_pure,
    fixture,
    fixture_names,
    hwp,
    local_swap,
    mle_state,
    operator_fidelity,
    overlap_via_swap,
    pauli,
    purity,
    qfi,
    qwp,
    repair_state,
    run_protocol_point,
    singlet_projector,
    sldf,
    speed_from_measurements,
    spin_half,
    squared_speed_tau,
    squared_speed_zero,
    state_counts_exact,
    state_counts_sampled,
    swap_value_from_probs,
    trace_distance,
    two_copy_joint_state,
    unitary_of,
    validate_state,
    variance,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
