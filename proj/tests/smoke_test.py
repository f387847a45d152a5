"""Python binding smoke test: exercises each exposed area once."""

import math

import numpy as np

import qspeed


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def main():
    # States and closed-form information quantities.
    rho = qspeed.bell_mixture(0.3)
    approx(qspeed.purity(rho), 0.58)
    h2 = qspeed.additive_hamiltonian("z", 2)
    approx(qspeed.sldf(rho, h2), 0.16, 1e-10)
    approx(qspeed.qfi(rho, h2, metric="wy"), 0.16696972201766383, 1e-9)
    assert qspeed.variance(rho, h2) >= qspeed.sldf(rho, h2)

    # Speed, witness, sandwich.
    tau = math.pi / 6
    res = qspeed.squared_speed_tau(rho, h2, tau)
    approx(res.squared_speed, (1 - 2 * 0.3) ** 2 * math.sin(tau) ** 2 / tau**2, 1e-12)
    assert not qspeed.entanglement_witness(0.3, n=2).entangled_useful
    assert qspeed.entanglement_witness(0.51, n=2).entangled_useful

    # Swap network: exact pipeline matches algebra.
    joint = qspeed.two_copy_joint_state(0.3, "z", tau, True)
    probs = qspeed.bsm_joint_probs(joint, projectors="ideal")
    assert probs.shape == (4, 4)
    overlap = qspeed.swap_value_from_probs(probs)
    purity_probs = qspeed.bsm_joint_probs(
        qspeed.two_copy_joint_state(0.3, "z", tau, False), projectors="ideal"
    )
    s = (qspeed.swap_value_from_probs(purity_probs) - overlap) / tau**2
    approx(s, res.squared_speed, 1e-10)

    # Sampled protocol: deterministic per seed.
    a = qspeed.run_protocol_point(0.9, "x", tau, shots=20000, mc_samples=50, seed=7)
    b = qspeed.run_protocol_point(0.9, "x", tau, shots=20000, mc_samples=50, seed=7)
    assert a.s_estimate == b.s_estimate and a.error_bar == b.error_bar
    exact = qspeed.squared_speed_tau(qspeed.bell_mixture(0.9), qspeed.additive_hamiltonian("x", 2), tau)
    assert abs(a.s_estimate - exact.squared_speed) < 5 * a.error_bar

    # Tomography round trip from exact statistics.
    settings, counts = qspeed.state_counts_exact(rho)
    mle = qspeed.mle_state(settings, counts)
    assert mle.converged
    assert qspeed.trace_distance(mle.estimate, rho) < 1e-6

    # Stored reconstruction data and operator fidelity.
    fx = qspeed.fixture("copy1_phi_plus")
    fx = qspeed.repair_state(fx)
    assert abs(qspeed.fidelity_pure(qspeed.bell_phi_plus(), fx) - 0.9889) < 5e-4
    names = qspeed.fixture_names()
    assert "bsm1_phi_plus" in names and len(names) == 12

    # Waveplate decomposition round trip in both conventions.
    for conv in ("diagonal", "computational"):
        t1, t2, t3 = qspeed.decompose(0.3, -1.1, 2.4, convention=conv)
        u = qspeed.compose(t1, t2, t3, convention=conv)
        assert qspeed.equal_up_to_phase(u, qspeed.euler_unitary(0.3, -1.1, 2.4), 1e-9)

    # numpy interop: eigenvector-sized arrays flow both directions.
    rho_np = np.asarray(rho)
    assert rho_np.shape == (4, 4)
    approx(float(np.trace(rho_np).real), 1.0, 1e-12)

    print("smoke test passed")


if __name__ == "__main__":
    main()
