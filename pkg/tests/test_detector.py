"""Counter coupling, controlled-shift interaction, trace-out and readout."""

import math

import numpy as np
import pytest

from fermisplit import (
    FockVector,
    OrbitalBasis,
    build_coupling,
    concurrence_mixed,
    concurrence_pure,
    inner_product,
    interact,
    lift_unitary,
    make_split,
    project_mode_count,
    readout,
    slater_state,
    states_equal,
    trace_out_detector,
)
from fermisplit.detector import JointState

from oracles import random_state

BASIS = OrbitalBasis.two_mode(internal_dim=2)


def split_state(p):
    return lift_unitary(make_split(BASIS, p), slater_state(BASIS, [0, 1]))


# -- coupling -----------------------------------------------------------------


def test_coupling_generator_is_hermitian():
    h = build_coupling(5).generator
    assert np.linalg.norm(h - h.conj().T) < 1e-12


@pytest.mark.parametrize("levels", [2, 3, 4, 5, 8])
def test_evolution_is_exact_cyclic_shift(levels):
    coupling = build_coupling(levels)
    u = coupling.evolution(1)
    shift = np.roll(np.eye(levels), 1, axis=0)
    np.testing.assert_allclose(u, shift, atol=1e-10)


def test_double_duration_shifts_by_two():
    coupling = build_coupling(3)
    start = np.array([1.0, 0.0, 0.0], dtype=complex)
    once = coupling.evolution(1) @ start
    np.testing.assert_allclose(once, [0, 1, 0], atol=1e-10)
    twice = coupling.evolution(2) @ start
    np.testing.assert_allclose(twice, [0, 0, 1], atol=1e-10)
    # exp(-i h 2 tau) equals applying the single shift twice
    np.testing.assert_allclose(
        coupling.evolution(2),
        coupling.evolution(1) @ coupling.evolution(1),
        atol=1e-10,
    )


def test_coupling_validation():
    with pytest.raises(ValueError):
        build_coupling(1)
    with pytest.raises(ValueError):
        build_coupling(4, duration=0.0)


# -- interact -----------------------------------------------------------------


def endpoint(occ, level=0, levels=3):
    ket = FockVector(BASIS, 2, {occ: 1.0})
    return interact(ket, build_coupling(levels), initial_level=level)


def test_interact_endpoint_table():
    # counts 0, 1, 2 in the first well move the counter by 0, 1, 2
    for occ, expected_level in [((2, 3), 0), ((0, 3), 1), ((0, 1), 2)]:
        joint = endpoint(occ)
        assert abs(joint.amplitudes[(occ, expected_level)] - 1.0) < 1e-10
        assert abs(joint.norm_squared() - 1.0) < 1e-10
        assert len(joint.amplitudes) == 1


def test_interact_from_nonzero_initial_level():
    joint = endpoint((0, 3), level=1)
    assert abs(joint.amplitudes[((0, 3), 2)] - 1.0) < 1e-10


def test_interact_split_state_matches_weight_pattern():
    p = 0.3
    joint = interact(split_state(p), build_coupling(3), initial_level=0)
    root = math.sqrt(p * (1.0 - p))
    assert abs(joint.amplitudes[((0, 1), 2)] - (1.0 - p)) < 1e-10
    assert abs(joint.amplitudes[((0, 3), 1)] - root) < 1e-10
    assert abs(joint.amplitudes[((1, 2), 1)] + root) < 1e-10
    assert abs(joint.amplitudes[((2, 3), 0)] - p) < 1e-10


def test_interact_preserves_norm_and_reverses():
    rng = np.random.default_rng(83)
    coupling = build_coupling(4)
    v = random_state(rng, BASIS, 2)
    joint = interact(v, coupling, initial_level=0)
    assert abs(joint.norm_squared() - 1.0) < 1e-10
    # undo the controlled shift sector by sector
    first = set(BASIS.mode_orbitals("A"))
    recovered: dict = {}
    for (occ, level), a in joint.amplitudes.items():
        n_first = sum(1 for o in occ if o in first)
        column = np.zeros(coupling.levels, dtype=complex)
        column[level] = a
        back = coupling.evolution(-n_first) @ column
        for lv in range(coupling.levels):
            if abs(back[lv]) > 1e-14:
                recovered[(occ, lv)] = recovered.get((occ, lv), 0.0) + back[lv]
    reassembled = FockVector(
        BASIS, 2, {occ: a for (occ, lv), a in recovered.items() if lv == 0}
    )
    assert states_equal(reassembled, v, tol=1e-10)


def test_interact_guards_against_wraparound():
    with pytest.raises(ValueError):
        interact(split_state(0.5), build_coupling(2), initial_level=0)


def test_interact_rejects_bad_initial_level():
    with pytest.raises(ValueError):
        interact(split_state(0.5), build_coupling(3), initial_level=3)


# -- trace out ----------------------------------------------------------------


def test_trace_out_product_state_is_pure_projector():
    v = split_state(0.4)
    joint = JointState(
        BASIS, 2, 3, {(occ, 0): a for occ, a in v.amplitudes.items()}
    )
    rho = trace_out_detector(joint)
    np.testing.assert_allclose(rho, rho @ rho, atol=1e-10)
    assert abs(np.trace(rho).real - 1.0) < 1e-12


def test_trace_out_split_state_has_zero_concurrence():
    for p in [0.2, 0.5, 0.8]:
        joint = interact(split_state(p), build_coupling(3), initial_level=0)
        rho = trace_out_detector(joint)
        assert abs(np.trace(rho).real - 1.0) < 1e-12
        assert concurrence_mixed(rho) < 1e-9


# -- readout ------------------------------------------------------------------


def test_readout_probabilities_and_states():
    p = 0.3
    joint = interact(split_state(p), build_coupling(3), initial_level=0)
    state1, prob1 = readout(joint, 1)
    assert abs(prob1 - 2.0 * p * (1.0 - p)) < 1e-10
    projected, _ = project_mode_count(split_state(p), "A", 1)
    assert abs(abs(inner_product(projected, state1)) - 1.0) < 1e-10
    assert abs(concurrence_pure(state1) - 1.0) < 1e-10

    state0, prob0 = readout(joint, 0)
    assert abs(prob0 - p**2) < 1e-10
    assert states_equal(state0, slater_state(BASIS, [2, 3]))

    _, prob2 = readout(joint, 2)
    assert abs(prob2 - (1.0 - p) ** 2) < 1e-10
    assert abs(prob0 + prob1 + prob2 - 1.0) < 1e-10


def test_readout_zero_probability_branch():
    joint = interact(split_state(0.0), build_coupling(3), initial_level=0)
    state, prob = readout(joint, 1)
    assert prob == 0.0
    assert state.is_zero()


def test_readout_equals_bare_projection_for_random_states():
    rng = np.random.default_rng(89)
    for n_particles, internal_dim in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        basis = OrbitalBasis.two_mode(internal_dim=internal_dim)
        coupling = build_coupling(n_particles + 2)
        for _ in range(5):
            v = random_state(rng, basis, n_particles)
            joint = interact(v, coupling, initial_level=0)
            for count in range(n_particles + 1):
                expected_state, expected_prob = project_mode_count(v, "A", count)
                state, prob = readout(joint, count)
                assert abs(prob - expected_prob) < 1e-10
                if expected_prob > 1e-12:
                    fidelity = abs(inner_product(expected_state, state)) ** 2
                    assert fidelity >= 1.0 - 1e-10


def test_readout_rejects_bad_level():
    joint = interact(split_state(0.5), build_coupling(3), initial_level=0)
    with pytest.raises(ValueError):
        readout(joint, 5)
