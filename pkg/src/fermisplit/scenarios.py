"""Self-checking scenario pipelines.

Each scenario runs one end-to-end pipeline, records every scalar next to the
formula it is compared against, and reports pass/fail per check. Records are
deterministic functions of their configuration.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .detector import build_coupling, interact, readout, trace_out_detector
from .entanglement import (
    concurrence_mixed,
    concurrence_pure,
    cut_purity,
    effective_state,
    effective_state_general,
    is_slater,
    linear_entropy_single,
    predicted_purity,
    predicted_rank,
    schmidt_spectrum,
)
from .firstq import MAX_DIM, MAX_PARTICLES, particle_bipartition_svd, to_first_quantized
from .fock import OrbitalBasis, inner_product, slater_state
from .tolerances import ATOL, RANK_THRESHOLD
from .transforms import (
    counting_statistics,
    distinguishable_pair_counting,
    lift_unitary,
    make_split,
    project_mode_count,
)

BELL_SINGLET = np.array([[0.0, 1.0], [-1.0, 0.0]]) / math.sqrt(2.0)


@dataclass(frozen=True)
class Check:
    """One scalar result compared against its reference formula."""

    name: str
    value: float
    expected: float
    formula: str
    tolerance: float

    @property
    def residual(self) -> float:
        return abs(self.value - self.expected)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "expected": self.expected,
            "formula": self.formula,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class RunRecord:
    """Outcome of one scenario run: config echo, checks, notes, named states."""

    scenario: str
    config: dict
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    states: dict[str, dict] = field(default_factory=dict)
    elapsed_seconds: float = 0.0
    version: str = __version__

    def add(self, name: str, value: float, expected: float, formula: str,
            tolerance: float) -> None:
        self.checks.append(Check(name, float(value), float(expected),
                                 formula, tolerance))

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def scalars(self) -> dict[str, float]:
        """Flat scalar table for CSV output, one column per check and residual."""
        out: dict[str, float] = {}
        for c in self.checks:
            out[c.name] = c.value
            out[f"{c.name}_residual"] = c.residual
        return out

    def to_json_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "config": self.config,
            "version": self.version,
            "all_passed": self.all_passed(),
            "checks": [c.to_json_dict() for c in self.checks],
            "notes": self.notes,
            "states": self.states,
            "elapsed_seconds": self.elapsed_seconds,
        }


def _timed(record: RunRecord, start: float) -> RunRecord:
    record.elapsed_seconds = time.perf_counter() - start
    return record


def scenario_two_electron(p: float, tol: float = ATOL) -> RunRecord:
    """Split two fermions out of one well, detect one per well, analyze."""
    start = time.perf_counter()
    record = RunRecord("two-electron", {"p": p, "tol": tol})
    basis = OrbitalBasis.two_mode(internal_dim=2)
    initial = slater_state(basis, [basis.orbital("A", 0), basis.orbital("A", 1)])
    final = lift_unitary(make_split(basis, p), initial)
    record.states["initial"] = initial.to_json_dict()
    record.states["final"] = final.to_json_dict()

    record.add("final_norm", final.norm_squared(), 1.0, "1", tol)
    record.add("is_slater_final", float(is_slater(final)), 1.0,
               "splitting preserves single-Slater form", 0.5)

    projected, probability = project_mode_count(final, "A", 1)
    record.add("projection_probability", probability, 2.0 * p * (1.0 - p),
               "2*p*(1-p)", tol)
    if projected.is_zero():
        record.notes.append(
            "zero-probability projection: no one-particle-per-well branch"
        )
        return _timed(record, start)

    record.states["projected"] = projected.to_json_dict()
    record.add("is_slater_projected", float(is_slater(projected)), 0.0,
               "detection creates entanglement", 0.5)
    record.add("concurrence_projected", concurrence_pure(projected), 1.0,
               "maximal pairwise entanglement", tol)

    spectrum = schmidt_spectrum(projected, 1)
    record.add("schmidt_spectrum_residual",
               float(np.max(np.abs(spectrum - 0.5))), 0.0,
               "four equal Schmidt coefficients 1/2", tol)

    effective = effective_state(projected)
    record.add("bell_fidelity", effective.fidelity(BELL_SINGLET), 1.0,
               "singlet Bell state up to global phase", tol)

    s_full = linear_entropy_single(projected)
    s_eff = effective.linear_entropy()
    record.add("linear_entropy_full", s_full, 0.75, "3/4", tol)
    record.add("linear_entropy_effective", s_eff, 0.75, "3/4", tol)
    record.add("entropy_equality_residual", abs(s_full - s_eff), 0.0,
               "full and effective linear entropies agree", 1e-12)
    return _timed(record, start)


def scenario_certification(p: float, tol: float = 1e-12) -> RunRecord:
    """Counting statistics after a second split distinguish the detected state
    from its distinguishable-pair counterpart."""
    if not 0.0 < p < 1.0:
        raise ValueError("certification needs p strictly inside (0, 1)")
    start = time.perf_counter()
    record = RunRecord("certify", {"p": p, "tol": tol})
    basis = OrbitalBasis.two_mode(internal_dim=2)
    split = make_split(basis, p)
    initial = slater_state(basis, [basis.orbital("A", 0), basis.orbital("A", 1)])
    projected, _ = project_mode_count(lift_unitary(split, initial), "A", 1)
    resplit = lift_unitary(split, projected)
    record.states["resplit"] = resplit.to_json_dict()

    fermionic = counting_statistics(resplit)
    w = p * (1.0 - p)
    record.add("fermionic_p_aa", fermionic[(2, 0)], 2.0 * w, "2*p*(1-p)", tol)
    record.add("fermionic_p_bb", fermionic[(0, 2)], 2.0 * w, "2*p*(1-p)", tol)
    record.add("fermionic_p_ab", fermionic[(1, 1)], 1.0 - 4.0 * w,
               "1-4*p*(1-p)", tol)

    reference = distinguishable_pair_counting(split, BELL_SINGLET, basis)
    record.add("reference_p_aa", reference[(2, 0)], w, "p*(1-p)", tol)
    record.add("reference_p_bb", reference[(0, 2)], w, "p*(1-p)", tol)
    record.add("reference_p_ab", reference[(1, 1)], 1.0 - 2.0 * w,
               "1-2*p*(1-p)", tol)
    return _timed(record, start)


def scenario_n_fermion(n_particles: int, m_detected: int,
                       internal_dim: int | None = None, p: float = 0.5,
                       tol: float = ATOL) -> RunRecord:
    """N-fermion pipeline: split, detect M in the first well, compare the cut
    spectrum, rank and purity against the closed-form predictions and the
    dense first-quantized oracle."""
    if not 1 <= m_detected <= n_particles - m_detected:
        raise ValueError(
            f"(N={n_particles}, M={m_detected}) violates 1 <= M <= N-M"
        )
    internal_dim = internal_dim or n_particles
    if internal_dim < n_particles:
        raise ValueError("need at least N internal levels to start N fermions in one well")
    start = time.perf_counter()
    record = RunRecord(
        "n-fermion",
        {"n": n_particles, "m": m_detected, "internal_dim": internal_dim,
         "p": p, "tol": tol},
    )
    basis = OrbitalBasis.two_mode(internal_dim=internal_dim)
    initial = slater_state(
        basis, [basis.orbital("A", k) for k in range(n_particles)]
    )
    final = lift_unitary(make_split(basis, p), initial)
    record.add("is_slater_final", float(is_slater(final)), 1.0,
               "splitting preserves single-Slater form", 0.5)

    projected, probability = project_mode_count(final, "A", m_detected)
    expected_prob = (
        math.comb(n_particles, m_detected)
        * (1.0 - p) ** m_detected
        * p ** (n_particles - m_detected)
    )
    record.add("projection_probability", probability, expected_prob,
               "C(N,M)*(1-p)^M*p^(N-M)", tol)
    record.states["projected"] = projected.to_json_dict()

    spectrum = schmidt_spectrum(projected, m_detected)
    rank = int(np.sum(spectrum > RANK_THRESHOLD))
    record.add("schmidt_rank", float(rank),
               float(predicted_rank(n_particles, m_detected)),
               "sum_n N!/(n!(M-n)!(N-M)!) = 2^M*C(N,M)", 0.0)
    record.add("cut_purity", cut_purity(projected, m_detected),
               float(predicted_purity(n_particles, m_detected)),
               "sum_n N!/(n!(M-n)!(N-M)!)*C(N-M,M-n)^2/C(N,M)^4", tol)

    if n_particles <= MAX_PARTICLES and basis.n_orbitals <= MAX_DIM:
        oracle = particle_bipartition_svd(to_first_quantized(projected),
                                          m_detected)
        padded = np.zeros(len(oracle))
        padded[: len(spectrum)] = np.sort(spectrum)[::-1][: len(oracle)]
        record.add("oracle_spectrum_residual",
                   float(np.max(np.abs(np.sort(oracle)[::-1] - padded))), 0.0,
                   "first-quantized reshape SVD agrees", tol)

    split_state = effective_state_general(projected, m_detected)
    record.add("alice_purity", split_state.alice_purity(),
               1.0 / math.comb(n_particles, m_detected), "1/C(N,M)", tol)
    return _timed(record, start)


def scenario_detector(p: float, levels: int = 3, tol: float = ATOL) -> RunRecord:
    """Couple the split two-fermion state to the counter, read it out, and
    compare pre- and post-readout entanglement."""
    if levels < 3:
        raise ValueError("resolving counts 0..2 needs at least 3 levels")
    start = time.perf_counter()
    record = RunRecord("detector", {"p": p, "levels": levels, "tol": tol})
    basis = OrbitalBasis.two_mode(internal_dim=2)
    a_dn, a_up = basis.orbital("A", 0), basis.orbital("A", 1)
    b_dn, b_up = basis.orbital("B", 0), basis.orbital("B", 1)
    initial = slater_state(basis, [a_dn, a_up])
    final = lift_unitary(make_split(basis, p), initial)

    coupling = build_coupling(levels)
    joint = interact(final, coupling, initial_level=0)
    record.states["joint"] = joint.to_json_dict()
    record.add("joint_norm", joint.norm_squared(), 1.0, "1", tol)

    # amplitude pattern on counter levels (2, 1, 1, 0)
    root = math.sqrt(p * (1.0 - p))
    pattern = [
        ("amp_both_first_level2", (a_dn, a_up), 2, 1.0 - p, "(1-p)"),
        ("amp_cross_dn_up_level1", (a_dn, b_up), 1, root, "sqrt(p*(1-p))"),
        ("amp_cross_up_dn_level1", (a_up, b_dn), 1, -root, "-sqrt(p*(1-p))"),
        ("amp_both_second_level0", (b_dn, b_up), 0, p, "p"),
    ]
    for name, occ, level, expected, formula in pattern:
        value = joint.amplitudes.get((occ, level), 0.0 + 0.0j)
        record.add(name, float(np.real(value)), expected, formula, tol)
        record.add(f"{name}_imag", float(np.imag(value)), 0.0, "0", tol)

    rho = trace_out_detector(joint)
    record.add("concurrence_preread", concurrence_mixed(rho), 0.0,
               "no entanglement before the counter is read", 1e-9)

    expected_probs = {0: p**2, 1: 2.0 * p * (1.0 - p), 2: (1.0 - p) ** 2}
    formulas = {0: "p^2", 1: "2*p*(1-p)", 2: "(1-p)^2"}
    for level in range(3):
        state, probability = readout(joint, level)
        record.add(f"readout{level}_probability", probability,
                   expected_probs[level], formulas[level], tol)
        if level == 1 and not state.is_zero():
            record.add("concurrence_readout1", concurrence_pure(state), 1.0,
                       "readout of one-per-well count is maximally entangled",
                       tol)
            reference, _ = project_mode_count(final, "A", 1)
            record.add("readout1_projection_fidelity",
                       float(abs(inner_product(reference, state)) ** 2), 1.0,
                       "readout equals bare number projection", tol)
    if p in (0.0, 1.0):
        record.notes.append(
            "degenerate split: the one-per-well readout never clicks"
        )
    return _timed(record, start)
