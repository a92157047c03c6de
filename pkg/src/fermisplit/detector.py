"""Toy measuring apparatus: a cyclic counter that advances once per fermion
found in the first spatial mode.

The counter Hamiltonian is the principal-branch logarithm of the cyclic shift,
built in the discrete-Fourier eigenbasis, so one interaction interval advances
the counter by exactly the number of particles in the monitored mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockVector, Occupation, OrbitalBasis
from .tolerances import PRUNE


@dataclass(frozen=True, eq=False)
class DetectorCoupling:
    """Hermitian generator h with exp(-i h tau) equal to the cyclic level shift."""

    generator: np.ndarray
    duration: float

    @property
    def levels(self) -> int:
        return self.generator.shape[0]

    def evolution(self, steps: int = 1) -> np.ndarray:
        """exp(-i h tau steps); negative steps give the inverse evolution."""
        evals, evecs = np.linalg.eigh(self.generator)
        phases = np.exp(-1j * evals * self.duration * steps)
        return (evecs * phases) @ evecs.conj().T


def build_coupling(levels: int, duration: float = 1.0) -> DetectorCoupling:
    """Hermitian generator of the counter shift |n> -> |n+1 mod levels>.

    Diagonal in the discrete-Fourier basis with principal-branch eigenphases,
    so exp(-i h tau) reproduces the shift exactly and exp(-i h 2 tau) shifts
    by two.
    """
    if levels < 2:
        raise ValueError("a counter needs at least 2 levels")
    if duration <= 0:
        raise ValueError("interaction duration must be positive")
    d = levels
    grid = np.arange(d)
    fourier = np.exp(2j * np.pi * np.outer(grid, grid) / d) / math.sqrt(d)
    # shift eigenvalue on Fourier column k is exp(-2 pi i k / d); pick the
    # principal-branch energy in (-pi, pi] per unit duration
    k_wrapped = np.where(grid <= d // 2, grid, grid - d)
    energies = 2.0 * np.pi * k_wrapped / (d * duration)
    h = (fourier * energies) @ fourier.conj().T
    return DetectorCoupling(generator=h, duration=duration)


class JointState:
    """Normalized amplitudes over (occupation ket, counter level) pairs."""

    __slots__ = ("basis", "n_particles", "levels", "amplitudes")

    def __init__(self, basis: OrbitalBasis, n_particles: int, levels: int,
                 amplitudes: dict[tuple[Occupation, int], complex]):
        amps: dict[tuple[Occupation, int], complex] = {}
        for (occ, level), a in amplitudes.items():
            if not 0 <= level < levels:
                raise ValueError(f"counter level {level} out of range")
            key = (tuple(sorted(occ)), level)
            if abs(a) > PRUNE:
                amps[key] = amps.get(key, 0.0) + complex(a)
        self.basis = basis
        self.n_particles = n_particles
        self.levels = levels
        self.amplitudes = amps

    def norm_squared(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def to_json_dict(self) -> dict:
        return {
            "basis": self.basis.descriptor(),
            "particles": self.n_particles,
            "levels": self.levels,
            "amplitudes": [
                {"occupied": list(occ), "level": level,
                 "re": a.real, "im": a.imag}
                for (occ, level), a in sorted(self.amplitudes.items())
            ],
        }


def _count_in_first_mode(basis: OrbitalBasis, occ: Occupation) -> int:
    first = basis.mode_orbitals(basis.modes[0])
    return sum(1 for o in occ if o in first)


def interact(v: FockVector, coupling: DetectorCoupling,
             initial_level: int = 0) -> JointState:
    """Couple the fermions to the counter for one interaction interval.

    The interaction Hamiltonian is the counter generator multiplied by the
    number of particles in the monitored (first) mode, so each fixed-count
    sector of the state drags the counter up by that count while the fermionic
    amplitudes are left untouched.
    """
    if len(v.basis.modes) != 2:
        raise ValueError("the counter monitors the first of exactly two modes")
    if not 0 <= initial_level < coupling.levels:
        raise ValueError(f"initial level {initial_level} out of range")
    if coupling.levels < v.n_particles + 1:
        raise ValueError(
            f"{coupling.levels} counter levels cannot resolve counts up to "
            f"{v.n_particles} without wraparound"
        )
    start = np.zeros(coupling.levels, dtype=complex)
    start[initial_level] = 1.0
    columns = {
        n: coupling.evolution(steps=n) @ start
        for n in range(v.n_particles + 1)
    }
    amps: dict[tuple[Occupation, int], complex] = {}
    for occ, a in v.amplitudes.items():
        column = columns[_count_in_first_mode(v.basis, occ)]
        for level in range(coupling.levels):
            value = a * column[level]
            if abs(value) > PRUNE:
                amps[(occ, level)] = amps.get((occ, level), 0.0) + value
    return JointState(v.basis, v.n_particles, coupling.levels, amps)


def trace_out_detector(joint: JointState) -> np.ndarray:
    """Reduced fermionic density matrix over the canonical sector ket basis."""
    from .entanglement import sector_kets

    kets = sector_kets(joint.basis.n_orbitals, joint.n_particles)
    index = {k: i for i, k in enumerate(kets)}
    rho = np.zeros((len(kets), len(kets)), dtype=complex)
    by_level: dict[int, dict[Occupation, complex]] = {}
    for (occ, level), a in joint.amplitudes.items():
        by_level.setdefault(level, {})[occ] = a
    for column in by_level.values():
        vec = np.zeros(len(kets), dtype=complex)
        for occ, a in column.items():
            vec[index[occ]] = a
        rho += np.outer(vec, vec.conj())
    return rho


def readout(joint: JointState, level: int) -> tuple[FockVector, float]:
    """Project the counter onto one level; Born probability and collapsed state.

    A zero-probability outcome returns the zero vector with probability 0.
    """
    if not 0 <= level < joint.levels:
        raise ValueError(f"counter level {level} out of range")
    kept = {
        occ: a for (occ, lv), a in joint.amplitudes.items() if lv == level
    }
    probability = sum(abs(a) ** 2 for a in kept.values())
    if probability <= PRUNE**2:
        return FockVector(joint.basis, joint.n_particles, {}), 0.0
    scale = 1.0 / math.sqrt(probability)
    state = FockVector(joint.basis, joint.n_particles,
                       {k: a * scale for k, a in kept.items()})
    return state, probability
