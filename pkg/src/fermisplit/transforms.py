"""Single-particle unitaries lifted to Fock space, number projection, counting.

The splitting transformation mixes the two spatial modes identically on every
internal level; detection is projection onto a fixed particle count per mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fock import FockVector, OrbitalBasis, apply_creation, vacuum
from .tolerances import ATOL, PRUNE


@dataclass(frozen=True, eq=False)
class SingleParticleUnitary:
    """d x d unitary on the single-particle space, checked at construction."""

    matrix: np.ndarray
    mode_labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=ATOL):
            raise ValueError("matrix is not unitary within tolerance")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class CountingDistribution:
    """Probabilities of finding (n_first, n_second) particles in the two modes."""

    probabilities: dict[tuple[int, int], float]

    def __post_init__(self):
        total = 0.0
        for counts, prob in self.probabilities.items():
            if prob < -ATOL:
                raise ValueError(f"negative probability for {counts}")
            total += prob
        if abs(total - 1.0) > ATOL:
            raise ValueError(f"probabilities sum to {total}, not 1")

    def __getitem__(self, counts: tuple[int, int]) -> float:
        return self.probabilities.get(counts, 0.0)


def make_split(basis: OrbitalBasis, p: float, forward: bool = True) -> SingleParticleUnitary:
    """Two-mode splitter with tunneling probability p, identity on internal levels.

    The first mode maps to sqrt(1-p)*first + sqrt(p)*second; the second mode
    carries the minus sign, sqrt(1-p)*second - sqrt(p)*first. `forward=False`
    gives the inverse rotation.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"tunneling probability {p} outside [0, 1]")
    if len(basis.modes) != 2:
        raise ValueError("splitting is defined for a two-mode basis")
    c, s = math.sqrt(1.0 - p), math.sqrt(p)
    rotation = np.array([[c, -s], [s, c]])
    if not forward:
        rotation = rotation.T
    matrix = np.kron(rotation, np.eye(basis.internal_dim))
    return SingleParticleUnitary(matrix=matrix, mode_labels=basis.modes)


def lift_unitary(u: SingleParticleUnitary, v: FockVector) -> FockVector:
    """Apply the unitary to every creation operator of every ket.

    Each ket f'_{s1}..f'_{sN}|0> is rebuilt with transformed operators
    sum_t u[t,s] f'_t, re-expanded in canonical kets with fermionic signs.
    """
    if u.dim != v.basis.n_orbitals:
        raise ValueError(
            f"unitary dimension {u.dim} != orbital count {v.basis.n_orbitals}"
        )
    columns = [
        [(t, u.matrix[t, s]) for t in range(u.dim) if abs(u.matrix[t, s]) > PRUNE]
        for s in range(u.dim)
    ]
    result = FockVector(v.basis, v.n_particles, {})
    for occ, a in v.amplitudes.items():
        term = vacuum(v.basis).scaled(a)
        # rightmost creation operator acts first
        for s in reversed(occ):
            acc = FockVector(v.basis, term.n_particles + 1, {})
            for t, coeff in columns[s]:
                acc = acc + apply_creation(t, term).scaled(coeff)
            term = acc
        result = result + term
    return result


def project_mode_count(v: FockVector, mode: str, count: int) -> tuple[FockVector, float]:
    """Keep kets with exactly `count` particles in `mode`.

    Returns the normalized projected state and the Born probability; a
    zero-probability projection returns the zero vector with probability 0.
    """
    if not 0 <= count <= v.n_particles:
        raise ValueError(f"count {count} outside 0..{v.n_particles}")
    orbs = set(v.basis.mode_orbitals(mode))
    kept = {
        occ: a
        for occ, a in v.amplitudes.items()
        if sum(1 for o in occ if o in orbs) == count
    }
    probability = sum(abs(a) ** 2 for a in kept.values())
    if probability <= PRUNE**2:
        return FockVector(v.basis, v.n_particles, {}), 0.0
    scale = 1.0 / math.sqrt(probability)
    projected = FockVector(v.basis, v.n_particles,
                           {k: a * scale for k, a in kept.items()})
    return projected, probability


def counting_statistics(v: FockVector) -> CountingDistribution:
    """Joint distribution of particle counts over the two spatial modes."""
    if len(v.basis.modes) != 2:
        raise ValueError("counting statistics are defined for a two-mode basis")
    first = set(v.basis.mode_orbitals(v.basis.modes[0]))
    probs: dict[tuple[int, int], float] = {}
    for occ, a in v.amplitudes.items():
        n_first = sum(1 for o in occ if o in first)
        key = (n_first, v.n_particles - n_first)
        probs[key] = probs.get(key, 0.0) + abs(a) ** 2
    return CountingDistribution(probabilities=probs)


def distinguishable_pair_counting(
    u: SingleParticleUnitary, coefficients: np.ndarray, basis: OrbitalBasis
) -> CountingDistribution:
    """Counting statistics of the non-antisymmetrized reference pair.

    The reference is a first-quantized two-particle product-space state with a
    definite particle in each mode: particle 1 at the first mode, particle 2 at
    the second, internal state given by `coefficients` (n x n, unit Frobenius
    norm). The same single-particle unitary is applied to both slots and the
    per-particle mode counts are read off. No antisymmetrization anywhere.
    """
    n = basis.internal_dim
    c = np.asarray(coefficients, dtype=complex)
    if c.shape != (n, n):
        raise ValueError(f"coefficients must be {n} x {n}")
    if abs(np.sum(np.abs(c) ** 2) - 1.0) > ATOL:
        raise ValueError("coefficients must have unit Frobenius norm")
    d = basis.n_orbitals
    psi = np.zeros((d, d), dtype=complex)
    a_orbs = list(basis.mode_orbitals(basis.modes[0]))
    b_orbs = list(basis.mode_orbitals(basis.modes[1]))
    for i in range(n):
        for j in range(n):
            psi[a_orbs[i], b_orbs[j]] = c[i, j]
    psi = u.matrix @ psi @ u.matrix.T
    in_first = np.zeros(d, dtype=bool)
    in_first[a_orbs] = True
    probs = {(2, 0): 0.0, (1, 1): 0.0, (0, 2): 0.0}
    weights = np.abs(psi) ** 2
    for a in range(d):
        for b in range(d):
            n_first = int(in_first[a]) + int(in_first[b])
            probs[(n_first, 2 - n_first)] += weights[a, b]
    return CountingDistribution(probabilities=probs)
