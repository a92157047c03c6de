"""Dense first-quantized mirror of the Fock representation.

Exists as a brute-force cross-check for Schmidt spectra, reduced density
matrices and purity claims; everything here is written for transparency, not
speed, and is capped at desk scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .fock import FockVector, permutation_parity

# Hard caps: the oracle exists for verification only.
MAX_PARTICLES = 5
MAX_DIM = 10


@dataclass(frozen=True, eq=False)
class FirstQuantizedTensor:
    """Rank-N complex tensor over the d-dimensional single-particle space."""

    n_particles: int
    dim: int
    data: np.ndarray

    def __post_init__(self):
        _check_size(self.n_particles, self.dim)
        expected = (self.dim,) * self.n_particles
        if self.data.shape != expected:
            raise ValueError(f"tensor shape {self.data.shape} != {expected}")

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.data) ** 2))

    def inner_product(self, other: "FirstQuantizedTensor") -> complex:
        return complex(np.vdot(self.data, other.data))


def _check_size(n_particles: int, dim: int):
    if n_particles > MAX_PARTICLES or dim > MAX_DIM:
        raise ValueError(
            f"oracle size cap exceeded: N={n_particles}, d={dim} "
            f"(limits N<={MAX_PARTICLES}, d<={MAX_DIM})"
        )


def antisymmetrize(t: FirstQuantizedTensor) -> FirstQuantizedTensor:
    """Signed sum over all permutations of the particle slots (unnormalized)."""
    out = np.zeros_like(t.data)
    for perm in itertools.permutations(range(t.n_particles)):
        out += permutation_parity(perm) * np.transpose(t.data, perm)
    return FirstQuantizedTensor(t.n_particles, t.dim, out)


def product_tensor(dim: int, orbitals) -> FirstQuantizedTensor:
    """Elementary (non-antisymmetrized) product ket |orbitals[0], orbitals[1], ...>."""
    orbitals = tuple(orbitals)
    data = np.zeros((dim,) * len(orbitals), dtype=complex)
    data[orbitals] = 1.0
    return FirstQuantizedTensor(len(orbitals), dim, data)


def to_first_quantized(v: FockVector) -> FirstQuantizedTensor:
    """Expand a Fock vector into the dense antisymmetric tensor.

    Each canonical ket maps to 1/sqrt(N!) times the antisymmetrized product of
    its orbitals in ascending order, so the map is an isometry.
    """
    n, d = v.n_particles, v.basis.n_orbitals
    _check_size(n, d)
    data = np.zeros((d,) * n, dtype=complex)
    scale = 1.0 / math.sqrt(math.factorial(n))
    for occ, a in v.amplitudes.items():
        for perm in itertools.permutations(occ):
            data[perm] += a * scale * permutation_parity(perm)
    return FirstQuantizedTensor(n, d, data)


def particle_bipartition_svd(t: FirstQuantizedTensor, m_left: int) -> np.ndarray:
    """Singular values (descending) across the (first m_left : rest) particle cut."""
    _check_cut(t.n_particles, m_left)
    mat = t.data.reshape(t.dim**m_left, t.dim ** (t.n_particles - m_left))
    return np.linalg.svd(mat, compute_uv=False)


def reduced_density_firstq(t: FirstQuantizedTensor, m_left: int) -> np.ndarray:
    """Partial trace over the last N - m_left particle slots."""
    _check_cut(t.n_particles, m_left)
    mat = t.data.reshape(t.dim**m_left, t.dim ** (t.n_particles - m_left))
    return mat @ mat.conj().T


def _check_cut(n_particles: int, m_left: int):
    if not 1 <= m_left <= n_particles - 1:
        raise ValueError(
            f"cut size {m_left} outside 1..{n_particles - 1}"
        )
