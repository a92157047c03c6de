"""Occupation-number representation of antisymmetric N-fermion states.

Orbitals are indexed 0..d-1 in mode-major order (all orbitals of the first
spatial mode, then the second, ...). A basis ket is an ascending tuple of
occupied orbital indices and stands for the creation product applied to the
vacuum in ascending order; every fermionic sign in this package is derived
from that single convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .tolerances import ATOL, PRUNE

Occupation = tuple[int, ...]


@dataclass(frozen=True)
class OrbitalBasis:
    """Single-particle orbitals: (spatial mode) x (internal level), mode-major."""

    modes: tuple[str, ...]
    internal_dim: int

    def __post_init__(self):
        if len(self.modes) < 1:
            raise ValueError("at least one spatial mode is required")
        if len(set(self.modes)) != len(self.modes):
            raise ValueError("mode labels must be distinct")
        if self.internal_dim < 1:
            raise ValueError("internal_dim must be a positive integer")

    @classmethod
    def two_mode(cls, internal_dim: int = 2) -> "OrbitalBasis":
        """The double-well layout: modes A and B."""
        return cls(modes=("A", "B"), internal_dim=internal_dim)

    @property
    def n_orbitals(self) -> int:
        return len(self.modes) * self.internal_dim

    def orbital(self, mode: str, level: int) -> int:
        """Index of the orbital with the given mode label and internal level."""
        if not 0 <= level < self.internal_dim:
            raise ValueError(f"internal level {level} out of range")
        return self.modes.index(mode) * self.internal_dim + level

    def mode_of(self, orbital: int) -> str:
        self._check_orbital(orbital)
        return self.modes[orbital // self.internal_dim]

    def level_of(self, orbital: int) -> int:
        self._check_orbital(orbital)
        return orbital % self.internal_dim

    def mode_orbitals(self, mode: str) -> range:
        """Contiguous orbital index range belonging to one spatial mode."""
        k = self.modes.index(mode)
        return range(k * self.internal_dim, (k + 1) * self.internal_dim)

    def orbital_label(self, orbital: int) -> str:
        return f"{self.mode_of(orbital)}{self.level_of(orbital)}"

    def _check_orbital(self, orbital: int):
        if not 0 <= orbital < self.n_orbitals:
            raise ValueError(
                f"orbital index {orbital} out of range for {self.n_orbitals} orbitals"
            )

    def descriptor(self) -> dict:
        return {"modes": list(self.modes), "internal_dim": self.internal_dim}

    @classmethod
    def from_descriptor(cls, desc: dict) -> "OrbitalBasis":
        return cls(modes=tuple(desc["modes"]), internal_dim=int(desc["internal_dim"]))


class FockVector:
    """Sparse complex amplitudes over fixed-particle-number occupation kets.

    Instances are value objects: no method mutates an existing vector.
    """

    __slots__ = ("basis", "n_particles", "amplitudes")

    def __init__(self, basis: OrbitalBasis, n_particles: int,
                 amplitudes: dict[Occupation, complex] | None = None):
        if n_particles < 0:
            raise ValueError("particle number must be nonnegative")
        # n_particles > n_orbitals is the trivial sector: only the zero vector
        # exists there, which the key validation below enforces on its own.
        amps: dict[Occupation, complex] = {}
        for occ, a in (amplitudes or {}).items():
            key = tuple(sorted(occ))
            if len(set(key)) != len(key):
                raise ValueError(f"duplicate orbital in occupation {occ}")
            if len(key) != n_particles:
                raise ValueError(
                    f"occupation {occ} has {len(key)} orbitals, expected {n_particles}"
                )
            if key and key[-1] >= basis.n_orbitals:
                raise ValueError(f"orbital index out of range in {occ}")
            amps[key] = amps.get(key, 0.0) + complex(a)
        amps = {k: a for k, a in amps.items() if abs(a) > PRUNE}
        self.basis = basis
        self.n_particles = n_particles
        self.amplitudes = amps

    # -- queries ---------------------------------------------------------

    def amplitude(self, occ) -> complex:
        return self.amplitudes.get(tuple(sorted(occ)), 0.0 + 0.0j)

    def norm_squared(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def is_zero(self, tol: float = PRUNE) -> bool:
        return all(abs(a) <= tol for a in self.amplitudes.values())

    def kets(self) -> list[Occupation]:
        return sorted(self.amplitudes)

    # -- linear structure --------------------------------------------------

    def scaled(self, factor: complex) -> "FockVector":
        return FockVector(self.basis, self.n_particles,
                          {k: factor * a for k, a in self.amplitudes.items()})

    def normalized(self) -> "FockVector":
        n = self.norm()
        if n <= PRUNE:
            raise ValueError("cannot normalize a zero vector")
        return self.scaled(1.0 / n)

    def __add__(self, other: "FockVector") -> "FockVector":
        _check_compatible(self, other)
        amps = dict(self.amplitudes)
        for k, a in other.amplitudes.items():
            amps[k] = amps.get(k, 0.0) + a
        return FockVector(self.basis, self.n_particles, amps)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scaled(-1.0)

    def __repr__(self):
        terms = ", ".join(
            f"{a:.4g}|{{{','.join(map(str, k))}}}>" for k, a in sorted(self.amplitudes.items())
        )
        return f"FockVector(N={self.n_particles}, {terms or '0'})"

    # -- canonical JSON form ----------------------------------------------

    def to_json_dict(self) -> dict:
        """Canonical form: amplitudes sorted by occupied set, lexicographically."""
        return {
            "basis": self.basis.descriptor(),
            "particles": self.n_particles,
            "amplitudes": [
                {"occupied": list(k), "re": complex(a).real, "im": complex(a).imag}
                for k, a in sorted(self.amplitudes.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FockVector":
        basis = OrbitalBasis.from_descriptor(data["basis"])
        amps = {
            tuple(entry["occupied"]): complex(entry["re"], entry["im"])
            for entry in data["amplitudes"]
        }
        return cls(basis, int(data["particles"]), amps)


def vacuum(basis: OrbitalBasis) -> FockVector:
    return FockVector(basis, 0, {(): 1.0})


def _check_compatible(u: FockVector, v: FockVector):
    if u.basis != v.basis:
        raise ValueError("operands live on different orbital bases")
    if u.n_particles != v.n_particles:
        raise ValueError(
            f"particle numbers differ: {u.n_particles} vs {v.n_particles}"
        )


def _sign_below(occ: Occupation, orbital: int) -> int:
    """(-1)**(number of occupied orbitals strictly below `orbital`)."""
    below = sum(1 for o in occ if o < orbital)
    return -1 if below % 2 else 1


def apply_creation(orbital: int, v: FockVector) -> FockVector:
    """Creation operator for one orbital; kets already occupied are annihilated."""
    v.basis._check_orbital(orbital)
    amps: dict[Occupation, complex] = {}
    for occ, a in v.amplitudes.items():
        if orbital in occ:
            continue
        key = tuple(sorted(occ + (orbital,)))
        amps[key] = amps.get(key, 0.0) + _sign_below(occ, orbital) * a
    return FockVector(v.basis, v.n_particles + 1, amps)


def apply_annihilation(orbital: int, v: FockVector) -> FockVector:
    """Adjoint of apply_creation: removes the orbital with the same sign rule."""
    v.basis._check_orbital(orbital)
    if v.n_particles < 1:
        raise ValueError("cannot annihilate from a zero-particle state")
    amps: dict[Occupation, complex] = {}
    for occ, a in v.amplitudes.items():
        if orbital not in occ:
            continue
        key = tuple(o for o in occ if o != orbital)
        amps[key] = amps.get(key, 0.0) + _sign_below(key, orbital) * a
    return FockVector(v.basis, v.n_particles - 1, amps)


def permutation_parity(seq) -> int:
    """+1/-1 parity of the permutation sorting `seq` ascending."""
    seq = list(seq)
    inversions = sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def slater_state(basis: OrbitalBasis, orbitals) -> FockVector:
    """Normalized ket built by creating the given orbitals, in the given order."""
    orbitals = list(orbitals)
    if len(set(orbitals)) != len(orbitals):
        raise ValueError(f"duplicate orbital index in {orbitals}")
    sign = permutation_parity(orbitals)
    return FockVector(basis, len(orbitals), {tuple(sorted(orbitals)): float(sign)})


def inner_product(u: FockVector, v: FockVector) -> complex:
    """<u|v> = sum over kets of conj(u) * v."""
    _check_compatible(u, v)
    small, big = (u, v) if len(u.amplitudes) <= len(v.amplitudes) else (v, u)
    acc = 0.0 + 0.0j
    for k, a in small.amplitudes.items():
        b = big.amplitudes.get(k)
        if b is not None:
            acc += (a.conjugate() * b) if small is u else (b.conjugate() * a)
    return acc


def states_equal(u: FockVector, v: FockVector, tol: float = ATOL) -> bool:
    """Amplitude-wise equality within an absolute tolerance."""
    _check_compatible(u, v)
    keys = set(u.amplitudes) | set(v.amplitudes)
    return all(abs(u.amplitude(k) - v.amplitude(k)) <= tol for k in keys)
