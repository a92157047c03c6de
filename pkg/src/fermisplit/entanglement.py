"""Particle-bipartition Schmidt analysis, closed-form predictions, Slater
detection, fermionic concurrence, and effective distinguishable-party states.

The (M : N-M) particle cut of a Fock vector is handled through its coefficient
matrix over antisymmetric M- and (N-M)-orbital subsets; its singular values
are the Schmidt coefficients of the cut, and they agree with the dense
first-quantized reshape because the subset embedding is an isometry.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fock import FockVector, Occupation, permutation_parity
from .tolerances import ATOL, RANK_THRESHOLD

# ---------------------------------------------------------------------------
# particle-cut machinery
# ---------------------------------------------------------------------------


def sector_kets(n_orbitals: int, n_particles: int) -> list[Occupation]:
    """All occupation kets of the antisymmetric sector, lexicographic."""
    return list(itertools.combinations(range(n_orbitals), n_particles))


def _merge_sign(left: Occupation, right: Occupation) -> int:
    """Parity of reordering the concatenation (left, right) ascending."""
    inversions = 0
    for r in right:
        inversions += sum(1 for k in left if k > r)
    return -1 if inversions % 2 else 1


def particle_cut_matrix(
    v: FockVector, m_left: int
) -> tuple[np.ndarray, list[Occupation], list[Occupation]]:
    """Coefficient matrix of the (m_left : N - m_left) particle cut.

    Entry [K, L] is C(N, M)^(-1/2) * sign(K, L) * amplitude(K u L) for disjoint
    subsets K (size M) and L (size N-M); the sign reorders the creation product
    f'_K f'_L into the canonical ascending ket. Rows/columns are labelled by
    the returned subset lists.
    """
    n, d = v.n_particles, v.basis.n_orbitals
    if not 1 <= m_left <= n - 1:
        raise ValueError(f"cut size {m_left} outside 1..{n - 1}")
    rows = sector_kets(d, m_left)
    cols = sector_kets(d, n - m_left)
    row_index = {k: i for i, k in enumerate(rows)}
    col_index = {k: i for i, k in enumerate(cols)}
    scale = 1.0 / math.sqrt(math.comb(n, m_left))
    mat = np.zeros((len(rows), len(cols)), dtype=complex)
    for occ, a in v.amplitudes.items():
        for left in itertools.combinations(occ, m_left):
            right = tuple(o for o in occ if o not in left)
            mat[row_index[left], col_index[right]] += (
                scale * _merge_sign(left, right) * a
            )
    return mat, rows, cols


def m_particle_rdm(v: FockVector, m_left: int) -> np.ndarray:
    """Reduced density matrix on the antisymmetric m_left-particle sector.

    Hermitian, PSD, unit trace for a normalized input; its eigenvalues are the
    squared Schmidt coefficients of the (m_left : N - m_left) cut. Basis order
    is sector_kets(d, m_left).
    """
    mat, _, _ = particle_cut_matrix(v, m_left)
    return mat @ mat.conj().T


def schmidt_spectrum(v: FockVector, m_left: int) -> np.ndarray:
    """Schmidt coefficients of the particle cut, descending."""
    mat, _, _ = particle_cut_matrix(v, m_left)
    return np.linalg.svd(mat, compute_uv=False)


def cut_purity(v: FockVector, m_left: int) -> float:
    """Tr rho_M^2 = sum of fourth powers of the Schmidt coefficients."""
    return float(np.sum(schmidt_spectrum(v, m_left) ** 4))


# ---------------------------------------------------------------------------
# labelled Schmidt decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchmidtEntry:
    """One Schmidt term of a particle cut.

    `left`/`right` label the dominant canonical ket of each Schmidt vector
    (exact for vectors that are single Slater kets); `n_in_first_mode` is the
    particle count of the left label inside the first spatial mode.
    """

    coefficient: float
    n_in_first_mode: int
    left: Occupation
    right: Occupation


@dataclass(frozen=True)
class SchmidtResult:
    entries: tuple[SchmidtEntry, ...]

    def spectrum(self) -> np.ndarray:
        return np.array(sorted((e.coefficient for e in self.entries), reverse=True))

    def rank(self) -> int:
        return len(self.entries)

    def sorted_entries(self) -> list[SchmidtEntry]:
        return sorted(
            self.entries,
            key=lambda e: (e.n_in_first_mode, -e.coefficient, e.left, e.right),
        )

    def to_json_dict(self) -> dict:
        return {
            "entries": [
                {
                    "n": e.n_in_first_mode,
                    "lambda": e.coefficient,
                    "left": list(e.left),
                    "right": list(e.right),
                }
                for e in self.sorted_entries()
            ]
        }


def _dominant_label(vec: np.ndarray, labels: list[Occupation]) -> Occupation:
    """Label of the largest-magnitude component; ties go lexicographically."""
    mags = np.abs(vec)
    best = mags.max()
    candidates = [labels[i] for i in np.nonzero(mags >= best - 1e-12)[0]]
    return min(candidates)


def _canonical_degenerate_basis(block: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of span(block columns).

    Greedy Gram-Schmidt on projections of canonical kets in index order, so a
    degenerate singular subspace is reported in the most ket-aligned basis
    rather than in whatever basis the SVD happened to return.
    """
    proj = block @ block.conj().T
    dim, size = block.shape[0], block.shape[1]
    chosen: list[np.ndarray] = []
    for k in range(dim):
        if len(chosen) == size:
            break
        cand = proj[:, k].copy()
        for c in chosen:
            cand -= c * np.vdot(c, cand)
        norm = np.linalg.norm(cand)
        if norm > 1e-8:
            chosen.append(cand / norm)
    if len(chosen) != size:  # cannot happen for an orthonormal input block
        raise RuntimeError("failed to canonicalize a degenerate Schmidt block")
    return np.column_stack(chosen)


def schmidt_decomposition(
    v: FockVector, m_left: int, rank_tol: float = RANK_THRESHOLD
) -> SchmidtResult:
    """Labelled Schmidt decomposition of the (m_left : N - m_left) cut.

    Coefficients are reported nonnegative, with phases folded into the Schmidt
    vectors. Within a degenerate coefficient group the basis is canonicalized
    towards single occupation kets, which reproduces single-Slater Schmidt
    vectors exactly whenever they exist.
    """
    mat, rows, cols = particle_cut_matrix(v, m_left)
    u, s, _ = np.linalg.svd(mat)
    keep = int(np.sum(s > rank_tol))
    entries = []
    first_mode = set(v.basis.mode_orbitals(v.basis.modes[0]))
    start = 0
    while start < keep:
        stop = start + 1
        while stop < keep and abs(s[stop] - s[start]) < 1e-9:
            stop += 1
        block = u[:, start:stop]
        if stop - start > 1:
            block = _canonical_degenerate_basis(block)
        for col in range(block.shape[1]):
            coeff = float(s[start + col])
            left_vec = block[:, col]
            # fix the global phase so the dominant left component is positive real
            anchor = left_vec[int(np.argmax(np.abs(left_vec)))]
            left_vec = left_vec * (abs(anchor) / anchor)
            right_vec = (mat.T @ left_vec.conj()) / coeff
            left_label = _dominant_label(left_vec, rows)
            right_label = _dominant_label(right_vec, cols)
            entries.append(
                SchmidtEntry(
                    coefficient=coeff,
                    n_in_first_mode=sum(1 for o in left_label if o in first_mode),
                    left=left_label,
                    right=right_label,
                )
            )
        start = stop
    return SchmidtResult(entries=tuple(entries))


# ---------------------------------------------------------------------------
# closed-form predictions for the split-and-detect pipeline state
# ---------------------------------------------------------------------------


def _check_symmetric_cut(n_particles: int, m_left: int):
    if not 1 <= m_left <= n_particles - m_left:
        raise ValueError(
            f"(N={n_particles}, M={m_left}) violates 1 <= M <= N-M"
        )


def predicted_purity(n_particles: int, m_left: int) -> Fraction:
    """Closed-form Tr rho_M^2 for the projected pipeline state, exact rational.

    Sum over n of N!/(n!(M-n)!(N-M)!) * C(N-M, M-n)^2 / C(N, M)^4.
    """
    _check_symmetric_cut(n_particles, m_left)
    n_tot, m = n_particles, m_left
    total = Fraction(0)
    for n in range(m + 1):
        ways = Fraction(
            math.factorial(n_tot),
            math.factorial(n) * math.factorial(m - n) * math.factorial(n_tot - m),
        )
        total += ways * math.comb(n_tot - m, m - n) ** 2
    return total / Fraction(math.comb(n_tot, m)) ** 4


def predicted_rank(n_particles: int, m_left: int) -> int:
    """Closed-form Schmidt rank for the projected pipeline state.

    Sum over n of N!/(n!(M-n)!(N-M)!), which equals 2^M * C(N, M).
    """
    _check_symmetric_cut(n_particles, m_left)
    n_tot, m = n_particles, m_left
    return sum(
        math.factorial(n_tot)
        // (math.factorial(n) * math.factorial(m - n) * math.factorial(n_tot - m))
        for n in range(m + 1)
    )


def predicted_spectrum(n_particles: int, m_left: int) -> np.ndarray:
    """Closed-form Schmidt coefficients (descending, with multiplicity).

    For each n in 0..M the value C(N-M, M-n)^(1/2) / C(N, M) appears with
    multiplicity N!/(n!(M-n)!(N-M)!).
    """
    _check_symmetric_cut(n_particles, m_left)
    n_tot, m = n_particles, m_left
    values: list[float] = []
    for n in range(m + 1):
        mult = math.factorial(n_tot) // (
            math.factorial(n) * math.factorial(m - n) * math.factorial(n_tot - m)
        )
        values.extend([math.sqrt(math.comb(n_tot - m, m - n)) / math.comb(n_tot, m)] * mult)
    return np.array(sorted(values, reverse=True))


# ---------------------------------------------------------------------------
# Slater detection and linear entropy
# ---------------------------------------------------------------------------


def is_slater(v: FockVector, m_left: int = 1, tol: float = ATOL) -> bool:
    """True iff the cut purity saturates the Slater bound C(N, M)^(-1).

    Tr rho_M^2 <= C(N, M)^(-1) holds for every pure state, with equality
    exactly on single Slater determinants.
    """
    bound = 1.0 / math.comb(v.n_particles, m_left)
    return abs(cut_purity(v, m_left) - bound) <= tol


def linear_entropy_single(v: FockVector) -> float:
    """1 - Tr rho_1^2 of the unit-trace single-particle reduced density matrix."""
    return 1.0 - cut_purity(v, 1)


# ---------------------------------------------------------------------------
# effective distinguishable-party states
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EffectiveBipartiteState:
    """Internal-level state c[i, j] of one accessible particle per mode.

    Alice holds the particle in the first mode, Bob the one in the second;
    rows are Alice's internal levels, columns Bob's. Unit Frobenius norm.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("coefficient matrix must be square")
        if abs(np.sum(np.abs(c) ** 2) - 1.0) > ATOL:
            raise ValueError("coefficient matrix must have unit Frobenius norm")
        object.__setattr__(self, "coefficients", c)

    def schmidt_coefficients(self) -> np.ndarray:
        """Singular values of c, descending; their squares sum to 1."""
        return np.linalg.svd(self.coefficients, compute_uv=False)

    def linear_entropy(self) -> float:
        """1 - Tr rho^2 of the uniformly-sampled-party reduced state.

        The state of a party drawn uniformly from {Alice, Bob} has spectrum
        {s_i^2 / 2, each twice}, matching the single-particle reduced density
        matrix of the underlying two-fermion state exactly.
        """
        s = self.schmidt_coefficients()
        return 1.0 - 0.5 * float(np.sum(s**4))

    def fidelity(self, other: np.ndarray) -> float:
        """Squared overlap |<other|c>|^2, insensitive to global phase."""
        other = np.asarray(other, dtype=complex)
        return float(abs(np.vdot(other, self.coefficients)) ** 2)


def effective_state(v: FockVector) -> EffectiveBipartiteState:
    """Internal-level coefficients of a two-fermion state with one particle per mode.

    c[i, j] is the amplitude of the ket occupying level i of the first mode and
    level j of the second; with the mode-major ordering this is sign-free.
    """
    if v.n_particles != 2:
        raise ValueError("effective bipartite reduction requires exactly 2 fermions")
    if len(v.basis.modes) != 2:
        raise ValueError("effective bipartite reduction requires a two-mode basis")
    n = v.basis.internal_dim
    first = list(v.basis.mode_orbitals(v.basis.modes[0]))
    second = list(v.basis.mode_orbitals(v.basis.modes[1]))
    c = np.zeros((n, n), dtype=complex)
    weight = 0.0
    for occ, a in v.amplitudes.items():
        in_first = [o for o in occ if o in set(first)]
        if len(in_first) != 1:
            raise ValueError(
                "state has support outside the one-particle-per-mode sector"
            )
        i = v.basis.level_of(in_first[0])
        j = v.basis.level_of(next(o for o in occ if o not in set(first)))
        c[i, j] = a
        weight += abs(a) ** 2
    if abs(weight - 1.0) > ATOL:
        raise ValueError("input state must be normalized")
    return EffectiveBipartiteState(coefficients=c)


@dataclass(frozen=True, eq=False)
class EffectiveSplitState:
    """Alice/Bob amplitude map of an (M : N-M) mode-partitioned N-fermion state.

    Keys are (alice_levels, bob_levels): ascending tuples of internal levels
    held at the first and second mode respectively.
    """

    alice_size: int
    bob_size: int
    amplitudes: dict[tuple[Occupation, Occupation], complex]

    def alice_labels(self) -> list[Occupation]:
        return sorted({k[0] for k in self.amplitudes})

    def alice_density(self) -> np.ndarray:
        """Alice's reduced density matrix over her internal-level subsets."""
        rows = self.alice_labels()
        cols = sorted({k[1] for k in self.amplitudes})
        mat = np.zeros((len(rows), len(cols)), dtype=complex)
        row_index = {k: i for i, k in enumerate(rows)}
        col_index = {k: i for i, k in enumerate(cols)}
        for (ka, kb), a in self.amplitudes.items():
            mat[row_index[ka], col_index[kb]] = a
        return mat @ mat.conj().T

    def alice_purity(self) -> float:
        rho = self.alice_density()
        return float(np.real(np.trace(rho @ rho)))


def effective_state_general(v: FockVector, m_first: int) -> EffectiveSplitState:
    """Amplitude map over (Alice M-subset : Bob (N-M)-subset) internal labels.

    Requires support entirely on the sector with m_first particles in the
    first mode. With mode-major orbital ordering the canonical ket order is
    already (first-mode block, second-mode block), so amplitudes carry over
    without extra signs. Reduces to effective_state for N = 2, M = 1.
    """
    if len(v.basis.modes) != 2:
        raise ValueError("mode partition requires a two-mode basis")
    if not 1 <= m_first <= v.n_particles - 1:
        raise ValueError(f"partition size {m_first} outside 1..{v.n_particles - 1}")
    first = set(v.basis.mode_orbitals(v.basis.modes[0]))
    amps: dict[tuple[Occupation, Occupation], complex] = {}
    weight = 0.0
    for occ, a in v.amplitudes.items():
        alice = tuple(v.basis.level_of(o) for o in occ if o in first)
        bob = tuple(v.basis.level_of(o) for o in occ if o not in first)
        if len(alice) != m_first:
            raise ValueError(
                f"state has support outside the ({m_first}, "
                f"{v.n_particles - m_first}) mode sector"
            )
        amps[(alice, bob)] = a
        weight += abs(a) ** 2
    if abs(weight - 1.0) > ATOL:
        raise ValueError("input state must be normalized")
    return EffectiveSplitState(
        alice_size=m_first, bob_size=v.n_particles - m_first, amplitudes=amps
    )


# ---------------------------------------------------------------------------
# fermionic concurrence (two fermions, four orbitals)
# ---------------------------------------------------------------------------

PAIR_BASIS: tuple[Occupation, ...] = tuple(itertools.combinations(range(4), 2))


def dual_pairing_matrix() -> np.ndarray:
    """Epsilon pairing on the 6-dim two-fermion sector: S[(ij),(kl)] = eps(ijkl).

    Real, symmetric, and an involution; the dual of a pure state vector a is
    S @ conj(a), the fermionic analogue of the qubit spin flip.
    """
    s = np.zeros((6, 6))
    for r, (i, j) in enumerate(PAIR_BASIS):
        for c, (k, l) in enumerate(PAIR_BASIS):
            if len({i, j, k, l}) == 4:
                s[r, c] = permutation_parity((i, j, k, l))
    return s


_DUAL = None


def _dual() -> np.ndarray:
    global _DUAL
    if _DUAL is None:
        _DUAL = dual_pairing_matrix()
    return _DUAL


def _pair_vector(v: FockVector) -> np.ndarray:
    if v.n_particles != 2 or v.basis.n_orbitals != 4:
        raise ValueError(
            "fermionic concurrence is defined for 2 fermions on 4 orbitals"
        )
    return np.array([v.amplitude(k) for k in PAIR_BASIS])


def concurrence_pure(v: FockVector) -> float:
    """Concurrence of a pure two-fermion state on four orbitals.

    |a^T S a| / |a|^2: twice the normalized Pfaffian magnitude of the
    antisymmetric coefficient matrix. Zero exactly on Slater determinants,
    one on maximally entangled states, invariant under single-particle
    unitaries.
    """
    a = _pair_vector(v)
    norm2 = float(np.sum(np.abs(a) ** 2))
    if norm2 <= 0.0:
        raise ValueError("cannot evaluate concurrence of a zero vector")
    return float(abs(a @ _dual() @ a)) / norm2


def density_matrix(v: FockVector) -> np.ndarray:
    """|v><v| over the canonical sector ket basis."""
    kets = sector_kets(v.basis.n_orbitals, v.n_particles)
    vec = np.array([v.amplitude(k) for k in kets])
    return np.outer(vec, vec.conj())


def concurrence_mixed(rho: np.ndarray, tol: float = ATOL) -> float:
    """Concurrence of a mixed two-fermion state on four orbitals.

    Spin-flip construction with the epsilon dual rho~ = S conj(rho) S: with
    mu_k the descending square roots of the eigenvalues of rho rho~, the
    concurrence is max(0, mu_1 - sum of the rest). The mu_k are computed as
    the singular values of the complex-symmetric matrix Phi^T S Phi, where
    rho = Phi Phi' is the spectral factorization; this is exactly equivalent
    and stays accurate for singular rho. Input must be Hermitian, PSD and
    unit trace on the 6-dim pair basis.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (6, 6):
        raise ValueError("density matrix must be 6 x 6 (two fermions, d = 4)")
    if not np.allclose(rho, rho.conj().T, atol=tol):
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > math.sqrt(tol):
        raise ValueError("density matrix must have unit trace")
    evals, evecs = np.linalg.eigh(rho)
    if evals.min() < -math.sqrt(tol):
        raise ValueError("density matrix must be positive semidefinite")
    keep = evals > 1e-14
    factor = evecs[:, keep] * np.sqrt(evals[keep])
    tau = factor.T @ _dual() @ factor
    mu = np.linalg.svd(tau, compute_uv=False)
    if mu.size == 0:
        return 0.0
    return float(max(0.0, mu[0] - np.sum(mu[1:])))
