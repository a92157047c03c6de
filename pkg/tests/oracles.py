"""Independent brute-force oracles and random-object helpers for the tests.

Everything here is deliberately written against the definitions, not against
the library internals: dense tensors, explicit permutation sums, per-particle
projectors, and random-search minimization.
"""

from __future__ import annotations

import itertools

import numpy as np

from fermisplit import FockVector, OrbitalBasis, sector_kets
from fermisplit.entanglement import dual_pairing_matrix
from fermisplit.firstq import FirstQuantizedTensor


def cycle_parity(perm) -> int:
    """Permutation sign via cycle decomposition (independent of the library's
    inversion count)."""
    perm = list(perm)
    order = sorted(range(len(perm)), key=lambda i: perm[i])
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def dense_antisymmetrize(data: np.ndarray) -> np.ndarray:
    """Signed permutation sum over particle slots, by the definition."""
    out = np.zeros_like(data)
    for perm in itertools.permutations(range(data.ndim)):
        out += cycle_parity(perm) * np.transpose(data, perm)
    return out


def mode_counting_from_tensor(t: FirstQuantizedTensor, first_mode_size: int) -> dict:
    """Counting statistics via per-particle mode membership of every entry."""
    probs: dict[tuple[int, int], float] = {}
    n = t.n_particles
    for idx in itertools.product(range(t.dim), repeat=n):
        w = abs(t.data[idx]) ** 2
        if w == 0.0:
            continue
        n_first = sum(1 for i in idx if i < first_mode_size)
        key = (n_first, n - n_first)
        probs[key] = probs.get(key, 0.0) + w
    return probs


def random_state(rng: np.random.Generator, basis: OrbitalBasis,
                 n_particles: int) -> FockVector:
    """Haar-ish random normalized state over the full sector."""
    kets = sector_kets(basis.n_orbitals, n_particles)
    amps = rng.standard_normal(len(kets)) + 1j * rng.standard_normal(len(kets))
    amps /= np.linalg.norm(amps)
    return FockVector(basis, n_particles, dict(zip(kets, amps)))


def random_one_per_mode_state(rng: np.random.Generator,
                              basis: OrbitalBasis) -> FockVector:
    """Random normalized two-fermion state with one particle in each mode."""
    first = list(basis.mode_orbitals(basis.modes[0]))
    second = list(basis.mode_orbitals(basis.modes[1]))
    kets = [(a, b) for a in first for b in second]
    amps = rng.standard_normal(len(kets)) + 1j * rng.standard_normal(len(kets))
    amps /= np.linalg.norm(amps)
    return FockVector(basis, 2, dict(zip(kets, amps)))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def convex_roof_concurrence(rho: np.ndarray, restarts: int = 10_000,
                            seed: int = 0, polish_steps: int = 400) -> float:
    """Brute-force convex-roof concurrence by random decomposition search.

    Decompositions rho = sum_k |chi_k><chi_k| are parametrized by isometries
    applied to the spectral square root; the average pure-state concurrence is
    sum_k |chi_k^T S chi_k|, minimized by random restarts plus a shrinking
    random-perturbation polish.
    """
    evals, evecs = np.linalg.eigh(rho)
    keep = evals > 1e-12
    phi = evecs[:, keep] * np.sqrt(evals[keep])
    rank = phi.shape[1]
    s = dual_pairing_matrix()
    if rank == 1:
        a = phi[:, 0]
        return float(abs(a @ s @ a))
    tau = phi.T @ s @ phi
    rng = np.random.default_rng(seed)
    sizes = [rank, rank + 1, rank + 2]
    per_size = restarts // len(sizes)
    best = np.inf
    best_u = None
    for m in sizes:
        g = rng.standard_normal((per_size, m, rank)) \
            + 1j * rng.standard_normal((per_size, m, rank))
        q = np.linalg.qr(g)[0]
        diag = np.einsum("bkr,rs,bks->bk", q, tau, q)
        objective = np.abs(diag).sum(axis=1)
        i = int(np.argmin(objective))
        if objective[i] < best:
            best = float(objective[i])
            best_u = q[i]
    u = best_u
    sigma = 0.3
    for _ in range(polish_steps):
        g = rng.standard_normal(u.shape) + 1j * rng.standard_normal(u.shape)
        q = np.linalg.qr(u + sigma * g)[0]
        value = float(np.abs(np.einsum("kr,rs,ks->k", q, tau, q)).sum())
        if value < best:
            best = value
            u = q
        else:
            sigma = max(sigma * 0.97, 1e-4)
    return best


def assert_spectra_match(found, expected, atol: float = 1e-10):
    """Compare singular-value multisets, padding the shorter with zeros."""
    found = np.sort(np.asarray(found, dtype=float))[::-1]
    expected = np.sort(np.asarray(expected, dtype=float))[::-1]
    size = max(len(found), len(expected))
    fp = np.zeros(size)
    ep = np.zeros(size)
    fp[: len(found)] = found
    ep[: len(expected)] = expected
    np.testing.assert_allclose(fp, ep, atol=atol, rtol=0.0)
