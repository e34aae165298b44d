"""Shared test helpers: random unitaries and an independent two-photon
scattering oracle based on the permanent formula (matrix-element double
sum with bosonic symmetrization), deliberately separate from the package's
polynomial-expansion implementation."""

from __future__ import annotations

import itertools
import math

import numpy as np


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def occupations_to_modes(occ: tuple[int, ...]) -> list[int]:
    modes: list[int] = []
    for i, n in enumerate(occ):
        modes.extend([i] * n)
    return modes


def permanent_amplitude(
    matrix: np.ndarray, in_occ: tuple[int, ...], out_occ: tuple[int, ...]
) -> complex:
    """<out| U(matrix) |in> for photon numbers small enough to enumerate."""
    if sum(in_occ) != sum(out_occ):
        return 0j
    ins = occupations_to_modes(in_occ)
    outs = occupations_to_modes(out_occ)
    total = 0j
    for sigma in itertools.permutations(range(len(ins))):
        term = 1.0 + 0j
        for a, s in enumerate(sigma):
            term *= matrix[outs[a], ins[s]]
        total += term
    norm = math.sqrt(
        math.prod(math.factorial(k) for k in in_occ)
        * math.prod(math.factorial(k) for k in out_occ)
    )
    return total / norm


def two_photon_kets(n_modes: int) -> list[tuple[int, ...]]:
    kets = []
    for i in range(n_modes):
        for j in range(i, n_modes):
            occ = [0] * n_modes
            occ[i] += 1
            occ[j] += 1
            kets.append(tuple(occ))
    return kets
