"""Sparse Fock-state algebra for few-photon states on N optical modes.

States are superpositions of occupation-number kets, stored sparsely as a
mapping from occupation tuples to complex amplitudes.  Linear optical
elements act on creation operators (column convention: mode i maps to
sum_j M[j, i] * a_j^dagger); applying an element expands the resulting
creation-operator polynomial and re-collects Fock amplitudes with the
usual sqrt(n!) factors.  Everything here is immutable and pure, so states
and maps can be shared freely across threads and parameter sweeps.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

DEFAULT_PHOTON_CAP = 4
DEFAULT_PRUNE_THRESHOLD = 1e-14
UNITARITY_TOL = 1e-12


class DimensionMismatchError(ValueError):
    """Mode counts of the operands do not agree."""


class PhotonCapExceededError(ValueError):
    """Photon number above the supported expansion cap (not silently truncated)."""


class MergeOverlapError(ValueError):
    """Mode-merge sources overlap or targets collide."""


class MergeNormWarning(UserWarning):
    """A mode merge left the state with non-unit norm (lossy configuration)."""


@dataclass(frozen=True)
class FockState:
    """Occupation-number ket |n_1 ... n_N> over N modes."""

    occupations: tuple[int, ...]

    def __post_init__(self) -> None:
        occ = tuple(int(n) for n in self.occupations)
        if len(occ) < 1:
            raise ValueError("FockState needs at least one mode")
        if any(n < 0 for n in occ):
            raise ValueError(f"negative occupation in {occ}")
        object.__setattr__(self, "occupations", occ)

    @property
    def mode_count(self) -> int:
        return len(self.occupations)

    @property
    def photon_count(self) -> int:
        return sum(self.occupations)

    def __str__(self) -> str:
        return "|" + " ".join(str(n) for n in self.occupations) + ">"


def _sqrt_fact_prod(occ: tuple[int, ...]) -> float:
    out = 1.0
    for n in occ:
        out *= math.factorial(n)
    return math.sqrt(out)


class StateVector:
    """Normalized-or-not superposition of FockStates with a common photon number.

    Terms with |amplitude| below ``prune_threshold`` are dropped at
    construction so that exact interference cancellations stay exactly zero
    in downstream probability calculations.
    """

    __slots__ = ("_terms", "mode_count", "photon_count", "prune_threshold")

    def __init__(
        self,
        terms: Mapping[FockState, complex] | Iterable[tuple[FockState, complex]],
        prune_threshold: float = DEFAULT_PRUNE_THRESHOLD,
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned: dict[FockState, complex] = {}
        mode_count: int | None = None
        photon_count: int | None = None
        for ket, amp in items:
            if mode_count is None:
                mode_count, photon_count = ket.mode_count, ket.photon_count
            elif ket.mode_count != mode_count:
                raise DimensionMismatchError(
                    f"mixed mode counts {mode_count} and {ket.mode_count}"
                )
            elif ket.photon_count != photon_count:
                raise ValueError(
                    f"mixed photon numbers {photon_count} and {ket.photon_count}"
                )
            a = complex(amp)
            if abs(a) >= prune_threshold:
                cleaned[ket] = cleaned.get(ket, 0j) + a
        if mode_count is None:
            raise ValueError("empty state: no terms given")
        if not cleaned:
            raise ValueError("state has no terms above the prune threshold")
        self._terms = cleaned
        self.mode_count = mode_count
        self.photon_count = photon_count
        self.prune_threshold = prune_threshold

    @classmethod
    def ket(cls, occupations: Iterable[int]) -> "StateVector":
        """Single basis ket with unit amplitude."""
        return cls({FockState(tuple(occupations)): 1.0 + 0j})

    @property
    def terms(self) -> Mapping[FockState, complex]:
        return MappingProxyType(self._terms)

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._terms.values()))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return StateVector(
            {k: v / n for k, v in self._terms.items()}, self.prune_threshold
        )

    def scaled(self, factor: complex) -> "StateVector":
        return StateVector(
            {k: v * factor for k, v in self._terms.items()}, self.prune_threshold
        )

    def add(self, other: "StateVector") -> "StateVector":
        if other.mode_count != self.mode_count:
            raise DimensionMismatchError("mode counts differ")
        merged = dict(self._terms)
        for k, v in other._terms.items():
            merged[k] = merged.get(k, 0j) + v
        return StateVector(merged, self.prune_threshold)

    def __repr__(self) -> str:
        parts = ", ".join(f"{k}: {v:.6g}" for k, v in sorted(
            self._terms.items(), key=lambda kv: kv[0].occupations))
        return f"StateVector({parts})"


@dataclass(frozen=True, eq=False)
class ModeMap:
    """Linear element acting on creation operators: an N x N complex matrix."""

    matrix: np.ndarray
    unitary: bool = field(default=False)

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"mode map must be square, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.unitary:
            self._check_unitary()
        else:
            # auto-promote when the matrix actually is unitary
            dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
            object.__setattr__(self, "unitary", bool(dev <= UNITARITY_TOL))

    def _check_unitary(self) -> None:
        m = self.matrix
        dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if dev > UNITARITY_TOL:
            raise ValueError(f"matrix declared unitary but M^H M deviates by {dev:.3g}")

    @property
    def mode_count(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n: int) -> "ModeMap":
        return cls(np.eye(n, dtype=complex), unitary=True)

    def compose(self, first: "ModeMap") -> "ModeMap":
        """Map equal to applying ``first`` and then this map (matrix product self @ first)."""
        if first.mode_count != self.mode_count:
            raise DimensionMismatchError("mode counts differ")
        return ModeMap(self.matrix @ first.matrix)


def _expand_ket(
    occ: tuple[int, ...], base_coeff: complex, columns: list[np.ndarray]
) -> dict[tuple[int, ...], complex]:
    """Expand prod_i (sum_k M[k,i] a_k^+)^{n_i} |0> into monomial coefficients."""
    n = len(occ)
    poly: dict[tuple[int, ...], complex] = {(0,) * n: base_coeff}
    for mode_i, count in enumerate(occ):
        if count == 0:
            continue
        col = columns[mode_i]
        for _ in range(count):
            new_poly: dict[tuple[int, ...], complex] = {}
            for mono, c in poly.items():
                for k in range(n):
                    mk = col[k]
                    if mk == 0:
                        continue
                    key = mono[:k] + (mono[k] + 1,) + mono[k + 1:]
                    new_poly[key] = new_poly.get(key, 0j) + c * mk
            poly = new_poly
    return poly


def apply_mode_map(
    state: StateVector, mode_map: ModeMap, photon_cap: int = DEFAULT_PHOTON_CAP
) -> StateVector:
    """Evolve a state through a linear element by creation-operator substitution.

    Photon number is conserved by construction; the norm is preserved
    whenever the map is unitary.  States above ``photon_cap`` photons are
    rejected rather than truncated, since the polynomial expansion cost
    grows combinatorially.
    """
    if state.mode_count != mode_map.mode_count:
        raise DimensionMismatchError(
            f"state has {state.mode_count} modes, map has {mode_map.mode_count}"
        )
    if state.photon_count > photon_cap:
        raise PhotonCapExceededError(
            f"{state.photon_count} photons exceeds cap {photon_cap}"
        )
    columns = [np.asarray(mode_map.matrix[:, i]) for i in range(mode_map.mode_count)]
    coeffs: dict[tuple[int, ...], complex] = {}
    for ket, amp in state.terms.items():
        base = amp / _sqrt_fact_prod(ket.occupations)
        for mono, c in _expand_ket(ket.occupations, base, columns).items():
            coeffs[mono] = coeffs.get(mono, 0j) + c
    out = {
        FockState(mono): c * _sqrt_fact_prod(mono) for mono, c in coeffs.items()
    }
    return StateVector(out, state.prune_threshold)


def amplitude_of(state: StateVector, basis: FockState) -> complex:
    """Amplitude of a basis ket in the state (exact zero when absent)."""
    if basis.mode_count != state.mode_count:
        raise DimensionMismatchError(
            f"state has {state.mode_count} modes, ket has {basis.mode_count}"
        )
    return state.terms.get(basis, 0j)


def probabilities(
    state: StateVector, norm_tolerance: float = 1e-10
) -> dict[FockState, float]:
    """Born-rule outcome distribution of a normalized state."""
    n = state.norm()
    if abs(n - 1.0) > norm_tolerance:
        raise ValueError(f"state norm {n} is not 1 within {norm_tolerance}")
    return {k: abs(v) ** 2 for k, v in state.terms.items()}


def merge_modes(
    state: StateVector,
    pairs: Iterable[tuple[tuple[int, ...], int]],
    norm_tolerance: float = 1e-10,
) -> StateVector:
    """Identify groups of modes onto shared detected modes.

    ``pairs`` assigns each group of source-mode indices to one target index
    in the output space; every source mode must appear exactly once and the
    targets must enumerate 0..K-1.  Physically this is the ideal lossless
    merge of paths onto one detector (both paths trigger the same detection
    event), implemented by substituting all source creation operators with
    the target's.  The merge is not unitary in general: if the result
    deviates from unit norm by more than ``norm_tolerance``, a
    MergeNormWarning reporting the deviation is emitted and the state is
    returned un-renormalized.
    """
    pair_list = [(tuple(src), int(tgt)) for src, tgt in pairs]
    seen: set[int] = set()
    for src, _ in pair_list:
        for s in src:
            if s in seen:
                raise MergeOverlapError(f"source mode {s} appears in multiple groups")
            if not 0 <= s < state.mode_count:
                raise MergeOverlapError(f"source mode {s} out of range")
            seen.add(s)
    if seen != set(range(state.mode_count)):
        missing = sorted(set(range(state.mode_count)) - seen)
        raise MergeOverlapError(f"modes {missing} not assigned to any merge group")
    targets = sorted(tgt for _, tgt in pair_list)
    if targets != list(range(len(pair_list))):
        raise MergeOverlapError(f"targets must enumerate 0..{len(pair_list)-1}, got {targets}")

    new_index = [0] * state.mode_count
    for src, tgt in pair_list:
        for s in src:
            new_index[s] = tgt
    k = len(pair_list)

    coeffs: dict[tuple[int, ...], complex] = {}
    for ket, amp in state.terms.items():
        mono = [0] * k
        for mode, n in enumerate(ket.occupations):
            mono[new_index[mode]] += n
        key = tuple(mono)
        c = amp / _sqrt_fact_prod(ket.occupations)
        coeffs[key] = coeffs.get(key, 0j) + c
    merged = StateVector(
        {FockState(m): c * _sqrt_fact_prod(m) for m, c in coeffs.items()},
        state.prune_threshold,
    )
    deviation = abs(merged.norm() - 1.0)
    if deviation > norm_tolerance:
        warnings.warn(
            f"mode merge changed the norm by {deviation:.3e} (lossy configuration)",
            MergeNormWarning,
            stacklevel=2,
        )
    return merged
