"""Constructors for the linear-optical elements used in the interferometers.

Each element is a ModeMap.  The Grover four-port is the directionally
unbiased generalization of a beam splitter: input at any port exits at all
four ports with equal probability, -1/2 on the diagonal and +1/2 off it.
Circulators are deliberately absent: they route by propagation direction,
not by mode amplitude, and are handled as bookkeeping in the
interferometer topologies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .fock import ModeMap


def grover_unitary() -> ModeMap:
    """4x4 Grover coin: real, symmetric, unitary, and its own inverse."""
    m = 0.5 * (np.ones((4, 4)) - 2.0 * np.eye(4))
    return ModeMap(m.astype(complex), unitary=True)


def phase_map(mode_count: int, shifts: Iterable[float]) -> ModeMap:
    """Diagonal map exp(i * shift_k) applied per mode (shifts in radians)."""
    s = list(shifts)
    if len(s) != mode_count:
        raise ValueError(f"expected {mode_count} shifts, got {len(s)}")
    return ModeMap(np.diag(np.exp(1j * np.asarray(s, dtype=float))), unitary=True)


def beamsplitter50(
    modes: tuple[int, int], mode_count: int | None = None
) -> ModeMap:
    """Symmetric 50:50 beam splitter (1/sqrt2) [[1, i], [i, 1]] on a mode pair.

    Identity on all other modes.  The i-on-reflection convention is fixed
    here; two-photon destructive interference of the cross terms does not
    depend on it.
    """
    i, j = modes
    if i == j:
        raise ValueError("beam splitter needs two distinct modes")
    n = mode_count if mode_count is not None else max(i, j) + 1
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"modes {modes} out of range for {n} modes")
    m = np.eye(n, dtype=complex)
    r = 1.0 / np.sqrt(2.0)
    m[i, i] = m[j, j] = r
    m[i, j] = m[j, i] = 1j * r
    return ModeMap(m, unitary=True)


@dataclass(frozen=True)
class ElementSpec:
    """Declarative element description: kind, parameters, and acted modes.

    Supported kinds: ``grover4`` (4 acted modes), ``phase`` (one shift per
    acted mode), ``beamsplitter50`` (2 acted modes), ``identity``.
    """

    kind: str
    acted_modes: tuple[int, ...]
    parameters: tuple[float, ...] = field(default=())

    _KINDS = ("grover4", "phase", "beamsplitter50", "identity")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        modes = tuple(int(m) for m in self.acted_modes)
        if len(set(modes)) != len(modes):
            raise ValueError(f"acted modes must be distinct, got {modes}")
        if self.kind == "grover4" and len(modes) != 4:
            raise ValueError("grover4 acts on exactly 4 modes")
        if self.kind == "beamsplitter50" and len(modes) != 2:
            raise ValueError("beamsplitter50 acts on exactly 2 modes")
        if self.kind == "phase" and len(self.parameters) != len(modes):
            raise ValueError("phase needs one shift per acted mode")
        object.__setattr__(self, "acted_modes", modes)
        object.__setattr__(self, "parameters", tuple(float(p) for p in self.parameters))

    def build(self, mode_count: int) -> ModeMap:
        """Embed the element into an identity map over ``mode_count`` modes."""
        if any(m >= mode_count for m in self.acted_modes):
            raise ValueError(f"acted modes {self.acted_modes} exceed {mode_count} modes")
        full = np.eye(mode_count, dtype=complex)
        if self.kind == "identity":
            return ModeMap(full, unitary=True)
        if self.kind == "phase":
            for mode, shift in zip(self.acted_modes, self.parameters):
                full[mode, mode] = np.exp(1j * shift)
            return ModeMap(full, unitary=True)
        if self.kind == "beamsplitter50":
            block = beamsplitter50((0, 1), 2).matrix
        else:
            block = grover_unitary().matrix
        for a, ma in enumerate(self.acted_modes):
            for b, mb in enumerate(self.acted_modes):
                full[ma, mb] = block[a, b]
        return ModeMap(full, unitary=True)
