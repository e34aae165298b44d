"""Finite-bandwidth two-photon coincidence probability with line delays.

The coincidence probability of the merged-output four-port with delays is

    p = 1/2 + (1/2) cos(2 phi) * Ic + (1/2) sin(2 phi) * Is,

where Ic and Is are double integrals of |Phi(w_a) Phi(w_b)|^2 against
cos[w_a tau0 + w_b (tau0 + dtau)] and sin[w_a tau0 - w_b (tau0 + dtau)],
with dtau = tau2 - tau1.  The joint spectral density is the product
|Phi(w_a)|^2 |Phi(w_b)|^2 of one normalized single-photon density.

Integrals are evaluated with a tensor-product Simpson rule on a window of
+-window*bandwidth around the spectrum center, the density renormalized on
that grid so the zero-delay limits are exact.  Since the integrands split
as cos(x+y) and sin(x-y), the double Simpson sum contracts exactly to
products of 1-D sums, which is how it is computed here (the literal double
sum gives the same numbers to rounding; tests check that).

Frequencies are best kept in units of the bandwidth and delays in units of
its inverse; the zero default center frequency measures detunings from the
carrier, whose phase belongs in phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np


class QuadratureError(RuntimeError):
    """Grid refinement failed to converge to the requested tolerance."""


@dataclass(frozen=True)
class SpectralProfile:
    """Single-photon spectral amplitude shape: sinc, gaussian, or rectangular.

    ``bandwidth`` scales each shape: the sinc argument is
    (w - center)/bandwidth, the gaussian density has standard deviation
    ``bandwidth``, and the rectangle spans center +- bandwidth.  The
    density returned by :meth:`density` is unnormalized; quadrature
    renormalizes it on its own grid.
    """

    kind: str
    center: float = 0.0
    bandwidth: float = 1.0

    _KINDS = ("sinc", "gaussian", "rectangular")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown spectral kind {self.kind!r}")
        if not self.bandwidth > 0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")

    def density(self, omega: np.ndarray) -> np.ndarray:
        """|Phi(w)|^2 up to normalization."""
        x = (np.asarray(omega, dtype=float) - self.center) / self.bandwidth
        if self.kind == "sinc":
            return np.sinc(x / np.pi) ** 2  # np.sinc is sin(pi x)/(pi x)
        if self.kind == "gaussian":
            return np.exp(-0.5 * x * x)
        return np.where(np.abs(x) <= 1.0, 1.0, 0.0)

    def quadrature_halfwidth(self, window: float) -> float:
        """Half-width of the integration window, in frequency units.

        The rectangle is clipped to its exact support so the grid never
        straddles the density's jump (Simpson converges poorly across it,
        and the density vanishes beyond the edge anyway).
        """
        if self.kind == "rectangular":
            return min(window, 1.0) * self.bandwidth
        return window * self.bandwidth


@dataclass(frozen=True)
class DelayConfig:
    """Line delays (seconds, or inverse-bandwidth units).

    tau1 and tau2 are the delays between the two lines inside the
    reflected and transmitted two-photon amplitudes; tau0 delays one
    two-photon amplitude against the other.  Only tau0 and
    dtau = tau2 - tau1 enter the coincidence probability; dtau is always
    derived, never stored.
    """

    tau0: float = 0.0
    tau1: float = 0.0
    tau2: float = 0.0

    @property
    def dtau(self) -> float:
        return self.tau2 - self.tau1

    @classmethod
    def from_dtau(cls, tau0: float, dtau: float) -> "DelayConfig":
        return cls(tau0=tau0, tau1=0.0, tau2=dtau)


@dataclass(frozen=True)
class QuadratureGrid:
    """Simpson tensor grid: point count (odd), half-width in bandwidths,
    and the allowed disagreement between the base and once-refined grid."""

    points: int = 513
    window: float = 8.0
    tolerance: float = 1e-4

    def __post_init__(self) -> None:
        if self.points < 3 or self.points % 2 == 0:
            raise ValueError(f"points must be odd and >= 3, got {self.points}")
        if self.window <= 0 or self.tolerance <= 0:
            raise ValueError("window and tolerance must be positive")


def _simpson_weights(n: int, h: float) -> np.ndarray:
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def _double_integrals(
    spectrum: SpectralProfile, grid: QuadratureGrid, points: int,
    tau_a: float, tau_b: float,
) -> tuple[float, float]:
    """(Ic, Is) on one Simpson grid, via the exact factored contraction."""
    half = spectrum.quadrature_halfwidth(grid.window)
    omega = np.linspace(spectrum.center - half, spectrum.center + half, points)
    wf = _simpson_weights(points, omega[1] - omega[0]) * spectrum.density(omega)
    total = wf.sum()
    if total <= 0:
        raise QuadratureError("spectral density vanishes on the quadrature window")
    wf = wf / total
    za = np.sum(wf * np.exp(1j * omega * tau_a))
    zb = np.sum(wf * np.exp(1j * omega * tau_b))
    return float((za * zb).real), float((za * zb.conjugate()).imag)


def coincidence_probability(
    phi: float,
    delays: DelayConfig,
    spectrum: SpectralProfile,
    grid: QuadratureGrid = QuadratureGrid(),
) -> float:
    """Coincidence probability between the two merged outputs.

    Reduces to cos(phi)^2 at zero delays and to 1/2 when the delays far
    exceed the coherence time.  Raises QuadratureError when one grid
    refinement still moves the value by more than ``grid.tolerance``.
    """
    tau_a = delays.tau0
    tau_b = delays.tau0 + delays.dtau
    cos2, sin2 = math.cos(2.0 * phi), math.sin(2.0 * phi)

    def evaluate(points: int) -> float:
        ic, is_ = _double_integrals(spectrum, grid, points, tau_a, tau_b)
        return 0.5 + 0.5 * cos2 * ic + 0.5 * sin2 * is_

    coarse = evaluate(grid.points)
    fine = evaluate(2 * grid.points - 1)
    if abs(fine - coarse) > grid.tolerance:
        raise QuadratureError(
            f"refinement moved p by {abs(fine - coarse):.3e} "
            f"(> {grid.tolerance:.1e}); increase grid points or shrink delays"
        )
    return fine


def _scan_values(start: float, stop: float, step: float) -> Iterator[float]:
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    if not start < stop:
        raise ValueError(f"need start < stop, got [{start}, {stop}]")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    for i in range(count):
        yield start + i * step


def hom_scan(
    phi: float,
    scan: str,
    fixed: float,
    scan_range: tuple[float, float, float],
    spectrum: SpectralProfile,
    grid: QuadratureGrid = QuadratureGrid(),
) -> list[tuple[float, float]]:
    """Sweep one delay and tabulate the coincidence probability.

    ``scan`` selects the swept variable: "tau0" (holding dtau = ``fixed``)
    or "dtau" (holding tau0 = ``fixed``).  Returns (delay, probability)
    rows over start..stop inclusive with the given step.
    """
    if scan not in ("tau0", "dtau"):
        raise ValueError(f"scan must be 'tau0' or 'dtau', got {scan!r}")
    start, stop, step = scan_range
    rows = []
    for value in _scan_values(start, stop, step):
        if scan == "tau0":
            delays = DelayConfig.from_dtau(tau0=value, dtau=fixed)
        else:
            delays = DelayConfig.from_dtau(tau0=fixed, dtau=value)
        rows.append((value, coincidence_probability(phi, delays, spectrum, grid)))
    return rows
