"""Three-axis rotation sensing with the two-four-port interferometer.

Routing the four connecting lines through loops in three different planes
turns the interferometer into a three-axis Sagnac gyroscope: a rotation at
rate w about an axis with projected loop area A produces the phase
delta_phi ~= 8*pi*A*w/(lambda*c) between the counter-propagating paths.
The three measurable line phases relate to the per-axis Sagnac phases by
a fixed invertible matrix,

    (phi0, phi1, phi2)^T = [[1/2, 0, -1/2], [0, 0, 1], [1, 1, 0]]
                           . (phi_x, phi_y, phi_z)^T,

whose determinant is -1/2, so the three rotation rates follow uniquely
from the phases (phi_x = 2*phi0 + phi1, phi_y = phi2 - 2*phi0 - phi1,
phi_z = phi1).  The sign/branch ambiguities of the rate inversion
propagate to the rotation estimate as explicit candidate solutions.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .interferometers import CoincidenceRates, PhaseConfig
from .inversion import (
    CalibrationRecord,
    PhaseSolution,
    equivalent_phase_triples,
    invert_rates,
)

SPEED_OF_LIGHT = 299792458.0

PHASES_FROM_AXES = np.array(
    [[0.5, 0.0, -0.5], [0.0, 0.0, 1.0], [1.0, 1.0, 0.0]]
)
AXES_FROM_PHASES = np.array(
    [[2.0, 1.0, 0.0], [-2.0, -1.0, 1.0], [0.0, 1.0, 0.0]]
)


class GeometryError(ValueError):
    """Geometry cannot support the requested operation (e.g. zero loop area)."""


@dataclass(frozen=True)
class SagnacGeometry:
    """Loop areas projected perpendicular to each axis, and the light used.

    ``loop_radius`` is only needed for the exact (non-approximated) time
    delay; the linear-phase formulas need just areas and wavelength.
    """

    area_x: float
    area_y: float
    area_z: float
    wavelength: float
    loop_radius: float = 0.0
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self) -> None:
        if min(self.area_x, self.area_y, self.area_z) < 0:
            raise GeometryError("projected areas must be non-negative")
        if self.wavelength <= 0:
            raise GeometryError(f"wavelength must be positive, got {self.wavelength}")
        if self.loop_radius < 0:
            raise GeometryError("loop radius must be non-negative")

    @property
    def areas(self) -> tuple[float, float, float]:
        return (self.area_x, self.area_y, self.area_z)


@dataclass(frozen=True)
class RotationRates:
    """Angular rates about the three axes (rad/s)."""

    omega_x: float
    omega_y: float
    omega_z: float

    def __post_init__(self) -> None:
        for name in ("omega_x", "omega_y", "omega_z"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.omega_x, self.omega_y, self.omega_z)


@dataclass(frozen=True)
class RotationEstimate:
    """Reconstructed rotation with the ambiguity the data leaves open.

    ``candidates`` are the rotation vectors consistent with the measured
    rates (the primary first).  ``direction_ambiguous[j]`` means the sign
    of axis j is undetermined; ``magnitude_ambiguous[j]`` means even its
    magnitude differs between candidates, which the x and z axes inherit
    from the branch-exchange degeneracy of the phase inversion whenever
    the rotation mixes axes.
    """

    rates: RotationRates
    candidates: tuple[RotationRates, ...]
    direction_ambiguous: tuple[bool, bool, bool]
    magnitude_ambiguous: tuple[bool, bool, bool]
    phase_solution: PhaseSolution = field(repr=False)

    @property
    def magnitudes(self) -> tuple[float, float, float]:
        return tuple(abs(v) for v in self.rates.as_tuple())


def sagnac_phase(area: float, omega: float, wavelength: float,
                 speed_of_light: float = SPEED_OF_LIGHT) -> float:
    """Phase between counter-propagating beams: 8*pi*A*omega/(lambda*c)."""
    if area < 0:
        raise GeometryError("area must be non-negative")
    if wavelength <= 0:
        raise GeometryError(f"wavelength must be positive, got {wavelength}")
    return 8.0 * math.pi * area * omega / (wavelength * speed_of_light)


def exact_time_delay(area: float, radius: float, omega: float,
                     speed_of_light: float = SPEED_OF_LIGHT) -> float:
    """Loop transit-time difference 4*A*omega / (c^2 - r^2 omega^2).

    Reduces to 4*A*omega/c^2 for rim speeds far below c; raises outside
    that physical regime.
    """
    c = speed_of_light
    rim = abs(radius * omega)
    if rim >= c:
        raise GeometryError(
            f"rim speed |r*omega| = {rim:.6g} m/s is not below c; formula invalid"
        )
    return 4.0 * area * omega / (c * c - radius * radius * omega * omega)


def _check_rim_speed(rates: RotationRates, geometry: SagnacGeometry) -> None:
    if geometry.loop_radius <= 0:
        return
    rim = geometry.loop_radius * max(abs(v) for v in rates.as_tuple())
    if rim > 0.01 * geometry.speed_of_light:
        warnings.warn(
            f"rim speed {rim:.3g} m/s is not small against c; the linear "
            "Sagnac phase formula degrades here",
            stacklevel=3,
        )


def phases_from_rotation(
    rates: RotationRates, geometry: SagnacGeometry
) -> PhaseConfig:
    """Line phases produced by a rotation (forward matrix times Sagnac phases)."""
    _check_rim_speed(rates, geometry)
    axis_phases = np.array([
        sagnac_phase(a, w, geometry.wavelength, geometry.speed_of_light)
        for a, w in zip(geometry.areas, rates.as_tuple())
    ])
    phi = PHASES_FROM_AXES @ axis_phases
    return PhaseConfig(phi[0], phi[1], phi[2])


def rotation_from_phases(
    phases: PhaseConfig, geometry: SagnacGeometry
) -> RotationRates:
    """Exact inverse of phases_from_rotation (rows: 2,1,0 / -2,-1,1 / 0,1,0)."""
    for axis, area in zip("xyz", geometry.areas):
        if area <= 0:
            raise GeometryError(
                f"loop area about the {axis} axis is zero; that rotation "
                "component is unobservable"
            )
    axis_phases = AXES_FROM_PHASES @ np.array(phases.as_tuple())
    factor = geometry.wavelength * geometry.speed_of_light / (8.0 * math.pi)
    omegas = factor * axis_phases / np.array(geometry.areas)
    return RotationRates(omegas[0], omegas[1], omegas[2])


def reconstruct_rotation(
    rates: CoincidenceRates,
    calibration: CalibrationRecord,
    geometry: SagnacGeometry,
    residual_tolerance: float | None = None,
) -> RotationEstimate:
    """Rotation rates from measured coincidence rates, ambiguities included.

    Inverts the rates for the line phases, then maps every equally-valid
    phase triple (sign flips and the branch reflection; the phi0 + pi
    branch is excluded as unphysical for Sagnac-scale phases) through the
    exact matrix inverse.  In most cases only rate magnitudes, not
    rotation directions, are determined; the flags say exactly what is
    undetermined for this data set.
    """
    solution = invert_rates(
        rates, calibration=calibration, residual_tolerance=residual_tolerance
    )
    triples = equivalent_phase_triples(
        solution.phi0, solution.phi1, solution.phi2, include_pi_shift=False
    )
    candidates = tuple(
        rotation_from_phases(PhaseConfig(*t), geometry) for t in triples
    )
    primary = candidates[0]
    direction = [False, False, False]
    magnitude = [False, False, False]
    for cand in candidates[1:]:
        for i, (a, b) in enumerate(zip(primary.as_tuple(), cand.as_tuple())):
            ref = max(abs(a), abs(b), 1e-300)
            if abs(a - b) > 1e-9 * ref and abs(a + b) <= 1e-9 * ref:
                direction[i] = True
            elif abs(abs(a) - abs(b)) > 1e-9 * ref:
                magnitude[i] = True
                direction[i] = True
    return RotationEstimate(
        rates=primary,
        candidates=candidates,
        direction_ambiguous=(direction[0], direction[1], direction[2]),
        magnitude_ambiguous=(magnitude[0], magnitude[1], magnitude[2]),
        phase_solution=solution,
    )
