"""The three named Grover-four-port setups as fixed, single-pass topologies.

Direction bookkeeping lives here: injection circulators feed photons into
a four-port, and every line leaving the final four-port is intercepted by
a circulator that routes it to a detector, so light never makes a second
round trip.  Mode order for the two-four-port interferometer is
(a1, b1, a2, b2): the upper-branch pair first, then the lower-branch pair.
Detectors A, B sit on lines a1, b1 and C, D on a2, b2.

Each setup can be evaluated two ways: brute-force state propagation
through the Fock algebra, and the closed-form coincidence-rate
expressions.  The two routes are kept fully independent so one can verify
the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .elements import beamsplitter50, grover_unitary, phase_map
from .fock import StateVector, apply_mode_map, merge_modes, probabilities


def wrap_angle(x: float) -> float:
    """Wrap an angle to the interval (-pi, pi]."""
    y = math.remainder(float(x), 2.0 * math.pi)
    return math.pi if y <= -math.pi else y


@dataclass(frozen=True)
class PhaseConfig:
    """Three line phases (radians), stored wrapped to (-pi, pi].

    phi0 shifts the whole upper branch relative to the lower, phi1 is the
    within-branch shift of line a1 against b1, and phi2 the shift of a2
    against b2.  Line phases are (phi0 + phi1, phi0, phi2, 0), which makes
    the upper two-photon amplitude carry exp(i(2*phi0 + phi1)) and the
    lower one exp(i*phi2).
    """

    phi0: float
    phi1: float
    phi2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi0", wrap_angle(self.phi0))
        object.__setattr__(self, "phi1", wrap_angle(self.phi1))
        object.__setattr__(self, "phi2", wrap_angle(self.phi2))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.phi0, self.phi1, self.phi2)

    def line_shifts(self) -> tuple[float, float, float, float]:
        return (self.phi0 + self.phi1, self.phi0, self.phi2, 0.0)


@dataclass(frozen=True)
class CoincidenceRates:
    """The four independent pairwise coincidence rates plus the source scale.

    The remaining two pairings are degenerate (r_bd = r_ac, r_bc = r_ad)
    and are exposed as properties instead of being stored.  ``normalized``
    marks probability units (r0 = 1/16) as opposed to counts per second.
    """

    r_ac: float
    r_ad: float
    r_ab: float
    r_cd: float
    r0: float = 1.0
    normalized: bool = False

    def __post_init__(self) -> None:
        for name in ("r_ac", "r_ad", "r_ab", "r_cd"):
            v = float(getattr(self, name))
            if v < -1e-9 * max(1.0, self.r0):
                raise ValueError(f"{name} = {v} is negative")
            object.__setattr__(self, name, max(v, 0.0))
        if self.r0 <= 0:
            raise ValueError(f"r0 must be positive, got {self.r0}")

    @property
    def r_bd(self) -> float:
        return self.r_ac

    @property
    def r_bc(self) -> float:
        return self.r_ad

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.r_ac, self.r_ad, self.r_ab, self.r_cd)

    def scaled(self, factor: float) -> "CoincidenceRates":
        return CoincidenceRates(
            self.r_ac * factor, self.r_ad * factor, self.r_ab * factor,
            self.r_cd * factor, r0=self.r0 * factor, normalized=self.normalized,
        )


@dataclass(frozen=True)
class DetectionDistribution:
    """Probabilities of two-photon detector outcomes ("AB", "AA", ...).

    Outcome keys are sorted detector-name pairs.  The distribution must sum
    to one; when the four-detector outcomes are present, the degenerate
    pairs (AC vs BD, AD vs BC) must agree.
    """

    probabilities: Mapping[str, float]
    tolerance: float = field(default=1e-10, compare=False)

    def __post_init__(self) -> None:
        probs = {self._key(k): float(v) for k, v in self.probabilities.items()}
        total = sum(probs.values())
        if abs(total - 1.0) > self.tolerance:
            raise ValueError(f"outcome probabilities sum to {total}, not 1")
        for a, b in (("AC", "BD"), ("AD", "BC")):
            if a in probs and b in probs and abs(probs[a] - probs[b]) > self.tolerance:
                raise ValueError(f"degenerate outcomes {a}/{b} differ: "
                                 f"{probs[a]} vs {probs[b]}")
        object.__setattr__(self, "probabilities", probs)

    @staticmethod
    def _key(pair: str) -> str:
        if len(pair) != 2:
            raise ValueError(f"outcome key must name two detectors, got {pair!r}")
        return "".join(sorted(pair))

    def p(self, pair: str) -> float:
        return self.probabilities.get(self._key(pair), 0.0)


def _distribution_from_state(state: StateVector, detectors: str) -> DetectionDistribution:
    probs: dict[str, float] = {}
    for ket, prob in probabilities(state).items():
        names = []
        for mode, n in enumerate(ket.occupations):
            names.extend(detectors[mode] * n)
        key = "".join(sorted(names))
        probs[key] = probs.get(key, 0.0) + prob
    return DetectionDistribution(probs)


def tunable_hom(phi: float) -> DetectionDistribution:
    """Single four-port with merged outputs: dial between HOM and anti-HOM.

    Two photons enter lines 1 and 2; the reflected pair picks up a phase
    phi per photon; lines (1, 3) then merge onto detector a and (2, 4)
    onto detector b.  The coincidence probability is cos(phi)^2: phi = pi/2
    gives the HOM dip (photons always bunch), phi = 0 the anti-HOM peak
    (photons always split), phi = pi/4 the classical-like midpoint.
    """
    state = apply_mode_map(StateVector.ket((1, 1, 0, 0)), grover_unitary())
    state = apply_mode_map(state, phase_map(4, (phi, phi, 0.0, 0.0)))
    merged = merge_modes(state, [((0, 2), 0), ((1, 3), 1)])
    return _distribution_from_state(merged, "ab")


def grover_mz_rates(phases: PhaseConfig, r0: float = 1.0) -> CoincidenceRates:
    """Closed-form coincidence rates of the two-four-port interferometer.

    The four independent rates for source scale r0; the degenerate pairs
    R_BD and R_BC are available on the returned object as properties.
    """
    if r0 <= 0:
        raise ValueError(f"r0 must be positive, got {r0}")
    p0, p1, p2 = phases.as_tuple()
    s1, s2 = math.sin(p1), math.sin(p2)
    c1, c2 = math.cos(p1), math.cos(p2)
    ct = math.cos(2.0 * p0 + p1 - p2)
    r_ac = r0 * (s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * ct)
    r_ad = r0 * (s1 * s1 + s2 * s2 + 2.0 * s1 * s2 * ct)
    r_ab = r0 * ((c1 + 1) ** 2 + (c2 + 1) ** 2 + 2.0 * (c1 + 1) * (c2 + 1) * ct)
    r_cd = r0 * ((c1 - 1) ** 2 + (c2 - 1) ** 2 + 2.0 * (c1 - 1) * (c2 - 1) * ct)
    return CoincidenceRates(r_ac, r_ad, r_ab, r_cd, r0=r0)


def rate_identities(rates: CoincidenceRates, phases: PhaseConfig) -> tuple[float, float, float, float]:
    """Residuals of the four sum/difference identities (zero when consistent).

    (AC+AD)/r0 = 2(sin^2 phi1 + sin^2 phi2)
    (AD-AC)/r0 = 4 sin phi1 sin phi2 cos(2 phi0 + phi1 - phi2)
    (AB+CD)/r0 = 2(1+cos^2 phi1) + 2(1+cos^2 phi2)
                 + 4 cos(2 phi0 + phi1 - phi2)(1 + cos phi1 cos phi2)
    (AB-CD)/r0 = 4(cos phi1 + cos phi2)(1 + cos(2 phi0 + phi1 - phi2))
    """
    p0, p1, p2 = phases.as_tuple()
    s1, s2 = math.sin(p1), math.sin(p2)
    c1, c2 = math.cos(p1), math.cos(p2)
    ct = math.cos(2.0 * p0 + p1 - p2)
    r0 = rates.r0
    return (
        (rates.r_ac + rates.r_ad) / r0 - 2.0 * (s1 * s1 + s2 * s2),
        (rates.r_ad - rates.r_ac) / r0 - 4.0 * s1 * s2 * ct,
        (rates.r_ab + rates.r_cd) / r0
        - (2.0 * (1 + c1 * c1) + 2.0 * (1 + c2 * c2) + 4.0 * ct * (1 + c1 * c2)),
        (rates.r_ab - rates.r_cd) / r0 - 4.0 * (c1 + c2) * (1.0 + ct),
    )


def simulate_grover_mz(phases: PhaseConfig) -> DetectionDistribution:
    """Brute-force propagation through the two-four-port interferometer.

    |1100> on lines (a1, b1) -> four-port -> per-line phases -> four-port
    -> detectors A..D, including the same-detector double outcomes so the
    distribution closes to 1.  Matches grover_mz_rates up to the global
    scale 1/(16 r0).
    """
    g = grover_unitary()
    state = apply_mode_map(StateVector.ket((1, 1, 0, 0)), g)
    state = apply_mode_map(state, phase_map(4, phases.line_shifts()))
    state = apply_mode_map(state, g)
    return _distribution_from_state(state, "ABCD")


def rates_from_distribution(
    dist: DetectionDistribution, r0: float = 1.0
) -> CoincidenceRates:
    """Coincidence rates implied by a simulated distribution at source scale r0."""
    s = 16.0 * r0
    return CoincidenceRates(
        s * dist.p("AC"), s * dist.p("AD"), s * dist.p("AB"), s * dist.p("CD"), r0=r0
    )


def probability_rates(dist: DetectionDistribution) -> CoincidenceRates:
    """Probability-mode rates: r0 = 1/16 makes each rate the outcome
    probability itself (the AB coincidence is 1 at zero phases)."""
    return CoincidenceRates(
        dist.p("AC"), dist.p("AD"), dist.p("AB"), dist.p("CD"),
        r0=1.0 / 16.0, normalized=True,
    )


def hom_baseline(
    delay_proxy: float = 0.0, distinguishable: bool = False
) -> DetectionDistribution:
    """Plain 50:50 beam-splitter HOM reference for |11> input.

    The quantum (fully indistinguishable) distribution is computed by state
    propagation; partial distinguishability is modeled by mixing it with
    the classical 50:50 outcome statistics using a Gaussian overlap
    V = exp(-delay_proxy^2), delay_proxy in units of the coherence time.
    ``distinguishable`` forces V = 0 (fully classical limit: coincidence
    probability 1/2).
    """
    v = 0.0 if distinguishable else math.exp(-float(delay_proxy) ** 2)
    quantum = _distribution_from_state(
        apply_mode_map(StateVector.ket((1, 1)), beamsplitter50((0, 1))), "ab"
    )
    classical = {"ab": 0.5, "aa": 0.25, "bb": 0.25}
    mixed = {
        key: v * quantum.p(key) + (1.0 - v) * classical[key] for key in classical
    }
    return DetectionDistribution(mixed)
