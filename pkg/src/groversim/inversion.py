"""Reconstruct the three line phases (and optionally the source scale)
from measured coincidence rates.

The four independent rates depend on the phases only through sin/cos of
phi1 and phi2 and cos(2*phi0 + phi1 - phi2).  That structure makes the
solution non-unique: all detection statistics are invariant under the
group generated by

    phi0 -> phi0 + pi                          (doubled phi0 resolution),
    (phi0, phi1, phi2) -> (-phi0, -phi1, -phi2)           (global flip),
    (phi0, phi1, phi2) -> (phi0 + phi1 - phi2, -phi1, -phi2)
                                           (joint within-branch sign flip),
    (phi0, phi1, phi2) -> (-phi0, phi2, phi1)         (branch exchange),

sixteen equivalent triples in general.  Inversion therefore reports one
representative plus the equally-fitting candidates and per-phase
sign-ambiguity flags, rather than silently choosing.  A calibration
measurement at zero applied phases pins the source scale and the solution
surface through the origin.

The main solver is multi-start damped least squares on the four rate
residuals; an independent grid-search oracle (brute_force_invert) scans
the full phase cube to validate branch selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import minimum_filter
from scipy.optimize import least_squares

from .interferometers import CoincidenceRates, PhaseConfig, wrap_angle

AMBIGUITY_RESIDUAL_FACTOR = 10.0
_PHASE_MATCH_TOL = 1e-9


class CalibrationError(ValueError):
    """Zero-phase rates inconsistent with the expected (0, 0, 16*r0, 0) pattern."""


class InversionError(RuntimeError):
    """Rates could not be inverted (degenerate data or assumption violated)."""


@dataclass(frozen=True)
class CalibrationRecord:
    """Source scale and solution branch fixed by a zero-phase measurement."""

    r0_estimate: float
    zero_rates: CoincidenceRates
    branch: int = 0
    tolerance: float = 0.01


@dataclass(frozen=True)
class PhaseCandidate:
    phases: tuple[float, float, float]
    residual: float


@dataclass(frozen=True)
class PhaseSolution:
    """Recovered phases with honesty about what the data cannot decide.

    ``residual`` is the root-mean-square mismatch of the four rates at the
    solution; ``sign_ambiguous[i]`` is set when a candidate with the sign
    of phase i flipped fits essentially as well; ``candidates`` lists the
    equally-fitting solutions that were found (the solution itself first).
    """

    phi0: float
    phi1: float
    phi2: float
    r0: float
    residual: float
    sign_ambiguous: tuple[bool, bool, bool]
    converged: bool = True
    candidates: tuple[PhaseCandidate, ...] = field(default=())

    def phases(self) -> PhaseConfig:
        return PhaseConfig(self.phi0, self.phi1, self.phi2)


def calibrate(
    zero_phase_rates: CoincidenceRates, tolerance: float = 0.01
) -> CalibrationRecord:
    """Fit the source scale from rates measured with no applied phases.

    At zero phases only the AB coincidence fires, at rate 16*r0; the other
    rates must vanish to within ``tolerance`` (relative to R_AB), otherwise
    the hardware or simulation feeding this is mis-set.
    """
    r = zero_phase_rates
    if r.r_ab <= 0:
        raise CalibrationError("zero-phase R_AB must be positive")
    for name, value in (("R_AC", r.r_ac), ("R_AD", r.r_ad), ("R_CD", r.r_cd)):
        if value > tolerance * r.r_ab:
            raise CalibrationError(
                f"zero-phase {name} = {value:.6g} exceeds {tolerance} * R_AB; "
                "not a valid zero-phase calibration"
            )
    return CalibrationRecord(
        r0_estimate=r.r_ab / 16.0, zero_rates=r, branch=0, tolerance=tolerance
    )


def equivalent_phase_triples(
    phi0: float, phi1: float, phi2: float, include_pi_shift: bool = True
) -> list[tuple[float, float, float]]:
    """All phase triples producing identical detection statistics.

    Closure of the input under the degeneracy group (global flip, joint
    within-branch sign flip, branch exchange, and optionally the pi shift
    of phi0): sixteen triples for generic phases, fewer when some
    coincide.  Wrapped to (-pi, pi], input triple first.
    """
    generators = [
        lambda t: (-t[0], -t[1], -t[2]),
        lambda t: (t[0] + t[1] - t[2], -t[1], -t[2]),
        lambda t: (-t[0], t[2], t[1]),
    ]
    if include_pi_shift:
        generators.append(lambda t: (t[0] + math.pi, t[1], t[2]))

    def wrap3(t):
        return (wrap_angle(t[0]), wrap_angle(t[1]), wrap_angle(t[2]))

    def known(t, pool):
        return any(
            max(abs(wrap_angle(t[i] - o[i])) for i in range(3)) < 1e-12 for o in pool
        )

    out = [wrap3((phi0, phi1, phi2))]
    frontier = list(out)
    while frontier:
        next_frontier = []
        for t in frontier:
            for gen in generators:
                w = wrap3(gen(t))
                if not known(w, out):
                    out.append(w)
                    next_frontier.append(w)
        frontier = next_frontier
    return out


def phase_orbit_distance(
    a: tuple[float, float, float], b: tuple[float, float, float]
) -> float:
    """Smallest wrapped max-abs distance from ``a`` to any equivalent of ``b``."""
    return min(
        max(abs(wrap_angle(a[i] - t[i])) for i in range(3))
        for t in equivalent_phase_triples(*b)
    )


def _model_rates(p0, p1, p2, r0):
    """Closed-form rates, vectorized over numpy arrays of phases."""
    s1, s2 = np.sin(p1), np.sin(p2)
    c1, c2 = np.cos(p1), np.cos(p2)
    ct = np.cos(2.0 * p0 + p1 - p2)
    return (
        r0 * (s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * ct),
        r0 * (s1 * s1 + s2 * s2 + 2.0 * s1 * s2 * ct),
        r0 * ((c1 + 1) ** 2 + (c2 + 1) ** 2 + 2.0 * (c1 + 1) * (c2 + 1) * ct),
        r0 * ((c1 - 1) ** 2 + (c2 - 1) ** 2 + 2.0 * (c1 - 1) * (c2 - 1) * ct),
    )


def _rms(model: np.ndarray, measured: np.ndarray) -> float:
    return float(np.sqrt(np.mean((model - measured) ** 2)))


def _residual_at(
    triple: tuple[float, float, float], measured: np.ndarray, r0: float
) -> float:
    return _rms(np.array(_model_rates(*triple, r0)), measured)


def _sign_flags(
    best: tuple[float, float, float],
    best_residual: float,
    candidates: list[PhaseCandidate],
    scale: float,
) -> tuple[bool, bool, bool]:
    threshold = max(AMBIGUITY_RESIDUAL_FACTOR * best_residual, 1e-9 * scale)
    flags = [False, False, False]
    for cand in candidates:
        if cand.residual > threshold:
            continue
        for i in range(3):
            flipped = abs(wrap_angle(cand.phases[i] + best[i])) < _PHASE_MATCH_TOL
            distinct = abs(wrap_angle(cand.phases[i] - best[i])) > _PHASE_MATCH_TOL
            if flipped and distinct:
                flags[i] = True
    return (flags[0], flags[1], flags[2])


def _collect_candidates(
    best: tuple[float, float, float],
    extra: list[tuple[float, float, float]],
    measured: np.ndarray,
    r0: float,
) -> list[PhaseCandidate]:
    seen: list[tuple[float, float, float]] = []
    out: list[PhaseCandidate] = []
    for triple in [best, *equivalent_phase_triples(*best), *extra]:
        w = (wrap_angle(triple[0]), wrap_angle(triple[1]), wrap_angle(triple[2]))
        if any(
            max(abs(wrap_angle(w[i] - s[i])) for i in range(3)) < 1e-6 for s in seen
        ):
            continue
        seen.append(w)
        out.append(PhaseCandidate(w, _residual_at(w, measured, r0)))
    return out


def _reduce_phi0(phi0: float, reference: float) -> float:
    """Move phi0 to the pi-shifted branch nearest ``reference``.

    The rates are exactly pi-periodic in phi0, so this only picks the
    reported representative; the calibration branch corresponds to
    reference 0.
    """
    return wrap_angle(reference + math.remainder(phi0 - reference, math.pi))


def _start_lattice(per_axis: int = 8) -> np.ndarray:
    # cell centers, offset from the symmetric points where gradients vanish
    ang = -math.pi + (np.arange(per_axis) + 0.5) * (2.0 * math.pi / per_axis)
    g = np.stack(np.meshgrid(ang, ang, ang, indexing="ij"), axis=-1)
    return g.reshape(-1, 3)


def invert_rates(
    rates: CoincidenceRates,
    calibration: CalibrationRecord | None = None,
    solve_r0: bool = False,
    seed: tuple[float, float, float] | None = None,
    residual_tolerance: float | None = None,
    max_starts: int = 64,
) -> PhaseSolution:
    """Solve the four rate equations for (phi0, phi1, phi2) and optionally r0.

    Damped least squares from multiple starts: the zero-phase calibration
    branch and an optional caller seed first (continuity tracking for
    time-ordered data), then a coarse 8^3 lattice ordered by initial
    residual.  When the best residual stays above ``residual_tolerance``
    (default 1e-6 of the rate scale), the best candidate is still returned
    with ``converged=False``.

    With ``solve_r0`` the source scale becomes a fourth unknown.  Beware
    that the four equations then admit further discrete ambiguities: a
    different (r0, phases) combination can reproduce the same four rates
    exactly.  A calibration (or a seed near the expected phases) pins the
    intended branch.
    """
    measured = np.array(rates.as_tuple(), dtype=float)
    if calibration is None and not solve_r0:
        raise InversionError("need a CalibrationRecord when r0 is not being solved")
    r0_known = calibration.r0_estimate if calibration is not None else None

    scale = max(float(measured.max()), 16.0 * (r0_known or 0.0), 1e-300)
    tol = residual_tolerance if residual_tolerance is not None else 1e-6 * scale
    stop_rms = max(1e-11 * scale, 1e-13)

    r0_guess = r0_known if r0_known is not None else max(measured.sum() / 16.0, scale / 160.0)

    starts = []
    if seed is not None:
        starts.append(tuple(seed))
    starts.append((0.0, 0.0, 0.0))
    lattice = _start_lattice()
    init_res = _rms_lattice(lattice, measured, r0_guess)
    for idx in np.argsort(init_res, kind="stable"):
        starts.append(tuple(lattice[idx]))

    def residual_vec(x: np.ndarray) -> np.ndarray:
        r0 = x[3] if solve_r0 else r0_known
        model = np.array(_model_rates(x[0], x[1], x[2], r0))
        return (model - measured) / scale

    best_x: np.ndarray | None = None
    best_rms = math.inf
    tried: list[tuple[float, float, float]] = []
    for start in starts[: max_starts + 2]:
        x0 = np.array(list(start) + ([r0_guess] if solve_r0 else []))
        if solve_r0:
            fit = least_squares(
                residual_vec, x0, method="trf",
                bounds=([-np.inf] * 3 + [1e-12 * scale], [np.inf] * 4),
                xtol=1e-14, ftol=1e-14, gtol=1e-14,
            )
        else:
            fit = least_squares(
                residual_vec, x0, method="lm", xtol=1e-14, ftol=1e-14, gtol=1e-14
            )
        rms = float(np.sqrt(np.mean(fit.fun**2))) * scale
        triple = (wrap_angle(fit.x[0]), wrap_angle(fit.x[1]), wrap_angle(fit.x[2]))
        tried.append(triple)
        if rms < best_rms:
            best_rms, best_x = rms, fit.x.copy()
        if rms <= stop_rms:
            break
    assert best_x is not None

    r0_final = float(best_x[3]) if solve_r0 else float(r0_known)
    phi0_ref = seed[0] if seed is not None else 0.0
    best = (
        _reduce_phi0(float(best_x[0]), phi0_ref),
        wrap_angle(best_x[1]),
        wrap_angle(best_x[2]),
    )
    best_rms = _residual_at(best, measured, r0_final)
    near_ties = [
        t for t in tried
        if _residual_at(t, measured, r0_final)
        <= max(AMBIGUITY_RESIDUAL_FACTOR * best_rms, 1e-9 * scale)
    ]
    candidates = _collect_candidates(best, near_ties, measured, r0_final)
    flags = _sign_flags(best, best_rms, candidates, scale)
    return PhaseSolution(
        phi0=best[0], phi1=best[1], phi2=best[2], r0=r0_final,
        residual=best_rms, sign_ambiguous=flags,
        converged=bool(best_rms <= tol), candidates=tuple(candidates),
    )


def _rms_lattice(lattice: np.ndarray, measured: np.ndarray, r0: float) -> np.ndarray:
    model = np.stack(
        _model_rates(lattice[:, 0], lattice[:, 1], lattice[:, 2], r0), axis=-1
    )
    return np.sqrt(np.mean((model - measured[None, :]) ** 2, axis=-1))


@dataclass(frozen=True)
class SpecialCaseSolution:
    """Analytic solution valid when the two within-branch phases are equal.

    With phi1 = phi2, the rate ratios L1 = (R_AD-R_AC)/(R_AD+R_AC) and
    L2 = (R_AB-R_CD)/(R_AB+R_CD) give cos(2*phi0) = L1 and
    cos(phi1) = (1 +- sqrt(1-L2^2))/L2.  Both cosine candidates are kept;
    the physically valid root (magnitude <= 1) selects phi1.  Principal
    values are returned: phi0 in [0, pi/2], phi1 in [0, pi].
    """

    phi0: float
    phi1: float
    lambda1: float
    lambda2: float
    cos_phi1_candidates: tuple[float, float]
    r0_estimate: float
    residual: float


def invert_special_case(rates: CoincidenceRates) -> SpecialCaseSolution:
    """Closed-form inversion for data taken with equal within-branch phases."""
    measured = np.array(rates.as_tuple(), dtype=float)
    scale = max(float(measured.max()), 1e-300)
    cross_sum = rates.r_ad + rates.r_ac
    branch_sum = rates.r_ab + rates.r_cd
    if cross_sum <= 1e-12 * scale:
        raise InversionError(
            "R_AD + R_AC vanishes (both within-branch phases are zero); "
            "the L1 ratio is undefined"
        )
    if branch_sum <= 1e-12 * scale:
        raise InversionError("R_AB + R_CD vanishes; the L2 ratio is undefined")
    lam1 = (rates.r_ad - rates.r_ac) / cross_sum
    lam2 = (rates.r_ab - rates.r_cd) / branch_sum
    if abs(lam1) > 1.0 + 1e-12 or abs(lam2) > 1.0 + 1e-12:
        raise InversionError(
            f"rate ratios L1={lam1:.6g}, L2={lam2:.6g} outside [-1, 1]; "
            "data not consistent with equal within-branch phases"
        )
    lam1 = min(1.0, max(-1.0, lam1))
    root = math.sqrt(max(0.0, 1.0 - lam2 * lam2))
    # small root written in rationalized form so lam2 -> 0 stays finite
    c_small = lam2 / (1.0 + root)
    c_big = (1.0 + root) / lam2 if abs(lam2) > 1e-300 else math.inf
    if abs(c_small) > 1.0 + 1e-12:
        raise InversionError(
            "no cosine candidate with magnitude <= 1; data not consistent "
            "with equal within-branch phases"
        )
    phi0 = 0.5 * math.acos(lam1)
    phi1 = math.acos(min(1.0, max(-1.0, c_small)))
    model = np.array(_model_rates(phi0, phi1, phi1, 1.0))
    denom = float(model @ model)
    r0_est = float(model @ measured) / denom if denom > 0 else 0.0
    residual = _rms(model * r0_est, measured)
    return SpecialCaseSolution(
        phi0=phi0, phi1=phi1, lambda1=lam1, lambda2=lam2,
        cos_phi1_candidates=(c_small, c_big), r0_estimate=r0_est, residual=residual,
    )


# --- grid-search oracle ----------------------------------------------------

_GRID_CACHE: dict[int, dict] = {}


def _grid_tables(n: int) -> dict:
    """Cached model rates (r0 = 1) on the n^3 cell-center lattice."""
    entry = _GRID_CACHE.get(n)
    if entry is not None:
        return entry
    ang = -math.pi + (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    s, c = np.sin(ang), np.cos(ang)
    x_ss = (s[:, None] ** 2 + s[None, :] ** 2)[None, :, :]
    cr_ss = (2.0 * s[:, None] * s[None, :])[None, :, :]
    x_ab = (((c + 1)[:, None]) ** 2 + ((c + 1)[None, :]) ** 2)[None, :, :]
    cr_ab = (2.0 * (c + 1)[:, None] * (c + 1)[None, :])[None, :, :]
    x_cd = (((c - 1)[:, None]) ** 2 + ((c - 1)[None, :]) ** 2)[None, :, :]
    cr_cd = (2.0 * (c - 1)[:, None] * (c - 1)[None, :])[None, :, :]
    diff = ang[:, None] - ang[None, :]
    cos_theta = (
        np.cos(2.0 * ang)[:, None, None] * np.cos(diff)[None, :, :]
        - np.sin(2.0 * ang)[:, None, None] * np.sin(diff)[None, :, :]
    )
    g = np.empty((n * n * n, 4), dtype=np.float32)
    g[:, 0] = (x_ss - cr_ss * cos_theta).reshape(-1)
    g[:, 1] = (x_ss + cr_ss * cos_theta).reshape(-1)
    g[:, 2] = (x_ab + cr_ab * cos_theta).reshape(-1)
    g[:, 3] = (x_cd + cr_cd * cos_theta).reshape(-1)
    entry = {
        "angles": ang,
        "g": g,
        "sq": np.sum(g.astype(np.float64) ** 2, axis=1).astype(np.float32),
        "n": n,
    }
    _GRID_CACHE[n] = entry
    return entry


def brute_force_invert(
    rates: CoincidenceRates,
    calibration: CalibrationRecord,
    grid_step: float = 0.05,
    refine: bool = True,
) -> PhaseSolution:
    """Exhaustive phase-cube scan followed by local refinement.

    Independent oracle for invert_rates: ranks every lattice point of the
    (-pi, pi]^3 cube by rate mismatch, refines the distinct low-residual
    basins, and returns the global best with the other minima as
    candidates.  Always returns the best point found, whatever its
    residual.
    """
    if grid_step <= 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    n = int(math.ceil(2.0 * math.pi / grid_step))
    tables = _grid_tables(n)
    r0 = calibration.r0_estimate
    measured = np.array(rates.as_tuple(), dtype=float)
    scale = max(float(measured.max()), 16.0 * r0, 1e-300)

    # argmin of |r0*G - m|^2 = r0^2*|G|^2 - 2*r0*(G @ m) + const
    gm = tables["g"] @ measured.astype(np.float32)
    h = (np.float32(r0 * r0) * tables["sq"]) - np.float32(2.0 * r0) * gm

    k = min(200, h.size)
    top = np.argpartition(h, k - 1)[:k]
    top = top[np.argsort(h[top], kind="stable")]
    ang = tables["angles"]

    def idx_to_triple(flat: int) -> tuple[float, float, float]:
        i, rem = divmod(int(flat), n * n)
        j, l = divmod(rem, n)
        return (float(ang[i]), float(ang[j]), float(ang[l]))

    # distinct basins: greedy separation of the best grid points
    reps: list[tuple[float, float, float]] = []
    min_sep = 4.0 * (2.0 * math.pi / n)
    for flat in top:
        t = idx_to_triple(flat)
        if all(
            max(abs(wrap_angle(t[i] - r[i])) for i in range(3)) > min_sep for r in reps
        ):
            reps.append(t)
        if len(reps) >= 12:
            break

    def polish(t: tuple[float, float, float]) -> tuple[tuple[float, float, float], float]:
        if not refine:
            return t, _residual_at(t, measured, r0)
        fit = least_squares(
            lambda x: (np.array(_model_rates(x[0], x[1], x[2], r0)) - measured) / scale,
            np.array(t), method="lm", xtol=1e-14, ftol=1e-14, gtol=1e-14,
        )
        triple = (wrap_angle(fit.x[0]), wrap_angle(fit.x[1]), wrap_angle(fit.x[2]))
        return triple, float(np.sqrt(np.mean(fit.fun**2))) * scale

    polished = [polish(t) for t in reps]
    polished.sort(key=lambda pr: pr[1])

    # ranking by cell value can miss minima whose basins are narrower than
    # the grid step; when nothing polished to (near) zero, fall back to
    # polishing the deepest local minima of the full periodic lattice
    if refine and polished[0][1] > 1e-9 * scale:
        cube = h.reshape(n, n, n)
        is_min = cube <= minimum_filter(cube, size=3, mode="wrap")
        flats = np.flatnonzero(is_min.reshape(-1))
        deepest = flats[np.argsort(h[flats], kind="stable")][:32]
        polished.extend(polish(idx_to_triple(f)) for f in deepest)
        polished.sort(key=lambda pr: pr[1])
    best, best_rms = polished[0]
    best = (_reduce_phi0(best[0], 0.0), best[1], best[2])
    best_rms = _residual_at(best, measured, r0)
    extra = [t for t, _ in polished[1:]]
    candidates = _collect_candidates(best, extra, measured, r0)
    flags = _sign_flags(best, best_rms, candidates, scale)
    return PhaseSolution(
        phi0=best[0], phi1=best[1], phi2=best[2], r0=r0,
        residual=best_rms, sign_ambiguous=flags, converged=True,
        candidates=tuple(candidates),
    )
