"""Service operations: one function per endpoint, shared by the HTTP app
and the CLI's in-process backend.

Each handler takes a request model, runs the core package, and returns a
response model; domain failures surface as ServiceError with a stable
``code`` ("usage", "numerical", "inversion", "calibration", "geometry")
that the HTTP layer turns into a status and the CLI into an exit code.
"""

from __future__ import annotations

from .. import __version__
from ..interferometers import (
    CoincidenceRates,
    PhaseConfig,
    grover_mz_rates,
    rates_from_distribution,
    simulate_grover_mz,
)
from ..inversion import (
    CalibrationError,
    CalibrationRecord,
    InversionError,
    brute_force_invert,
    calibrate,
    invert_rates,
    invert_special_case,
    phase_orbit_distance,
)
from ..sagnac import (
    GeometryError,
    RotationRates,
    SagnacGeometry,
    phases_from_rotation,
    reconstruct_rotation,
    sagnac_phase,
)
from ..spectral import QuadratureError, QuadratureGrid, SpectralProfile, hom_scan
from . import schemas


class ServiceError(Exception):
    """Domain failure with a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _rates_from_model(m: schemas.RatesModel, r0: float = 1.0) -> CoincidenceRates:
    return CoincidenceRates(m.r_ac, m.r_ad, m.r_ab, m.r_cd, r0=r0)


def _rates_to_model(r: CoincidenceRates) -> schemas.RatesModel:
    return schemas.RatesModel(r_ac=r.r_ac, r_ad=r.r_ad, r_ab=r.r_ab, r_cd=r.r_cd)


def _calibration_from_model(m: schemas.CalibrationModel) -> CalibrationRecord:
    return CalibrationRecord(
        r0_estimate=m.r0_estimate,
        zero_rates=_rates_from_model(m.zero_rates, r0=m.r0_estimate),
        branch=m.branch,
        tolerance=m.tolerance,
    )


def _calibration_to_model(c: CalibrationRecord) -> schemas.CalibrationModel:
    return schemas.CalibrationModel(
        r0_estimate=c.r0_estimate,
        branch=c.branch,
        tolerance=c.tolerance,
        zero_rates=_rates_to_model(c.zero_rates),
    )


def _synthetic_calibration(r0: float) -> CalibrationRecord:
    return CalibrationRecord(
        r0_estimate=r0,
        zero_rates=grover_mz_rates(PhaseConfig(0.0, 0.0, 0.0), r0=r0),
        branch=0,
    )


def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


def run_hom_scan(request: schemas.HomScanRequest) -> schemas.HomScanResponse:
    spectrum = SpectralProfile(
        kind=request.spectrum.kind,
        center=request.spectrum.center,
        bandwidth=request.spectrum.bandwidth,
    )
    points = request.grid.points
    if points % 2 == 0:
        points += 1
    grid = QuadratureGrid(
        points=points, window=request.grid.window, tolerance=request.grid.tolerance
    )
    try:
        rows = hom_scan(
            request.phi, request.scan, request.fixed,
            (request.start, request.stop, request.step), spectrum, grid,
        )
    except QuadratureError as exc:
        raise ServiceError("numerical", str(exc)) from exc
    except ValueError as exc:
        raise ServiceError("usage", str(exc)) from exc
    return schemas.HomScanResponse(
        phi=request.phi,
        scan_var=request.scan,
        rows=[schemas.HomScanPoint(delay=d, probability=p) for d, p in rows],
    )


def run_mz(request: schemas.MzRequest) -> schemas.MzResponse:
    phases = PhaseConfig(request.phases.phi0, request.phases.phi1, request.phases.phi2)
    if request.mode == "closed-form":
        rates = grover_mz_rates(phases, r0=request.r0)
        return schemas.MzResponse(
            phases=request.phases, r0=request.r0, mode=request.mode,
            rates=_rates_to_model(rates),
        )
    dist = simulate_grover_mz(phases)
    rates = rates_from_distribution(dist, r0=request.r0)
    scale = 16.0 * request.r0
    doubles = schemas.DoublesModel(
        r_aa=scale * dist.p("AA"), r_bb=scale * dist.p("BB"),
        r_cc=scale * dist.p("CC"), r_dd=scale * dist.p("DD"),
    )
    return schemas.MzResponse(
        phases=request.phases, r0=request.r0, mode=request.mode,
        rates=_rates_to_model(rates), doubles=doubles,
        probabilities=dict(sorted(dist.probabilities.items())),
    )


def run_calibrate(request: schemas.CalibrateRequest) -> schemas.CalibrationModel:
    try:
        record = calibrate(_rates_from_model(request.rates), tolerance=request.tolerance)
    except CalibrationError as exc:
        raise ServiceError("calibration", str(exc)) from exc
    return _calibration_to_model(record)


def run_invert(request: schemas.InvertRequest) -> schemas.InvertResponse:
    rates = _rates_from_model(request.rates)
    calibration = None
    if request.calibration is not None:
        calibration = _calibration_from_model(request.calibration)
    elif request.r0 is not None:
        calibration = _synthetic_calibration(request.r0)

    special = None
    if request.special_case:
        try:
            sc = invert_special_case(rates)
        except InversionError as exc:
            raise ServiceError("inversion", str(exc)) from exc
        special = schemas.SpecialCaseModel(
            phi0=sc.phi0, phi1=sc.phi1, lambda1=sc.lambda1, lambda2=sc.lambda2,
            cos_phi1_candidates=sc.cos_phi1_candidates,
            r0_estimate=sc.r0_estimate, residual=sc.residual,
        )

    seed = None
    if request.seed is not None:
        seed = (request.seed.phi0, request.seed.phi1, request.seed.phi2)
    try:
        solution = invert_rates(
            rates, calibration=calibration, solve_r0=request.solve_r0,
            seed=seed, residual_tolerance=request.residual_tolerance,
        )
    except InversionError as exc:
        raise ServiceError("inversion", str(exc)) from exc

    brute = None
    if request.brute_force_check:
        cal = calibration or _synthetic_calibration(solution.r0)
        oracle = brute_force_invert(rates, cal, grid_step=request.grid_step)
        agrees = (
            phase_orbit_distance(
                (solution.phi0, solution.phi1, solution.phi2),
                (oracle.phi0, oracle.phi1, oracle.phi2),
            )
            < 1e-4
        )
        brute = schemas.BruteForceModel(
            phi0=oracle.phi0, phi1=oracle.phi1, phi2=oracle.phi2,
            residual=oracle.residual, agrees_with_solver=agrees,
        )

    return schemas.InvertResponse(
        phi0=solution.phi0, phi1=solution.phi1, phi2=solution.phi2,
        r0=solution.r0, residual=solution.residual,
        sign_ambiguous=solution.sign_ambiguous, converged=solution.converged,
        candidates=[
            schemas.PhaseCandidateModel(
                phi0=c.phases[0], phi1=c.phases[1], phi2=c.phases[2],
                residual=c.residual,
            )
            for c in solution.candidates
        ],
        special_case=special, brute_force=brute,
    )


def _geometry_from_model(m: schemas.GeometryModel) -> SagnacGeometry:
    try:
        return SagnacGeometry(
            area_x=m.area_x, area_y=m.area_y, area_z=m.area_z,
            wavelength=m.wavelength, loop_radius=m.loop_radius,
        )
    except GeometryError as exc:
        raise ServiceError("geometry", str(exc)) from exc


def run_sagnac_forward(
    request: schemas.SagnacForwardRequest,
) -> schemas.SagnacForwardResponse:
    geometry = _geometry_from_model(request.geometry)
    omega = RotationRates(
        request.omega.omega_x, request.omega.omega_y, request.omega.omega_z
    )
    phases = phases_from_rotation(omega, geometry)
    axis = schemas.OmegaModel(
        omega_x=sagnac_phase(geometry.area_x, omega.omega_x, geometry.wavelength),
        omega_y=sagnac_phase(geometry.area_y, omega.omega_y, geometry.wavelength),
        omega_z=sagnac_phase(geometry.area_z, omega.omega_z, geometry.wavelength),
    )
    rates = grover_mz_rates(phases, r0=request.r0)
    return schemas.SagnacForwardResponse(
        phases=schemas.PhasesModel(
            phi0=phases.phi0, phi1=phases.phi1, phi2=phases.phi2
        ),
        axis_phases=axis, rates=_rates_to_model(rates), r0=request.r0,
    )


def run_sagnac_reconstruct(
    request: schemas.SagnacReconstructRequest,
) -> schemas.SagnacReconstructResponse:
    geometry = _geometry_from_model(request.geometry)
    if request.calibration is not None:
        calibration = _calibration_from_model(request.calibration)
    else:
        calibration = _synthetic_calibration(request.r0)
    try:
        estimate = reconstruct_rotation(
            _rates_from_model(request.rates), calibration, geometry,
            residual_tolerance=request.residual_tolerance,
        )
    except GeometryError as exc:
        raise ServiceError("geometry", str(exc)) from exc
    except InversionError as exc:
        raise ServiceError("inversion", str(exc)) from exc
    sol = estimate.phase_solution
    return schemas.SagnacReconstructResponse(
        omega=schemas.OmegaModel(
            omega_x=estimate.rates.omega_x,
            omega_y=estimate.rates.omega_y,
            omega_z=estimate.rates.omega_z,
        ),
        magnitudes=schemas.OmegaModel(
            omega_x=abs(estimate.rates.omega_x),
            omega_y=abs(estimate.rates.omega_y),
            omega_z=abs(estimate.rates.omega_z),
        ),
        direction_ambiguous=estimate.direction_ambiguous,
        magnitude_ambiguous=estimate.magnitude_ambiguous,
        candidates=[
            schemas.OmegaModel(omega_x=c.omega_x, omega_y=c.omega_y, omega_z=c.omega_z)
            for c in estimate.candidates
        ],
        phases=schemas.PhasesModel(phi0=sol.phi0, phi1=sol.phi1, phi2=sol.phi2),
        residual=sol.residual, converged=sol.converged,
    )
