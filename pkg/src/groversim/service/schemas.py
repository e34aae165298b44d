"""Request/response models for the HTTP service (and the CLI thin client)."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator


class PhasesModel(BaseModel):
    phi0: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0


class RatesModel(BaseModel):
    """The four independent coincidence rates."""

    r_ac: float = Field(ge=0)
    r_ad: float = Field(ge=0)
    r_ab: float = Field(ge=0)
    r_cd: float = Field(ge=0)


class DoublesModel(BaseModel):
    """Same-detector double-detection rates (simulation output only)."""

    r_aa: float
    r_bb: float
    r_cc: float
    r_dd: float


class SpectrumModel(BaseModel):
    kind: Literal["sinc", "gaussian", "rectangular"] = "sinc"
    center: float = 0.0
    bandwidth: float = Field(default=1.0, gt=0)


class GridModel(BaseModel):
    points: int = Field(default=513, ge=3)
    window: float = Field(default=8.0, gt=0)
    tolerance: float = Field(default=1e-4, gt=0)


class HomScanRequest(BaseModel):
    phi: float
    scan: Literal["tau0", "dtau"] = "tau0"
    fixed: float = 0.0
    start: float
    stop: float
    step: float = Field(gt=0)
    spectrum: SpectrumModel = SpectrumModel()
    grid: GridModel = GridModel()

    @model_validator(mode="after")
    def _range_ok(self) -> "HomScanRequest":
        if not self.start < self.stop:
            raise ValueError(f"need start < stop, got [{self.start}, {self.stop}]")
        return self


class HomScanPoint(BaseModel):
    delay: float
    probability: float


class HomScanResponse(BaseModel):
    phi: float
    scan_var: Literal["tau0", "dtau"]
    rows: list[HomScanPoint]


class MzRequest(BaseModel):
    phases: PhasesModel
    r0: float = Field(default=1.0, gt=0)
    mode: Literal["closed-form", "simulate"] = "closed-form"


class MzResponse(BaseModel):
    phases: PhasesModel
    r0: float
    mode: Literal["closed-form", "simulate"]
    rates: RatesModel
    doubles: DoublesModel | None = None
    probabilities: dict[str, float] | None = None


class CalibrationModel(BaseModel):
    r0_estimate: float = Field(gt=0)
    branch: int = 0
    tolerance: float = 0.01
    zero_rates: RatesModel


class CalibrateRequest(BaseModel):
    rates: RatesModel
    tolerance: float = Field(default=0.01, gt=0)


class PhaseCandidateModel(BaseModel):
    phi0: float
    phi1: float
    phi2: float
    residual: float


class SpecialCaseModel(BaseModel):
    phi0: float
    phi1: float
    lambda1: float
    lambda2: float
    cos_phi1_candidates: tuple[float, float]
    r0_estimate: float
    residual: float


class BruteForceModel(BaseModel):
    phi0: float
    phi1: float
    phi2: float
    residual: float
    agrees_with_solver: bool


class InvertRequest(BaseModel):
    rates: RatesModel
    calibration: CalibrationModel | None = None
    r0: float | None = Field(default=None, gt=0)
    solve_r0: bool = False
    special_case: bool = False
    brute_force_check: bool = False
    grid_step: float = Field(default=0.05, gt=0)
    seed: PhasesModel | None = None
    residual_tolerance: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _scale_known(self) -> "InvertRequest":
        if not self.solve_r0 and self.calibration is None and self.r0 is None:
            raise ValueError("provide calibration or r0, or set solve_r0")
        return self


class InvertResponse(BaseModel):
    phi0: float
    phi1: float
    phi2: float
    r0: float
    residual: float
    sign_ambiguous: tuple[bool, bool, bool]
    converged: bool
    candidates: list[PhaseCandidateModel]
    special_case: SpecialCaseModel | None = None
    brute_force: BruteForceModel | None = None


class GeometryModel(BaseModel):
    area_x: float = Field(ge=0)
    area_y: float = Field(ge=0)
    area_z: float = Field(ge=0)
    wavelength: float = Field(gt=0)
    loop_radius: float = Field(default=0.0, ge=0)


class OmegaModel(BaseModel):
    omega_x: float = 0.0
    omega_y: float = 0.0
    omega_z: float = 0.0


class SagnacForwardRequest(BaseModel):
    geometry: GeometryModel
    omega: OmegaModel
    r0: float = Field(default=1.0, gt=0)


class SagnacForwardResponse(BaseModel):
    phases: PhasesModel
    axis_phases: OmegaModel
    rates: RatesModel
    r0: float


class SagnacReconstructRequest(BaseModel):
    geometry: GeometryModel
    rates: RatesModel
    calibration: CalibrationModel | None = None
    r0: float | None = Field(default=None, gt=0)
    residual_tolerance: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _scale_known(self) -> "SagnacReconstructRequest":
        if self.calibration is None and self.r0 is None:
            raise ValueError("provide calibration or r0")
        return self


class SagnacReconstructResponse(BaseModel):
    omega: OmegaModel
    magnitudes: OmegaModel
    direction_ambiguous: tuple[bool, bool, bool]
    magnitude_ambiguous: tuple[bool, bool, bool]
    candidates: list[OmegaModel]
    phases: PhasesModel
    residual: float
    converged: bool


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str
