"""Two-photon interferometry with directionally-unbiased Grover four-ports.

Simulation of the tunable HOM/anti-HOM effect, the two-four-port
(Mach-Zehnder-like) interferometer with its closed-form coincidence rates,
finite-bandwidth delay scans, inversion of measured rates for three
simultaneous phases, and three-axis Sagnac rotation reconstruction.
"""

from .elements import ElementSpec, beamsplitter50, grover_unitary, phase_map
from .fock import (
    FockState,
    ModeMap,
    StateVector,
    amplitude_of,
    apply_mode_map,
    merge_modes,
    probabilities,
)
from .interferometers import (
    CoincidenceRates,
    DetectionDistribution,
    PhaseConfig,
    grover_mz_rates,
    hom_baseline,
    probability_rates,
    rate_identities,
    rates_from_distribution,
    simulate_grover_mz,
    tunable_hom,
    wrap_angle,
)
from .inversion import (
    CalibrationRecord,
    PhaseSolution,
    SpecialCaseSolution,
    brute_force_invert,
    calibrate,
    equivalent_phase_triples,
    invert_rates,
    invert_special_case,
)
from .sagnac import (
    RotationEstimate,
    RotationRates,
    SagnacGeometry,
    exact_time_delay,
    phases_from_rotation,
    reconstruct_rotation,
    rotation_from_phases,
    sagnac_phase,
)
from .spectral import (
    DelayConfig,
    QuadratureGrid,
    SpectralProfile,
    coincidence_probability,
    hom_scan,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationRecord",
    "CoincidenceRates",
    "DelayConfig",
    "DetectionDistribution",
    "ElementSpec",
    "FockState",
    "ModeMap",
    "PhaseConfig",
    "PhaseSolution",
    "QuadratureGrid",
    "RotationEstimate",
    "RotationRates",
    "SagnacGeometry",
    "SpecialCaseSolution",
    "SpectralProfile",
    "StateVector",
    "amplitude_of",
    "apply_mode_map",
    "beamsplitter50",
    "brute_force_invert",
    "calibrate",
    "coincidence_probability",
    "equivalent_phase_triples",
    "exact_time_delay",
    "grover_mz_rates",
    "grover_unitary",
    "hom_baseline",
    "hom_scan",
    "invert_rates",
    "invert_special_case",
    "merge_modes",
    "phase_map",
    "phases_from_rotation",
    "probabilities",
    "probability_rates",
    "rate_identities",
    "rates_from_distribution",
    "reconstruct_rotation",
    "rotation_from_phases",
    "sagnac_phase",
    "simulate_grover_mz",
    "tunable_hom",
    "wrap_angle",
]
