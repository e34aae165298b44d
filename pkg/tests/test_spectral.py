import math

import numpy as np
import pytest
from scipy.integrate import quad

from groversim.spectral import (
    DelayConfig,
    QuadratureError,
    QuadratureGrid,
    SpectralProfile,
    _double_integrals,
    _simpson_weights,
    coincidence_probability,
    hom_scan,
)


def oracle_probability(phi, tau0, dtau, spectrum, window=8.0):
    """Independent path: adaptive 1-D quadrature of the spectral density's
    cosine/sine transforms on the same window, combined by the angle-sum
    factorization of the two double integrals."""
    f = lambda w: float(spectrum.density(np.array([w]))[0])
    lo = spectrum.center - window * spectrum.bandwidth
    hi = spectrum.center + window * spectrum.bandwidth
    norm = quad(f, lo, hi, limit=400)[0]

    def c(t):
        return quad(f, lo, hi, weight="cos", wvar=t, limit=400)[0] / norm

    def s(t):
        return quad(f, lo, hi, weight="sin", wvar=t, limit=400)[0] / norm

    ta, tb = tau0, tau0 + dtau
    ic = c(ta) * c(tb) - s(ta) * s(tb)
    is_ = s(ta) * c(tb) - c(ta) * s(tb)
    return 0.5 + 0.5 * math.cos(2 * phi) * ic + 0.5 * math.sin(2 * phi) * is_


# frozen values computed with oracle_probability (sinc cases include the
# +-8-bandwidth window truncation, which matters for the slow sinc^2 tails)
FROZEN = [
    (0.6, 0.5, 0.3, SpectralProfile("sinc"), 0.587826689450941),
    (1.1, 1.2, -0.7, SpectralProfile("sinc"), 0.40474081408981705),
    (math.pi / 2, 0.8, 0.0, SpectralProfile("sinc"), 0.3053854308832197),
    (0.3, 0.4, 0.9, SpectralProfile("gaussian"), 0.6636357512966341),
    (2.0, 1.5, 0.6, SpectralProfile("gaussian", center=2.0, bandwidth=0.5),
     0.5669240158532256),
    (0.9, 0.7, 1.4, SpectralProfile("rectangular"), 0.4570252074213475),
    (math.pi / 2, 2.5, 0.0, SpectralProfile("rectangular", center=1.0, bandwidth=2.0),
     0.49478324950838976),
]


@pytest.mark.parametrize("phi,tau0,dtau,spectrum,expected", FROZEN)
def test_against_frozen_oracle_values(phi, tau0, dtau, spectrum, expected):
    p = coincidence_probability(phi, DelayConfig.from_dtau(tau0, dtau), spectrum)
    assert p == pytest.approx(expected, abs=1e-6)


def test_against_runtime_oracle():
    rng = np.random.default_rng(29)
    for kind in ("sinc", "gaussian", "rectangular"):
        spectrum = SpectralProfile(kind)
        for _ in range(4):
            phi = float(rng.uniform(0, math.pi))
            tau0 = float(rng.uniform(-2, 2))
            dtau = float(rng.uniform(-2, 2))
            p = coincidence_probability(
                phi, DelayConfig.from_dtau(tau0, dtau), spectrum
            )
            want = oracle_probability(phi, tau0, dtau, spectrum)
            assert p == pytest.approx(want, abs=1e-6), (kind, phi, tau0, dtau)


def test_zero_delays_reduce_to_cos_squared():
    spectrum = SpectralProfile("sinc")
    for phi in np.linspace(-math.pi, math.pi, 17):
        p = coincidence_probability(float(phi), DelayConfig(), spectrum)
        assert p == pytest.approx(math.cos(phi) ** 2, abs=1e-9)


def test_quarter_pi_is_flat_for_any_tau0():
    spectrum = SpectralProfile("sinc")
    for tau0 in (-3.0, -0.7, 0.0, 1.3, 6.0):
        p = coincidence_probability(
            math.pi / 4, DelayConfig.from_dtau(tau0, 0.0), spectrum
        )
        assert p == pytest.approx(0.5, abs=1e-9)


def test_dip_wings_return_to_half():
    spectrum = SpectralProfile("sinc")
    for tau0 in (-9.0, 8.0, 20.0):
        p = coincidence_probability(
            math.pi / 2, DelayConfig.from_dtau(tau0, 0.0), spectrum
        )
        assert p == pytest.approx(0.5, abs=1e-3)


def test_gaussian_and_rect_match_exact_envelopes():
    # centered profiles: p(phi=pi/2) = 1/2 - env(tau0)^2 / 2
    tau0 = 0.9
    p_g = coincidence_probability(
        math.pi / 2, DelayConfig(tau0=tau0), SpectralProfile("gaussian")
    )
    env = math.exp(-0.5 * tau0 * tau0)
    assert p_g == pytest.approx(0.5 - 0.5 * env * env, abs=1e-6)

    p_r = coincidence_probability(
        math.pi / 2, DelayConfig(tau0=tau0), SpectralProfile("rectangular")
    )
    env = math.sin(tau0) / tau0
    assert p_r == pytest.approx(0.5 - 0.5 * env * env, abs=1e-6)


def test_factored_contraction_equals_literal_double_sum():
    spectrum = SpectralProfile("sinc", center=0.3, bandwidth=1.2)
    grid = QuadratureGrid(points=33)
    for ta, tb in ((0.4, 1.1), (-0.8, 0.2)):
        ic, is_ = _double_integrals(spectrum, grid, 33, ta, tb)
        half = grid.window * spectrum.bandwidth
        omega = np.linspace(spectrum.center - half, spectrum.center + half, 33)
        wf = _simpson_weights(33, omega[1] - omega[0]) * spectrum.density(omega)
        wf /= wf.sum()
        ic_ref = 0.0
        is_ref = 0.0
        for i in range(33):
            for j in range(33):
                ic_ref += wf[i] * wf[j] * math.cos(omega[i] * ta + omega[j] * tb)
                is_ref += wf[i] * wf[j] * math.sin(omega[i] * ta - omega[j] * tb)
        assert ic == pytest.approx(ic_ref, abs=1e-12)
        assert is_ == pytest.approx(is_ref, abs=1e-12)


def test_refinement_convergence():
    spectrum = SpectralProfile("sinc")
    delays = DelayConfig.from_dtau(1.7, -0.4)
    coarse = coincidence_probability(0.8, delays, spectrum, QuadratureGrid(points=257))
    fine = coincidence_probability(0.8, delays, spectrum, QuadratureGrid(points=513))
    assert abs(fine - coarse) < 1e-4


def test_quadrature_error_on_unresolvable_delay():
    spectrum = SpectralProfile("sinc")
    with pytest.raises(QuadratureError):
        coincidence_probability(
            math.pi / 2,
            DelayConfig(tau0=40.0),
            spectrum,
            QuadratureGrid(points=17),
        )


def test_probability_stays_in_unit_interval():
    spectrum = SpectralProfile("gaussian")
    rng = np.random.default_rng(31)
    for _ in range(20):
        p = coincidence_probability(
            float(rng.uniform(0, math.pi)),
            DelayConfig.from_dtau(float(rng.uniform(-4, 4)), float(rng.uniform(-4, 4))),
            spectrum,
        )
        assert -1e-9 <= p <= 1 + 1e-9


def test_dtau_scan_depends_only_on_the_difference():
    spectrum = SpectralProfile("sinc")
    for offset in (0.0, 0.37, -1.4):
        a = coincidence_probability(
            1.0, DelayConfig(tau0=0.5, tau1=0.2 + offset, tau2=0.9 + offset), spectrum
        )
        b = coincidence_probability(
            1.0, DelayConfig(tau0=0.5, tau1=0.2, tau2=0.9), spectrum
        )
        assert a == pytest.approx(b, abs=1e-8)


def test_phase_periodicity_by_pi():
    spectrum = SpectralProfile("sinc")
    delays = DelayConfig.from_dtau(0.6, 0.3)
    for phi in (0.0, 0.4, 1.1):
        assert coincidence_probability(phi, delays, spectrum) == pytest.approx(
            coincidence_probability(phi + math.pi, delays, spectrum), abs=1e-12
        )


def test_hom_scan_shapes():
    spectrum = SpectralProfile("sinc")
    dip = hom_scan(math.pi / 2, "tau0", 0.0, (-4.0, 4.0, 0.25), spectrum)
    delays = [t for t, _ in dip]
    assert delays[0] == pytest.approx(-4.0) and delays[-1] == pytest.approx(4.0)
    assert len(delays) == 33
    by_delay = dict(dip)
    assert by_delay[0.0] == pytest.approx(0.0, abs=1e-9)
    assert min(p for _, p in dip) == pytest.approx(0.0, abs=1e-9)

    peak = hom_scan(0.0, "tau0", 0.0, (-4.0, 4.0, 0.25), spectrum)
    assert max(p for _, p in peak) == pytest.approx(1.0, abs=1e-9)

    flat = hom_scan(math.pi / 4, "tau0", 0.0, (-4.0, 4.0, 0.25), spectrum)
    assert max(abs(p - 0.5) for _, p in flat) < 1e-9

    dtau_dip = hom_scan(math.pi / 2, "dtau", 0.0, (-3.0, 3.0, 0.5), spectrum)
    assert dict(dtau_dip)[0.0] == pytest.approx(0.0, abs=1e-9)


def test_input_validation():
    with pytest.raises(ValueError):
        SpectralProfile("lorentzian")
    with pytest.raises(ValueError):
        SpectralProfile("sinc", bandwidth=0.0)
    with pytest.raises(ValueError):
        QuadratureGrid(points=100)  # even
    with pytest.raises(ValueError):
        hom_scan(0.0, "tau1", 0.0, (-1, 1, 0.1), SpectralProfile("sinc"))
    with pytest.raises(ValueError):
        hom_scan(0.0, "tau0", 0.0, (1, -1, 0.1), SpectralProfile("sinc"))
    d = DelayConfig(tau0=0.0, tau1=0.3, tau2=0.8)
    assert d.dtau == pytest.approx(0.5)
