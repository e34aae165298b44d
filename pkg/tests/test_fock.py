import math

import numpy as np
import pytest

from groversim.elements import grover_unitary, phase_map
from groversim.fock import (
    DimensionMismatchError,
    FockState,
    MergeNormWarning,
    MergeOverlapError,
    ModeMap,
    PhotonCapExceededError,
    StateVector,
    amplitude_of,
    apply_mode_map,
    merge_modes,
    probabilities,
)
from support import permanent_amplitude, random_unitary, two_photon_kets

INV_2RT2 = 1.0 / (2.0 * math.sqrt(2.0))


def test_fock_state_validation():
    with pytest.raises(ValueError):
        FockState(())
    with pytest.raises(ValueError):
        FockState((1, -1))
    k = FockState((1, 1, 0, 0))
    assert k.mode_count == 4 and k.photon_count == 2
    assert str(k) == "|1 1 0 0>"


def test_state_vector_rejects_mixed_terms():
    with pytest.raises(DimensionMismatchError):
        StateVector({FockState((1, 0)): 1.0, FockState((1, 0, 0)): 1.0})
    with pytest.raises(ValueError):
        StateVector({FockState((1, 0)): 1.0, FockState((1, 1)): 1.0})


def test_state_vector_prunes_tiny_amplitudes():
    s = StateVector({FockState((1, 0)): 1.0, FockState((0, 1)): 1e-15})
    assert FockState((0, 1)) not in s.terms


def test_normalized_gives_unit_norm():
    s = StateVector({FockState((1, 0)): 3.0, FockState((0, 1)): 4.0j})
    assert abs(s.normalized().norm() - 1.0) < 1e-12
    with pytest.raises(ValueError):
        StateVector({FockState((1, 0)): 0.0, FockState((0, 1)): 0.0})


def test_grover_scattering_of_1100():
    out = apply_mode_map(StateVector.ket((1, 1, 0, 0)), grover_unitary())
    expected = {
        (1, 1, 0, 0): 0.5,
        (0, 0, 1, 1): 0.5,
        (2, 0, 0, 0): -INV_2RT2,
        (0, 2, 0, 0): -INV_2RT2,
        (0, 0, 2, 0): INV_2RT2,
        (0, 0, 0, 2): INV_2RT2,
    }
    assert set(k.occupations for k in out.terms) == set(expected)
    for occ, amp in expected.items():
        assert amplitude_of(out, FockState(occ)) == pytest.approx(amp, abs=1e-12)


def test_identity_map_is_identity():
    s = StateVector(
        {FockState((1, 1, 0, 0)): 0.6, FockState((0, 0, 2, 0)): 0.8j}
    )
    out = apply_mode_map(s, ModeMap.identity(4))
    assert set(out.terms) == set(s.terms)
    for k, v in s.terms.items():
        assert out.terms[k] == pytest.approx(v, abs=1e-15)


def test_two_photons_through_one_phase():
    out = apply_mode_map(
        StateVector.ket((2, 0, 0, 0)), phase_map(4, (0.7, 0, 0, 0))
    )
    amp = amplitude_of(out, FockState((2, 0, 0, 0)))
    assert amp == pytest.approx(np.exp(2j * 0.7), abs=1e-14)


def test_amplitude_of_queries():
    out = apply_mode_map(StateVector.ket((1, 1, 0, 0)), grover_unitary())
    assert amplitude_of(out, FockState((0, 0, 1, 1))) == pytest.approx(0.5, abs=1e-12)
    assert amplitude_of(out, FockState((2, 0, 0, 0))) == pytest.approx(
        -INV_2RT2, abs=1e-12
    )
    # photon-number mismatch is an exact zero, not an error
    assert amplitude_of(out, FockState((1, 0, 0, 0))) == 0j
    with pytest.raises(DimensionMismatchError):
        amplitude_of(out, FockState((1, 1)))


def test_probabilities_examples():
    half = 1.0 / math.sqrt(2.0)
    s = StateVector({FockState((0, 2)): half, FockState((2, 0)): half})
    p = probabilities(s)
    assert p[FockState((0, 2))] == pytest.approx(0.5, abs=1e-12)
    assert p[FockState((2, 0))] == pytest.approx(0.5, abs=1e-12)

    assert probabilities(StateVector.ket((1, 1)))[FockState((1, 1))] == 1.0

    uniform = StateVector(
        {
            FockState((2, 0, 0)): 0.5,
            FockState((0, 2, 0)): 0.5,
            FockState((0, 0, 2)): 0.5,
            FockState((1, 1, 0)): 0.5,
        }
    )
    for v in probabilities(uniform).values():
        assert v == pytest.approx(0.25, abs=1e-12)

    with pytest.raises(ValueError):
        probabilities(StateVector({FockState((1, 0)): 0.7}))


def test_probability_sum_is_one():
    rng = np.random.default_rng(11)
    u = ModeMap(random_unitary(4, rng))
    s = apply_mode_map(StateVector.ket((1, 1, 0, 0)), u)
    assert sum(probabilities(s).values()) == pytest.approx(1.0, abs=1e-10)


def test_merge_reproduces_bunched_and_coincident_outputs():
    g = grover_unitary()
    # phase pi/2 per reflected photon: cross terms cancel, photons bunch
    s = apply_mode_map(StateVector.ket((1, 1, 0, 0)), g)
    s = apply_mode_map(s, phase_map(4, (math.pi / 2, math.pi / 2, 0, 0)))
    merged = merge_modes(s, [((0, 2), 0), ((1, 3), 1)])
    p = probabilities(merged)
    assert p[FockState((2, 0))] == pytest.approx(0.5, abs=1e-12)
    assert p[FockState((0, 2))] == pytest.approx(0.5, abs=1e-12)
    assert FockState((1, 1)) not in p

    # no phase: squared terms cancel, only coincidences
    s0 = apply_mode_map(StateVector.ket((1, 1, 0, 0)), g)
    merged0 = merge_modes(s0, [((0, 2), 0), ((1, 3), 1)])
    assert probabilities(merged0)[FockState((1, 1))] == pytest.approx(1.0, abs=1e-12)


def test_merge_of_disjoint_support_is_relabeling():
    s = StateVector({FockState((1, 1, 0, 0)): 0.6, FockState((2, 0, 0, 0)): 0.8})
    merged = merge_modes(s, [((0, 2), 0), ((1, 3), 1)])
    assert merged.terms[FockState((1, 1))] == pytest.approx(0.6, abs=1e-14)
    assert merged.terms[FockState((2, 0))] == pytest.approx(0.8, abs=1e-14)


def test_merge_validation_errors():
    s = StateVector.ket((1, 1, 0, 0))
    with pytest.raises(MergeOverlapError):
        merge_modes(s, [((0, 1), 0), ((1, 3), 1)])  # mode 1 twice
    with pytest.raises(MergeOverlapError):
        merge_modes(s, [((0, 2), 0)])  # modes 1, 3 unassigned
    with pytest.raises(MergeOverlapError):
        merge_modes(s, [((0, 2), 1), ((1, 3), 1)])  # duplicate target


def test_lossy_merge_warns_and_reports_norm():
    plus = StateVector(
        {FockState((1, 0)): 1 / math.sqrt(2), FockState((0, 1)): 1 / math.sqrt(2)}
    )
    with pytest.warns(MergeNormWarning):
        merged = merge_modes(plus, [((0, 1), 0)])
    assert merged.norm() == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_photon_cap_is_enforced_not_truncated():
    s = StateVector.ket((3, 2, 0, 0))
    with pytest.raises(PhotonCapExceededError):
        apply_mode_map(s, grover_unitary())
    # raising the cap makes the same state legal
    out = apply_mode_map(s, grover_unitary(), photon_cap=5)
    assert out.photon_count == 5


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        apply_mode_map(StateVector.ket((1, 1)), grover_unitary())


def test_photon_number_conserved_and_norm_preserved():
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = ModeMap(random_unitary(5, rng))
        amps = rng.normal(size=3) + 1j * rng.normal(size=3)
        amps /= np.linalg.norm(amps)
        s = StateVector(
            {
                FockState((1, 1, 0, 0, 0)): amps[0],
                FockState((0, 1, 1, 0, 0)): amps[1],
                FockState((0, 0, 0, 2, 0)): amps[2],
            }
        )
        out = apply_mode_map(s, u)
        assert out.photon_count == 2
        assert out.norm() == pytest.approx(1.0, abs=1e-10)


def test_composition_matches_matrix_product():
    rng = np.random.default_rng(13)
    for _ in range(10):
        a = ModeMap(random_unitary(4, rng))
        b = ModeMap(random_unitary(4, rng))
        s = StateVector.ket((1, 0, 1, 0))
        sequential = apply_mode_map(apply_mode_map(s, a), b)
        combined = apply_mode_map(s, b.compose(a))
        kets = set(sequential.terms) | set(combined.terms)
        for k in kets:
            assert amplitude_of(sequential, k) == pytest.approx(
                amplitude_of(combined, k), abs=1e-10
            )


def test_polynomial_expansion_matches_permanent_oracle():
    rng = np.random.default_rng(23)
    for _ in range(10):
        m = random_unitary(4, rng)
        in_occ = tuple(
            int(v) for v in rng.permutation([1, 1, 0, 0])
        )
        out = apply_mode_map(StateVector(
            {FockState(in_occ): 1.0}), ModeMap(m))
        for ket in two_photon_kets(4):
            want = permanent_amplitude(m, in_occ, ket)
            assert amplitude_of(out, FockState(ket)) == pytest.approx(
                want, abs=1e-12
            )


def test_unitary_flag_validation():
    with pytest.raises(ValueError):
        ModeMap(np.array([[1.0, 1.0], [0.0, 1.0]]), unitary=True)
    m = ModeMap(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert m.unitary  # auto-detected
