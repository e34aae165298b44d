import math

import pytest
from fastapi.testclient import TestClient

from groversim.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    reply = client.get("/health")
    assert reply.status_code == 200
    body = reply.json()
    assert body["status"] == "ok"
    assert body["version"]


def test_mz_closed_form_and_simulation_agree(client):
    payload = {"phases": {"phi0": 0.3, "phi1": 0.7, "phi2": 1.1}, "r0": 2.0}
    closed = client.post("/mz", json=payload).json()
    sim = client.post("/mz", json=payload | {"mode": "simulate"}).json()
    for key in ("r_ac", "r_ad", "r_ab", "r_cd"):
        assert sim["rates"][key] == pytest.approx(closed["rates"][key], abs=1e-9)
    assert closed["doubles"] is None
    assert sim["doubles"] is not None
    total = sum(sim["probabilities"].values())
    assert total == pytest.approx(1.0, abs=1e-10)


def test_mz_zero_phases(client):
    reply = client.post("/mz", json={"phases": {}})
    assert reply.status_code == 200
    assert reply.json()["rates"] == {
        "r_ac": 0.0, "r_ad": 0.0, "r_ab": 16.0, "r_cd": 0.0
    }


def test_hom_scan_endpoint(client):
    reply = client.post(
        "/hom-scan",
        json={
            "phi": math.pi / 2,
            "start": -2.0, "stop": 2.0, "step": 0.5,
            "scan": "tau0",
        },
    )
    assert reply.status_code == 200
    body = reply.json()
    assert body["scan_var"] == "tau0"
    assert len(body["rows"]) == 9
    mid = body["rows"][4]
    assert mid["delay"] == pytest.approx(0.0)
    assert mid["probability"] == pytest.approx(0.0, abs=1e-9)


def test_hom_scan_rejects_bad_range(client):
    reply = client.post(
        "/hom-scan", json={"phi": 0.0, "start": 2.0, "stop": -2.0, "step": 0.5}
    )
    assert reply.status_code == 422  # pydantic validation


def test_quadrature_failure_maps_to_numerical_code(client):
    reply = client.post(
        "/hom-scan",
        json={
            "phi": math.pi / 2,
            "start": 39.0, "stop": 41.0, "step": 1.0,
            "grid": {"points": 17},
        },
    )
    assert reply.status_code == 422
    assert reply.json()["code"] == "numerical"


def test_calibrate_endpoint_and_error(client):
    good = client.post(
        "/calibrate", json={"rates": {"r_ac": 0, "r_ad": 0, "r_ab": 16, "r_cd": 0}}
    )
    assert good.status_code == 200
    assert good.json()["r0_estimate"] == pytest.approx(1.0)

    bad = client.post(
        "/calibrate", json={"rates": {"r_ac": 1, "r_ad": 0, "r_ab": 16, "r_cd": 0}}
    )
    assert bad.status_code == 422
    assert bad.json()["code"] == "calibration"


def test_invert_round_trip_via_http(client):
    phases = {"phi0": 0.3, "phi1": 0.7, "phi2": 1.1}
    rates = client.post("/mz", json={"phases": phases, "r0": 1.0}).json()["rates"]
    reply = client.post(
        "/invert",
        json={
            "rates": rates,
            "r0": 1.0,
            "special_case": False,
            "brute_force_check": True,
            "grid_step": 0.1,
        },
    )
    assert reply.status_code == 200
    body = reply.json()
    assert body["converged"]
    assert body["residual"] < 1e-8
    assert body["brute_force"]["agrees_with_solver"]
    assert len(body["candidates"]) >= 4
    recovered = {
        round(abs(c["phi1"]), 6) for c in body["candidates"]
    }
    assert round(0.7, 6) in recovered or round(1.1, 6) in recovered


def test_invert_special_case_via_http(client):
    phases = {"phi0": 0.2, "phi1": math.pi / 3, "phi2": math.pi / 3}
    rates = client.post("/mz", json={"phases": phases, "r0": 1.0}).json()["rates"]
    reply = client.post(
        "/invert", json={"rates": rates, "r0": 1.0, "special_case": True}
    )
    assert reply.status_code == 200
    sc = reply.json()["special_case"]
    assert sc["phi0"] == pytest.approx(0.2, abs=1e-9)
    assert sc["phi1"] == pytest.approx(math.pi / 3, abs=1e-9)
    assert sc["lambda1"] == pytest.approx(math.cos(0.4), abs=1e-12)


def test_invert_needs_scale(client):
    reply = client.post(
        "/invert", json={"rates": {"r_ac": 0, "r_ad": 0, "r_ab": 16, "r_cd": 0}}
    )
    assert reply.status_code == 422  # schema-level validation


def test_invert_special_case_degenerate_data(client):
    reply = client.post(
        "/invert",
        json={
            "rates": {"r_ac": 0, "r_ad": 0, "r_ab": 16, "r_cd": 0},
            "r0": 1.0,
            "special_case": True,
        },
    )
    assert reply.status_code == 422
    assert reply.json()["code"] == "inversion"


def test_sagnac_forward_and_reconstruct(client):
    geometry = {"area_x": 1.0, "area_y": 1.0, "area_z": 1.0, "wavelength": 1550e-9}
    fwd = client.post(
        "/sagnac/forward",
        json={
            "geometry": geometry,
            "omega": {"omega_x": 1.0, "omega_y": 1.0, "omega_z": 1.0},
        },
    )
    assert fwd.status_code == 200
    body = fwd.json()
    assert body["phases"]["phi0"] == pytest.approx(0.0, abs=1e-12)
    assert body["phases"]["phi1"] == pytest.approx(0.05409, rel=1e-4)
    assert body["phases"]["phi2"] == pytest.approx(0.10817, rel=1e-4)

    rec = client.post(
        "/sagnac/reconstruct",
        json={"geometry": geometry, "rates": body["rates"], "r0": 1.0},
    )
    assert rec.status_code == 200
    rbody = rec.json()
    assert rbody["converged"]
    found = [
        cand
        for cand in rbody["candidates"]
        if all(cand[k] == pytest.approx(1.0, rel=1e-6) for k in
               ("omega_x", "omega_y", "omega_z"))
    ]
    assert found


def test_sagnac_zero_area_maps_to_geometry_code(client):
    reply = client.post(
        "/sagnac/reconstruct",
        json={
            "geometry": {
                "area_x": 1.0, "area_y": 0.0, "area_z": 1.0, "wavelength": 1550e-9
            },
            "rates": {"r_ac": 0, "r_ad": 0, "r_ab": 16, "r_cd": 0},
            "r0": 1.0,
        },
    )
    assert reply.status_code == 422
    assert reply.json()["code"] == "geometry"
