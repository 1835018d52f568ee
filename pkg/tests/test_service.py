import asyncio
import math

import httpx
import pytest

from geoment.service.app import app


def post(path, payload):
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://t") as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()

    return asyncio.run(go())


def get(path):
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://t") as client:
            resp = await client.get(path)
            return resp.status_code, resp.json()

    return asyncio.run(go())


def test_health():
    status, body = get("/health")
    assert status == 200
    assert body["status"] == "ok"


def test_compute_endpoint_ghz():
    status, body = post("/compute", {"state": {"family": {"type": "ghz", "n": 3}}})
    assert status == 200
    assert abs(body["lambda_max"] - 1 / math.sqrt(2)) < 1e-9
    assert abs(body["e_sin2"] - 0.5) < 1e-9
    assert body["method"] == "closed_form"
    assert body["nearest_product_state"] is not None


def test_compute_endpoint_options_respected():
    payload = {
        "state": {"dims": [2, 2], "amps": [[0.6, 0], [0, 0], [0, 0], [0.8, 0]]},
        "options": {"restarts": 4, "seed": 11},
    }
    status, body = post("/compute", payload)
    assert status == 200
    assert body["method"] == "schmidt"
    assert abs(body["lambda_max"] - 0.8) < 1e-12


def test_parse_error_maps_to_400():
    status, body = post("/compute", {"state": {"weird": []}})
    assert status == 400
    assert body["kind"] == "parse"
    assert body["type"] == "ParseError"


def test_domain_error_maps_to_422():
    status, body = post("/compute", {"state": {"family": {"type": "dicke", "n": 3, "k": 8}}})
    assert status == 422
    assert body["kind"] == "domain"
    assert body["type"] == "InvalidK"


def test_schema_validation_rejects_bad_request():
    status, _ = post("/curve", {"family": "not-a-family"})
    assert status == 422


def test_curve_endpoint_csv_contract():
    status, body = post("/curve", {"family": "isotropic", "d": 3, "grid": 5})
    assert status == 200
    lines = body["csv"].split("\n")
    assert lines[0] == "param,e_sin2,lambda"
    assert lines[-1] == ""  # trailing LF
    assert len(lines) == 7
    assert body["param"] == "F"


def test_curve_endpoint_deterministic_bytes():
    req = {"family": "wg", "phi": 3.14159, "grid": 4, "options": {"restarts": 5, "seed": 3}}
    _, a = post("/curve", req)
    _, b = post("/curve", req)
    assert a["csv"] == b["csv"]


def test_figure_endpoint():
    status, body = post(
        "/figure", {"which": 3, "grid": 7, "options": {"restarts": 5}}
    )
    assert status == 200
    assert set(body["files"]) == {"figure3_ss725_pure.csv", "figure3_ss725_hull.csv"}


# the /verify endpoint is exercised end to end (with fixtures and exit
# codes) through the CLI client in test_cli.py
