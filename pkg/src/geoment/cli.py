"""Thin command-line client for the geoment service.

Every command builds a request, sends it to the service (in-process ASGI
transport by default, or a remote instance via --server), and writes the
response to disk/stdout.  Exit codes: 0 success, 1 verification failure,
2 parse or I/O error, 3 domain error.
"""
from __future__ import annotations

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx

from .curve import format_sig

EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3

FAMILIES = ("dicke", "ghz", "ww", "wg", "ss", "werner", "isotropic")


def _post(server: str | None, path: str, payload: dict) -> dict:
    try:
        if server:
            with httpx.Client(base_url=server, timeout=600.0) as client:
                resp = client.post(path, json=payload)
                status, body = resp.status_code, resp.json()
        else:
            from .service.app import app

            async def in_process():
                transport = httpx.ASGITransport(app=app)
                async with httpx.AsyncClient(
                    transport=transport, base_url="http://geoment.internal", timeout=None
                ) as client:
                    resp = await client.post(path, json=payload)
                    return resp.status_code, resp.json()

            status, body = asyncio.run(in_process())
    except (httpx.HTTPError, json.JSONDecodeError) as exc:
        click.echo(f"error: service request failed: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    if status >= 400:
        kind = body.get("kind", "parse") if isinstance(body, dict) else "parse"
        click.echo(f"error: {json.dumps(body)}", err=True)
        sys.exit(EXIT_PARSE if kind == "parse" else EXIT_DOMAIN)
    return body


def _read_json_file(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _family_payload(family, n, k1, k2, s, r, phi, d, f, fidelity) -> dict:
    def need(value, flag):
        if value is None:
            click.echo(f"error: family '{family}' requires {flag}", err=True)
            sys.exit(EXIT_PARSE)
        return value

    if family == "dicke":
        return {"type": "dicke", "n": need(n, "--n"), "k": need(k1, "--k1")}
    if family == "ghz":
        return {"type": "ghz", "n": need(n, "--n")}
    if family == "ww":
        return {"type": "ww", "s": need(s, "--s"), "phi": phi}
    if family == "wg":
        return {"type": "wg", "s": need(s, "--s"), "phi": phi}
    if family == "ss":
        return {
            "type": "ss",
            "n": need(n, "--n"),
            "k1": need(k1, "--k1"),
            "k2": need(k2, "--k2"),
            "r": need(r, "--r"),
            "phi": phi,
        }
    if family == "werner":
        return {"type": "werner", "d": d, "f": need(f, "--f")}
    if family == "isotropic":
        return {"type": "isotropic", "d": d, "F": need(fidelity, "--F")}
    click.echo(f"error: unknown family '{family}'; choose from {FAMILIES}", err=True)
    sys.exit(EXIT_PARSE)


def _solver_options(restarts, max_sweeps, tol, seed, symmetric_ansatz) -> dict:
    return {
        "restarts": restarts,
        "max_sweeps": max_sweeps,
        "tol": tol,
        "seed": seed,
        "symmetric_ansatz": symmetric_ansatz,
    }


def solver_flags(command):
    for deco in (
        click.option("--restarts", default=20, show_default=True, help="random solver restarts"),
        click.option("--max-sweeps", default=500, show_default=True),
        click.option("--tol", default=1e-12, show_default=True, help="per-sweep Lambda tolerance"),
        click.option("--seed", default=7, show_default=True),
        click.option("--symmetric-ansatz", is_flag=True, help="force identical factors"),
    ):
        command = deco(command)
    return command


def family_flags(command):
    for deco in (
        click.option("--family", default=None, help=f"one of {', '.join(FAMILIES)}"),
        click.option("--n", default=None, type=int, help="party count"),
        click.option("--k1", default=None, type=int, help="first Dicke k (also dicke's k)"),
        click.option("--k2", default=None, type=int, help="second Dicke k"),
        click.option("--s", default=None, type=float, help="superposition weight"),
        click.option("--r", default=None, type=float, help="mixture/superposition weight"),
        click.option("--phi", default=0.0, show_default=True, type=float, help="relative phase"),
        click.option("--d", default=2, show_default=True, type=int, help="local dimension"),
        click.option("--f", default=None, type=float, help="Werner swap expectation"),
        click.option("--F", "fidelity", default=None, type=float, help="isotropic fidelity"),
    ):
        command = deco(command)
    return command


@click.group()
@click.option("--server", default=None, envvar="GEOMENT_SERVER",
              help="base URL of a running service (default: in-process)")
@click.pass_context
def main(ctx, server):
    """Geometric measure of entanglement, E_sin2 = 1 - Lambda_max^2."""
    ctx.obj = server


@main.command()
@click.option("--input", "input_path", default=None,
              help="JSON state file ({dims, amps}, {family: ...}, or {dims, matrix})")
@click.option("--output", default=None, help="write the full JSON report here")
@click.option("--ensembles", default=2000, show_default=True,
              help="sampled decompositions for the mixed-state fallback")
@family_flags
@solver_flags
@click.pass_obj
def compute(server, input_path, output, ensembles, family, n, k1, k2, s, r, phi, d, f,
            fidelity, restarts, max_sweeps, tol, seed, symmetric_ansatz):
    """Entanglement of a single state (file or named family)."""
    if input_path is not None:
        state = _read_json_file(input_path)
    elif family is not None:
        state = {"family": _family_payload(family, n, k1, k2, s, r, phi, d, f, fidelity)}
    else:
        click.echo("error: provide --input or --family", err=True)
        sys.exit(EXIT_PARSE)
    payload = {
        "state": state,
        "options": _solver_options(restarts, max_sweeps, tol, seed, symmetric_ansatz),
        "ensembles": ensembles,
    }
    body = _post(server, "/compute", payload)
    click.echo(f"method      = {body['method']}")
    click.echo(f"lambda_max  = {format_sig(body['lambda_max'])}")
    click.echo(f"e_sin2      = {format_sig(body['e_sin2'])}")
    for key, value in sorted(body.get("diagnostics", {}).items()):
        shown = format_sig(value) if isinstance(value, float) else value
        click.echo(f"  {key} = {shown}")
    if output is not None:
        Path(output).write_text(json.dumps(body, indent=2) + "\n")
        click.echo(f"report written to {output}")


@main.command()
@click.option("--output", default=None, help="CSV path (stdout when omitted)")
@click.option("--grid", default=101, show_default=True, help="points on the parameter grid")
@family_flags
@solver_flags
@click.pass_obj
def curve(server, output, grid, family, n, k1, k2, s, r, phi, d, f, fidelity,
          restarts, max_sweeps, tol, seed, symmetric_ansatz):
    """E_sin2 curve over a family's parameter (ww, wg, ss, ss-mixture, werner, isotropic)."""
    if family is None:
        click.echo("error: --family is required", err=True)
        sys.exit(EXIT_PARSE)
    payload = {
        "family": family,
        "grid": grid,
        "phi": phi,
        "d": d,
        "options": _solver_options(restarts, max_sweeps, tol, seed, symmetric_ansatz),
    }
    for key, value in (("n", n), ("k1", k1), ("k2", k2)):
        if value is not None:
            payload[key] = value
    body = _post(server, "/curve", payload)
    if output is None:
        click.echo(body["csv"], nl=False)
    else:
        Path(output).write_bytes(body["csv"].encode())
        click.echo(f"{body['family']} curve ({body['param']}) written to {output}")


@main.command()
@click.option("--which", type=click.IntRange(1, 3), required=True, help="figure number")
@click.option("--output", default=".", show_default=True, help="output directory")
@click.option("--grid", default=51, show_default=True)
@click.option("--scatter", default=200, show_default=True,
              help="random (s, phi) samples for figure 2")
@solver_flags
@click.pass_obj
def figure(server, which, output, grid, scatter, restarts, max_sweeps, tol, seed,
           symmetric_ansatz):
    """Reproduce the reference figure data as CSV files."""
    payload = {
        "which": which,
        "grid": grid,
        "scatter": scatter,
        "options": _solver_options(restarts, max_sweeps, tol, seed, symmetric_ansatz),
    }
    body = _post(server, "/figure", payload)
    out_dir = Path(output)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in sorted(body["files"].items()):
        (out_dir / name).write_bytes(text.encode())
        click.echo(f"wrote {out_dir / name}")


@main.command()
@click.option("--seed", default=7, show_default=True)
@click.option("--input", "input_path", default=None,
              help="state file to validate as an extra check")
@click.pass_obj
def verify(server, seed, input_path):
    """Run the invariant suites of all modules; exit 1 on any failure."""
    payload = {"seed": seed}
    if input_path is not None:
        payload["input_state"] = _read_json_file(input_path)
    body = _post(server, "/verify", payload)
    for check in body["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        click.echo(f"{status} {check['name']}: {check['detail']}")
    click.echo(json.dumps({"passed": body["passed"], "seed": body["seed"]}))
    if not body["passed"]:
        sys.exit(EXIT_VERIFY_FAILED)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
