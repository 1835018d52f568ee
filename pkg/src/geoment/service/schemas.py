"""Pydantic request/response models for the service endpoints."""
from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

from ..solver import SolveOptions


class SolverOptionsModel(BaseModel):
    restarts: int = Field(default=20, ge=1)
    max_sweeps: int = Field(default=500, ge=1)
    tol: float = Field(default=1e-12, gt=0)
    seed: int = 7
    symmetric_ansatz: bool = False

    def to_options(self) -> SolveOptions:
        return SolveOptions(
            restarts=self.restarts,
            max_sweeps=self.max_sweeps,
            tol=self.tol,
            seed=self.seed,
            symmetric_ansatz=self.symmetric_ansatz,
        )


class ComputeRequest(BaseModel):
    """state carries the documented JSON payload: {"dims", "amps"} |
    {"family": {...}} | {"dims", "matrix"}."""

    state: dict[str, Any]
    options: SolverOptionsModel = SolverOptionsModel()
    ensembles: int = Field(default=2000, ge=1, description="roof-fallback samples")


class ProductStateModel(BaseModel):
    factors: list[list[list[float]]]


class ComputeResponse(BaseModel):
    lambda_max: float
    e_sin2: float
    method: Literal["closed_form", "schmidt", "als", "roof_upper_bound"]
    nearest_product_state: ProductStateModel | None = None
    diagnostics: dict[str, Any] = {}


class CurveRequest(BaseModel):
    family: Literal["ww", "wg", "ss", "ss-mixture", "werner", "isotropic"]
    grid: int = Field(default=101, ge=3)
    n: int | None = None
    k1: int | None = None
    k2: int | None = None
    phi: float = 0.0
    d: int = Field(default=2, ge=2)
    options: SolverOptionsModel = SolverOptionsModel()


class CurveResponse(BaseModel):
    family: str
    param: str
    convexified: bool
    csv: str
    points: list[list[float]]


class FigureRequest(BaseModel):
    which: Literal[1, 2, 3]
    grid: int = Field(default=51, ge=3)
    scatter: int = Field(default=200, ge=0)
    options: SolverOptionsModel = SolverOptionsModel()


class FigureResponse(BaseModel):
    files: dict[str, str]


class VerifyRequest(BaseModel):
    seed: int = 7
    input_state: dict[str, Any] | None = None


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    seed: int
    checks: list[CheckResult]


class HealthResponse(BaseModel):
    status: str
    version: str
