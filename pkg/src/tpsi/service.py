"""HTTP service exposing the verification suites and tensor dumps.

The CLI talks to this app in-process by default; the same app can be
served standalone and reached with --server.
"""

from __future__ import annotations

import io
import math

from fastapi import FastAPI
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, ConfigDict, Field

from . import suites
from ._version import __version__
from .errors import DegenerateTrihedronError, SamplingFailureError
from .geometry import sample_planar_spectral
from .planar import r_planar_vertex
from .suites import SUITES, run_report
from .tensor import dump_tensor
from .verify import vertex_tensors

SUITE_CHOICES = ("all",) + SUITES

TENSOR_CHOICES = ("R", "R'", "R''", "R'''", "planar-R")
TENSOR_ALIASES = {"R0": "R", "R1": "R'", "R2": "R''", "R3": "R'''"}


class RunRequest(BaseModel):
    suite: str = "all"
    n: int = Field(2, ge=2, le=7)
    seed: int = Field(0, ge=0)
    tolerance: float = Field(1e-8, gt=0)
    samples: int = Field(10000, ge=1)
    angles: list[float] | None = Field(None, min_length=6, max_length=6)
    degrees: bool = False
    threads: int | None = Field(None, ge=1)

    def resolved_angles(self):
        if self.angles is None:
            return None
        if self.degrees:
            return [math.radians(x) for x in self.angles]
        return list(self.angles)


class DumpRequest(BaseModel):
    tensor: str = "R"
    n: int = Field(2, ge=2, le=7)
    seed: int = Field(0, ge=0)
    angles: list[float] | None = Field(None, min_length=6, max_length=6)
    degrees: bool = False

    def resolved_angles(self):
        if self.angles is None:
            return None
        if self.degrees:
            return [math.radians(x) for x in self.angles]
        return list(self.angles)


class CheckResult(BaseModel):
    name: str
    residual: float
    passed: bool
    mode: str | None = None
    max_abs_diff: float | None = None
    rel_diff: float | None = None
    ratio_mean: list[float] | None = None
    ratio_spread: float | None = None
    entries_checked: int | None = None


class CornerAngles(BaseModel):
    theta: list[float]
    a: list[float]
    beta: list[float]


class TetraAngles(BaseModel):
    theta: list[float]
    corners: list[CornerAngles]


class SuiteResult(BaseModel):
    suite: str
    n: int
    seed: int
    tolerance: float
    checks: list[CheckResult]
    passed: bool
    angles: TetraAngles | None = None
    planar_corners: list[CornerAngles] | None = None
    phase_choice: int | None = None


class RunReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(alias="schema")
    suite: str
    n: int
    seed: int
    tolerance: float
    samples: int
    suites: list[SuiteResult]
    passed: bool
    wall_time_s: float


def _degenerate_response(exc):
    return JSONResponse(
        status_code=400,
        content={"detail": {"type": "degenerate-geometry", "message": str(exc)}},
    )


def build_dump(request: DumpRequest) -> bytes:
    """Binary serialization of one selected weight tensor."""
    name = TENSOR_ALIASES.get(request.tensor, request.tensor)
    if name not in TENSOR_CHOICES:
        raise ValueError(
            f"tensor must be one of {TENSOR_CHOICES} (got {request.tensor!r})"
        )
    if name == "planar-R":
        tri = sample_planar_spectral(request.seed)[0]
        tensor = r_planar_vertex(tri, request.n)
    else:
        angles = request.resolved_angles()
        t = suites.resolved_tetrahedron(angles, request.seed)
        index = {"R": 0, "R'": 1, "R''": 2, "R'''": 3}[name]
        tensor = vertex_tensors(t, request.n)[index]
    buf = io.BytesIO()
    dump_tensor(tensor, buf)
    return buf.getvalue()


def create_app():
    app = FastAPI(title="tpsi", version=__version__)

    @app.exception_handler(DegenerateTrihedronError)
    def _degenerate(_, exc):
        return _degenerate_response(exc)

    @app.exception_handler(SamplingFailureError)
    def _sampling(_, exc):
        return _degenerate_response(exc)

    @app.get("/health")
    def health():
        return {"status": "ok", "suites": list(SUITE_CHOICES)}

    @app.post(
        "/run",
        response_model=RunReport,
        response_model_by_alias=True,
        response_model_exclude_none=True,
    )
    def run(request: RunRequest):
        if request.suite not in SUITE_CHOICES:
            return JSONResponse(
                status_code=422,
                content={"detail": f"suite must be one of {SUITE_CHOICES}"},
            )
        return run_report(
            suite=request.suite,
            n=request.n,
            seed=request.seed,
            tolerance=request.tolerance,
            samples=request.samples,
            angles=request.resolved_angles(),
            threads=request.threads,
        )

    @app.post("/dump")
    def dump(request: DumpRequest):
        try:
            payload = build_dump(request)
        except ValueError as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        return Response(content=payload, media_type="application/octet-stream")

    return app


app = create_app()
