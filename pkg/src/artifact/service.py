"""HTTP service exposing counting, verification, series, and symmetry.

A thin FastAPI layer over the library; all endpoints are pure queries
and safe to call concurrently.  Run with:

    uvicorn artifact.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import gf_catalog
from .cli import ENGINES
from .enumerate import FilterSpec, count_avoiders, count_filtered
from .perm_core import PatternSet, symmetry_class

app = FastAPI(title="pattern-avoidance enumeration service")


class CountRequest(BaseModel):
    patterns: str = Field(description="comma-separated patterns, e.g. "
                          "1342,2143,2314")
    n: int = Field(default=9, ge=0, le=14)
    filter: str | None = Field(default=None,
                               description='e.g. "lr_max_count==2"')


class CountResponse(BaseModel):
    patterns: str
    n: int
    filter: str | None
    counts: dict[int, str]


class VerifyRequest(BaseModel):
    case_id: int
    n: int = Field(default=9, ge=0, le=12)


class SeriesResponse(BaseModel):
    case_id: int
    patterns: str
    coefficients: list[str]


class SymmetryResponse(BaseModel):
    patterns: str
    orbit: list[str]
    orbit_size: int


def _parse_patterns(text: str) -> PatternSet:
    try:
        return PatternSet.from_string(text)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _require_case(case_id: int) -> gf_catalog.CaseSpec:
    spec = gf_catalog.REGISTRY.get(case_id)
    if spec is None:
        raise HTTPException(
            status_code=404,
            detail=f"unknown case {case_id}; valid: "
                   f"{list(gf_catalog.CASE_IDS)}")
    return spec


@app.post("/count", response_model=CountResponse)
def count(req: CountRequest) -> CountResponse:
    t = _parse_patterns(req.patterns)
    if req.filter:
        try:
            spec = FilterSpec.parse(req.filter)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        table = count_filtered(t, req.n, spec)
    else:
        table = count_avoiders(t, req.n)
    return CountResponse(patterns=str(t), n=req.n, filter=req.filter,
                         counts={n: str(table[n]) for n in table.lengths()})


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    spec = _require_case(req.case_id)
    report = gf_catalog.verify_case(req.case_id, req.n)
    if req.case_id in ENGINES:
        oracle = count_avoiders(spec.patterns, req.n)
        table = ENGINES[req.case_id](req.n)
        ok = all(table[n] == oracle[n] for n in range(req.n + 1))
        report["engines"] = {table.engine: "pass" if ok else "fail"}
        if not ok:
            report["verdict"] = "fail"
    return report


@app.get("/series/{case_id}", response_model=SeriesResponse)
def series(case_id: int, terms: int = 10) -> SeriesResponse:
    spec = _require_case(case_id)
    if not 1 <= terms <= 64:
        raise HTTPException(status_code=422,
                            detail="terms must be between 1 and 64")
    coeffs = gf_catalog.evaluate_case(case_id, terms).integer_coefficients()
    return SeriesResponse(case_id=case_id, patterns=str(spec.patterns),
                          coefficients=[str(c) for c in coeffs])


@app.get("/symmetry", response_model=SymmetryResponse)
def symmetry(patterns: str) -> SymmetryResponse:
    t = _parse_patterns(patterns)
    orbit = sorted(symmetry_class(t))
    return SymmetryResponse(patterns=str(t),
                            orbit=[str(s) for s in orbit],
                            orbit_size=len(orbit))


@app.get("/cases")
def cases() -> dict:
    return {str(cid): str(spec.patterns)
            for cid, spec in sorted(gf_catalog.REGISTRY.items())}
