"""FastAPI service wrapping the verification engine.

Each handler is a plain function over the pydantic models so the CLI can call
it in-process; the routes add nothing but HTTP plumbing.  All computation is
pure and per-request; there is no server state.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..adjunction import FrameHom, is_perfect_map, is_spectral_map
from ..coreflect import check_universal_property, universal_map
from ..dot import export_dot
from ..formats import FormatError, parse_frame, parse_map, require_downset_frame
from ..frame import Basis, FiniteFrame, FrameError, all_elements_basis, verify_frame_laws
from ..nucleus import patch_frame
from ..patchstone import boolean_envelope_oracle, check_patch_is_stone
from ..poset import PosetError
from ..separation import check_prop_suite, classify
from ..suite import SuiteConfig, run_suite
from . import models

_INPUT_ERRORS = (FormatError, FrameError, PosetError)


def _parse(req: models.FrameRequest):
    try:
        return parse_frame(req.frame)
    except _INPUT_ERRORS as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _parse_downset(req: models.FrameRequest) -> FiniteFrame:
    try:
        return require_downset_frame(parse_frame(req.frame))
    except _INPUT_ERRORS as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _parse_hom(req: models.MapRequest) -> FrameHom:
    def lookup(name: str):
        if name not in req.frames:
            raise FormatError(f"map references unknown frame {name!r}")
        return parse_frame(req.frames[name])

    try:
        return parse_map(req.map, lookup)
    except _INPUT_ERRORS as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _basis_model(basis: Basis | None, frame: FiniteFrame):
    if basis is None:
        return None
    return models.BasisModel(
        members=[frame.element_name(b) for b in basis.members],
        closed_under_finite_meets=basis.closed_under_finite_meets,
        closed_under_finite_joins=basis.closed_under_finite_joins,
    )


def _prop_lines(checks) -> list[models.PropLine]:
    return [
        models.PropLine(
            name=c.name,
            passed=c.passed,
            checked=c.checked,
            counterexample=c.counterexample,
        )
        for c in checks
    ]


def handle_check(req: models.FrameRequest) -> models.CheckResponse:
    lattice = _parse(req)
    report = verify_frame_laws(lattice)
    return models.CheckResponse(
        ok=report.ok, law=report.law, witness=report.witness, checked=report.checked
    )


def handle_classify(req: models.FrameRequest) -> models.ClassifyResponse:
    frame = _parse_downset(req)
    cls = classify(frame)
    return models.ClassifyResponse(
        elements=[frame.element_name(u) for u in range(frame.n)],
        compact=cls.compact,
        stone=cls.stone,
        spectral=_basis_model(cls.spectral, frame),
        zero_dimensional=_basis_model(cls.zero_dimensional, frame),
        regular=_basis_model(cls.regular, frame),
    )


def handle_props(req: models.FrameRequest) -> models.PropsResponse:
    frame = _parse_downset(req)
    checks = check_prop_suite(frame)
    return models.PropsResponse(
        ok=all(c.passed for c in checks), props=_prop_lines(checks)
    )


def handle_map_check(req: models.MapRequest) -> models.MapCheckResponse:
    hom = _parse_hom(req)
    spectral = hom.is_frame_hom and is_spectral_map(hom)
    perfect = hom.is_frame_hom and is_perfect_map(hom, all_elements_basis(hom.source))
    return models.MapCheckResponse(
        monotone=hom.is_monotone,
        preserves_top=hom.preserves_top,
        preserves_meets=hom.preserves_meets,
        preserves_joins=hom.preserves_joins,
        frame_hom=hom.is_frame_hom,
        spectral=spectral,
        perfect=perfect,
        table={
            hom.source.element_name(u): hom.target.element_name(hom.table[u])
            for u in range(hom.source.n)
        },
    )


def handle_patch(req: models.PatchRequest) -> models.PatchResponse:
    frame = _parse_downset(req)
    try:
        patch = patch_frame(frame)
    except FrameError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    nuclei = [
        models.NucleusModel(
            name=f"nuc{i}",
            table={
                frame.element_name(u): frame.element_name(v)
                for u, v in enumerate(nuc.table)
            },
        )
        for i, nuc in enumerate(patch.nuclei)
    ]
    dot = None
    if req.include_dot:
        labels = {
            patch.to_frame[i]: f"nuc{i}" for i in range(patch.n)
        }
        dot = export_dot(patch.frame, labels)
    return models.PatchResponse(
        size=patch.n, law_ok=patch.law_report.ok, nuclei=nuclei, dot=dot
    )


def handle_stone(req: models.StoneRequest) -> models.StoneResponse:
    frame = _parse_downset(req)
    try:
        checks = check_patch_is_stone(frame)
        patch = patch_frame(frame)
    except FrameError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    envelope = boolean_envelope_oracle(frame)
    dot_patch = dot_envelope = None
    if req.include_dot:
        dot_patch = export_dot(patch.frame)
        dot_envelope = export_dot(envelope)
    return models.StoneResponse(
        ok=all(c.passed for c in checks),
        props=_prop_lines(checks),
        patch_size=patch.n,
        envelope_size=envelope.n,
        dot_patch=dot_patch,
        dot_envelope=dot_envelope,
    )


def handle_universal(req: models.MapRequest) -> models.UniversalResponse:
    hom = _parse_hom(req)
    try:
        lift = universal_map(hom)
        checks = check_universal_property(hom)
    except _INPUT_ERRORS as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    patch = patch_frame(hom.source)
    return models.UniversalResponse(
        ok=all(c.passed for c in checks),
        props=_prop_lines(checks),
        lift={
            patch.frame.element_name(e): hom.target.element_name(lift.table[e])
            for e in range(patch.frame.n)
        },
    )


def handle_suite(req: models.SuiteRequest) -> models.SuiteResponse:
    try:
        cfg = SuiteConfig(
            max_poset_points=req.max_points,
            max_family_size=req.family_cap,
            parallel_workers=req.workers,
        )
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    report = run_suite(cfg)
    return models.SuiteResponse(
        ok=report.ok,
        passed=report.passed,
        failed=report.failed,
        lines=[line.text() for line in report.lines],
    )


def handle_dot(req: models.FrameRequest) -> models.DotResponse:
    lattice = _parse(req)
    return models.DotResponse(dot=export_dot(lattice))


app = FastAPI(
    title="localepatch",
    description="Pointfree topology on finite frames: classification, nuclei, "
    "patch construction, and exhaustive law verification.",
)

app.post("/check", response_model=models.CheckResponse)(handle_check)
app.post("/classify", response_model=models.ClassifyResponse)(handle_classify)
app.post("/props", response_model=models.PropsResponse)(handle_props)
app.post("/map-check", response_model=models.MapCheckResponse)(handle_map_check)
app.post("/patch", response_model=models.PatchResponse)(handle_patch)
app.post("/stone", response_model=models.StoneResponse)(handle_stone)
app.post("/universal", response_model=models.UniversalResponse)(handle_universal)
app.post("/suite", response_model=models.SuiteResponse)(handle_suite)
app.post("/dot", response_model=models.DotResponse)(handle_dot)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}
