"""Request and response models for the verification service.

Frames travel as the same text the file formats use: poset text (`elem`/`le`
lines) for a downset frame, or a direct lattice marked by `top`/`bottom`
declarations.  `frame from-poset <ref>` is a client-side convenience; clients
resolve it and send the poset text inline.
"""
from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class FrameRequest(BaseModel):
    frame: str = Field(description="poset text or direct-lattice text")


class CheckResponse(BaseModel):
    ok: bool
    law: Optional[str] = None
    witness: Optional[str] = None
    checked: int


class BasisModel(BaseModel):
    members: list[str]
    closed_under_finite_meets: bool
    closed_under_finite_joins: bool


class ClassifyResponse(BaseModel):
    elements: list[str]
    compact: bool
    stone: bool
    spectral: Optional[BasisModel] = None
    zero_dimensional: Optional[BasisModel] = None
    regular: Optional[BasisModel] = None


class PropLine(BaseModel):
    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None


class PropsResponse(BaseModel):
    ok: bool
    props: list[PropLine]


class MapRequest(BaseModel):
    map: str = Field(description="map header plus total send lines")
    frames: dict[str, str] = Field(
        description="frame name (as used in the map header) -> frame text"
    )


class MapCheckResponse(BaseModel):
    monotone: bool
    preserves_top: bool
    preserves_meets: bool
    preserves_joins: bool
    frame_hom: bool
    spectral: bool
    perfect: bool
    table: dict[str, str]


class PatchRequest(FrameRequest):
    include_dot: bool = False


class NucleusModel(BaseModel):
    name: str
    table: dict[str, str]


class PatchResponse(BaseModel):
    size: int
    law_ok: bool
    nuclei: list[NucleusModel]
    dot: Optional[str] = None


class StoneResponse(BaseModel):
    ok: bool
    props: list[PropLine]
    patch_size: int
    envelope_size: int
    dot_patch: Optional[str] = None
    dot_envelope: Optional[str] = None


class StoneRequest(FrameRequest):
    include_dot: bool = False


class UniversalResponse(BaseModel):
    ok: bool
    props: list[PropLine]
    lift: dict[str, str] = Field(
        description="patch element -> image under the constructed lift"
    )


class SuiteRequest(BaseModel):
    max_points: int = 4
    family_cap: int = 3
    workers: int = 1


class SuiteResponse(BaseModel):
    ok: bool
    passed: int
    failed: int
    lines: list[str]


class DotResponse(BaseModel):
    dot: str
