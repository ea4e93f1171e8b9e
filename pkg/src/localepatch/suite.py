"""Corpus-wide verification: every check, every small frame, no randomness.

The corpus is every labelled poset up to the configured point count.  Checks
whose cost is exponential in the frame (full directed-subset oracles, nucleus
join agreement, the composition-family properties) run on the sub-corpus of
spectra up to `oracle_poset_points`; everything else runs everywhere.  Output
is one line per proposition per subject, sorted, so runs diff cleanly.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Optional

from .adjunction import (
    FrameHom,
    JoinPreservationError,
    check_perfect_way_below,
    is_perfect_map,
    is_spectral_map,
    right_adjoint,
)
from .coreflect import (
    check_counit_iso_on_stone,
    check_universal_property,
    enumerate_frame_homs,
)
from .frame import FiniteFrame, all_elements_basis, verify_frame_laws
from .nucleus import (
    basic_le,
    check_star_properties,
    enumerate_nuclei,
    identity_nucleus,
    is_scott_continuous,
    nucleus_join,
    nucleus_join_kleene,
    nucleus_meet,
    top_nucleus,
)
from .patchstone import (
    check_patch_is_stone,
    check_scott_continuity_lemmas,
    closed_nucleus,
    counit,
    johnstone_decompose,
    open_nucleus,
)
from .poset import enumerate_posets
from .separation import PropCheck, check_prop_suite, classify, way_below, way_below_fast


@dataclass
class SuiteConfig:
    """Caps for the exhaustive suite; defaults keep a full run near a minute."""

    max_poset_points: int = 4
    max_family_size: int = 3
    oracle_poset_points: int = 3
    universal_poset_points: int = 3
    hom_pair_points: int = 2
    parallel_workers: int = 1

    def __post_init__(self):
        caps = (
            self.max_poset_points,
            self.max_family_size,
            self.oracle_poset_points,
            self.universal_poset_points,
            self.hom_pair_points,
        )
        if any(cap < 0 for cap in caps) or self.parallel_workers < 1:
            raise ValueError("suite caps must be non-negative and workers positive")


@dataclass
class SuiteLine:
    prop: str
    subject: str
    passed: bool
    witness: Optional[str] = None

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" [{self.witness}]" if self.witness and not self.passed else ""
        return f"{status} {self.prop} {self.subject}{tail}"


@dataclass
class SuiteReport:
    lines: list[SuiteLine] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(line.passed for line in self.lines)

    @property
    def passed(self) -> int:
        return sum(line.passed for line in self.lines)

    @property
    def failed(self) -> int:
        return sum(not line.passed for line in self.lines)

    def to_text(self) -> str:
        body = "\n".join(line.text() for line in self.lines)
        summary = f"{self.passed} passed, {self.failed} failed"
        return f"{body}\n{summary}\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "passed": self.passed,
                "failed": self.failed,
                "lines": [
                    {
                        "prop": line.prop,
                        "subject": line.subject,
                        "passed": line.passed,
                        "witness": line.witness,
                    }
                    for line in self.lines
                ],
            },
            indent=2,
        )


def _from_checks(subject: str, checks: list[PropCheck]) -> list[SuiteLine]:
    return [
        SuiteLine(c.name, subject, c.passed, c.counterexample) for c in checks
    ]


def _heyting_adjunction_check(frame: FiniteFrame) -> PropCheck:
    basis = all_elements_basis(frame)
    count, cx = 0, None
    for u in range(frame.n):
        table = open_nucleus(frame, basis, u).table
        for v in range(frame.n):
            for w in range(frame.n):
                count += 1
                if (frame.leq(frame.meet(w, u), v)) != frame.leq(w, table[v]):
                    cx = (
                        f"{frame.element_name(w)} /\\ {frame.element_name(u)}"
                        f" vs {frame.element_name(v)}"
                    )
    return PropCheck("heyting-adjunction", cx is None, count, cx)


def _constant_top_rejection(frame: FiniteFrame) -> PropCheck:
    table = (frame.top,) * frame.n
    hom = FrameHom(frame, frame, table)
    try:
        right_adjoint(hom, all_elements_basis(frame))
    except JoinPreservationError as exc:
        ok = exc.family == ()
        return PropCheck(
            "right-adjoint-rejects-non-join-preserving",
            ok,
            1,
            None if ok else f"witness family {exc.family}",
        )
    return PropCheck(
        "right-adjoint-rejects-non-join-preserving", False, 1, "no rejection raised"
    )


def _complementation_checks(frame: FiniteFrame) -> list[PropCheck]:
    basis = all_elements_basis(frame)
    ident, top = identity_nucleus(frame), top_nucleus(frame)
    meet_cx, join_cx = None, None
    for u in range(frame.n):
        c = closed_nucleus(frame, u)
        o = open_nucleus(frame, basis, u)
        if nucleus_meet(c, o) != ident:
            meet_cx = frame.element_name(u)
        if nucleus_join(frame, [c, o]) != top:
            join_cx = frame.element_name(u)
    return [
        PropCheck("closed-meet-open-is-identity", meet_cx is None, frame.n, meet_cx),
        PropCheck("closed-join-open-is-top", join_cx is None, frame.n, join_cx),
    ]


def _basic_le_check(frame: FiniteFrame) -> PropCheck:
    basis = classify(frame).spectral
    nuclei = enumerate_nuclei(frame)
    count, cx = 0, None
    for j in nuclei:
        for k in nuclei:
            count += 1
            if basic_le(frame, basis, j, k) != j.le(k):
                cx = f"{j!r} vs {k!r}"
    return PropCheck("basic-le-matches-pointwise", cx is None, count, cx)


def _johnstone_checks(frame: FiniteFrame) -> list[PropCheck]:
    basis = all_elements_basis(frame)
    direct_cx, reindexed_cx = None, None
    count = 0
    for nuc in enumerate_nuclei(frame):
        count += 1
        first, second = johnstone_decompose(frame, basis, nuc)
        if not first.passed:
            direct_cx = first.counterexample
        if not second.passed:
            reindexed_cx = second.counterexample
    return [
        PropCheck("johnstone-decomposition", direct_cx is None, count, direct_cx),
        PropCheck(
            "johnstone-reindexed-decomposition", reindexed_cx is None, count, reindexed_cx
        ),
    ]


def _way_below_equivalence(frame: FiniteFrame) -> PropCheck:
    count, cx = 0, None
    for u in range(frame.n):
        for v in range(frame.n):
            count += 1
            if way_below(frame, u, v) != way_below_fast(frame, u, v):
                cx = f"{frame.element_name(u)} << {frame.element_name(v)}"
    return PropCheck("way-below-matches-leq", cx is None, count, cx)


def _scott_collapse(frame: FiniteFrame) -> PropCheck:
    count, cx = 0, None
    for nuc in enumerate_nuclei(frame):
        count += 1
        if not is_scott_continuous(nuc):
            cx = repr(nuc)
    return PropCheck("all-nuclei-scott-continuous", cx is None, count, cx)


def _nucleus_join_checks(frame: FiniteFrame, max_family: int) -> list[PropCheck]:
    nuclei = enumerate_nuclei(frame)
    agree_cx, lub_cx, glb_cx = None, None, None
    count = 0
    for size in range(max_family + 1):
        for combo in combinations_with_replacement(range(len(nuclei)), size):
            fam = [nuclei[i] for i in combo]
            count += 1
            joined = nucleus_join(frame, fam)
            if joined != nucleus_join_kleene(frame, fam):
                agree_cx = str(combo)
            for other in nuclei:
                if all(k.le(other) for k in fam) and not joined.le(other):
                    lub_cx = str(combo)
    pair_count = 0
    for j in nuclei:
        for k in nuclei:
            pair_count += 1
            met = nucleus_meet(j, k)
            for other in nuclei:
                if other.le(j) and other.le(k) and not other.le(met):
                    glb_cx = f"{j!r}, {k!r}"
    return [
        PropCheck("nucleus-join-agreement", agree_cx is None, count, agree_cx),
        PropCheck("nucleus-join-least-upper-bound", lub_cx is None, count, lub_cx),
        PropCheck("nucleus-meet-is-glb", glb_cx is None, pair_count, glb_cx),
    ]


def _frame_lines(fid: str, frame: FiniteFrame, cfg: SuiteConfig) -> list[SuiteLine]:
    lines: list[SuiteLine] = []
    law = verify_frame_laws(frame, family_cap=cfg.max_family_size)
    lines.append(SuiteLine("frame-laws", fid, law.ok, None if law.ok else str(law)))
    lines.extend(_from_checks(fid, check_prop_suite(frame)))
    lines.extend(_from_checks(fid, [_heyting_adjunction_check(frame)]))
    if frame.n >= 2:
        lines.extend(_from_checks(fid, [_constant_top_rejection(frame)]))
    lines.extend(_from_checks(fid, _complementation_checks(frame)))
    lines.extend(_from_checks(fid, [_basic_le_check(frame)]))
    lines.extend(_from_checks(fid, check_patch_is_stone(frame)))
    deep = frame.spectrum.n <= cfg.oracle_poset_points
    lines.extend(_from_checks(fid, counit(frame, deep=deep).checks))
    lines.extend(_from_checks(fid, _johnstone_checks(frame)))
    lines.extend(_from_checks(fid, check_scott_continuity_lemmas(frame)))
    if classify(frame).stone:
        lines.extend(_from_checks(fid, [check_counit_iso_on_stone(frame)]))
    if deep:
        lines.extend(_from_checks(fid, [_way_below_equivalence(frame)]))
        lines.extend(_from_checks(fid, [_scott_collapse(frame)]))
        lines.extend(
            _from_checks(fid, _nucleus_join_checks(frame, cfg.max_family_size))
        )
        lines.extend(
            _from_checks(
                fid,
                check_star_properties(frame, list(enumerate_nuclei(frame)), max_len=2),
            )
        )
    return lines


def _hom_pair_lines(
    fid: str, gid: str, f: FiniteFrame, g: FiniteFrame
) -> list[SuiteLine]:
    subject = f"{fid}->{gid}"
    agree_cx, wb_cx = None, None
    basis = all_elements_basis(f)
    for hom in enumerate_frame_homs(f, g):
        perfect = is_perfect_map(hom, basis)
        if perfect != is_spectral_map(hom):
            agree_cx = repr(hom)
        if perfect:
            check = check_perfect_way_below(hom)
            if not check.passed:
                wb_cx = check.counterexample
    return [
        SuiteLine("perfect-iff-spectral", subject, agree_cx is None, agree_cx),
        SuiteLine("perfect-maps-respect-way-below", subject, wb_cx is None, wb_cx),
    ]


def _universal_lines(
    aid: str, xid: str, a: FiniteFrame, x: FiniteFrame
) -> list[SuiteLine]:
    subject = f"{aid}->{xid}"
    outcomes: dict[str, Optional[str]] = {
        "universal-triangle": None,
        "universal-uniqueness": None,
        "universal-presentation-independent": None,
    }
    for f in enumerate_frame_homs(a, x):
        if not f.is_spectral:
            continue
        for check in check_universal_property(f):
            if not check.passed and outcomes.get(check.name) is None:
                outcomes[check.name] = check.counterexample or repr(f)
    return [
        SuiteLine(prop, subject, cx is None, cx) for prop, cx in outcomes.items()
    ]


def run_suite(cfg: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Run every check over the labelled-poset corpus; deterministic output."""
    corpus: list[tuple[str, FiniteFrame]] = []
    for n in range(cfg.max_poset_points + 1):
        for i, poset in enumerate(enumerate_posets(n)):
            corpus.append((f"p{n}-{i:03d}", FiniteFrame(poset)))

    lines: list[SuiteLine] = []
    if cfg.parallel_workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallel_workers) as pool:
            futures = [
                pool.submit(_frame_lines, fid, frame, cfg) for fid, frame in corpus
            ]
            for fut in futures:
                lines.extend(fut.result())
    else:
        for fid, frame in corpus:
            lines.extend(_frame_lines(fid, frame, cfg))

    small = [
        (fid, frame)
        for fid, frame in corpus
        if frame.spectrum.n <= cfg.hom_pair_points
    ]
    for fid, f in small:
        for gid, g in small:
            lines.extend(_hom_pair_lines(fid, gid, f, g))

    stones = [
        (fid, frame)
        for fid, frame in corpus
        if frame.spectrum.n <= cfg.universal_poset_points and classify(frame).stone
    ]
    spectrals = [
        (fid, frame)
        for fid, frame in corpus
        if frame.spectrum.n <= cfg.universal_poset_points
    ]
    for xid, x in stones:
        for aid, a in spectrals:
            lines.extend(_universal_lines(aid, xid, a, x))

    lines.sort(key=lambda line: (line.prop, line.subject))
    return SuiteReport(lines)
