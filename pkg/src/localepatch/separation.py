"""Order-theoretic separation: way-below, well-inside, and locale classifiers.

`way_below` is the literal definition, quantifying over every directed subset
of the frame.  `way_below_fast` is the finite-lattice oracle (a finite
directed family contains its join, so way-below collapses to <=); the two are
cross-checked over the whole generated corpus by the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .frame import Basis, FiniteFrame, is_basis, make_basis

# Above this many elements the literal definition is refused and callers must
# use the collapsed oracle.
WAY_BELOW_CAP = 20

# check_prop_suite switches from the literal way-below to the collapsed oracle
# above this size to keep exhaustive runs fast; the equivalence of the two is
# itself a checked property.
_LITERAL_ORACLE_MAX = 12


def way_below(frame: FiniteFrame, u: int, v: int, cap: int = WAY_BELOW_CAP) -> bool:
    """u << v: every directed family whose join dominates v has a member above u.

    One pass over the directed subsets records, per u, the joins of those
    families with no member above u; u << v iff no such join dominates v.
    """
    bad_joins = frame._cache.get("way_below_bad")
    if bad_joins is None:
        from .frame import _DIRECTED_SHARED

        shared_key = ("way_below_bad", frame.up_ids)
        bad_joins = _DIRECTED_SHARED.get(shared_key)
        if bad_joins is None:
            bad_joins = [0] * frame.n
            up = frame.up_ids
            for mask, join_id in frame.directed_subsets(cap):
                for w in range(frame.n):
                    if not mask & up[w]:
                        bad_joins[w] |= 1 << join_id
            _DIRECTED_SHARED[shared_key] = bad_joins
        frame._cache["way_below_bad"] = bad_joins
    return not bad_joins[u] & frame.up_ids[v]


def way_below_fast(frame: FiniteFrame, u: int, v: int) -> bool:
    """Finite-lattice oracle for u << v: plain order comparison."""
    return frame.leq(u, v)


def is_compact_open(frame: FiniteFrame, u: int) -> bool:
    """An open is compact iff it is way below itself."""
    return way_below_fast(frame, u, u)


def is_compact_locale(frame: FiniteFrame) -> bool:
    return is_compact_open(frame, frame.top)


def well_inside(frame: FiniteFrame, u: int, v: int) -> Optional[int]:
    """The least witness w with u /\\ w = bottom and v \\/ w = top, if any."""
    table = _well_inside_table(frame)
    return table[u * frame.n + v]


def _well_inside_table(frame: FiniteFrame) -> list[Optional[int]]:
    cached = frame._cache.get("well_inside")
    if cached is not None:
        return cached
    n = frame.n
    table: list[Optional[int]] = [None] * (n * n)
    for u in range(n):
        for v in range(n):
            for w in range(n):
                if (
                    frame.meet(u, w) == frame.bottom
                    and frame.join((v, w)) == frame.top
                ):
                    table[u * n + v] = w
                    break
    frame._cache["well_inside"] = table
    return table


def is_clopen(frame: FiniteFrame, u: int) -> bool:
    return well_inside(frame, u, u) is not None


@dataclass
class LocaleClass:
    """Classification of a finite frame, with re-verified basis witnesses."""

    compact: bool
    spectral: Optional[Basis]
    zero_dimensional: Optional[Basis]
    regular: Optional[Basis]
    stone: bool


def classify(frame: FiniteFrame) -> LocaleClass:
    """Classify a frame, using the maximal candidate bases.

    The compact opens are the canonical spectral candidate (any compact open
    falls in a spectral basis) and the clopens the canonical zero-dimensional
    one.  Since well-inside is upward-monotone on the right, a basis whose
    basic covers are all well inside the covered element can only consist of
    clopens, so the regular witness coincides with the zero-dimensional one.
    """
    compact = is_compact_locale(frame)
    compacts = [u for u in range(frame.n) if is_compact_open(frame, u)]
    spectral = None
    if is_basis(frame, compacts):
        b = make_basis(frame, compacts)
        if b.closed_under_finite_meets:
            spectral = b

    clopens = [u for u in range(frame.n) if is_clopen(frame, u)]
    zero_dimensional = make_basis(frame, clopens) if is_basis(frame, clopens) else None

    regular = None
    if zero_dimensional is not None:
        ok = True
        for u in range(frame.n):
            for b in zero_dimensional.members:
                if frame.leq(b, u) and well_inside(frame, b, u) is None:
                    ok = False
        if ok:
            regular = zero_dimensional

    stone = compact and zero_dimensional is not None
    return LocaleClass(compact, spectral, zero_dimensional, regular, stone)


@dataclass
class PropCheck:
    """Outcome of one exhaustively evaluated statement."""

    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None

    def line(self, subject: str = "") -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" {self.counterexample}" if self.counterexample else ""
        mid = f" {subject}" if subject else ""
        return f"{status} {self.name}{mid}{tail}"


def _way_below_oracle(frame: FiniteFrame):
    if frame.n <= _LITERAL_ORACLE_MAX:
        return lambda u, v: way_below(frame, u, v)
    return lambda u, v: way_below_fast(frame, u, v)


def check_prop_suite(frame: FiniteFrame) -> list[PropCheck]:
    """Evaluate the separation propositions on one frame, hypotheses included."""
    n = frame.n
    name = frame.element_name
    cls = classify(frame)
    wb = _way_below_oracle(frame)
    results = []

    # every compact open falls in the spectral basis
    count, cx = 0, None
    if cls.spectral is not None:
        members = set(cls.spectral.members)
        for u in range(n):
            if is_compact_open(frame, u):
                count += 1
                if u not in members:
                    cx = name(u)
                    break
    results.append(PropCheck("compact-opens-in-spectral-basis", cx is None, count, cx))

    # u well inside v and v <= w gives u well inside w
    count, cx = 0, None
    for u in range(n):
        for v in range(n):
            if well_inside(frame, u, v) is None:
                continue
            for w in range(n):
                if frame.leq(v, w):
                    count += 1
                    if well_inside(frame, u, w) is None:
                        cx = f"{name(u)} inside {name(v)} <= {name(w)}"
    results.append(PropCheck("well-inside-raises-along-leq", cx is None, count, cx))

    # u <= v and v well inside w gives u well inside w
    count, cx = 0, None
    for v in range(n):
        for w in range(n):
            if well_inside(frame, v, w) is None:
                continue
            for u in range(n):
                if frame.leq(u, v):
                    count += 1
                    if well_inside(frame, u, w) is None:
                        cx = f"{name(u)} <= {name(v)} inside {name(w)}"
    results.append(PropCheck("well-inside-lowers-along-leq", cx is None, count, cx))

    # zero-dimensional implies regular
    zd_ok = cls.zero_dimensional is None or cls.regular is not None
    results.append(
        PropCheck(
            "zero-dimensional-implies-regular",
            zd_ok,
            1,
            None if zd_ok else "zero-dimensional witness with no regular witness",
        )
    )

    # in a regular frame, way below implies well inside
    count, cx = 0, None
    if cls.regular is not None:
        for u in range(n):
            for v in range(n):
                if wb(u, v):
                    count += 1
                    if well_inside(frame, u, v) is None:
                        cx = f"{name(u)} << {name(v)}"
    results.append(
        PropCheck("way-below-implies-well-inside-in-regular", cx is None, count, cx)
    )

    # in a compact frame, well inside implies way below
    count, cx = 0, None
    if cls.compact:
        for u in range(n):
            for v in range(n):
                if well_inside(frame, u, v) is not None:
                    count += 1
                    if not wb(u, v):
                        cx = f"{name(u)} inside {name(v)}"
    results.append(
        PropCheck("well-inside-implies-way-below-in-compact", cx is None, count, cx)
    )

    # in a Stone frame, compact and clopen coincide
    count, cx = 0, None
    if cls.stone:
        for u in range(n):
            count += 1
            if is_compact_open(frame, u) != is_clopen(frame, u):
                cx = name(u)
    results.append(PropCheck("compact-iff-clopen-in-stone", cx is None, count, cx))

    return results
