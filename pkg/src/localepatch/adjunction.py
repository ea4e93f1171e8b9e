"""Posetal adjunctions between finite frames.

A monotone join-preserving map has a right adjoint computable from any basis
of its source: the right adjoint of f at v is the join of all basis members b
with f(b) <= v.  Heyting implication is the right adjoint of meeting with a
fixed element, and a frame homomorphism is perfect when its right adjoint is
Scott continuous.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

from .frame import Basis, FiniteFrame, FrameError, all_elements_basis
from .separation import PropCheck, is_compact_open, way_below, way_below_fast, _LITERAL_ORACLE_MAX

_EXHAUSTIVE_JOIN_CHECK_MAX = 12


class MonotonicityError(FrameError):
    def __init__(self, message: str, witness: tuple[int, int]):
        super().__init__(message)
        self.witness = witness


class JoinPreservationError(FrameError):
    """Carries a violating family, e.g. the empty family for a map not fixing bottom."""

    def __init__(self, message: str, family: tuple[int, ...]):
        super().__init__(message)
        self.family = family


class NotFrameHomError(FrameError):
    pass


class FrameHom:
    """A total element table between frames, with its structure flags.

    The cheap flags (monotone, top/meet/join preservation, spectral) are
    computed exhaustively on construction; perfection is computed on first
    use since it enumerates directed families of the target.
    """

    def __init__(self, source: FiniteFrame, target: FiniteFrame, table: Sequence[int]):
        self.source = source
        self.target = target
        self.table = tuple(table)
        if len(self.table) != source.n:
            raise FrameError("hom table must cover every source element")
        for v in self.table:
            if not 0 <= v < target.n:
                raise FrameError(f"hom table value {v} out of range")
        self.is_monotone = all(
            self.target.leq(self.table[u], self.table[v])
            for u in range(source.n)
            for v in range(source.n)
            if source.leq(u, v)
        )
        self.preserves_top = self.table[source.top] == target.top
        self.preserves_meets = all(
            self.table[source.meet(u, v)] == target.meet(self.table[u], self.table[v])
            for u in range(source.n)
            for v in range(source.n)
        )
        self._join_witness = self._join_violation()
        self.preserves_joins = self._join_witness is None

    def __call__(self, u: int) -> int:
        return self.table[u]

    def _join_violation(self) -> Optional[tuple[int, ...]]:
        """A family whose join is not preserved, or None.

        All subsets are tried on small frames; on larger ones pairs, the
        empty family and the full family suffice (binary joins generate all
        finite joins, and finite is all there is here).
        """
        src, tgt = self.source, self.target
        if src.n <= _EXHAUSTIVE_JOIN_CHECK_MAX:
            fams = (
                tuple(ids)
                for size in range(src.n + 1)
                for ids in combinations(range(src.n), size)
            )
        else:
            pairs = [
                (u, v) for u in range(src.n) for v in range(src.n) if u < v
            ]
            fams = [()] + pairs + [tuple(range(src.n))]
        for fam in fams:
            if self.table[src.join(fam)] != tgt.join(self.table[i] for i in fam):
                return fam
        return None

    @property
    def is_frame_hom(self) -> bool:
        return self.preserves_top and self.preserves_meets and self.preserves_joins

    @cached_property
    def is_spectral(self) -> bool:
        """Frame hom sending compact opens to compact opens."""
        return self.is_frame_hom and all(
            is_compact_open(self.target, self.table[c])
            for c in range(self.source.n)
            if is_compact_open(self.source, c)
        )

    @cached_property
    def is_perfect(self) -> bool:
        return self.is_frame_hom and is_perfect_map(self, all_elements_basis(self.source))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FrameHom)
            and self.source == other.source
            and self.target == other.target
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.table))

    def __repr__(self) -> str:
        sends = ", ".join(
            f"{self.source.element_name(u)}->{self.target.element_name(self.table[u])}"
            for u in range(self.source.n)
        )
        return f"FrameHom({sends})"


def identity_hom(frame: FiniteFrame) -> FrameHom:
    return FrameHom(frame, frame, range(frame.n))


def compose_homs(outer: FrameHom, inner: FrameHom) -> FrameHom:
    if inner.target is not outer.source and inner.target != outer.source:
        raise FrameError("homs do not compose")
    return FrameHom(inner.source, outer.target, tuple(outer.table[v] for v in inner.table))


@dataclass(frozen=True)
class Adjunction:
    """A Galois connection; the law f(x) <= y iff x <= g(y) is checked on construction."""

    source: FiniteFrame
    target: FiniteFrame
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        for x in range(self.source.n):
            for y in range(self.target.n):
                if self.target.leq(self.left[x], y) != self.source.leq(x, self.right[y]):
                    raise FrameError(
                        "adjunction law fails at "
                        f"{self.source.element_name(x)}, {self.target.element_name(y)}"
                    )


def right_adjoint(f: FrameHom, basis: Basis) -> Adjunction:
    """Right adjoint of a monotone join-preserving map, from a basis of its source.

    Raises JoinPreservationError with a violating family when the hypothesis
    fails; that family is the reason no right adjoint can exist.
    """
    if basis.frame != f.source:
        raise FrameError("basis must belong to the source frame")
    if not f.is_monotone:
        witness = next(
            (u, v)
            for u in range(f.source.n)
            for v in range(f.source.n)
            if f.source.leq(u, v) and not f.target.leq(f.table[u], f.table[v])
        )
        raise MonotonicityError("map is not monotone", witness)
    violation = f._join_witness
    if violation is not None:
        names = ", ".join(f.source.element_name(i) for i in violation)
        raise JoinPreservationError(f"joins not preserved on [{names}]", violation)
    right = tuple(
        f.source.join(b for b in basis.members if f.target.leq(f.table[b], v))
        for v in range(f.target.n)
    )
    return Adjunction(f.source, f.target, f.table, right)


def meet_map(frame: FiniteFrame, u: int) -> FrameHom:
    """The endomap v -> v /\\ u; join-preserving by distributivity."""
    return FrameHom(frame, frame, tuple(frame.meet(v, u) for v in range(frame.n)))


def heyting_table(frame: FiniteFrame, basis: Basis, u: int) -> tuple[int, ...]:
    """The full table of u => (-), i.e. the right adjoint of (-) /\\ u."""
    return right_adjoint(meet_map(frame, u), basis).right


def heyting(frame: FiniteFrame, basis: Basis, u: int, v: int) -> int:
    """Heyting implication u => v: the largest w with w /\\ u <= v."""
    return heyting_table(frame, basis, u)[v]


def is_spectral_map(f: FrameHom) -> bool:
    """Inverse-image preservation of compact opens; input must be a frame hom."""
    if not f.is_frame_hom:
        raise NotFrameHomError("spectrality is only defined for frame homomorphisms")
    return f.is_spectral


def right_adjoint_table(f: FrameHom, basis: Basis) -> tuple[int, ...]:
    return right_adjoint(f, basis).right


def is_perfect_map(f: FrameHom, basis: Basis) -> bool:
    """True iff the right adjoint preserves joins of directed families."""
    if not f.is_frame_hom:
        raise NotFrameHomError("perfection is only defined for frame homomorphisms")
    lower = right_adjoint(f, basis).right
    for mask, join_id in f.target.directed_subsets():
        pieces = []
        m = mask
        while m:
            pieces.append(lower[(m & -m).bit_length() - 1])
            m &= m - 1
        if lower[join_id] != f.source.join(pieces):
            return False
    return True


def check_perfect_way_below(f: FrameHom) -> PropCheck:
    """A perfect map's inverse image respects way-below on all pairs."""
    src, tgt = f.source, f.target
    wb_src = way_below if src.n <= _LITERAL_ORACLE_MAX else way_below_fast
    wb_tgt = way_below if tgt.n <= _LITERAL_ORACLE_MAX else way_below_fast
    checked = 0
    for u in range(src.n):
        for v in range(src.n):
            if wb_src(src, u, v):
                checked += 1
                if not wb_tgt(tgt, f.table[u], f.table[v]):
                    return PropCheck(
                        "perfect-maps-respect-way-below",
                        False,
                        checked,
                        f"{src.element_name(u)} << {src.element_name(v)}",
                    )
    return PropCheck("perfect-maps-respect-way-below", True, checked)
