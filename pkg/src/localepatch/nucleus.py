"""Nuclei on finite frames and the patch frame they assemble into.

The join of a family of nuclei is not pointwise: the pointwise join loses
idempotency.  It is computed here by closing the family under composition
(every finite word in the generators, applied left to right) and joining the
resulting tables pointwise; an independent Kleene-iteration oracle computes
the same operation as a least fixed point and the two must agree everywhere.

Enumerating all nuclei on a frame is a backtracking search over tables in
descending element order: the value at an element is either forced by meet
preservation against already-assigned pairs or ranges over the fixed points
between the element and its covers' images.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .frame import (
    DIRECTED_ENUM_CAP,
    Basis,
    FiniteFrame,
    FrameError,
    FrameTooLargeError,
    verify_frame_laws,
)
from .poset import FinPoset
from .separation import PropCheck

NUCLEUS_ENUM_CAP = 64


@dataclass(frozen=True)
class NucleusViolation:
    law: str
    witness: str

    def __str__(self) -> str:
        return f"{self.law} fails at {self.witness}"


@dataclass(frozen=True)
class Nucleus:
    """An inflationary, idempotent, binary-meet-preserving element table."""

    frame: FiniteFrame
    table: tuple[int, ...]

    def __call__(self, u: int) -> int:
        return self.table[u]

    def le(self, other: "Nucleus") -> bool:
        """Pointwise order."""
        return all(
            self.frame.leq(a, b) for a, b in zip(self.table, other.table)
        )

    def __repr__(self) -> str:
        name = self.frame.element_name
        sends = ", ".join(
            f"{name(u)}->{name(v)}" for u, v in enumerate(self.table)
        )
        return f"Nucleus({sends})"


@dataclass(frozen=True)
class Prenucleus:
    """A nucleus without the idempotency requirement."""

    frame: FiniteFrame
    table: tuple[int, ...]

    def __call__(self, u: int) -> int:
        return self.table[u]


def _law_violation(
    frame: FiniteFrame, table: Sequence[int], idempotent: bool
) -> Optional[NucleusViolation]:
    name = frame.element_name
    n = frame.n
    if len(table) != n:
        return NucleusViolation("totality", f"table has {len(table)} entries")
    up = frame.up_ids
    for u in range(n):
        if not up[u] >> table[u] & 1:
            return NucleusViolation("inflationary", name(u))
    for u in range(n):
        tu = table[u]
        if not all(up[tu] >> table[v] & 1 for v in _bits(up[u])):
            v = next(v for v in _bits(up[u]) if not up[tu] >> table[v] & 1)
            return NucleusViolation("monotone", f"{name(u)} <= {name(v)}")
    mf = frame._meet_flat
    for u in range(n):
        tu = table[u]
        base = u * n
        tbase = tu * n
        for v in range(n):
            if table[mf[base + v]] != mf[tbase + table[v]]:
                return NucleusViolation("meet-preserving", f"{name(u)}, {name(v)}")
    if idempotent:
        for u in range(n):
            if table[table[u]] != table[u]:
                return NucleusViolation("idempotent", name(u))
    return None


def _bits(mask: int):
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


def verify_nucleus(
    frame: FiniteFrame, table: Sequence[int]
) -> Union[Nucleus, NucleusViolation]:
    """A Nucleus on success, or the first failed law with its witness."""
    violation = _law_violation(frame, table, idempotent=True)
    return violation if violation else Nucleus(frame, tuple(table))


def verify_prenucleus(
    frame: FiniteFrame, table: Sequence[int]
) -> Union[Prenucleus, NucleusViolation]:
    violation = _law_violation(frame, table, idempotent=False)
    return violation if violation else Prenucleus(frame, tuple(table))


def _must_nucleus(frame: FiniteFrame, table: Sequence[int], context: str) -> Nucleus:
    out = verify_nucleus(frame, table)
    if isinstance(out, NucleusViolation):
        raise FrameError(f"{context} produced a non-nucleus: {out}")
    return out


def identity_nucleus(frame: FiniteFrame) -> Nucleus:
    return Nucleus(frame, tuple(range(frame.n)))


def top_nucleus(frame: FiniteFrame) -> Nucleus:
    return Nucleus(frame, (frame.top,) * frame.n)


def nucleus_meet(j: Nucleus, k: Nucleus) -> Nucleus:
    """Pointwise meet; the greatest lower bound in the pointwise order."""
    if j.frame != k.frame:
        raise FrameError("nuclei live on different frames")
    table = tuple(j.frame.meet(a, b) for a, b in zip(j.table, k.table))
    return _must_nucleus(j.frame, table, "nucleus meet")


def is_scott_continuous(j: Union[Nucleus, Prenucleus]) -> bool:
    """Join preservation over every directed subset of the frame."""
    frame = j.frame
    key = ("scott", j.table)
    cached = frame._cache.get(key)
    if cached is not None:
        return cached
    elems = frame.elements
    table = j.table
    result = True
    for ids, join_id in frame.directed_members():
        acc = 0
        for i in ids:
            acc |= elems[table[i]]
        if elems[table[join_id]] != acc:
            result = False
            break
    frame._cache[key] = result
    return result


def _compose(after: Sequence[int], before: Sequence[int]) -> tuple[int, ...]:
    """Table of `after . before` (apply `before` first)."""
    return tuple(after[v] for v in before)


class CompositionFamily:
    """Iterated compositions of a family of nuclei, indexed by index lists."""

    def __init__(self, frame: FiniteFrame, generators: Sequence[Nucleus]):
        self.frame = frame
        self.generators = tuple(generators)
        for k in self.generators:
            if k.frame != frame:
                raise FrameError("generator on the wrong frame")

    def composite(self, indices: Sequence[int]) -> Prenucleus:
        """The composite for an index list: the empty list is the identity,
        and prepending an index applies that generator first."""
        table = tuple(range(self.frame.n))
        for i in indices:
            table = _compose(self.generators[i].table, table)
        out = verify_prenucleus(self.frame, table)
        if isinstance(out, NucleusViolation):
            raise FrameError(f"iterated composition is not a prenucleus: {out}")
        return out

    def all_tables(self) -> tuple[tuple[int, ...], ...]:
        """Every distinct composite table, by closing under the generators."""
        gens = sorted({k.table for k in self.generators})
        identity = tuple(range(self.frame.n))
        seen = {identity}
        frontier = [identity]
        order = [identity]
        while frontier:
            fresh = []
            for t in frontier:
                for g in gens:
                    c = _compose(t, g)
                    if c not in seen:
                        seen.add(c)
                        fresh.append(c)
                        order.append(c)
            frontier = fresh
        return tuple(order)


def nucleus_join(frame: FiniteFrame, nuclei: Sequence[Nucleus]) -> Nucleus:
    """Join of a family of Scott continuous nuclei.

    Computed as the pointwise join over all iterated composites of the
    family; the empty family yields the identity.  The result is re-verified
    as a nucleus and as an upper bound of the inputs.  The Scott-continuity
    precondition is verified where the directed enumeration is feasible;
    beyond that cap it holds for every nucleus on a finite frame anyway,
    which is itself a checked property of the small corpus.
    """
    distinct = {k.table: k for k in nuclei}
    if frame.n <= DIRECTED_ENUM_CAP:
        for k in distinct.values():
            if not is_scott_continuous(k):
                raise FrameError("nucleus join requires Scott continuous inputs")
    tables = CompositionFamily(frame, tuple(distinct.values())).all_tables()
    elems = frame.elements
    joined = []
    for u in range(frame.n):
        acc = 0
        for t in tables:
            acc |= elems[t[u]]
        joined.append(frame.index[acc])
    out = _must_nucleus(frame, tuple(joined), "nucleus join")
    for t in distinct:
        if not all(frame.leq(a, b) for a, b in zip(t, out.table)):
            raise FrameError("nucleus join is not an upper bound")
    return out


def nucleus_join_kleene(frame: FiniteFrame, nuclei: Sequence[Nucleus]) -> Nucleus:
    """Independent join oracle: least common fixed point above each element.

    Iterates u -> u \\/ k_1(u) \\/ ... \\/ k_m(u) to a fixed point, sharing no
    machinery with the composition-closure route.
    """
    tables = [k.table for k in nuclei]
    out = []
    for u in range(frame.n):
        x = u
        while True:
            nxt = frame.join([x] + [t[x] for t in tables])
            if nxt == x:
                break
            x = nxt
        out.append(x)
    return _must_nucleus(frame, tuple(out), "kleene nucleus join")


def _index_lists(count: int, max_len: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for length in range(max_len + 1):
        out.extend(product(range(count), repeat=length))
    return out


def check_star_properties(
    frame: FiniteFrame, nuclei: Sequence[Nucleus], max_len: int = 3
) -> list[PropCheck]:
    """Exhaustive checks of the iterated-composition family, bounded by list length."""
    fam = CompositionFamily(frame, nuclei)
    lists = _index_lists(len(nuclei), max_len)
    composites = {s: fam.composite(s) for s in lists}
    results = []

    count, cx = 0, None
    for s, alpha in composites.items():
        count += 1
        if isinstance(verify_prenucleus(frame, alpha.table), NucleusViolation):
            cx = str(list(s))
        if not is_scott_continuous(alpha):
            cx = f"{list(s)} not Scott continuous"
    results.append(
        PropCheck("iterated-composites-are-scott-prenuclei", cx is None, count, cx)
    )

    count, cx = 0, None
    for s in lists:
        for t in lists:
            count += 1
            via_append = fam.composite(tuple(s) + tuple(t)).table
            via_compose = _compose(composites[t].table, composites[s].table)
            if via_append != via_compose:
                cx = f"{list(s)} ++ {list(t)}"
    results.append(PropCheck("composite-of-append-is-composition", cx is None, count, cx))

    count, cx = 0, None
    for s in lists:
        for t in lists:
            both = fam.composite(tuple(s) + tuple(t)).table
            for part in (composites[s].table, composites[t].table):
                count += 1
                if not all(frame.leq(a, b) for a, b in zip(part, both)):
                    cx = f"{list(s)} ++ {list(t)}"
    results.append(PropCheck("composition-family-is-directed", cx is None, count, cx))

    all_nuclei = enumerate_nuclei(frame)
    uppers = [
        j for j in all_nuclei if all(k.le(j) for k in nuclei)
    ]
    count, cx = 0, None
    for j in uppers:
        for s in lists:
            count += 1
            if not all(frame.leq(a, b) for a, b in zip(composites[s].table, j.table)):
                cx = f"upper bound fails above composite {list(s)}"
    results.append(PropCheck("nucleus-upper-bounds-bound-composites", cx is None, count, cx))

    count, cx = 0, None
    for j in all_nuclei:
        meet_family = [nucleus_meet(j, k) for k in nuclei]
        meet_fam = CompositionFamily(frame, meet_family)
        for s in lists:
            count += 1
            beta = meet_fam.composite(s).table
            alpha = composites[s].table
            if not all(frame.leq(b, a) for b, a in zip(beta, alpha)):
                cx = f"meet-family composite above plain composite at {list(s)}"
            if not all(frame.leq(b, a) for b, a in zip(beta, j.table)):
                cx = f"meet-family composite above the meet nucleus at {list(s)}"
    results.append(
        PropCheck("meet-family-composites-are-lower-bounds", cx is None, count, cx)
    )

    return results


def enumerate_nuclei(
    frame: FiniteFrame, cap: int = NUCLEUS_ENUM_CAP
) -> tuple[Nucleus, ...]:
    """Every nucleus on the frame, sorted by table, computed once and cached.

    Search assigns values top-down (descending element id is descending set
    inclusion): the image of an element is forced whenever it is the meet of
    two already-assigned elements, and otherwise ranges over already-fixed
    points between the element and the meet of its covers' images.
    """
    if frame.n > cap:
        raise FrameTooLargeError(
            f"nucleus enumeration capped at {cap} elements, frame has {frame.n}"
        )
    cached = frame._cache.get("all_nuclei")
    if cached is not None:
        return cached

    n = frame.n
    meet = frame.meet
    leq = frame.leq
    upper_covers: list[list[int]] = [[] for _ in range(n)]
    for u, v in frame.covers:
        upper_covers[u].append(v)
    pairs_with_meet: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for d in range(n):
        for e in range(d + 1, n):
            m = meet(d, e)
            if m != d and m != e:
                pairs_with_meet[m].append((d, e))

    table: list[Optional[int]] = [None] * n
    found: list[tuple[int, ...]] = []

    def assignable(m: int) -> list[int]:
        bound_mask = frame.elements[frame.top]
        for c in upper_covers[m]:
            bound_mask &= frame.elements[table[c]]
        forced = None
        for d, e in pairs_with_meet[m]:
            val = meet(table[d], table[e])
            if forced is None:
                forced = val
            elif forced != val:
                return []
        candidates = [forced] if forced is not None else range(m, n)
        out = []
        for v in candidates:
            if not leq(m, v):
                continue
            if frame.elements[v] & ~bound_mask:
                continue
            if v != m and table[v] != v:
                continue
            out.append(v)
        return out

    def backtrack(m: int):
        if m < 0:
            found.append(tuple(table))
            return
        for v in assignable(m):
            table[m] = v
            backtrack(m - 1)
            table[m] = None

    backtrack(n - 1)
    nuclei = tuple(
        _must_nucleus(frame, t, "nucleus enumeration") for t in sorted(found)
    )
    frame._cache["all_nuclei"] = nuclei
    return nuclei


def basic_le(frame: FiniteFrame, basis: Basis, j: Nucleus, k: Nucleus) -> bool:
    """Order nuclei by comparing on basis elements only."""
    return all(frame.leq(j.table[b], k.table[b]) for b in basis.members)


class PatchFrame:
    """The frame of all nuclei on a finite frame, with a downset re-presentation.

    Elements are nucleus ids in table order; meets are pointwise, joins go
    through `nucleus_join`.  `frame` is the isomorphic downset lattice built
    on the join-irreducible nuclei, and `to_frame`/`from_frame` carry the
    isomorphism, so everything that wants a concrete FiniteFrame (including
    patch-of-patch) can have one.
    """

    def __init__(self, base: FiniteFrame, family_cap: int = 2):
        # binary distributivity plus the lub law (both verified below, the
        # joins by fold) give every finite family by induction, so cap 2
        # loses nothing
        self.base = base
        self.nuclei = enumerate_nuclei(base)
        self.n = len(self.nuclei)
        self.index = {j.table: i for i, j in enumerate(self.nuclei)}
        self.bottom = self.index[identity_nucleus(base).table]
        self.top = self.index[top_nucleus(base).table]
        self._leq_rows = tuple(
            sum(1 << j for j in range(self.n) if self.nuclei[i].le(self.nuclei[j]))
            for i in range(self.n)
        )
        self.up_rows = self._leq_rows
        self.down_rows = tuple(
            sum(1 << i for i in range(self.n) if self._leq_rows[i] >> j & 1)
            for j in range(self.n)
        )
        # binary meets and joins through the real nucleus operations; family
        # joins fold over the binary table (sound in any lattice, and the law
        # report below re-verifies every fold as a least upper bound)
        meet_ids = [0] * (self.n * self.n)
        join_ids = [0] * (self.n * self.n)
        for i in range(self.n):
            for j in range(i, self.n):
                m = self.index[nucleus_meet(self.nuclei[i], self.nuclei[j]).table]
                jn = self.index[nucleus_join(base, [self.nuclei[i], self.nuclei[j]]).table]
                meet_ids[i * self.n + j] = meet_ids[j * self.n + i] = m
                join_ids[i * self.n + j] = join_ids[j * self.n + i] = jn
        self._meet_ids = tuple(meet_ids)
        self._join_ids = tuple(join_ids)
        self.law_report = verify_frame_laws(self, family_cap=family_cap)
        if not self.law_report.ok:
            raise FrameError(f"patch failed frame laws: {self.law_report}")
        self.frame, self.to_frame = self._birkhoff()
        self.from_frame = tuple(
            pid
            for pid, _ in sorted(enumerate(self.to_frame), key=lambda kv: kv[1])
        )

    def leq(self, i: int, j: int) -> bool:
        return bool(self._leq_rows[i] >> j & 1)

    def meet(self, i: int, j: int) -> int:
        return self._meet_ids[i * self.n + j]

    def join(self, ids: Iterable[int]) -> int:
        out = self.bottom
        for i in ids:
            out = self._join_ids[out * self.n + i]
        return out

    def element_name(self, i: int) -> str:
        return f"nuc{i}"

    def nucleus_to_element(self, j: Nucleus) -> int:
        """Frame element id of a nucleus, through the isomorphism."""
        return self.to_frame[self.index[j.table]]

    def element_to_nucleus(self, eid: int) -> Nucleus:
        return self.nuclei[self.from_frame[eid]]

    def _birkhoff(self) -> tuple[FiniteFrame, tuple[int, ...]]:
        lower_covers: list[list[int]] = [[] for _ in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                if i == j or not self.leq(i, j):
                    continue
                if not any(
                    k != i and k != j and self.leq(i, k) and self.leq(k, j)
                    for k in range(self.n)
                ):
                    lower_covers[j].append(i)
        irreducibles = [
            i for i in range(self.n) if len(lower_covers[i]) == 1
        ]
        names = tuple(f"n{i}" for i in irreducibles)
        up_rows = []
        for a in irreducibles:
            row = 0
            for qi, b in enumerate(irreducibles):
                if self.leq(a, b):
                    row |= 1 << qi
            up_rows.append(row)
        spectrum = FinPoset(names, up_rows)
        concrete = FiniteFrame(spectrum)
        to_frame = []
        for i in range(self.n):
            mask = 0
            for qi, a in enumerate(irreducibles):
                if self.leq(a, i):
                    mask |= 1 << qi
            if mask not in concrete.index:
                raise FrameError("patch is not a downset lattice of its irreducibles")
            to_frame.append(concrete.index[mask])
        if len(set(to_frame)) != self.n or concrete.n != self.n:
            raise FrameError("patch re-presentation is not a bijection")
        for i in range(self.n):
            for j in range(self.n):
                if self.leq(i, j) != concrete.leq(to_frame[i], to_frame[j]):
                    raise FrameError("patch re-presentation is not an order isomorphism")
        return concrete, tuple(to_frame)


def patch_frame(base: FiniteFrame, family_cap: int = 2) -> PatchFrame:
    """The patch of a finite frame, memoized per frame."""
    cached = base._cache.get("patch")
    if cached is None:
        cached = PatchFrame(base, family_cap=family_cap)
        base._cache["patch"] = cached
    return cached
