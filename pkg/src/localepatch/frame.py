"""Finite frames as downset lattices, plus frame-law verification.

Every frame here is the downset lattice of a finite poset; elements are
point-set bitmasks held in ascending integer order, which is a linear
extension of inclusion.  A separate direct-lattice ingestion path exists only
so `verify_frame_laws` can reject structures that are not frames (e.g. the
nondistributive M3); everything else requires the downset representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .poset import FinPoset, PointSet, poset_isomorphisms

DEFAULT_FAMILY_CAP = 3
# 2^n subsets are enumerated; above 20 elements that is no longer seconds
DIRECTED_ENUM_CAP = 20

# directed-subset enumerations shared across structurally identical frames
# (patches of different bases are routinely the same finite Boolean lattice)
_DIRECTED_SHARED: dict = {}


class FrameError(ValueError):
    pass


class FrameTooLargeError(FrameError):
    """Raised when a brute-force enumeration would exceed its configured cap."""


class BasisError(FrameError):
    """Raised when a claimed basis fails to cover some element; carries the witness."""

    def __init__(self, message: str, witness: int):
        super().__init__(message)
        self.witness = witness


class FiniteFrame:
    """The downset lattice of a finite poset (its spectrum).

    Element ids index `elements`; id 0 is bottom, the last id is top.  Meets
    are intersections and joins are unions of the underlying point sets.
    """

    def __init__(self, spectrum: FinPoset):
        self.spectrum = spectrum
        self.elements: tuple[PointSet, ...] = spectrum.downsets
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.n = len(self.elements)
        self.bottom = 0
        self.top = self.n - 1
        self._cache: dict = {}

    def leq(self, u: int, v: int) -> bool:
        return not self.elements[u] & ~self.elements[v]

    @cached_property
    def _meet_flat(self) -> tuple[int, ...]:
        return tuple(
            self.index[self.elements[u] & self.elements[v]]
            for u in range(self.n)
            for v in range(self.n)
        )

    def meet(self, u: int, v: int) -> int:
        """Greatest lower bound: set intersection, re-indexed."""
        return self._meet_flat[u * self.n + v]

    def join(self, fam: Iterable[int]) -> int:
        """Least upper bound of a family; the empty family yields bottom."""
        mask = 0
        for i in fam:
            mask |= self.elements[i]
        return self.index[mask]

    def is_directed(self, fam: Iterable[int]) -> bool:
        """Nonempty, and every pair of members has an upper bound in the family."""
        ids = list(fam)
        if not ids:
            return False
        fam_mask = 0
        for i in ids:
            fam_mask |= 1 << i
        up = self.up_ids
        return all(
            up[x] & up[y] & fam_mask for x, y in combinations(set(ids), 2)
        )

    @cached_property
    def up_ids(self) -> tuple[int, ...]:
        """up_ids[u] = bitmask over element ids of {v : u <= v}."""
        out = []
        for u in range(self.n):
            m = 0
            for v in range(self.n):
                if self.leq(u, v):
                    m |= 1 << v
            out.append(m)
        return tuple(out)

    @property
    def up_rows(self) -> tuple[int, ...]:
        return self.up_ids

    @property
    def down_rows(self) -> tuple[int, ...]:
        return self.down_ids

    @cached_property
    def down_ids(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u in range(self.n):
            for v in range(self.n):
                if self.up_ids[u] >> v & 1:
                    out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """The covering relation (u, v): u < v with nothing strictly between."""
        pairs = []
        for u in range(self.n):
            for v in range(self.n):
                if u == v or not self.leq(u, v):
                    continue
                strictly_between = self.up_ids[u] & self.down_ids[v] & ~(1 << u) & ~(1 << v)
                if not strictly_between:
                    pairs.append((u, v))
        return tuple(pairs)

    def directed_subsets(self, cap: int = DIRECTED_ENUM_CAP) -> tuple[tuple[int, int], ...]:
        """All directed subsets of the elements, as (id-set mask, join id) pairs.

        This is the raw material for the literal way-below and Scott-continuity
        checks; computed once per frame and cached.
        """
        if self.n > cap:
            raise FrameTooLargeError(
                f"directed-subset enumeration capped at {cap} elements, frame has {self.n}"
            )
        cached = self._cache.get("directed_subsets")
        if cached is not None:
            return cached
        shared_key = self.up_ids
        shared = _DIRECTED_SHARED.get(shared_key)
        if shared is not None:
            self._cache["directed_subsets"] = shared
            return shared
        up = self.up_ids
        out = []
        for mask in range(1, 1 << self.n):
            ids = []
            m = mask
            while m:
                ids.append((m & -m).bit_length() - 1)
                m &= m - 1
            directed = True
            for a in range(len(ids)):
                ua = up[ids[a]]
                for b in range(a + 1, len(ids)):
                    if not ua & up[ids[b]] & mask:
                        directed = False
                        break
                if not directed:
                    break
            if directed:
                out.append((mask, self.join(ids)))
        result = tuple(out)
        self._cache["directed_subsets"] = result
        _DIRECTED_SHARED[shared_key] = result
        return result

    def directed_members(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Directed subsets as explicit member tuples with their joins."""
        cached = self._cache.get("directed_members")
        if cached is not None:
            return cached
        shared_key = ("members", self.up_ids)
        cached = _DIRECTED_SHARED.get(shared_key)
        if cached is None:
            out = []
            for mask, join_id in self.directed_subsets():
                ids = []
                m = mask
                while m:
                    ids.append((m & -m).bit_length() - 1)
                    m &= m - 1
                out.append((tuple(ids), join_id))
            cached = tuple(out)
            _DIRECTED_SHARED[shared_key] = cached
        self._cache["directed_members"] = cached
        return cached

    def element_name(self, u: int) -> str:
        return self.spectrum.set_name(self.elements[u])

    def parse_element(self, text: str) -> int:
        mask = self.spectrum.parse_set(text)
        if mask not in self.index:
            raise FrameError(f"{text} is not a downset of the spectrum")
        return self.index[mask]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteFrame) and self.spectrum == other.spectrum

    def __hash__(self) -> int:
        return hash(self.spectrum)

    def __repr__(self) -> str:
        return f"FiniteFrame({self.n} downsets of {self.spectrum!r})"


@dataclass(frozen=True)
class Family:
    """An index list into a frame's elements; repetition is allowed."""

    frame: FiniteFrame
    indices: tuple[int, ...]

    def __post_init__(self):
        for i in self.indices:
            if not 0 <= i < self.frame.n:
                raise FrameError(f"family index {i} out of range")

    def join(self) -> int:
        return self.frame.join(self.indices)


@dataclass(frozen=True)
class Basis:
    """A family of generators; the closure flags are recomputed, never trusted."""

    frame: FiniteFrame
    members: tuple[int, ...]
    closed_under_finite_meets: bool
    closed_under_finite_joins: bool


def make_basis(frame: FiniteFrame, members: Iterable[int]) -> Basis:
    """Build a Basis with both closure flags recomputed from the member set."""
    ms = tuple(sorted(set(members)))
    mset = set(ms)
    closed_meets = frame.top in mset and all(
        frame.meet(a, b) in mset for a in ms for b in ms
    )
    closed_joins = frame.bottom in mset and all(
        frame.join((a, b)) in mset for a in ms for b in ms
    )
    return Basis(frame, ms, closed_meets, closed_joins)


def all_elements_basis(frame: FiniteFrame) -> Basis:
    return make_basis(frame, range(frame.n))


def is_basis(frame: FiniteFrame, members: Iterable[int]) -> bool:
    """True iff every element is the join of the members below it."""
    ms = list(members)
    return all(
        frame.join(b for b in ms if frame.leq(b, u)) == u for u in range(frame.n)
    )


def basic_cover(frame: FiniteFrame, basis: Basis, u: int) -> Family:
    """The family of all basis members below u.  Its join must be exactly u."""
    below = tuple(b for b in basis.members if frame.leq(b, u))
    if frame.join(below) != u:
        raise BasisError(
            f"basis does not cover {frame.element_name(u)}", witness=u
        )
    return Family(frame, below)

def close_under_finite_joins(frame: FiniteFrame, basis: Basis) -> Basis:
    """Close a basis under finite joins (including the empty join, bottom)."""
    members = set(basis.members)
    members.add(frame.bottom)
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                j = frame.join((a, b))
                if j not in members:
                    members.add(j)
                    changed = True
    return make_basis(frame, members)


class DirectLattice:
    """A hand-declared finite order, ingested only for frame-law checking.

    Meets and joins are searched for rather than computed; either may fail to
    exist, and `verify_frame_laws` reports such failures as counterexamples.
    """

    def __init__(self, names: Sequence[str], up: Sequence[int]):
        # reuse the poset validation for reflexivity/antisymmetry/transitivity
        self._poset = FinPoset(names, up)
        self.names = tuple(names)
        self.n = len(self.names)

    def leq(self, u: int, v: int) -> bool:
        return self._poset.leq(u, v)

    @property
    def up_rows(self) -> tuple[int, ...]:
        return self._poset.up

    @property
    def down_rows(self) -> tuple[int, ...]:
        return self._poset.down

    def meet_opt(self, u: int, v: int) -> Optional[int]:
        lower = [w for w in range(self.n) if self.leq(w, u) and self.leq(w, v)]
        greatest = [w for w in lower if all(self.leq(x, w) for x in lower)]
        return greatest[0] if greatest else None

    def join_opt(self, fam: Iterable[int]) -> Optional[int]:
        ids = list(fam)
        upper = [w for w in range(self.n) if all(self.leq(i, w) for i in ids)]
        least = [w for w in upper if all(self.leq(w, x) for x in upper)]
        return least[0] if least else None

    def element_name(self, u: int) -> str:
        return self.names[u]


@dataclass
class FrameLawReport:
    ok: bool
    law: Optional[str] = None
    witness: Optional[str] = None
    checked: int = 0

    def __str__(self) -> str:
        if self.ok:
            return f"PASS frame laws ({self.checked} checks)"
        return f"FAIL {self.law}: {self.witness}"


def _families(n: int, cap: int) -> Iterable[tuple[int, ...]]:
    """All subsets of element ids up to size cap, plus the full family."""
    ids = range(n)
    for size in range(cap + 1):
        yield from combinations(ids, size)
    if n > cap:
        yield tuple(ids)


def verify_frame_laws(lattice, family_cap: int = DEFAULT_FAMILY_CAP) -> FrameLawReport:
    """Exhaustively check that `lattice` is a frame; first counterexample wins.

    Accepts a FiniteFrame, a DirectLattice, or anything exposing n, up_rows,
    down_rows, element_name and either meet/join or meet_opt/join_opt.
    Checks the partial-order axioms, the universal properties of top, bottom,
    binary meet and family join, and distributivity of meets over joins for
    families up to `family_cap` in size together with the all-elements family.

    The universal properties reduce to bitmask row equations: m is the meet
    of u and v exactly when m's lower set is the intersection of theirs, and
    j is the join of a family exactly when j's upper set is the intersection
    of the members'.
    """
    n = lattice.n
    name = lattice.element_name
    up = lattice.up_rows
    down = lattice.down_rows
    meet = getattr(lattice, "meet_opt", None) or lattice.meet
    join = getattr(lattice, "join_opt", None) or lattice.join
    full = (1 << n) - 1
    checked = 0

    def fail(law: str, witness: str) -> FrameLawReport:
        return FrameLawReport(False, law, witness, checked)

    for u in range(n):
        checked += 1
        if not up[u] >> u & 1:
            return fail("order-reflexive", name(u))
        if up[u] & down[u] != 1 << u:
            v = (up[u] & down[u] & ~(1 << u)).bit_length() - 1
            return fail("order-antisymmetric", f"{name(u)}, {name(v)}")
        m = up[u]
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            checked += 1
            if up[v] & ~up[u]:
                return fail("order-transitive", f"{name(u)} <= {name(v)}")

    tops = [t for t in range(n) if down[t] == full]
    if len(tops) != 1:
        return fail("top-exists-unique", f"{len(tops)} greatest elements")
    bottoms = [b for b in range(n) if up[b] == full]
    if len(bottoms) != 1:
        return fail("bottom-exists-unique", f"{len(bottoms)} least elements")

    for u in range(n):
        for v in range(n):
            checked += 1
            m = meet(u, v)
            if m is None:
                return fail("meet-exists", f"{name(u)} and {name(v)}")
            if down[m] != down[u] & down[v]:
                return fail("meet-not-glb", f"{name(u)} and {name(v)}")

    fams = list(_families(n, family_cap))
    for fam in fams:
        checked += 1
        j = join(fam)
        if j is None:
            return fail("join-exists", "[" + ", ".join(map(name, fam)) + "]")
        bound = full
        for i in fam:
            bound &= up[i]
        if up[j] != bound:
            return fail("join-not-lub", "[" + ", ".join(map(name, fam)) + "]")

    for u in range(n):
        for fam in fams:
            checked += 1
            lhs = meet(u, join(fam))
            pieces = tuple(meet(u, i) for i in fam)
            rhs = join(pieces)
            if rhs is None:
                return fail("join-exists", "[" + ", ".join(map(name, pieces)) + "]")
            if lhs != rhs:
                fam_text = "[" + ", ".join(map(name, fam)) + "]"
                return fail(
                    "meet-distributes-over-joins",
                    f"{name(u)} with {fam_text}: {name(lhs)} != {name(rhs)}",
                )

    return FrameLawReport(True, checked=checked)


def frame_isomorphism(f: FiniteFrame, g: FiniteFrame) -> Optional[tuple[int, ...]]:
    """An element-id bijection f -> g preserving order both ways, or None.

    Found by lifting a spectrum isomorphism; finite frames are isomorphic
    exactly when their spectra are.
    """
    for perm in poset_isomorphisms(f.spectrum, g.spectrum):
        table = []
        for mask in f.elements:
            out = 0
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                out |= 1 << perm[i]
            table.append(g.index[out])
        return tuple(table)
    return None
