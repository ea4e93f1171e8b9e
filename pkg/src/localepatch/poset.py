"""Finite posets over named points, their downsets, and exhaustive generators.

Points are indexed densely; every subset of points is a bitmask int keyed by
point index, so order-theoretic work below is plain integer arithmetic.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

# A subset of the points of an ambient poset, as a bitmask over point indices.
PointSet = int

POSET_ENUM_CAP = 5


class PosetError(ValueError):
    pass


def _names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"x{i}" for i in range(n))


class FinPoset:
    """A finite partial order.  `up[i]` is the bitmask of j with i <= j."""

    def __init__(self, points: Sequence[str], up: Sequence[int]):
        self.points = tuple(points)
        self.up = tuple(up)
        self.n = len(self.points)
        if len(set(self.points)) != self.n:
            raise PosetError(f"duplicate point names in {self.points}")
        if len(self.up) != self.n:
            raise PosetError("relation size does not match point count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.up):
            if row & ~full:
                raise PosetError(f"relation row for {self.points[i]} is out of range")
            if not row >> i & 1:
                raise PosetError(f"not reflexive at {self.points[i]}")
        for i in range(self.n):
            for j in range(self.n):
                if self.up[i] >> j & 1:
                    if i != j and self.up[j] >> i & 1:
                        raise PosetError(
                            f"not antisymmetric: {self.points[i]} and {self.points[j]}"
                        )
                    if self.up[j] & ~self.up[i]:
                        raise PosetError(
                            f"not transitive at {self.points[i]} <= {self.points[j]}"
                        )

    @classmethod
    def from_pairs(cls, points: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FinPoset":
        """Build from `a <= b` assertions, taking the reflexive-transitive closure.

        Rejects cycles (two distinct points each below the other).
        """
        points = tuple(points)
        idx = {p: i for i, p in enumerate(points)}
        n = len(points)
        if len(idx) != n:
            raise PosetError(f"duplicate point names in {points}")
        up = [1 << i for i in range(n)]
        for a, b in pairs:
            if a not in idx or b not in idx:
                raise PosetError(f"unknown point in relation: {a} <= {b}")
            up[idx[a]] |= 1 << idx[b]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                row = up[i]
                m = row
                while m:
                    j = (m & -m).bit_length() - 1
                    m &= m - 1
                    if up[j] & ~row:
                        row |= up[j]
                for_new = row
                if for_new != up[i]:
                    up[i] = for_new
                    changed = True
        for i in range(n):
            for j in range(i + 1, n):
                if up[i] >> j & 1 and up[j] >> i & 1:
                    raise PosetError(f"cycle between {points[i]} and {points[j]}")
        return cls(points, up)

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        names = _names(n)
        return cls(names, tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)))

    @classmethod
    def antichain(cls, n: int) -> "FinPoset":
        names = _names(n)
        return cls(names, tuple(1 << i for i in range(n)))

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        """down[j] = bitmask of i with i <= j."""
        rows = [0] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.up[i] >> j & 1:
                    rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_downset(self, s: PointSet) -> bool:
        """True iff s is closed downward: x in s and y <= x imply y in s."""
        if s & ~self.full_mask:
            raise PosetError("point set is out of range for this poset")
        m = s
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            if self.down[i] & ~s:
                return False
        return True

    @cached_property
    def downsets(self) -> tuple[PointSet, ...]:
        """All downsets, ascending as bitmask integers (canonical order)."""
        return tuple(s for s in range(1 << self.n) if self.is_downset(s))

    def set_name(self, s: PointSet) -> str:
        members = [self.points[i] for i in range(self.n) if s >> i & 1]
        return "{" + ",".join(members) + "}"

    def parse_set(self, text: str) -> PointSet:
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise PosetError(f"point set must be written {{a,b}}: {text!r}")
        body = text[1:-1].strip()
        mask = 0
        if body:
            idx = {p: i for i, p in enumerate(self.points)}
            for name in body.split(","):
                name = name.strip()
                if name not in idx:
                    raise PosetError(f"unknown point {name!r} in {text!r}")
                mask |= 1 << idx[name]
        return mask

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FinPoset)
            and self.points == other.points
            and self.up == other.up
        )

    def __hash__(self) -> int:
        return hash((self.points, self.up))

    def __repr__(self) -> str:
        rels = [
            f"{self.points[i]}<{self.points[j]}"
            for i in range(self.n)
            for j in range(self.n)
            if i != j and self.leq(i, j)
        ]
        return f"FinPoset({list(self.points)}, [{', '.join(rels)}])"


def poset_isomorphisms(p: FinPoset, q: FinPoset) -> Iterator[tuple[int, ...]]:
    """All order isomorphisms p -> q, as point-index permutations."""
    if p.n != q.n:
        return
    from itertools import permutations

    for perm in permutations(range(q.n)):
        if all(
            p.leq(i, j) == q.leq(perm[i], perm[j])
            for i in range(p.n)
            for j in range(p.n)
        ):
            yield perm


def enumerate_posets(n: int, cap: int = POSET_ENUM_CAP) -> Iterator[FinPoset]:
    """Every partial order on n labelled points, exactly once, in a fixed order.

    Each unordered pair {i, j} independently carries no edge, i < j, or j < i;
    antisymmetry is built in and transitivity filters the rest.  Labelled, not
    reduced up to isomorphism.
    """
    if n > cap:
        raise PosetError(f"poset enumeration capped at {cap} points, asked for {n}")
    names = _names(n)
    pair_list = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in product((0, 1, 2), repeat=len(pair_list)):
        up = [1 << i for i in range(n)]
        for (i, j), c in zip(pair_list, choice):
            if c == 1:
                up[i] |= 1 << j
            elif c == 2:
                up[j] |= 1 << i
        ok = True
        for i in range(n):
            row = up[i]
            m = row & ~(1 << i)
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if up[j] & ~row:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield FinPoset(names, up)
