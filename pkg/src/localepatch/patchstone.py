"""Closed and open nuclei, the counit into the patch, and Stone-ness checks.

The closed nucleus of an open u sends v to u \\/ v; the open nucleus sends v
to u => v, and the two are Boolean complements inside the patch.  The counit
embeds a frame into its patch by closed nuclei; its right adjoint evaluates a
nucleus at bottom.  The patch of any frame here is a finite Boolean algebra,
and `boolean_envelope_oracle` predicts it (as the powerset of the spectrum)
through a route that shares no code with the patch construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .adjunction import (
    Adjunction,
    FrameHom,
    heyting_table,
    right_adjoint,
)
from .frame import (
    Basis,
    FiniteFrame,
    FrameError,
    FrameTooLargeError,
    all_elements_basis,
    frame_isomorphism,
    is_basis,
)
from .nucleus import (
    Nucleus,
    PatchFrame,
    _must_nucleus,
    identity_nucleus,
    is_scott_continuous,
    nucleus_join,
    nucleus_meet,
    patch_frame,
    top_nucleus,
)
from .poset import FinPoset
from .separation import PropCheck, classify, is_compact_open, way_below, way_below_fast, well_inside

PATCH_BASIS_PAIR_CAP = 64


def closed_nucleus(frame: FiniteFrame, u: int) -> Nucleus:
    """v -> u \\/ v."""
    key = ("closed", u)
    out = frame._cache.get(key)
    if out is None:
        out = _must_nucleus(
            frame, tuple(frame.join((u, v)) for v in range(frame.n)), "closed nucleus"
        )
        frame._cache[key] = out
    return out


def open_nucleus(frame: FiniteFrame, basis: Basis, u: int) -> Nucleus:
    """v -> u => v, with the implication computed through the basis."""
    key = ("open", u, basis.members)
    out = frame._cache.get(key)
    if out is None:
        out = _must_nucleus(frame, heyting_table(frame, basis, u), "open nucleus")
        frame._cache[key] = out
    return out


def basis_pair_atom(frame: FiniteFrame, basis: Basis, m: int, n: int) -> Nucleus:
    """closed(B_m) /\\ open(B_n), memoized; the generating clopens of the patch."""
    key = ("atom", m, n, basis.members)
    out = frame._cache.get(key)
    if out is None:
        out = nucleus_meet(closed_nucleus(frame, m), open_nucleus(frame, basis, n))
        frame._cache[key] = out
    return out


def complement_checks(frame: FiniteFrame, basis: Basis, u: int) -> list[PropCheck]:
    """The closed and open nuclei of u are complements in the patch."""
    c = closed_nucleus(frame, u)
    o = open_nucleus(frame, basis, u)
    meet_ok = nucleus_meet(c, o) == identity_nucleus(frame)
    join_ok = nucleus_join(frame, [c, o]) == top_nucleus(frame)
    name = frame.element_name(u)
    return [
        PropCheck("closed-meet-open-is-identity", meet_ok, 1, None if meet_ok else name),
        PropCheck("closed-join-open-is-top", join_ok, 1, None if join_ok else name),
    ]


def _monotone_endomaps(frame: FiniteFrame) -> list[tuple[int, ...]]:
    """All monotone endo-tables; only called on very small frames."""
    from itertools import product

    out = []
    for table in product(range(frame.n), repeat=frame.n):
        if all(
            frame.leq(table[u], table[v])
            for u in range(frame.n)
            for v in range(frame.n)
            if frame.leq(u, v)
        ):
            out.append(table)
    return out


def check_scott_continuity_lemmas(frame: FiniteFrame, sample_cap: int = 4) -> list[PropCheck]:
    """Monotone maps satisfying the compact-approximation hypothesis are Scott
    continuous; closed nuclei always are, open nuclei of compact opens are."""
    basis = all_elements_basis(frame)
    samples: list[tuple[int, ...]] = []
    if frame.n <= sample_cap:
        samples.extend(_monotone_endomaps(frame))
    for u in range(frame.n):
        samples.append(closed_nucleus(frame, u).table)
        samples.append(open_nucleus(frame, basis, u).table)

    compacts = [c for c in range(frame.n) if is_compact_open(frame, c)]
    down = frame.down_ids

    def hypothesis(table: tuple[int, ...]) -> bool:
        for u in range(frame.n):
            # compacts c <= table(u) must each sit under table(d) for some
            # compact d <= u
            approx = 0
            for d in compacts:
                if down[u] >> d & 1:
                    approx |= down[table[d]]
            for c in compacts:
                if down[table[u]] >> c & 1 and not approx >> c & 1:
                    return False
        return True

    elems = frame.elements

    def scott(table: tuple[int, ...]) -> bool:
        for mask, join_id in frame.directed_subsets():
            acc = 0
            m = mask
            while m:
                acc |= elems[table[(m & -m).bit_length() - 1]]
                m &= m - 1
            if elems[table[join_id]] != acc:
                return False
        return True

    count, cx = 0, None
    for table in samples:
        count += 1
        if hypothesis(table) and not scott(table):
            cx = str(table)
    results = [
        PropCheck("compact-approximation-implies-scott-continuous", cx is None, count, cx)
    ]

    count, cx = 0, None
    for u in range(frame.n):
        count += 1
        if not is_scott_continuous(closed_nucleus(frame, u)):
            cx = frame.element_name(u)
    results.append(PropCheck("closed-nuclei-scott-continuous", cx is None, count, cx))

    count, cx = 0, None
    for u in range(frame.n):
        if is_compact_open(frame, u):
            count += 1
            if not is_scott_continuous(open_nucleus(frame, basis, u)):
                cx = frame.element_name(u)
    results.append(
        PropCheck("open-nuclei-of-compacts-scott-continuous", cx is None, count, cx)
    )
    return results


@dataclass
class PatchCounit:
    """The perfect map from the patch back onto its base."""

    patch: PatchFrame
    epsilon_star: FrameHom  # base -> patch.frame, u -> closed nucleus of u
    epsilon_lower: tuple[int, ...]  # patch.frame -> base, j -> j(bottom)
    adjunction: Adjunction
    checks: list[PropCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def counit(frame: FiniteFrame, basis: Optional[Basis] = None, deep: bool = True) -> PatchCounit:
    """Build and verify the counit of the patch construction.

    Checks, exhaustively: the closed-nucleus map is a frame homomorphism;
    its right adjoint is evaluation at bottom; the adjunction law; and, when
    `deep`, Scott continuity of the right adjoint (perfection) and that joins
    of directed nucleus families are computed pointwise (these two sweep every
    directed family of nuclei, which is the expensive part).
    """
    if basis is None:
        basis = all_elements_basis(frame)
    patch = patch_frame(frame)
    table = tuple(
        patch.nucleus_to_element(closed_nucleus(frame, u)) for u in range(frame.n)
    )
    eps = FrameHom(frame, patch.frame, table)
    checks = []
    checks.append(
        PropCheck("counit-is-frame-hom", eps.is_frame_hom, frame.n)
    )
    adj = right_adjoint(eps, basis)
    lower = adj.right

    count, cx = 0, None
    for u in range(frame.n):
        for eid in range(patch.frame.n):
            count += 1
            nuc_at_bottom = patch.element_to_nucleus(eid).table[frame.bottom]
            if patch.frame.leq(table[u], eid) != frame.leq(u, nuc_at_bottom):
                cx = f"{frame.element_name(u)} vs {patch.frame.element_name(eid)}"
    checks.append(PropCheck("counit-adjunction-law", cx is None, count, cx))

    count, cx = 0, None
    for eid in range(patch.frame.n):
        count += 1
        expected = patch.element_to_nucleus(eid).table[frame.bottom]
        if lower[eid] != expected:
            cx = patch.frame.element_name(eid)
    checks.append(PropCheck("counit-right-adjoint-evaluates-at-bottom", cx is None, count, cx))

    if not deep:
        return PatchCounit(patch, eps, lower, adj, checks)

    elems = frame.elements
    count, cx = 0, None
    for mask, join_id in patch.frame.directed_subsets():
        acc = 0
        m = mask
        while m:
            acc |= elems[lower[(m & -m).bit_length() - 1]]
            m &= m - 1
        count += 1
        if elems[lower[join_id]] != acc:
            cx = f"directed family mask {mask}"
    checks.append(PropCheck("counit-is-perfect", cx is None, count, cx))

    count, cx = 0, None
    for mask, join_id in patch.frame.directed_subsets():
        tables = []
        m = mask
        while m:
            tables.append(patch.element_to_nucleus((m & -m).bit_length() - 1).table)
            m &= m - 1
        joined = patch.element_to_nucleus(join_id).table
        for u in range(frame.n):
            count += 1
            acc = 0
            for t in tables:
                acc |= elems[t[u]]
            if elems[joined[u]] != acc:
                cx = f"family mask {mask} at {frame.element_name(u)}"
    checks.append(
        PropCheck("directed-nucleus-joins-are-pointwise", cx is None, count, cx)
    )

    return PatchCounit(patch, eps, lower, adj, checks)


@dataclass(frozen=True)
class PatchBasisIndex:
    """A normalized finite join of closed-meet-open basis pairs."""

    pairs: tuple[tuple[int, int], ...]


def patch_basis(
    frame: FiniteFrame,
    basis: Optional[Basis] = None,
    max_pairs: int = 2,
    cap: int = PATCH_BASIS_PAIR_CAP,
) -> list[tuple[PatchBasisIndex, Nucleus]]:
    """The clopen basis of the patch: joins of closed(B_m) /\\ open(B_n).

    Materializes all normalized pair lists up to `max_pairs` pairs (the empty
    list denotes the patch's bottom).  Verifies that every member is clopen in
    the patch and that the members form a basis of the patch frame.
    """
    if basis is None:
        basis = all_elements_basis(frame)
    pairs = [(m, n) for m in basis.members for n in basis.members]
    if len(pairs) > cap:
        raise FrameTooLargeError(
            f"patch basis enumeration capped at {cap} pairs, got {len(pairs)}"
        )
    patch = patch_frame(frame)
    atoms = {(m, n): basis_pair_atom(frame, basis, m, n) for m, n in pairs}
    out: list[tuple[PatchBasisIndex, Nucleus]] = []
    for size in range(max_pairs + 1):
        for combo in combinations(pairs, size):
            nuc = nucleus_join(frame, [atoms[p] for p in combo])
            out.append((PatchBasisIndex(tuple(combo)), nuc))

    for idx, nuc in out:
        eid = patch.nucleus_to_element(nuc)
        if well_inside(patch.frame, eid, eid) is None:
            raise FrameError(f"patch basis member {idx.pairs} is not clopen")
    member_ids = {patch.nucleus_to_element(nuc) for _, nuc in out}
    if not is_basis(patch.frame, member_ids):
        raise FrameError("pair-list family is not a basis of the patch")
    return out


def johnstone_decompose(
    frame: FiniteFrame, basis: Basis, j: Nucleus
) -> list[PropCheck]:
    """Reconstruct a nucleus from closed/open basis pieces, two ways.

    First as the join over basis members n of closed(j(B_n)) /\\ open(B_n),
    then as the join over pairs (m, n) with B_m <= j(B_n) of
    closed(B_m) /\\ open(B_n).  Both must equal j exactly.
    """
    direct = nucleus_join(
        frame,
        [basis_pair_atom(frame, basis, j.table[bn], bn) for bn in basis.members],
    )
    reindexed = nucleus_join(
        frame,
        [
            basis_pair_atom(frame, basis, bm, bn)
            for bm in basis.members
            for bn in basis.members
            if frame.leq(bm, j.table[bn])
        ],
    )
    return [
        PropCheck(
            "johnstone-decomposition",
            direct == j,
            len(basis.members),
            None if direct == j else repr(j),
        ),
        PropCheck(
            "johnstone-reindexed-decomposition",
            reindexed == j,
            len(basis.members) ** 2,
            None if reindexed == j else repr(j),
        ),
    ]


def boolean_envelope_oracle(frame: FiniteFrame) -> FiniteFrame:
    """Independent prediction of the patch: the powerset frame of the spectrum.

    Built as the downset frame of the antichain on the spectrum's points,
    sharing no code with nucleus enumeration.
    """
    return FiniteFrame(FinPoset.antichain(frame.spectrum.n))


def check_patch_is_stone(
    frame: FiniteFrame, basis: Optional[Basis] = None
) -> list[PropCheck]:
    """The patch of a spectral frame is Stone, by classification and by the
    proof route (top transported along the perfect counit), and is isomorphic
    to the independent Boolean envelope."""
    if basis is None:
        basis = all_elements_basis(frame)
    patch = patch_frame(frame)
    cls = classify(patch.frame)
    results = [
        PropCheck("patch-is-stone", cls.stone, 1),
        PropCheck(
            "patch-size-is-powerset-of-spectrum",
            patch.n == 1 << frame.spectrum.n,
            1,
            None if patch.n == 1 << frame.spectrum.n else f"{patch.n} nuclei",
        ),
    ]
    top_via_counit = patch.nucleus_to_element(closed_nucleus(frame, frame.top))
    results.append(
        PropCheck("patch-top-is-counit-of-top", top_via_counit == patch.frame.top, 1)
    )
    if patch.frame.n <= 16:
        transported = way_below(patch.frame, patch.frame.top, patch.frame.top)
    else:
        transported = way_below_fast(patch.frame, patch.frame.top, patch.frame.top)
    results.append(PropCheck("patch-top-compact", transported, 1))
    envelope = boolean_envelope_oracle(frame)
    iso = frame_isomorphism(patch.frame, envelope)
    results.append(
        PropCheck(
            "patch-isomorphic-to-boolean-envelope",
            iso is not None,
            1,
            None if iso is not None else f"{patch.frame.n} vs {envelope.n} elements",
        )
    )
    return results
