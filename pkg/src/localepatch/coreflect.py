"""The universal property: the patch coreflects spectral frames into Stone ones.

Frame homomorphisms between finite frames correspond to monotone maps of
spectra in the opposite direction (inverse image of downsets), which yields a
complete, independently verifiable enumeration of homs.  That enumeration is
the uniqueness oracle for the extension lemma and the universal map.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Mapping

from .adjunction import FrameHom, NotFrameHomError
from .frame import FiniteFrame, FrameError, FrameTooLargeError
from .nucleus import PatchFrame, patch_frame
from .patchstone import basis_pair_atom, closed_nucleus, counit
from .poset import FinPoset
from .separation import PropCheck, classify, is_compact_open, well_inside

HOM_ENUM_CAP = 5  # spectrum points per side


class HypothesisError(FrameError):
    """An extension-lemma hypothesis failed; the message names which one."""


def monotone_maps(p: FinPoset, q: FinPoset) -> Iterator[tuple[int, ...]]:
    """All monotone point maps p -> q, in a fixed order."""
    for table in product(range(q.n), repeat=p.n):
        if all(
            q.leq(table[i], table[j])
            for i in range(p.n)
            for j in range(p.n)
            if p.leq(i, j)
        ):
            yield table


def hom_from_spectrum_map(
    source: FiniteFrame, target: FiniteFrame, point_map: tuple[int, ...]
) -> FrameHom:
    """The frame hom source -> target taking preimages under a monotone map
    target.spectrum -> source.spectrum."""
    table = []
    for mask in source.elements:
        out = 0
        for p in range(target.spectrum.n):
            if mask >> point_map[p] & 1:
                out |= 1 << p
        table.append(target.index[out])
    return FrameHom(source, target, table)


def enumerate_frame_homs(
    source: FiniteFrame, target: FiniteFrame, cap: int = HOM_ENUM_CAP
) -> tuple[FrameHom, ...]:
    """Every frame homomorphism source -> target, each one verified.

    Complete by finite duality: homs correspond to monotone spectrum maps in
    the opposite direction.
    """
    if source.spectrum.n > cap or target.spectrum.n > cap:
        raise FrameTooLargeError(
            f"hom enumeration capped at {cap} spectrum points"
        )
    key = ("homs", target.spectrum)
    cached = source._cache.get(key)
    if cached is not None:
        return cached
    homs = []
    for point_map in monotone_maps(target.spectrum, source.spectrum):
        h = hom_from_spectrum_map(source, target, point_map)
        if not h.is_frame_hom:
            raise FrameError("duality produced a non-homomorphism")
        homs.append(h)
    out = tuple(homs)
    source._cache[key] = out
    return out


@dataclass
class LatticeHom:
    """A finite-lattice homomorphism out of a sublattice of a frame."""

    ambient: FiniteFrame
    members: tuple[int, ...]
    target: FiniteFrame
    table: Mapping[int, int]

    def __post_init__(self):
        mset = set(self.members)
        amb, tgt = self.ambient, self.target
        if amb.bottom not in mset or amb.top not in mset:
            raise FrameError("sublattice must contain bottom and top")
        for a in self.members:
            if a not in self.table:
                raise FrameError("lattice hom table must cover the sublattice")
        for a in self.members:
            for b in self.members:
                m, j = amb.meet(a, b), amb.join((a, b))
                if m not in mset or j not in mset:
                    raise FrameError("members are not closed under meet and join")
                if self.table[m] != tgt.meet(self.table[a], self.table[b]):
                    raise FrameError("lattice hom does not preserve meets")
                if self.table[j] != tgt.join((self.table[a], self.table[b])):
                    raise FrameError("lattice hom does not preserve joins")
        if self.table[amb.bottom] != tgt.bottom or self.table[amb.top] != tgt.top:
            raise FrameError("lattice hom does not preserve bottom and top")


def extend(h: LatticeHom) -> FrameHom:
    """Extend a lattice hom on a generating sublattice to the whole frame.

    Hypotheses, both verified: the sublattice generates the frame under joins,
    and it contains every compact open.  The extension sends x to the join of
    the images of sublattice members below x; it restricts to h on the
    sublattice and is the unique frame hom that does.
    """
    amb, tgt = h.ambient, h.target
    mset = set(h.members)
    for x in range(amb.n):
        if amb.join(b for b in h.members if amb.leq(b, x)) != x:
            raise HypothesisError(
                f"sublattice does not generate {amb.element_name(x)} under joins"
            )
    for c in range(amb.n):
        if is_compact_open(amb, c) and c not in mset:
            raise HypothesisError(
                f"sublattice misses the compact open {amb.element_name(c)}"
            )
    table = tuple(
        tgt.join(h.table[b] for b in h.members if amb.leq(b, x))
        for x in range(amb.n)
    )
    out = FrameHom(amb, tgt, table)
    if not out.is_frame_hom:
        raise FrameError("extension is not a frame homomorphism")
    for b in h.members:
        if out.table[b] != h.table[b]:
            raise FrameError(
                f"extension disagrees with the lattice hom at {amb.element_name(b)}"
            )
    return out


def _complement(frame: FiniteFrame, u: int) -> int:
    w = well_inside(frame, u, u)
    if w is None:
        raise FrameError(
            f"{frame.element_name(u)} has no complement; frame is not Boolean"
        )
    return w


def universal_map(f: FrameHom) -> FrameHom:
    """Lift a spectral map into the patch of its codomain.

    `f` is the inverse-image hom of a map from a Stone locale (its target
    frame) to a spectral one (its source frame).  The lift is defined on each
    patch element through its canonical pair presentation, sending the join of
    closed(B_m) /\\ open(B_n) pieces to the join of f(B_m) /\\ not f(B_n), and
    extended by the generating-sublattice formula.  The triangle through the
    counit is verified exhaustively before returning.
    """
    if not f.is_frame_hom:
        raise NotFrameHomError("the universal construction needs a frame homomorphism")
    if not f.is_spectral:
        raise FrameError("map is not spectral")
    stone_cls = classify(f.target)
    if not stone_cls.stone:
        raise FrameError("domain locale is not Stone")
    spec_cls = classify(f.source)
    if spec_cls.spectral is None:
        raise FrameError("codomain locale is not spectral")

    a, x = f.source, f.target
    basis = spec_cls.spectral
    patch = patch_frame(a)
    h_table = {}
    for eid in range(patch.frame.n):
        nuc = patch.element_to_nucleus(eid)
        h_table[eid] = x.join(
            x.meet(f.table[bm], _complement(x, f.table[bn]))
            for bm in basis.members
            for bn in basis.members
            if a.leq(bm, nuc.table[bn])
        )
    lattice_hom = LatticeHom(patch.frame, tuple(range(patch.frame.n)), x, h_table)
    fbar = extend(lattice_hom)
    for u in range(a.n):
        eps_u = patch.nucleus_to_element(closed_nucleus(a, u))
        if fbar.table[eps_u] != f.table[u]:
            raise FrameError(
                f"triangle fails at {a.element_name(u)}"
            )
    return fbar


def check_universal_property(f: FrameHom) -> list[PropCheck]:
    """Triangle, uniqueness (by complete hom enumeration), and presentation
    independence of the universal lift."""
    a, x = f.source, f.target
    patch = patch_frame(a)
    fbar = universal_map(f)
    eps_table = tuple(
        patch.nucleus_to_element(closed_nucleus(a, u)) for u in range(a.n)
    )

    count, cx = 0, None
    for u in range(a.n):
        count += 1
        if fbar.table[eps_table[u]] != f.table[u]:
            cx = a.element_name(u)
    results = [PropCheck("universal-triangle", cx is None, count, cx)]

    matches = []
    for g in enumerate_frame_homs(patch.frame, x):
        if g.is_spectral and all(
            g.table[eps_table[u]] == f.table[u] for u in range(a.n)
        ):
            matches.append(g)
    unique = len(matches) == 1 and matches[0].table == fbar.table
    results.append(
        PropCheck(
            "universal-uniqueness",
            unique,
            len(enumerate_frame_homs(patch.frame, x)),
            None if unique else f"{len(matches)} homs satisfy the triangle",
        )
    )

    results.append(_presentation_independence(f, patch, fbar))
    return results


def _presentation_independence(
    f: FrameHom, patch: PatchFrame, fbar: FrameHom, atom_cap: int = 10
) -> PropCheck:
    """Any pair-list presentation of a clopen gives the lift the same value."""
    a, x = f.source, f.target
    basis = classify(a).spectral
    atoms = {}
    for bm in basis.members:
        for bn in basis.members:
            nuc = basis_pair_atom(a, basis, bm, bn)
            atoms[(bm, bn)] = (
                patch.index[nuc.table],
                x.meet(f.table[bm], _complement(x, f.table[bn])),
            )
    count, cx = 0, None
    for eid in range(patch.frame.n):
        pid = patch.from_frame[eid]
        below = [
            (key, val)
            for key, (apid, val) in atoms.items()
            if patch.leq(apid, pid)
        ]
        if len(below) > atom_cap:
            subsets = [tuple(range(len(below)))]
        else:
            subsets = [
                combo
                for size in range(len(below) + 1)
                for combo in combinations(range(len(below)), size)
            ]
        for combo in subsets:
            pids = [atoms[below[i][0]][0] for i in combo]
            if patch.join(pids) != pid:
                continue
            count += 1
            value = x.join(below[i][1] for i in combo)
            if value != fbar.table[eid]:
                cx = f"{patch.frame.element_name(eid)} via {[below[i][0] for i in combo]}"
    return PropCheck("universal-presentation-independent", cx is None, count, cx)


def check_counit_iso_on_stone(frame: FiniteFrame) -> PropCheck:
    """On a Stone frame the counit is an isomorphism: the closed-nucleus map
    and evaluation at bottom are mutually inverse tables."""
    if not classify(frame).stone:
        raise FrameError("counit isomorphism check needs a Stone frame")
    eps = counit(frame)
    ok = len(set(eps.epsilon_star.table)) == eps.patch.frame.n
    for u in range(frame.n):
        if eps.epsilon_lower[eps.epsilon_star.table[u]] != u:
            ok = False
    for e in range(eps.patch.frame.n):
        if eps.epsilon_star.table[eps.epsilon_lower[e]] != e:
            ok = False
    return PropCheck("counit-iso-on-stone", ok, frame.n + eps.patch.frame.n)
