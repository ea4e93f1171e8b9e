from itertools import product

import pytest

from localepatch import (
    FiniteFrame,
    FinPoset,
    FrameError,
    FrameHom,
    LatticeHom,
    check_universal_property,
    classify,
    closed_nucleus,
    enumerate_frame_homs,
    extend,
    identity_hom,
    patch_frame,
    universal_map,
)
from localepatch.coreflect import HypothesisError, check_counit_iso_on_stone


def brute_force_homs(f: FiniteFrame, g: FiniteFrame) -> set[tuple[int, ...]]:
    """Filter every table for the frame-hom flags; independent of duality."""
    out = set()
    for table in product(range(g.n), repeat=f.n):
        if FrameHom(f, g, table).is_frame_hom:
            out.add(table)
    return out


class TestHomEnumeration:
    def test_two_element_endos(self, two_elem):
        assert len(enumerate_frame_homs(two_elem, two_elem)) == 1

    def test_chain3_to_two_element(self, chain3, two_elem):
        assert len(enumerate_frame_homs(chain3, two_elem)) == 2

    def test_identity_always_present(self, corpus3):
        for _, frame in corpus3:
            tables = {h.table for h in enumerate_frame_homs(frame, frame)}
            assert tuple(range(frame.n)) in tables

    def test_complete_against_brute_force(self, chain3, diamond4, two_elem):
        for f, g in [
            (chain3, diamond4),
            (diamond4, chain3),
            (chain3, chain3),
            (two_elem, diamond4),
            (diamond4, two_elem),
        ]:
            enumerated = {h.table for h in enumerate_frame_homs(f, g)}
            assert enumerated == brute_force_homs(f, g)


class TestExtend:
    def test_restriction_of_identity_extends_to_identity(self, chain3):
        members = tuple(range(chain3.n))
        h = LatticeHom(chain3, members, chain3, {u: u for u in members})
        assert extend(h).table == tuple(range(chain3.n))

    def test_whole_frame_recovers_any_hom(self, chain3, diamond4):
        for hom in enumerate_frame_homs(chain3, diamond4):
            h = LatticeHom(
                chain3,
                tuple(range(chain3.n)),
                diamond4,
                {u: hom.table[u] for u in range(chain3.n)},
            )
            assert extend(h).table == hom.table

    def test_uniqueness_through_the_triangle(self, chain3, diamond4):
        """Exactly one enumerated hom restricts to the given lattice hom."""
        for hom in enumerate_frame_homs(chain3, diamond4):
            matching = [
                g
                for g in enumerate_frame_homs(chain3, diamond4)
                if all(g.table[u] == hom.table[u] for u in range(chain3.n))
            ]
            assert len(matching) == 1

    def test_generation_hypothesis_failure_is_named(self, chain3):
        ends = (chain3.bottom, chain3.top)
        h = LatticeHom(chain3, ends, chain3, {u: u for u in ends})
        with pytest.raises(HypothesisError, match="generate"):
            extend(h)

    def test_sublattice_validation(self):
        cube = FiniteFrame(FinPoset.antichain(3))
        a, b = cube.parse_element("{a}"), cube.parse_element("{b}")
        # {a} \/ {b} = {a,b} is missing from the member set
        with pytest.raises(FrameError, match="closed under"):
            LatticeHom(
                cube,
                (cube.bottom, a, b, cube.top),
                cube,
                {u: u for u in range(cube.n)},
            )


class TestUniversalMap:
    def test_identity_on_stone_frame(self, diamond4):
        """For Stone A and the identity, the lift sends closed(u) back to u."""
        lift = universal_map(identity_hom(diamond4))
        patch = patch_frame(diamond4)
        for u in range(diamond4.n):
            eid = patch.nucleus_to_element(closed_nucleus(diamond4, u))
            assert lift.table[eid] == u

    def test_point_of_chain3(self, chain3, two_elem):
        """Every point (map from the one-point Stone locale) lifts uniquely."""
        for f in enumerate_frame_homs(chain3, two_elem):
            for check in check_universal_property(f):
                assert check.passed, check.line()

    def test_all_small_instances(self, corpus3):
        stones = [
            frame
            for _, frame in corpus3
            if classify(frame).stone
        ]
        for x in stones:
            for _, a in corpus3:
                for f in enumerate_frame_homs(a, x):
                    if not f.is_spectral:
                        continue
                    for check in check_universal_property(f):
                        assert check.passed, check.line()

    def test_rejects_non_stone_domain(self, chain3):
        # identity on the 3-chain: the locale is spectral but not Stone
        with pytest.raises(FrameError, match="Stone"):
            universal_map(identity_hom(chain3))

    def test_triangle_for_composites(self, chain3, diamond4, two_elem):
        """The lift of a composite satisfies the composite triangle."""
        for g in enumerate_frame_homs(chain3, diamond4):
            for f in enumerate_frame_homs(diamond4, two_elem):
                composite = FrameHom(
                    chain3, two_elem, tuple(f.table[g.table[u]] for u in range(chain3.n))
                )
                if not composite.is_spectral:
                    continue
                lift = universal_map(composite)
                patch = patch_frame(chain3)
                for u in range(chain3.n):
                    eid = patch.nucleus_to_element(closed_nucleus(chain3, u))
                    assert lift.table[eid] == composite.table[u]


class TestCounitIso:
    def test_stone_frames_have_invertible_counit(self, corpus3):
        for _, frame in corpus3:
            if classify(frame).stone:
                assert check_counit_iso_on_stone(frame).passed

    def test_rejected_on_non_stone(self, chain3):
        with pytest.raises(FrameError, match="Stone"):
            check_counit_iso_on_stone(chain3)
