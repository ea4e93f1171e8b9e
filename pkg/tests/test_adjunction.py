import pytest

from localepatch import (
    FrameHom,
    JoinPreservationError,
    all_elements_basis,
    enumerate_frame_homs,
    heyting,
    identity_hom,
    is_perfect_map,
    is_spectral_map,
    right_adjoint,
)
from localepatch.adjunction import (
    NotFrameHomError,
    check_perfect_way_below,
    heyting_table,
    meet_map,
)


class TestFrameHomFlags:
    def test_identity_flags(self, chain3):
        h = identity_hom(chain3)
        assert h.is_monotone and h.is_frame_hom and h.is_spectral

    def test_constant_top_is_not_a_hom(self, chain3):
        h = FrameHom(chain3, chain3, (chain3.top,) * chain3.n)
        assert h.preserves_top and h.is_monotone
        assert not h.preserves_joins  # the empty join breaks

    def test_flags_detect_meet_failure(self, diamond4):
        # send both atoms to top: meets of atoms collapse wrongly
        a, b = diamond4.parse_element("{a}"), diamond4.parse_element("{b}")
        table = list(range(diamond4.n))
        table[a] = diamond4.top
        table[b] = diamond4.top
        h = FrameHom(diamond4, diamond4, table)
        assert not h.preserves_meets


class TestRightAdjoint:
    def test_identity_adjoint_is_identity(self, chain3):
        adj = right_adjoint(identity_hom(chain3), all_elements_basis(chain3))
        assert adj.right == tuple(range(chain3.n))

    def test_meet_map_adjoint_at_bottom(self, chain3):
        """The right adjoint of (- /\\ m) sends bottom to the largest w with
        w /\\ m = bottom, which in the 3-chain is bottom itself."""
        adj = right_adjoint(meet_map(chain3, 1), all_elements_basis(chain3))
        assert adj.right[chain3.bottom] == chain3.bottom

    def test_constant_top_rejected_with_empty_family(self, chain3):
        h = FrameHom(chain3, chain3, (chain3.top,) * chain3.n)
        with pytest.raises(JoinPreservationError) as err:
            right_adjoint(h, all_elements_basis(chain3))
        assert err.value.family == ()

    def test_galois_law_for_every_corpus_hom(self, corpus3):
        for _, f in corpus3:
            basis = all_elements_basis(f)
            for _, g in corpus3:
                if f.n * g.n > 64:
                    continue
                for hom in enumerate_frame_homs(f, g):
                    adj = right_adjoint(hom, basis)  # construction verifies the law
                    for x in range(f.n):
                        for y in range(g.n):
                            assert g.leq(hom.table[x], y) == f.leq(x, adj.right[y])

    def test_forward_direction_reverifies_join_preservation(self, chain3):
        adj = right_adjoint(meet_map(chain3, 1), all_elements_basis(chain3))
        h = FrameHom(chain3, chain3, adj.left)
        assert h.preserves_joins


class TestHeyting:
    def test_bottom_implies_anything_is_top(self, chain3):
        basis = all_elements_basis(chain3)
        for v in range(chain3.n):
            assert heyting(chain3, basis, chain3.bottom, v) == chain3.top

    def test_boolean_complement(self, diamond4):
        basis = all_elements_basis(diamond4)
        a = diamond4.parse_element("{a}")
        assert heyting(diamond4, basis, a, diamond4.bottom) == diamond4.parse_element("{b}")

    def test_chain_middle_to_bottom(self, chain3):
        assert heyting(chain3, all_elements_basis(chain3), 1, chain3.bottom) == chain3.bottom

    def test_laws(self, corpus3):
        """u => u = top, top => v = v, u /\\ (u => v) <= v."""
        for _, frame in corpus3:
            basis = all_elements_basis(frame)
            for u in range(frame.n):
                table = heyting_table(frame, basis, u)
                assert table[u] == frame.top
                assert frame.leq(frame.meet(u, table[frame.bottom]), frame.bottom)
                for v in range(frame.n):
                    assert frame.leq(frame.meet(u, table[v]), v)
            top_table = heyting_table(frame, basis, frame.top)
            assert top_table == tuple(range(frame.n))

    def test_full_adjunction_quantifier(self, corpus3):
        """w /\\ u <= v iff w <= (u => v), for all w, u, v."""
        for _, frame in corpus3:
            basis = all_elements_basis(frame)
            for u in range(frame.n):
                table = heyting_table(frame, basis, u)
                for v in range(frame.n):
                    for w in range(frame.n):
                        assert frame.leq(frame.meet(w, u), v) == frame.leq(w, table[v])


class TestSpectralPerfect:
    def test_identity_spectral_and_perfect(self, chain3):
        h = identity_hom(chain3)
        assert is_spectral_map(h)
        assert is_perfect_map(h, all_elements_basis(chain3))

    def test_non_hom_rejected(self, chain3):
        h = FrameHom(chain3, chain3, (chain3.top,) * chain3.n)
        with pytest.raises(NotFrameHomError):
            is_spectral_map(h)
        with pytest.raises(NotFrameHomError):
            is_perfect_map(h, all_elements_basis(chain3))

    def test_perfect_iff_spectral_on_corpus_homs(self, corpus3):
        small = [(fid, f) for fid, f in corpus3 if f.spectrum.n <= 2]
        for _, f in small:
            basis = all_elements_basis(f)
            for _, g in small:
                for hom in enumerate_frame_homs(f, g):
                    assert is_perfect_map(hom, basis) == is_spectral_map(hom)

    def test_perfect_maps_respect_way_below(self, corpus3):
        small = [(fid, f) for fid, f in corpus3 if f.spectrum.n <= 2]
        for _, f in small:
            for _, g in small:
                for hom in enumerate_frame_homs(f, g):
                    check = check_perfect_way_below(hom)
                    assert check.passed
                    assert check.checked > 0 or f.n == 0

    def test_way_below_report_counts_pairs(self, chain3):
        check = check_perfect_way_below(identity_hom(chain3))
        # way-below collapses to <=, so the count is the number of <= pairs
        expected = sum(
            chain3.leq(u, v) for u in range(chain3.n) for v in range(chain3.n)
        )
        assert check.checked == expected
