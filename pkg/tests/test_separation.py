import pytest

from localepatch import (
    FiniteFrame,
    FinPoset,
    FrameTooLargeError,
    check_prop_suite,
    classify,
    is_clopen,
    is_compact_locale,
    is_compact_open,
    way_below,
    way_below_fast,
    well_inside,
)


class TestWayBelow:
    def test_bottom_way_below_everything(self, chain3):
        for v in range(chain3.n):
            assert way_below(chain3, chain3.bottom, v)

    def test_middle_way_below_top_in_chain(self, chain3):
        assert way_below(chain3, 1, chain3.top)

    def test_fails_when_not_below(self, corpus3):
        """The singleton family {v} is directed and witnesses the failure."""
        for _, frame in corpus3:
            for u in range(frame.n):
                for v in range(frame.n):
                    if not frame.leq(u, v):
                        assert not way_below(frame, u, v)

    def test_collapses_to_leq_on_corpus(self, corpus3):
        for _, frame in corpus3:
            for u in range(frame.n):
                for v in range(frame.n):
                    assert way_below(frame, u, v) == way_below_fast(frame, u, v)

    def test_collapse_on_the_largest_four_point_frame(self, boolean16):
        for u in range(boolean16.n):
            for v in range(boolean16.n):
                assert way_below(boolean16, u, v) == boolean16.leq(u, v)

    def test_collapses_on_all_four_point_frames(self, corpus4):
        for fid, frame in corpus4:
            for u in range(frame.n):
                for v in range(frame.n):
                    assert way_below(frame, u, v) == way_below_fast(frame, u, v), fid

    def test_cap_exceeded(self):
        frame = FiniteFrame(FinPoset.antichain(2))
        with pytest.raises(FrameTooLargeError):
            frame.directed_subsets(cap=2)


class TestCompact:
    def test_bottom_compact(self, chain3):
        assert is_compact_open(chain3, chain3.bottom)

    def test_every_element_compact(self, corpus3):
        for _, frame in corpus3:
            for u in range(frame.n):
                assert is_compact_open(frame, u)

    def test_locale_compact(self, corpus3):
        for _, frame in corpus3:
            assert is_compact_locale(frame)


class TestWellInside:
    def test_bottom_well_inside_everything_with_top_witness(self, chain3):
        for v in range(chain3.n):
            w = well_inside(chain3, chain3.bottom, v)
            assert w is not None
            # top is always an admissible witness; the returned one is least
            assert chain3.meet(chain3.bottom, chain3.top) == chain3.bottom
            assert chain3.join((v, chain3.top)) == chain3.top

    def test_atom_complement_in_boolean_frame(self, diamond4):
        a = diamond4.parse_element("{a}")
        assert well_inside(diamond4, a, a) == diamond4.parse_element("{b}")

    def test_chain_middle_has_no_complement(self, chain3):
        assert well_inside(chain3, 1, 1) is None

    def test_returns_least_witness(self, corpus3):
        for _, frame in corpus3:
            for u in range(frame.n):
                for v in range(frame.n):
                    w = well_inside(frame, u, v)
                    if w is None:
                        continue
                    for smaller in range(w):
                        assert not (
                            frame.meet(u, smaller) == frame.bottom
                            and frame.join((v, smaller)) == frame.top
                        )

    def test_witness_monotonicity_clauses(self, corpus3):
        """u inside v <= w gives u inside w; u <= v inside w gives u inside w."""
        for _, frame in corpus3:
            for u in range(frame.n):
                for v in range(frame.n):
                    if well_inside(frame, u, v) is None:
                        continue
                    for w in range(frame.n):
                        if frame.leq(v, w):
                            assert well_inside(frame, u, w) is not None
                        if frame.leq(w, u):
                            assert well_inside(frame, w, v) is not None


class TestClopen:
    def test_ends_always_clopen(self, chain3):
        assert is_clopen(chain3, chain3.bottom)
        assert is_clopen(chain3, chain3.top)

    def test_boolean_frame_all_clopen(self, diamond4):
        for u in range(diamond4.n):
            assert is_clopen(diamond4, u)

    def test_chain_middle_not_clopen(self, chain3):
        assert not is_clopen(chain3, 1)


class TestClassify:
    def test_boolean_frame_is_stone(self, diamond4):
        assert classify(diamond4).stone

    def test_chain_is_spectral_but_not_stone(self, chain3):
        cls = classify(chain3)
        assert cls.spectral is not None
        assert cls.zero_dimensional is None
        assert cls.regular is None
        assert not cls.stone

    def test_one_element_frame_has_everything(self):
        cls = classify(FiniteFrame(FinPoset.antichain(0)))
        assert cls.compact and cls.stone
        assert cls.spectral and cls.zero_dimensional and cls.regular

    def test_spectral_witness_reverifies(self, corpus3):
        from localepatch import is_basis

        for _, frame in corpus3:
            cls = classify(frame)
            assert cls.spectral is not None
            assert is_basis(frame, cls.spectral.members)
            assert cls.spectral.closed_under_finite_meets

    def test_stone_iff_spectrum_is_antichain(self, corpus3):
        """Boolean oracle: a finite frame is Stone exactly when every element
        is clopen, which happens exactly for antichain spectra."""
        for _, frame in corpus3:
            p = frame.spectrum
            antichain = all(
                not p.leq(i, j) for i in range(p.n) for j in range(p.n) if i != j
            )
            all_clopen = all(is_clopen(frame, u) for u in range(frame.n))
            assert classify(frame).stone == antichain == all_clopen

    def test_regular_implies_way_below_gives_well_inside(self, corpus3):
        for _, frame in corpus3:
            if classify(frame).regular is None:
                continue
            for u in range(frame.n):
                for v in range(frame.n):
                    if way_below(frame, u, v):
                        assert well_inside(frame, u, v) is not None


class TestPropSuite:
    def test_all_pass_on_corpus(self, corpus3):
        for fid, frame in corpus3:
            for check in check_prop_suite(frame):
                assert check.passed, f"{fid}: {check.line()}"

    def test_well_inside_implies_way_below_on_boolean(self, diamond4):
        names = {c.name: c for c in check_prop_suite(diamond4)}
        check = names["well-inside-implies-way-below-in-compact"]
        assert check.passed and check.checked > 0

    def test_basis_membership_trivial_when_basis_is_everything(self, chain3):
        names = {c.name: c for c in check_prop_suite(chain3)}
        assert names["compact-opens-in-spectral-basis"].passed
