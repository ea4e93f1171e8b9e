import pytest

from localepatch import SuiteConfig, run_suite
from localepatch.poset import enumerate_posets

ALWAYS_PER_FRAME = [
    "frame-laws",
    "compact-opens-in-spectral-basis",
    "well-inside-raises-along-leq",
    "well-inside-lowers-along-leq",
    "zero-dimensional-implies-regular",
    "way-below-implies-well-inside-in-regular",
    "well-inside-implies-way-below-in-compact",
    "compact-iff-clopen-in-stone",
    "heyting-adjunction",
    "closed-meet-open-is-identity",
    "closed-join-open-is-top",
    "basic-le-matches-pointwise",
    "patch-is-stone",
    "patch-size-is-powerset-of-spectrum",
    "patch-top-is-counit-of-top",
    "patch-top-compact",
    "patch-isomorphic-to-boolean-envelope",
    "counit-is-frame-hom",
    "counit-adjunction-law",
    "counit-right-adjoint-evaluates-at-bottom",
    "johnstone-decomposition",
    "johnstone-reindexed-decomposition",
    "compact-approximation-implies-scott-continuous",
    "closed-nuclei-scott-continuous",
    "open-nuclei-of-compacts-scott-continuous",
]

ORACLE_PER_FRAME = [
    "way-below-matches-leq",
    "all-nuclei-scott-continuous",
    "nucleus-join-agreement",
    "nucleus-join-least-upper-bound",
    "nucleus-meet-is-glb",
    "counit-is-perfect",
    "directed-nucleus-joins-are-pointwise",
    "iterated-composites-are-scott-prenuclei",
    "composite-of-append-is-composition",
    "composition-family-is-directed",
    "nucleus-upper-bounds-bound-composites",
    "meet-family-composites-are-lower-bounds",
]


@pytest.fixture(scope="module")
def report2():
    return run_suite(SuiteConfig(max_poset_points=2))


def poset_count(up_to: int) -> int:
    return sum(1 for n in range(up_to + 1) for _ in enumerate_posets(n))


class TestReportShape:
    def test_all_pass(self, report2):
        assert report2.ok
        assert report2.failed == 0
        assert report2.passed == len(report2.lines)

    def test_per_frame_props_cover_every_frame(self, report2):
        frames = poset_count(2)
        by_prop = {}
        for line in report2.lines:
            by_prop.setdefault(line.prop, []).append(line)
        for prop in ALWAYS_PER_FRAME:
            assert len(by_prop[prop]) == frames, prop
        for prop in ORACLE_PER_FRAME:
            assert len(by_prop[prop]) == frames, prop
        # the one-element frame cannot exhibit the constant-top non-example
        assert len(by_prop["right-adjoint-rejects-non-join-preserving"]) == frames - 1

    def test_universal_props_cover_stone_spectral_pairs(self, report2):
        stones = 3  # antichains on 0, 1, 2 points
        by_prop = {}
        for line in report2.lines:
            by_prop.setdefault(line.prop, []).append(line)
        assert len(by_prop["universal-triangle"]) == stones * poset_count(2)

    def test_lines_sorted_and_deterministic(self, report2):
        keys = [(line.prop, line.subject) for line in report2.lines]
        assert keys == sorted(keys)
        again = run_suite(SuiteConfig(max_poset_points=2))
        assert again.to_text() == report2.to_text()

    def test_text_format(self, report2):
        lines = report2.to_text().splitlines()
        assert lines[-1].endswith("0 failed")
        for line in lines[:-1]:
            word = line.split()[0]
            assert word in ("PASS", "FAIL")


def test_parallel_workers_agree(report2):
    parallel = run_suite(SuiteConfig(max_poset_points=2, parallel_workers=4))
    assert parallel.to_text() == report2.to_text()


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(max_poset_points=-1)
    with pytest.raises(ValueError):
        SuiteConfig(parallel_workers=0)


def test_trivial_corpus():
    report = run_suite(SuiteConfig(max_poset_points=1))
    assert report.ok
    subjects = {line.subject for line in report.lines}
    assert "p0-000" in subjects and "p1-000" in subjects
