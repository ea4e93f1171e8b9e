import pytest

from localepatch import FinPoset, FiniteFrame, enumerate_posets


@pytest.fixture(scope="session")
def chain3() -> FiniteFrame:
    """Downset frame of the 2-chain a < b: bottom, {a}, top."""
    return FiniteFrame(FinPoset.from_pairs(("a", "b"), [("a", "b")]))


@pytest.fixture(scope="session")
def diamond4() -> FiniteFrame:
    """Downset frame of the 2-antichain: the 4-element Boolean algebra."""
    return FiniteFrame(FinPoset.antichain(2))


@pytest.fixture(scope="session")
def two_elem() -> FiniteFrame:
    """Downset frame of a single point."""
    return FiniteFrame(FinPoset.antichain(1))


@pytest.fixture(scope="session")
def boolean16() -> FiniteFrame:
    return FiniteFrame(FinPoset.antichain(4))


@pytest.fixture(scope="session")
def corpus3() -> list[tuple[str, FiniteFrame]]:
    """Every labelled poset on at most 3 points, as downset frames."""
    return [
        (f"p{n}-{i:03d}", FiniteFrame(p))
        for n in range(4)
        for i, p in enumerate(enumerate_posets(n))
    ]


@pytest.fixture(scope="session")
def corpus4(corpus3) -> list[tuple[str, FiniteFrame]]:
    """The 3-point corpus extended with every labelled 4-point poset."""
    return corpus3 + [
        (f"p4-{i:03d}", FiniteFrame(p)) for i, p in enumerate(enumerate_posets(4))
    ]
