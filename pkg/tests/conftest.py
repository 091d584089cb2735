from fractions import Fraction

import numpy as np
import pytest

from boxblocks.family import generate_family
from boxblocks.geometry import Box, FamilyParams
from boxblocks.graph import IntersectionGraph, build_graph, family_boxes


def random_boxes(rng, n, d, *, general_position=False, lattice=8, flags=False):
    """Random boxes with integer corners; optionally distinct coordinates per axis."""
    boxes = []
    if general_position:
        coords = [rng.permutation(4 * n + 2)[: 2 * n] for _ in range(d)]
    for j in range(n):
        lo, hi = [], []
        for a in range(d):
            if general_position:
                x, y = sorted(int(v) for v in coords[a][2 * j : 2 * j + 2])
            else:
                x = int(rng.integers(0, lattice))
                y = x + int(rng.integers(1, lattice // 2 + 1))
            lo.append(Fraction(x))
            hi.append(Fraction(y))
        if flags:
            boxes.append(Box(tuple(lo), tuple(hi), tuple(bool(rng.integers(2)) for _ in range(d)),
                             tuple(bool(rng.integers(2)) for _ in range(d))))
        else:
            boxes.append(Box.closed(lo, hi))
    return boxes


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def fam222():
    return generate_family(FamilyParams(2, 2, 2))


@pytest.fixture(scope="session")
def boxes222(fam222):
    return family_boxes(fam222)


@pytest.fixture(scope="session")
def g222(boxes222):
    return build_graph(boxes222)


@pytest.fixture(scope="session")
def c4():
    fam = generate_family(FamilyParams(2, 2, 1))
    return family_boxes(fam), build_graph(family_boxes(fam))


def cycle(n):
    return IntersectionGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
