from fractions import Fraction

import numpy as np
import pytest

from boxblocks.errors import DomainError, ResourceError, VerificationError
from boxblocks.family import generate_family
from boxblocks.geometry import Box, FamilyParams
from boxblocks.graph import IntersectionGraph, blow_up, build_graph, family_boxes, induced_subgraph
from boxblocks.oracle import brute_oracle
from boxblocks.solvers import (
    Certificate,
    candidate_points,
    chromatic_number,
    clique_via_cells,
    max_clique,
    max_independent_set,
    min_piercing,
    verify_certificate,
)

from conftest import cycle, random_boxes


def test_c4_values(c4):
    boxes, g = c4
    assert max_clique(g).value == 2
    assert max_independent_set(g).value == 2
    assert chromatic_number(g).value == 2
    assert min_piercing(boxes).value == 2


def test_222_values(fam222, boxes222, g222):
    assert max_clique(g222).value == 3
    assert max_clique(g222, boxes=boxes222).value == 3
    assert clique_via_cells(fam222).value == 3
    assert max_independent_set(g222).value == 4
    cert = min_piercing(boxes222)
    assert cert.value == 4
    verify_certificate(cert, boxes=boxes222)
    assert chromatic_number(g222).value == 3


def test_piercing_witness_in_cells(boxes222):
    pts = sorted(min_piercing(boxes222).witness)
    assert pts == [(0, 0), (1, 2), (2, 1), (3, 3)]


def test_trivial_piercing():
    inter = [Box.closed((0, 0), (3, 3)), Box.closed((1, 1), (4, 4)), Box.closed((2, 0), (5, 2))]
    assert min_piercing(inter).value == 1
    disjoint = [Box.half_open((i,), (i + 1,)) for i in range(6)]
    assert min_piercing(disjoint).value == 6
    assert min_piercing([]).value == 0


def test_k_graphs():
    k5 = IntersectionGraph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert chromatic_number(k5).value == 5
    assert max_independent_set(k5).value == 1
    assert chromatic_number(cycle(5)).value == 3
    assert chromatic_number(cycle(6)).value == 2


def test_blow_up_c4_clique(c4):
    boxes, _ = c4
    big = blow_up(boxes, 3)
    assert max_clique(build_graph(big), boxes=big).value == 6


def test_clique_via_cells_empty_and_sampled(rng):
    fam = generate_family(FamilyParams(3, 2, 2))
    assert clique_via_cells(fam.subfamily([])).value == 0
    for _ in range(5):
        keep = sorted(rng.choice(len(fam), 40, replace=False).tolist())
        sub = fam.subfamily(keep)
        g = build_graph(family_boxes(sub))
        assert clique_via_cells(sub).value == max_clique(g).value


def test_budgets():
    g = IntersectionGraph.from_edges(6, [])
    with pytest.raises(ResourceError):
        max_independent_set(g, budget=5)
    with pytest.raises(ResourceError):
        brute_oracle(IntersectionGraph.from_edges(21, []), "clique")
    with pytest.raises(ResourceError):
        min_piercing([Box.closed((i,), (i + 1,)) for i in range(5)], budget=4)


def test_chromatic_greedy_flag():
    cert = chromatic_number(cycle(7), budget=3)
    assert not cert.exact and cert.value >= 3
    verify_certificate(cert, graph=cycle(7))


def test_candidate_points_are_lower_corners():
    boxes = [Box.closed((0, 0), (2, 2)), Box.closed((1, 1), (3, 3))]
    pts = {p for p, _ in candidate_points(boxes)}
    assert (1, 1) in pts
    for p, mask in candidate_points(boxes):
        assert mask == sum(1 << i for i, b in enumerate(boxes) if b.contains_point(p))


def test_open_lower_side_candidates():
    # (0,1] and (1,2]: point 1 hits only the first
    boxes = [Box((0,), (1,), (False,), (True,)), Box((1,), (2,), (False,), (True,))]
    cert = min_piercing(boxes)
    assert cert.value == 2
    verify_certificate(cert, boxes=boxes)
    boxes = [Box((0,), (1,), (False,), (False,)), Box((Fraction(1, 2),), (3,), (False,), (False,))]
    assert min_piercing(boxes).value == 1


def test_verify_rejects_bad_certificates(c4):
    boxes, g = c4
    with pytest.raises(VerificationError):
        verify_certificate(Certificate("clique", 2, [0, 1]), graph=g)
    with pytest.raises(VerificationError):
        verify_certificate(Certificate("independent-set", 2, [0, 2]), graph=g)
    with pytest.raises(VerificationError):
        verify_certificate(Certificate("coloring", 1, [0, 0, 0, 0]), graph=g)
    with pytest.raises(VerificationError):
        verify_certificate(Certificate("piercing", 1, [(0, 0)]), boxes=boxes)
    with pytest.raises(VerificationError):
        verify_certificate(Certificate("clique", 3, [0, 2]), graph=g)


def test_oracle_kind_check(c4):
    _, g = c4
    with pytest.raises(DomainError):
        brute_oracle(g, "matching")


def test_oracle_small_examples(c4):
    _, g = c4
    assert brute_oracle(g, "independent-set").value == 2
    p3 = induced_subgraph(g, [0, 1, 2])
    assert brute_oracle(p3, "clique").value == 2
    assert brute_oracle(IntersectionGraph.from_edges(0, []), "coloring").value == 0


@pytest.mark.parametrize("seed", range(5))
def test_random_oracle_agreement(seed):
    rng = np.random.default_rng(1000 + seed)
    for _ in range(8):
        n = int(rng.integers(1, 15))
        boxes = random_boxes(rng, n, int(rng.integers(1, 4)), flags=bool(rng.integers(2)))
        g = build_graph(boxes)
        assert max_clique(g).value == brute_oracle(g, "clique").value
        assert max_clique(g, boxes=boxes).value == brute_oracle(g, "clique").value
        assert max_independent_set(g).value == brute_oracle(g, "independent-set").value
        assert chromatic_number(g).value == brute_oracle(g, "coloring").value
        assert min_piercing(boxes).value == brute_oracle(g, "piercing").value


def test_comparability_d2(fam222, g222, rng):
    fam = generate_family(FamilyParams(2, 3, 2))
    g = build_graph(family_boxes(fam))
    for _ in range(10):
        keep = sorted(rng.choice(g.n, 18, replace=False).tolist())
        h = induced_subgraph(g, keep)
        assert chromatic_number(h).value == max_clique(h).value


def test_duality_sanity(rng):
    for _ in range(20):
        boxes = random_boxes(rng, int(rng.integers(2, 16)), 2)
        g = build_graph(boxes)
        w, a = max_clique(g).value, max_independent_set(g).value
        tau, chi = min_piercing(boxes).value, chromatic_number(g).value
        assert tau >= a and chi >= w
        assert chi * a >= g.n and tau * w >= g.n


def test_certificate_record(g222):
    rec = max_independent_set(g222).to_record()
    assert rec["kind"] == "independent-set" and rec["value"] == 4
