import numpy as np
import pytest

from boxblocks.containers import (
    build_containers,
    choices_for,
    fingerprint,
    maximal_is_family,
    random_independent_set,
    replay,
    supersaturation_degree,
    supersaturation_threshold,
)
from boxblocks.errors import DomainError
from boxblocks.family import generate_family
from boxblocks.geometry import FamilyParams
from boxblocks.graph import build_biclique_decomposition, build_graph, family_boxes


def test_supersaturation_222(fam222, g222):
    assert supersaturation_degree(g222, range(12)) == 6
    assert supersaturation_threshold(12, 4, 2, 3) == pytest.approx(4 / 9)
    assert supersaturation_degree(g222, range(4)) == 0
    assert supersaturation_degree(g222, []) == 0


def test_fingerprint_c4_stops_immediately(c4):
    _, g = c4
    for I in ([], [0, 1], [2]):
        res = fingerprint(g, I, 2)
        assert res.S == () and res.fS == frozenset(range(4)) and res.trace == ()


def test_fingerprint_empty_I_222(g222):
    res = fingerprint(g222, [], 4)
    assert res.S == ()
    assert res.fS == frozenset(range(4, 12))
    assert [(st.vertex, st.in_I, st.removed) for st in res.trace] == [(v, False, 1) for v in range(4)]


def test_fingerprint_rows_222(fam222, g222):
    rows = [i for i, b in enumerate(fam222) if b.t == (2, 0)]
    res = fingerprint(g222, rows, 4)
    assert set(res.S) <= set(rows)
    assert set(rows) <= res.container
    assert len(res.fS) <= 8
    assert replay(g222, res.S, 4).fS == res.fS


def test_fingerprint_rejects_dependent(g222):
    with pytest.raises(DomainError):
        fingerprint(g222, [0, 4], 4)


def test_fingerprint_custom_order(g222, rng):
    order = rng.permutation(12).tolist()
    res = fingerprint(g222, [0, 1], 4, order)
    assert {0, 1} <= res.container
    assert replay(g222, res.S, 4, order).fS == res.fS


def test_build_containers_c4(c4):
    _, g = c4
    coll = build_containers(g, 2, [[0, 1], [2, 3]])
    assert coll.containers == {frozenset(range(4))}
    assert coll.covering([0, 1]) == frozenset(range(4))


def test_random_independent_sets_are_independent(g222, rng):
    for _ in range(50):
        assert g222.is_independent(random_independent_set(g222, rng))


def test_step_size_bound_compliant():
    P = FamilyParams(2, 16, 1)
    g = build_graph(family_boxes(generate_family(P)))
    rng = np.random.default_rng(5)
    for _ in range(100):
        res = fingerprint(g, random_independent_set(g, rng), P.M)
        for st in res.trace:
            if st.in_I:
                assert st.removed > P.s / P.num_types**2


def test_maximal_is_family_basics(c4):
    fam = generate_family(FamilyParams(2, 2, 1))
    dec = build_biclique_decomposition(fam)
    _, g = c4
    I = maximal_is_family(dec, ["X"] * dec.q, 4)
    assert g.is_independent(I) and I
    with pytest.raises(DomainError):
        maximal_is_family(dec, [], 4)
    single = fam.subfamily([0, 1])
    sdec = build_biclique_decomposition(single)
    assert maximal_is_family(sdec, [], 2) == frozenset({0, 1})


@pytest.mark.parametrize("d,s,k", [(2, 2, 2), (2, 3, 2), (3, 2, 2)])
def test_maximal_is_family_contains_maximal_sets(d, s, k, rng):
    fam = generate_family(FamilyParams(d, s, k))
    g = build_graph(family_boxes(fam))
    dec = build_biclique_decomposition(fam)
    for _ in range(50):
        I = set(random_independent_set(g, rng))
        # extend to a maximal independent set
        for v in range(g.n):
            if all(not g.has_edge(v, u) for u in I) and v not in I:
                I.add(v)
        got = maximal_is_family(dec, choices_for(dec, I), g.n)
        assert I <= got
        assert g.is_independent(got)
    for _ in range(30):
        z = rng.integers(0, 2, dec.q).tolist()
        assert g.is_independent(maximal_is_family(dec, z, g.n))


def test_compliant_scale_with_real_steps():
    # |T|=3, s=27=|T|^3, so 3M vertices and the loop must run
    P = FamilyParams(2, 27, 2)
    g = build_graph(family_boxes(generate_family(P)))
    rng = np.random.default_rng(8)
    sets = [random_independent_set(g, rng) for _ in range(40)]
    coll = build_containers(g, P.M, sets)
    assert all(coll.covering(I) is not None for I in sets)
    assert coll.max_fingerprint <= P.M * P.num_types**3 // P.s
    for I in sets[:10]:
        res = fingerprint(g, I, P.M)
        assert res.trace and len(res.container) <= 3 * P.M
        assert replay(g, res.S, P.M).fS == res.fS
        assert all(st.removed > P.s / P.num_types**2 for st in res.trace if st.in_I)
