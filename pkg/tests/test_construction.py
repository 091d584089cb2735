import json
from fractions import Fraction

import pytest

from boxblocks.construction import (
    SampleConfig,
    build_coloring_instance,
    build_piercing_instance,
    build_ramsey_instance,
    choose_parameters,
    run_trials,
    sample_family,
    sample_indices,
    truncate_blow_up,
)
from boxblocks.errors import DomainError, ResourceError
from boxblocks.family import generate_family
from boxblocks.geometry import FamilyParams
from boxblocks.graph import build_graph
from boxblocks.io import dumps
from boxblocks.solvers import chromatic_number, max_clique, max_independent_set


def test_golden_sample():
    # recorded at first implementation; PCG64 output is platform independent
    assert sample_indices(12, Fraction(1, 2), 42, 0) == [0, 3, 4, 6, 8, 9]
    assert sample_indices(12, Fraction(1, 2), 42, 1) == [2, 3, 5]
    fam = generate_family(FamilyParams(2, 2, 2))
    X = sample_family(fam, SampleConfig(Fraction(1, 2), 42))
    assert [(b.t, b.p) for b in X] == [
        ((0, 2), (0, 0)), ((0, 2), (3, 0)), ((1, 1), (0, 0)), ((1, 1), (1, 0)), ((2, 0), (0, 0)), ((2, 0), (0, 1)),
    ]


def test_sample_config_validation():
    with pytest.raises(DomainError):
        SampleConfig(Fraction(0), 1)
    with pytest.raises(DomainError):
        SampleConfig(Fraction(3, 2), 1)
    with pytest.raises(DomainError):
        SampleConfig(Fraction(1, 2), -1)


def test_p_one_keeps_everything(fam222):
    assert list(sample_family(fam222, SampleConfig(Fraction(1), 9))) == list(fam222)


def test_expected_size_one():
    fam = generate_family(FamilyParams(3, 2, 2))
    n = len(fam)
    sizes = [len(sample_indices(n, Fraction(1, n), 3, t)) for t in range(2000)]
    assert abs(sum(sizes) / len(sizes) - 1) < 0.1


def test_choose_parameters():
    c = choose_parameters(10**6, 3, budget=10**30)
    assert (c.k, c.s, c.num_types, c.p) == (2, 4096, 6, Fraction(1, 24))
    assert choose_parameters(1, 3, budget=10**30).k == 2
    ks = [choose_parameters(n, 3, budget=10**60).k for n in (1, 10, 10**6, 10**15, 10**16, 10**40)]
    assert ks == sorted(ks)
    with pytest.raises(ResourceError) as exc:
        choose_parameters(10**6, 3)
    assert exc.value.payload.k == 2
    with pytest.raises(DomainError):
        choose_parameters(10, 2)


def test_trials_zero_and_full():
    P = FamilyParams(2, 2, 2)
    rep = run_trials(P, SampleConfig(Fraction(1), 0, trials=0))
    assert rep.trials == [] and rep.summary()["trials"] == 0
    rep = run_trials(P, SampleConfig(Fraction(1), 0, trials=3))
    assert all(r["omega"] == 3 and r["alpha"] == 4 for r in rep.trials)


def test_trials_reproducible_and_monotone():
    P = FamilyParams(3, 2, 2)
    cfg = SampleConfig(Fraction(1, 4), 11, trials=10)
    a, b = dumps(run_trials(P, cfg).to_record()), dumps(run_trials(P, cfg).to_record())
    assert a == b
    rec = json.loads(a)
    for r in rec["per_trial"]:
        assert r["omega"] <= 6 and r["alpha"] <= P.M
        X = sample_family(generate_family(P), cfg, r["trial"])
        from boxblocks.graph import family_boxes
        assert r["omega"] == max_clique(build_graph(family_boxes(X))).value


def test_trials_flag_alpha_over_budget():
    P = FamilyParams(2, 3, 2)
    rep = run_trials(P, SampleConfig(Fraction(1), 1, trials=1), mis_budget=5)
    r = rep.trials[0]
    assert r["alpha"] is None and not r["alpha_exact"]
    assert r["alpha_lower"] <= 9 <= r["alpha_upper"]


def test_piercing_instance_full_family():
    X, stats = build_piercing_instance(4, FamilyParams(2, 2, 2), SampleConfig(Fraction(1), 0))
    assert stats["tau_lower"] == 4 == stats["tau"]
    assert stats["nu"] <= stats["alpha_G"]


def test_piercing_instance_sampled():
    X, stats = build_piercing_instance(5, FamilyParams(3, 2, 2), SampleConfig(Fraction(1, 6), 2))
    assert stats["nu"] <= 5
    assert stats["tau_lower"] == -(-stats["size"] // stats["omega"])
    if "tau" in stats:
        assert stats["tau"] >= stats["tau_lower"]


def test_ramsey(c4):
    boxes, _ = c4
    out, stats = build_ramsey_instance(12, boxes, 3)
    assert len(out) == 12 and (stats["omega"], stats["alpha"], stats["ramsey"]) == (6, 2, 6)
    same, _ = build_ramsey_instance(4, boxes, 1)
    assert same == boxes
    trunc, st2 = build_ramsey_instance(10, boxes, 3)
    assert len(trunc) == 10 and st2["omega"] <= 6 and st2["alpha"] <= 2


def test_truncation_order(c4):
    boxes, _ = c4
    out = truncate_blow_up(boxes, 2, 6)
    assert out == [boxes[0], boxes[0], boxes[1], boxes[1], boxes[2], boxes[3]]
    with pytest.raises(DomainError):
        truncate_blow_up(boxes, 2, 9)


def test_coloring_instance(boxes222):
    out, stats = build_coloring_instance(boxes222, 6)
    assert stats["multiplicity"] == 2 and stats["n"] == 24 and Fraction(stats["chi_lower"]) == 6
    assert stats["omega"] <= 6
    assert stats["chi"] >= stats["chi_lower_int"]
    _, st1 = build_coloring_instance(boxes222, 3)
    assert st1["multiplicity"] == 1
    with pytest.raises(DomainError):
        build_coloring_instance(boxes222, 2)
