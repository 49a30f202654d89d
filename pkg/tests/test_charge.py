"""Charge dynamics: moves, census, reachability, peak argument."""

import pytest

from gencluster import charge as ch


def test_worked_transitions():
    assert ch.mutate_charge((0, 1, 0), 1) == (1, 0, 0)
    assert ch.mutate_charge((0, 1, 0), 2) == (1, 0, 0)
    assert ch.mutate_charge((1, 0, 0), 1) == (0, 1, 0)
    assert ch.mutate_charge((1, 0, 0), 3) == (0, 1, 0)
    # all-negative sample, second move
    assert ch.mutate_charge((-1, -1, -1), 2) == (-1, 1, -2)
    assert ch.charge((-1, 1, -2)) == 4


def test_state_validation():
    with pytest.raises(ValueError):
        ch.mutate_charge((0, 0, 0), 1)
    with pytest.raises(ValueError):
        ch.mutate_charge((1, 0, 0), 4)


def test_classify_examples():
    assert ch.classify((0, 1, 0)).as_triple() == (1, 2, 0)
    assert ch.classify((-3, -1, -2)).as_triple() == (3, 0, 0)
    # a case-2 type [1,1,1] witness: alpha < 0, beta = 0, alpha + 2 gamma > 0
    assert ch.classify((-1, 0, 2)).as_triple() == (1, 1, 1)


def test_boundary_consistency_box50():
    assert ch.boundary_consistency_check(50) == []


def test_move_symmetry_box50():
    assert ch.move_symmetry_check(50) == []


def test_census_box30_matches_case_analysis():
    census = ch.type_census(30)
    assert ch.census_violations(census) == []
    assert not (set(census) & ch.FORBIDDEN_TYPES)
    assert (1, 1, 1) in census and (2, 0, 1) in census and (3, 0, 0) in census


def test_negative_octant_is_all_increasing():
    assert ch.negative_octant_types(12) == []


def test_reachability_claims():
    r = ch.bounded_reachability((0, 1, 0), (1, 0, 0), 1)
    assert r.reachable and len(r.path) == 1
    r = ch.bounded_reachability((0, 1, 0), (0, -1, 0), 1)
    assert not r.reachable
    r = ch.bounded_reachability((0, 1, 0), (0, -1, 0), 8)
    assert not r.reachable
    r = ch.bounded_reachability((0, 1, 0), (0, 1, 0), 5)
    assert r.reachable and r.path == []
    with pytest.raises(ValueError):
        ch.bounded_reachability((3, 3, 3), (0, 1, 0), 2)


def test_reachability_finds_paths_when_they_exist():
    src = (0, 1, 0)
    dst = ch.mutate_charge(ch.mutate_charge(src, 3), 2)
    bound = max(ch.charge(src), ch.charge(dst)) + 4
    r = ch.bounded_reachability(src, dst, bound)
    assert r.reachable
    state = src
    for v in r.path:
        state = ch.mutate_charge(state, v)
    assert state == dst


def test_peak_argument_box30():
    res = ch.peak_argument_check(30)
    assert res.ok, (res.delta_failures[:2], res.type_failures[:2], res.peak_failures[:2])
    assert res.peak_states > 0


def test_listed_conditions_contain_exact_ones():
    # the stated type conditions over-approximate on one half-line; every
    # actual [1,1,1] state still satisfies them
    for state in ch.states_in_box(15):
        if ch.classify(state).as_triple() == (1, 1, 1):
            assert ch.listed_111_conditions(state), state
    # the loose boundary: beta = 0, gamma < 0 in the mixed-sign region
    assert ch.listed_111_conditions((0, 0, -4))
    assert ch.classify((0, 0, -4)).as_triple() != (1, 1, 1)


def test_engine_cross_validation_agrees():
    res = ch.engine_cross_validation(4)
    assert res["attempted"]
    assert res["disagree"] == 0
    assert res["agree"] == len(list(ch.states_in_box(4))) * 3
