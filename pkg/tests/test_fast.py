from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elspl.baseline import solve_baseline
from elspl.fast import BorderedSets, check_and_remove, solve_fast
from elspl.instance import Instance, generate_instance
from elspl.oracle import oracle_solve


def test_check_and_remove():
    q = deque()
    assert check_and_remove(q, "a", 5) == 0
    assert check_and_remove(q, "b", 7) == 0
    assert check_and_remove(q, "c", 5) == 1  # 7 goes, the equal 5 stays
    assert [x for x, _ in q] == ["a", "c"]
    assert check_and_remove(q, "d", 1) == 2
    assert list(q) == [("d", 1)]


def test_bordered_sets_walk():
    keys = [-3, -1, 0, 2, 4, 6, 9]
    fvals = [10, 4, 8, 1, 7, 3, 0]
    sets = BorderedSets(keys, fvals, units=(2, 1), breakpoints=(3, 6), K=-2)
    sets.audit()
    for K in (-1, 0, 2, 3, 7, 9):
        sets.reborder(K)
        sets.audit()
        for ell in (1, 2):
            members = list(sets.members(ell))
            if members:
                best = min(sets.g_value(ell, p) for p in members)
                assert sets.front(ell)[1] == best
    assert sets.retired == len(keys)
    with pytest.raises(AssertionError):
        sets.reborder(0)


def test_fixture(t2_instance):
    r = solve_fast(t2_instance, check_level=2)
    assert r.cost == 27
    assert r.schedule.production == (3, 4)


def test_single_period():
    inst = Instance.linear((4,), (10,), (3,), (2,), 1, 1)
    assert solve_fast(inst).cost == 11


def test_counters_bounded():
    inst = generate_instance(17, 8, 1)
    r = solve_fast(inst)
    for t, c in r.counters["per_t"].items():
        assert c["inserts"] <= (inst.m + 1) * c["size"]
        assert c["removals"] <= (inst.m + 1) * c["size"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(0, 2))
def test_matches_baseline_with_audit(seed, T, m):
    inst = generate_instance(seed, T, m)
    f = solve_fast(inst, check_level=2)
    b = solve_baseline(inst)
    assert f.psi == b.psi
    assert f.cost == oracle_solve(inst).cost
    assert f.schedule.total_cost == f.cost
