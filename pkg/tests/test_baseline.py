import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elspl.baseline import (
    count_free_periods,
    dp1_solve,
    solve_baseline,
    special_no_fractional,
    special_t_equals_u,
    special_t_equals_v,
)
from elspl.dp_core import DpTables
from elspl.instance import INFEASIBLE, Instance, evaluate_schedule, generate_instance
from elspl.oracle import oracle_solve


def test_fixture(t2_instance):
    r = solve_baseline(t2_instance)
    assert r.cost == 27
    assert r.schedule.production == (3, 4)
    assert r.psi[-1] == 0


def test_psi_table_consistent():
    inst = generate_instance(42, 5, 1)
    r = solve_baseline(inst)
    T = inst.T
    for u in range(1, T + 1):
        best = min(r.psi_uv[u, v] + r.psi[v] if r.psi_uv[u, v] < INFEASIBLE else INFEASIBLE
                   for v in range(u, T + 1))
        assert r.psi[u - 1] == best


def test_specials_bound_psi():
    inst = generate_instance(9, 5, 1)
    tb = DpTables(inst)
    r = dp1_solve(inst, tb)
    psi = [None] + r.psi
    for u in range(1, inst.T):
        for fn in (special_t_equals_v, special_t_equals_u):
            assert fn(inst, tb, psi, u)[0] >= psi[u]
        assert special_no_fractional(inst, tb, u)[0] >= psi[u]


def test_free_period_after_backlog():
    # the corrected first-period case: d=(3,3), period 1 cheap beyond 5 units
    inst = Instance((3, 3), (5, 100), ((100, 0), (0, 0)), ((0, 0), (0, 0)), (1000, 1000), (1000, 1000))
    assert solve_baseline(inst).cost == oracle_solve(inst).cost == 100


def test_witness_counts_segments():
    inst = Instance.linear((3, 4, 0), (5, 100), (10, 15), (1, 2), 1, 2)
    r = solve_baseline(inst)
    assert count_free_periods(inst, r.schedule) == [1, 1, 0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(0, 2))
def test_matches_oracle(seed, T, m):
    inst = generate_instance(seed, T, m)
    r = solve_baseline(inst)
    assert r.cost == oracle_solve(inst).cost
    assert evaluate_schedule(inst, r.schedule) == r.cost
    assert all(c <= 1 for c in count_free_periods(inst, r.schedule))
