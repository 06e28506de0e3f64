import pytest

from elspl.instance import INFEASIBLE, Instance, generate_instance
from elspl.oracle import OracleBudgetError, enumerate_solve, oracle_solve, oracle_states

# costs certified by brute-force enumeration, frozen
FROZEN = [
    (700, 1, 0, 36), (701, 2, 1, 90), (702, 3, 2, 25), (703, 4, 0, 178),
    (704, 1, 1, 24), (705, 2, 2, 38), (706, 3, 0, 83), (707, 4, 1, 81),
    (708, 1, 2, 35), (709, 2, 0, 70), (710, 3, 1, 65), (711, 4, 2, 40),
]


def small(seed, T, m):
    return generate_instance(seed, T, m, demand_max=5, breakpoint_max=8)


def test_fixture(t2_instance):
    r = oracle_solve(t2_instance)
    assert r.cost == 27
    assert r.schedule.production == (3, 4)


@pytest.mark.parametrize("seed,T,m,cost", FROZEN)
def test_frozen_values(seed, T, m, cost):
    inst = small(seed, T, m)
    assert oracle_solve(inst).cost == cost
    assert oracle_solve(inst, prune=False).cost == cost
    assert enumerate_solve(inst) == cost


def test_schedule_evaluates_to_cost():
    for seed in range(30):
        inst = generate_instance(seed, 1 + seed % 6, seed % 3)
        r = oracle_solve(inst)
        assert r.schedule.total_cost == r.cost


def test_budget_guard():
    inst = generate_instance(1, 8, 1)
    with pytest.raises(OracleBudgetError):
        oracle_solve(inst, budget_states=oracle_states(inst) - 1)


def test_enumerate_limits():
    with pytest.raises(ValueError):
        enumerate_solve(generate_instance(1, 5, 1))


def test_zero_demand_costs_nothing():
    inst = Instance.linear((0, 0, 0), (4, 9), (7, 9), (1, 1), 2, 3)
    assert oracle_solve(inst).cost == 0
    assert enumerate_solve(inst) == 0
    assert INFEASIBLE > 0
