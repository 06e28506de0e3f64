"""Pseudo-polynomial dynamic program over inventory levels.

Used only to certify the arrangement-based engines on small integer data.
"""
from __future__ import annotations

import itertools
import time

import numpy as np

from .instance import INFEASIBLE, Instance, make_schedule
from .results import SolveResult

DEFAULT_BUDGET = 10 ** 8


class OracleBudgetError(RuntimeError):
    pass


def oracle_states(instance: Instance) -> int:
    T, total, cap = instance.T, instance.total_demand, instance.capacity
    return sum(total + 1 for _ in range(T)) * (cap + 1)


def oracle_solve(instance: Instance, budget_states: int = DEFAULT_BUDGET, prune: bool = True) -> SolveResult:
    """Exact optimum by value[j][I] = min_x value[j-1][I - x + d_j] + P_j(x) + H_j(I).

    Inventory after period j is restricted to [-D(1,j), D(j+1,T)] (pass
    ``prune=False`` to use [-D(1,T), D(1,T)] for every period instead).
    """
    start = time.perf_counter()
    T, cap = instance.T, instance.capacity
    total = instance.total_demand
    D = instance.cumulative_demand
    states = oracle_states(instance)
    if states > budget_states:
        raise OracleBudgetError(f"oracle out of budget: {states} states > {budget_states}")

    def bounds(j):
        if prune:
            return -D(1, j), D(j + 1, T)
        return (0, 0) if j in (0, T) else (-total, total)

    lo, hi = 0, 0
    prev = np.zeros(1, dtype=np.int64)
    choices = []
    for j in range(1, T + 1):
        d = instance.demands[j - 1]
        nlo, nhi = bounds(j)
        cur = np.full(nhi - nlo + 1, INFEASIBLE, dtype=np.int64)
        arg = np.full(nhi - nlo + 1, -1, dtype=np.int64)
        for x in range(cap + 1):
            px = instance.production_cost(j, x)
            # I = I_prev + x - d must land in [nlo, nhi]
            a = max(nlo, lo + x - d)
            b = min(nhi, hi + x - d)
            if a > b:
                continue
            src = prev[a - x + d - lo: b - x + d - lo + 1]
            cand = src + px
            window = cur[a - nlo: b - nlo + 1]
            better = (cand < window) & (src < INFEASIBLE)
            window[better] = cand[better]
            arg[a - nlo: b - nlo + 1][better] = x
        levels = np.arange(nlo, nhi + 1)
        hcost = np.array([instance.inventory_cost(j, int(i)) for i in levels], dtype=np.int64)
        finite = cur < INFEASIBLE
        cur[finite] += hcost[finite]
        choices.append((nlo, arg))
        prev, lo, hi = cur, nlo, nhi
    cost = int(prev[0 - lo])
    schedule = None
    if cost < INFEASIBLE:
        production = [0] * T
        level = 0
        for j in range(T, 0, -1):
            nlo, arg = choices[j - 1]
            x = int(arg[level - nlo])
            production[j - 1] = x
            level = level - x + instance.demands[j - 1]
        schedule = make_schedule(instance, production)
    return SolveResult(
        engine="oracle",
        cost=cost,
        schedule=schedule,
        seconds=time.perf_counter() - start,
        counters={"states": states},
        digest=instance.digest,
    )


def enumerate_solve(instance: Instance) -> int:
    """Brute force over every integer plan; only for T <= 4 and capacity <= 20."""
    T, cap = instance.T, instance.capacity
    if T > 4 or cap > 20:
        raise ValueError("enumerate_solve is limited to T <= 4 and capacity <= 20")
    total = instance.total_demand
    best = INFEASIBLE
    for head in itertools.product(range(cap + 1), repeat=T - 1):
        last = total - sum(head)
        if not 0 <= last <= cap:
            continue
        plan = head + (last,)
        level, cost = 0, 0
        for j, x in enumerate(plan, start=1):
            level += x - instance.demands[j - 1]
            cost += instance.production_cost(j, x) + instance.inventory_cost(j, level)
        best = min(best, cost)
    return best
