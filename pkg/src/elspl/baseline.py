"""Reference dynamic program over regeneration blocks, O(T^(2m+3)).

Also hosts the three boundary-position formulas (no free period, free period
last, free period first) that the fast engine folds into its suffix minima,
and the schedule replay shared by both engines.
"""
from __future__ import annotations

import time
from itertools import product
from dataclasses import dataclass, field

from .arrangements import ArrangementSpace
from .dp_core import DpTables, big_f, phi
from .instance import INFEASIBLE, Instance, Schedule, cost_add, make_schedule
from .results import Block, SolveResult


def psi_uv(instance: Instance, tables: DpTables, u: int, v: int):
    """Cheapest cost of block u..v with zero inventory before u and after v.

    Returns ``(cost, Block or None)``. Scans every free-quantity period t and
    every split (n, N) of the remaining periods, then the all-breakpoint
    arrangements of the whole block.
    """
    sp = tables.space
    omega, by_nu = sp.omega, sp.by_nu
    fbar_u = tables.fbar[u]
    best, arg = INFEASIBLE, None
    for t in range(u, v + 1):
        for n, N in product(by_nu[t - u], by_nu[v - t]):
            c = phi(instance, tables, u, t, v, n, N)
            if c < best:
                best, arg = c, Block(u, v, t, n, N)
    Duv = instance.cumulative_demand(u, v)
    for n in by_nu[v - u + 1]:
        if omega[n] == Duv and fbar_u[n] < best:
            best, arg = fbar_u[n], Block(u, v, None, n, sp.zero)
    return best, arg


@dataclass
class BaselineResult(SolveResult):
    psi_uv: dict = field(default_factory=dict)
    psi_uv_trace: dict = field(default_factory=dict)
    choice: list = field(default_factory=list)  # chosen v per u


def dp1_solve(instance: Instance, tables: DpTables | None = None) -> BaselineResult:
    """Psi_u = min over v of psi(u, v) + Psi_{v+1}, for u = T down to 1."""
    start = time.perf_counter()
    T = instance.T
    tables = tables or DpTables(instance)
    table, trace = {}, {}
    for u in range(1, T + 1):
        for v in range(u, T + 1):
            table[u, v], trace[u, v] = psi_uv(instance, tables, u, v)
    psi = [None] * (T + 2)
    psi[T + 1] = 0
    choice = [None] * (T + 2)
    for u in range(T, 0, -1):
        best, arg = INFEASIBLE, None
        for v in range(u, T + 1):
            c = cost_add(table[u, v], psi[v + 1])
            if c < best:
                best, arg = c, v
        psi[u], choice[u] = best, arg
    blocks, schedule = [], None
    if psi[1] < INFEASIBLE:
        u = 1
        while u <= T:
            v = choice[u]
            blocks.append(trace[u, v])
            u = v + 1
        schedule = reconstruct_schedule(instance, tables, blocks)
    return BaselineResult(
        engine="baseline",
        cost=psi[1],
        schedule=schedule,
        psi=psi[1:],
        seconds=time.perf_counter() - start,
        digest=instance.digest,
        blocks=blocks,
        psi_uv=table,
        psi_uv_trace=trace,
        choice=choice,
    )


# ---------------------------------------------------------------------------
# boundary-position formulas

def special_no_fractional(instance: Instance, tables: DpTables, u: int):
    """All of u..T at breakpoint levels: min fbar_{u,T}(n) with omega(n) = D(u,T)."""
    sp = tables.space
    target = instance.cumulative_demand(u, instance.T)
    row = tables.fbar[u]
    best, arg = INFEASIBLE, None
    for n in sp.by_nu[instance.T - u + 1]:
        if sp.omega[n] == target and row[n] < best:
            best, arg = row[n], Block(u, instance.T, None, n, sp.zero)
    return best, arg


def special_t_equals_v(instance: Instance, tables: DpTables, psi, u: int):
    """Free period t closes its block: fbar_{u,t-1}(n) + P_t(D(u,t) - omega(n)) + Psi_{t+1}."""
    sp = tables.space
    D = instance.cumulative_demand
    row = tables.fbar[u]
    best, arg = INFEASIBLE, None
    for t in range(u, instance.T + 1):
        tail = psi[t + 1]
        if tail is None:
            raise AssertionError(f"Psi[{t + 1}] read before it was finalized")
        Dut = D(u, t)
        for n in sp.by_nu[t - u]:
            if sp.omega[n] < Dut:
                c = cost_add(row[n], instance.production_cost(t, Dut - sp.omega[n]), tail)
                if c < best:
                    best, arg = c, Block(u, t, t, n, sp.zero)
    return best, arg


def special_t_equals_u(instance: Instance, tables: DpTables, psi, u: int):
    """Free period u opens a block u..v: P_u(D(u,v) - omega(N)) + F_u(N), N covering u+1..v."""
    sp = tables.space
    D = instance.cumulative_demand
    best, arg = INFEASIBLE, None
    for v in range(u + 1, instance.T + 1):
        Duv = D(u, v)
        for N in sp.by_nu[v - u]:
            if sp.omega[N] < Duv:
                c = cost_add(instance.production_cost(u, Duv - sp.omega[N]), big_f(instance, tables, psi, u, N))
                if c < best:
                    best, arg = c, Block(u, v, u, sp.zero, N)
    return best, arg


def reconstruct_schedule(instance: Instance, tables: DpTables, blocks) -> Schedule:
    """Expand a chain of blocks into per-period quantities."""
    D = instance.cumulative_demand
    sp = tables.space
    production = []
    expected = 1
    for b in blocks:
        if b.u != expected:
            raise RuntimeError(f"block chain broken at period {expected}")
        if b.t is None:
            production += tables.replay_fbar(b.u, b.n)
        else:
            if sp.nu[b.n] != b.t - b.u or sp.nu[b.N] != b.v - b.t:
                raise RuntimeError(f"inconsistent block trace {b}")
            production += tables.replay_fbar(b.u, b.n)
            production.append(D(b.u, b.v) - sp.omega[b.n] - sp.omega[b.N])
            production += tables.replay_fhat(b.t + 1, b.N)
        expected = b.v + 1
    if expected != instance.T + 1:
        raise RuntimeError("block chain does not cover the horizon")
    return make_schedule(instance, production)


def count_free_periods(instance: Instance, schedule: Schedule) -> list:
    """Free-quantity production periods per zero-inventory segment of a plan."""
    levels = set(instance.levels[1:])
    out, current = [], 0
    for j, x in enumerate(schedule.production, start=1):
        if x > 0 and x not in levels:
            current += 1
        if schedule.inventory[j] == 0:
            out.append(current)
            current = 0
    return out


def solve_baseline(instance: Instance) -> BaselineResult:
    start = time.perf_counter()
    result = dp1_solve(instance, DpTables(instance, ArrangementSpace.for_instance(instance)))
    result.seconds = time.perf_counter() - start
    return result
