"""Shared recurrences over arrangement runs.

``fbar[u][n]`` is the cheapest way to run periods u .. u+nu(n)-1 from zero
entering inventory, producing exactly arrangement n. ``fhat[j][N]`` is the
cheapest way to run periods j .. j+nu(N)-1 so that inventory is zero after
the last one. Both are flat lists over the arrangement rank, filled
with INFEASIBLE where undefined.
"""
from __future__ import annotations

from .arrangements import ArrangementSpace
from .instance import INFEASIBLE, Instance, cost_add


def compute_fbar(instance: Instance, space: ArrangementSpace) -> list:
    T, m = instance.T, space.m
    levels, sub = space.levels, space.sub
    omega, counts, by_nu = space.omega, space.counts, space.by_nu
    D = instance.cumulative_demand
    H = instance.inventory_cost
    fbar = [None] * (T + 2)
    for u in range(1, T + 2):
        row = [INFEASIBLE] * space.size
        row[space.zero] = 0
        for k in range(1, T - u + 2):
            i = u + k - 1
            level_cost = [instance.production_cost(i, b) for b in levels]
            Dui = D(u, i)
            for idx in by_nu[k]:
                c = counts[idx]
                hold = H(i, omega[idx] - Dui)
                best = INFEASIBLE
                for tau in range(m + 1):
                    if c[tau]:
                        prev = row[sub[tau][idx]]
                        if prev < INFEASIBLE:
                            v = prev + level_cost[tau] + hold
                            if v < best:
                                best = v
                row[idx] = best
        fbar[u] = row
    return fbar


def compute_fhat(instance: Instance, space: ArrangementSpace) -> list:
    T, m = instance.T, space.m
    levels, sub = space.levels, space.sub
    omega, counts, by_nu = space.omega, space.counts, space.by_nu
    D = instance.cumulative_demand
    H = instance.inventory_cost
    fhat = [None] * (T + 2)
    last = [INFEASIBLE] * space.size
    last[space.zero] = 0
    fhat[T + 1] = last
    for j in range(T, 0, -1):
        nxt = fhat[j + 1]
        row = [INFEASIBLE] * space.size
        row[space.zero] = 0
        level_cost = [instance.production_cost(j, b) for b in levels]
        for k in range(1, T - j + 2):
            v_end = j + k - 1
            Dnext = D(j + 1, v_end)
            for idx in by_nu[k]:
                c = counts[idx]
                best = INFEASIBLE
                for tau in range(m + 1):
                    if c[tau]:
                        rest = sub[tau][idx]
                        prev = nxt[rest]
                        if prev < INFEASIBLE:
                            v = prev + level_cost[tau] + H(j, Dnext - omega[rest])
                            if v < best:
                                best = v
                row[idx] = best
        fhat[j] = row
    return fhat


class DpTables:
    """Both arrangement tables for one instance plus the arrangement space."""

    def __init__(self, instance: Instance, space: ArrangementSpace | None = None):
        self.instance = instance
        self.space = space or ArrangementSpace.for_instance(instance)
        self.fbar = compute_fbar(instance, self.space)
        self.fhat = compute_fhat(instance, self.space)

    def fbar_value(self, u: int, i: int, n: int) -> int:
        """fbar_{u,i}(n); requires nu(n) == i - u + 1."""
        if self.space.nu[n] != i - u + 1:
            raise ValueError(f"arrangement has {self.space.nu[n]} periods, range {u}..{i} has {i - u + 1}")
        return self.fbar[u][n]

    def fhat_value(self, j: int, v: int, N: int) -> int:
        if self.space.nu[N] != v - j + 1:
            raise ValueError(f"arrangement has {self.space.nu[N]} periods, range {j}..{v} has {v - j + 1}")
        return self.fhat[j][N]

    def populated(self) -> tuple:
        """(fbar, fhat) counts of defined states: one per (start, arrangement) pair."""
        T, nu = self.instance.T, self.space.nu
        nb = sum(1 for u in range(1, T + 1) for i in self.space.valid if 1 <= nu[i] <= T - u + 1)
        nh = sum(1 for j in range(1, T + 1) for i in self.space.valid if 1 <= nu[i] <= T - j + 1)
        return nb, nh

    # ---- argmin replay for schedule reconstruction

    def replay_fbar(self, u: int, n: int) -> list:
        """Per-period quantities of periods u .. u+nu(n)-1 attaining fbar[u][n]."""
        inst, sp = self.instance, self.space
        out = []
        i = u + sp.nu[n] - 1
        while i >= u:
            target = self.fbar[u][n]
            hold = inst.inventory_cost(i, sp.omega[n] - inst.cumulative_demand(u, i))
            for tau in range(sp.m + 1):
                if sp.counts[n][tau]:
                    prev = sp.sub[tau][n]
                    if cost_add(self.fbar[u][prev], inst.production_cost(i, sp.levels[tau]), hold) == target:
                        out.append(sp.levels[tau])
                        n = prev
                        break
            else:
                raise RuntimeError(f"cannot replay fbar at period {i}")
            i -= 1
        return out[::-1]

    def replay_fhat(self, j: int, N: int) -> list:
        """Per-period quantities of periods j .. j+nu(N)-1 attaining fhat[j][N]."""
        inst, sp = self.instance, self.space
        out = []
        v_end = j + sp.nu[N] - 1
        while N != sp.zero:
            target = self.fhat[j][N]
            for tau in range(sp.m + 1):
                if sp.counts[N][tau]:
                    rest = sp.sub[tau][N]
                    hold = inst.inventory_cost(j, inst.cumulative_demand(j + 1, v_end) - sp.omega[rest])
                    if cost_add(self.fhat[j + 1][rest], inst.production_cost(j, sp.levels[tau]), hold) == target:
                        out.append(sp.levels[tau])
                        N = rest
                        break
            else:
                raise RuntimeError(f"cannot replay fhat at period {j}")
            j += 1
        return out


def phi(instance: Instance, tables: DpTables, u: int, t: int, v: int, n: int, N: int) -> int:
    """Cost of periods u..v with t the only free-quantity period.

    Periods before t follow arrangement n, periods after t follow N, and
    inventory is zero before u and after v.
    """
    sp = tables.space
    if sp.nu[n] != t - u or sp.nu[N] != v - t:
        raise ValueError("arrangement sizes do not match the period range")
    D = instance.cumulative_demand
    x = D(u, v) - sp.omega[n] - sp.omega[N]
    return cost_add(
        tables.fbar[u][n],
        instance.production_cost(t, x),
        instance.inventory_cost(t, D(t + 1, v) - sp.omega[N]),
        tables.fhat[t + 1][N],
    )


class UnfinalizedError(AssertionError):
    pass


def big_f(instance: Instance, tables: DpTables, psi, t: int, N: int) -> int:
    """Inventory cost of t plus the best cost of t+1..T when N covers t+1..t+nu(N).

    ``psi`` is indexed 1..T+1; an entry of None means not yet finalized.
    """
    sp = tables.space
    k = sp.nu[N]
    if t + k > instance.T:
        raise ValueError("arrangement runs past the horizon")
    tail = psi[t + k + 1]
    if tail is None:
        raise UnfinalizedError(f"Psi[{t + k + 1}] read before it was finalized")
    level = instance.cumulative_demand(t + 1, t + k) - sp.omega[N]
    return cost_add(instance.inventory_cost(t, level), tables.fhat[t + 1][N], tail)


def big_g(instance: Instance, tables: DpTables, psi, t: int, ell: int, N: int) -> int:
    f = big_f(instance, tables, psi, t, N)
    if f >= INFEASIBLE:
        return INFEASIBLE
    level = instance.cumulative_demand(t + 1, t + tables.space.nu[N]) - tables.space.omega[N]
    return instance.units[t - 1][ell - 1] * level + f
