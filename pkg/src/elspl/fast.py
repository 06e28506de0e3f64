"""The O(T^(m+2)) engine.

For a fixed free-quantity period t, the candidate completions N (sorted by
end-of-t inventory) are split into m+1 contiguous sets, one per production
piece. Walking the prefix arrangements n in border-key order only ever moves
the set borders to the right, so each completion drifts monotonically from
the staging area, through the piece sets, into retirement. Each set keeps a
monotone queue of its completions by G value; its front is the best
completion of that piece.
"""
from __future__ import annotations

import time
from collections import deque

from .arrangements import lemma3_sort
from .baseline import reconstruct_schedule, special_no_fractional, special_t_equals_u, special_t_equals_v
from .dp_core import DpTables, UnfinalizedError
from .instance import INFEASIBLE, Instance, cost_add
from .results import Block, SolveResult


def check_and_remove(queue: deque, item, value) -> int:
    """Drop residents from the back whose value is strictly larger, then append.

    ``queue`` holds ``(item, value)`` pairs in non-decreasing value order.
    Returns the number of residents removed.
    """
    removed = 0
    while queue and queue[-1][1] > value:
        queue.pop()
        removed += 1
    queue.append((item, value))
    return removed


class BorderedSets:
    """Piece sets for one period t over the Ihat-sorted completions.

    Positions refer to the sorted completion sequence. ``bound[l]`` is the
    first position whose Ihat exceeds ``B_l + K``; hence positions below
    ``bound[0]`` are retired, ``[bound[l-1], bound[l])`` is piece set l and
    ``[bound[m+1], q)`` is the staging area.
    """

    def __init__(self, keys, fvals, units, breakpoints, K):
        self.keys = keys
        self.fvals = fvals
        self.units = units  # unit cost per piece for this period
        self.borders = (0,) + tuple(breakpoints)  # B_0 .. B_{m+1}
        self.pieces = len(breakpoints)
        self.q = len(keys)
        self.K = K
        self.queues = [None] + [deque() for _ in range(self.pieces)]
        self.inserts = 0
        self.removals = 0
        self.moves = 0
        self.retired = 0
        self.history = None  # optional per-position list of visited sets
        bound = []
        p = 0
        for b in self.borders:
            while p < self.q and keys[p] <= b + K:
                p += 1
            bound.append(p)
        self.bound = bound
        self.retired = bound[0]
        for ell in range(1, self.pieces + 1):
            for pos in range(bound[ell - 1], bound[ell]):
                self._enter(ell, pos)

    def g_value(self, ell: int, pos: int) -> int:
        f = self.fvals[pos]
        if f >= INFEASIBLE:
            return INFEASIBLE
        return self.units[ell - 1] * self.keys[pos] + f

    def _enter(self, ell, pos):
        self.removals += check_and_remove(self.queues[ell], pos, self.g_value(ell, pos))
        self.inserts += 1
        if self.history is not None:
            self.history[pos].append(ell)

    def reborder(self, K: int):
        """Move the borders to ``B_l + K`` (K must not decrease)."""
        if K < self.K:
            raise AssertionError("border key decreased; arrangements out of order")
        self.K = K
        keys, bound, queues = self.keys, self.bound, self.queues
        for ell in range(self.pieces, -1, -1):
            limit = self.borders[ell] + K
            p = bound[ell]
            while p < self.q and keys[p] <= limit:
                # p leaves set ell+1 (staging when ell = m+1) for set ell
                if ell < self.pieces:
                    above = queues[ell + 1]
                    if above and above[0][0] == p:
                        above.popleft()
                        self.removals += 1
                if ell >= 1:
                    self._enter(ell, p)
                    self.moves += 1
                else:
                    self.retired += 1
                p += 1
            bound[ell] = p

    def members(self, ell: int) -> range:
        return range(self.bound[ell - 1], self.bound[ell])

    def front(self, ell: int):
        queue = self.queues[ell]
        return queue[0] if queue else None

    def audit(self):
        """Assert the partition, ordering and staircase invariants."""
        keys, K = self.keys, self.K
        bound = self.bound
        assert all(a <= b for a, b in zip(bound, bound[1:])), "borders out of order"
        assert all(keys[p] <= K for p in range(bound[0])), "live completion retired"
        for ell in range(1, self.pieces + 1):
            lo, hi = self.borders[ell - 1] + K, self.borders[ell] + K
            span = self.members(ell)
            assert all(lo < keys[p] <= hi for p in span), f"set {ell} holds an out-of-border completion"
            queue = list(self.queues[ell])
            positions = [p for p, _ in queue]
            assert all(p in span for p in positions), f"queue {ell} not a subset of its set"
            assert positions == sorted(positions), f"queue {ell} not in Ihat order"
            values = [g for _, g in queue]
            assert values == sorted(values), f"queue {ell} not in G order"
            # survivors are exactly the completions no later member beats strictly
            stair, best = [], INFEASIBLE + 1
            for p in reversed(span):
                g = self.g_value(ell, p)
                if g <= best:
                    stair.append(p)
                    best = g
            assert positions == stair[::-1], f"queue {ell} differs from the staircase"
        assert all(keys[p] > self.borders[-1] + K for p in range(bound[-1], self.q)), "staging holds an admissible completion"


def solve_fast(instance: Instance, check_level: int = 0, tables: DpTables | None = None, sequences=None) -> SolveResult:
    """Psi_u for every u by folding per-period minima, plus an optimal plan.

    ``check_level`` 1 audits the bordered sets every 64 steps, 2 after every
    step and additionally compares every evaluated value against a full scan.
    """
    start = time.perf_counter()
    T = instance.T
    tables = tables or DpTables(instance)
    sp = tables.space
    seqs = sequences or lemma3_sort(instance, sp)
    D = instance.cumulative_demand
    nu, omega = sp.nu, sp.omega

    psi = [None] * (T + 2)
    psi_block = [None] * (T + 2)
    psi[T + 1] = 0
    psi[T] = instance.production_cost(T, instance.demands[T - 1])
    psi_block[T] = Block(T, T, T, sp.zero, sp.zero)

    phi_acc = [INFEASIBLE] * (T + 2)  # running min over processed t of phi_{u,t}(n)
    phi_block = [None] * (T + 2)
    M = {}
    per_t = {}
    special_min = {}

    def process(t):
        order = seqs.hat[t]
        keys = seqs.hat_keys[t]
        fhat_next = tables.fhat[t + 1]
        fvals = []
        for pos, N in enumerate(order):
            tail = psi[t + nu[N] + 1]
            if tail is None:
                raise UnfinalizedError(f"Psi[{t + nu[N] + 1}] read before it was finalized")
            fvals.append(cost_add(instance.inventory_cost(t, keys[pos]), fhat_next[N], tail))
        setups, units = instance.setups[t - 1], instance.units[t - 1]
        arrangements = [(n, K) for n, K in zip(seqs.tilde[t], seqs.tilde_keys[t]) if nu[n] <= t - 1]
        sets = None
        for step, (n, K) in enumerate(arrangements):
            if sets is None:
                sets = BorderedSets(keys, fvals, units, instance.breakpoints, K)
            else:
                sets.reborder(K)
            if check_level >= 2 or (check_level == 1 and step % 64 == 0):
                sets.audit()
            u2 = t - nu[n]
            if omega[n] >= D(u2, T):
                continue
            left = tables.fbar[u2][n]
            if left >= INFEASIBLE:
                continue
            best, best_pos = INFEASIBLE, None
            for ell in range(1, sets.pieces + 1):
                head = sets.front(ell)
                if head is None or head[1] >= INFEASIBLE:
                    continue
                c = left + setups[ell - 1] - units[ell - 1] * K + head[1]
                if c < best:
                    best, best_pos = c, head[0]
            if check_level >= 2:
                _audit_value(instance, tables, psi, t, u2, n, order, best)
            if best < M.get((u2, t), INFEASIBLE):
                M[u2, t] = best
            if best < phi_acc[u2]:
                N = order[best_pos]
                phi_acc[u2] = best
                phi_block[u2] = Block(u2, t + nu[N], t, n, N)
        if sets is not None:
            per_t[t] = {
                "size": len(order),
                "inserts": sets.inserts,
                "removals": sets.removals,
                "moves": sets.moves,
                "retired": sets.retired,
                "arrangements": len(arrangements),
            }

    for u in range(T - 1, 0, -1):
        best, block = INFEASIBLE, None
        for fn in (special_no_fractional, special_t_equals_v, special_t_equals_u):
            args = (instance, tables, u) if fn is special_no_fractional else (instance, tables, psi, u)
            c, b = fn(*args)
            if c < best:
                best, block = c, b
        special_min[u] = best
        if u <= T - 2:
            process(u + 1)
        if phi_acc[u] < best:
            best, block = phi_acc[u], phi_block[u]
        psi[u], psi_block[u] = best, block

    blocks, schedule = [], None
    if psi[1] < INFEASIBLE:
        u = 1
        while u <= T:
            blocks.append(psi_block[u])
            u = psi_block[u].v + 1
        schedule = reconstruct_schedule(instance, tables, blocks)
    pieces = instance.m + 1
    counters = {
        "inserts": sum(c["inserts"] for c in per_t.values()),
        "removals": sum(c["removals"] for c in per_t.values()),
        "moves": sum(c["moves"] for c in per_t.values()),
        "reborders": sum(c["arrangements"] for c in per_t.values()),
        "bound": sum(pieces * c["size"] for c in per_t.values()),
        "sort_touches": seqs.touches,
        "per_t": per_t,
    }
    result = SolveResult(
        engine="fast",
        cost=psi[1],
        schedule=schedule,
        psi=psi[1:],
        seconds=time.perf_counter() - start,
        counters=counters,
        digest=instance.digest,
        blocks=blocks,
    )
    result.M = M
    result.special_min = special_min
    return result


def _audit_value(instance, tables, psi, t, u, n, order, value):
    # full scan over every completion whose implied quantity is producible
    sp = tables.space
    D = instance.cumulative_demand
    best = INFEASIBLE
    for N in order:
        v = t + sp.nu[N]
        x = D(u, v) - sp.omega[n] - sp.omega[N]
        if 0 < x <= instance.capacity:
            c = cost_add(
                tables.fbar[u][n],
                instance.production_cost(t, x),
                instance.inventory_cost(t, D(t + 1, v) - sp.omega[N]),
                tables.fhat[t + 1][N],
                psi[v + 1],
            )
            best = min(best, c)
    assert best == value, f"period {t}, start {u}: queues give {value}, full scan gives {best}"
