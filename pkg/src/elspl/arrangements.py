"""Production arrangements and their sorted orderings.

An arrangement ``n = (n_0, ..., n_m)`` counts how many periods of a run
produce each stationary level ``B_tau``. Arrangements are addressed by their
rank in mixed-radix order (base T+1 per component) so tables can be flat
lists and ties break the same way as on the mixed-radix code.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from .instance import Instance


class Arrangement(NamedTuple):
    counts: tuple
    nu: int
    omega: int
    index: int


def enumerate_pi_k(T: int, m: int, k: int) -> list:
    """All count vectors of length m+1 with entries summing to k, lexicographic."""
    if not 0 <= k <= T:
        return []
    return [c for c in itertools.product(range(k + 1), repeat=m + 1) if sum(c) == k]


def _compositions(parts: int, total: int):
    # every tuple of ``parts`` non-negative ints with sum <= total
    if parts == 0:
        yield ()
        return
    for head in range(total + 1):
        for rest in _compositions(parts - 1, total - head):
            yield (head,) + rest


class ArrangementSpace:
    """Every arrangement with nu(n) <= T, with cached nu and omega.

    Arrangements are numbered by rank in mixed-radix order (base T+1, the
    last level most significant), so only the C(T+r, r) valid count vectors
    take storage. ``sub[tau][i]`` / ``add[tau][i]`` give the rank with one
    period of level tau removed / added, or -1.
    """

    def __init__(self, T: int, levels):
        self.T = T
        self.levels = tuple(levels)  # 0 first, then the stationary quantities
        self.m = len(self.levels) - 1
        base = T + 1
        self.strides = tuple(base ** tau for tau in range(self.m + 1))
        vectors = sorted(_compositions(self.m + 1, T), key=lambda c: c[::-1])
        self.size = len(vectors)
        self.zero = 0
        self.counts = vectors
        self.code = [sum(a * s for a, s in zip(c, self.strides)) for c in vectors]
        self._rank = {c: i for i, c in enumerate(vectors)}
        self.nu = [sum(c) for c in vectors]
        self.omega = [sum(a * b for a, b in zip(c, self.levels)) for c in vectors]
        self.by_nu = [[] for _ in range(T + 1)]
        for i, k in enumerate(self.nu):
            self.by_nu[k].append(i)
        self.valid = [i for k in range(T + 1) for i in self.by_nu[k]]
        self.sub, self.add = [], []
        for tau in range(self.m + 1):
            sub, add = [-1] * self.size, [-1] * self.size
            for i, c in enumerate(vectors):
                if c[tau]:
                    j = self._rank[c[:tau] + (c[tau] - 1,) + c[tau + 1:]]
                    sub[i] = j
                    add[j] = i
            self.sub.append(sub)
            self.add.append(add)

    @classmethod
    def for_instance(cls, instance: Instance) -> "ArrangementSpace":
        return cls(instance.T, instance.levels)

    def index(self, counts) -> int:
        key = tuple(counts)
        if len(key) != self.m + 1 or key not in self._rank:
            raise ValueError(f"not an arrangement of this space: {counts}")
        return self._rank[key]

    def arrangement(self, idx: int) -> Arrangement:
        return Arrangement(self.counts[idx], self.nu[idx], self.omega[idx], idx)

    def pi_k(self, k: int) -> list:
        return self.by_nu[k] if 0 <= k <= self.T else []

    def component(self, idx: int, tau: int) -> int:
        return self.counts[idx][tau]


def ihat(instance: Instance, t: int, counts) -> int:
    """End-of-period-t inventory when the next nu(N) periods follow arrangement N."""
    k = sum(counts)
    if t + k > instance.T:
        raise ValueError(f"arrangement of {k} periods does not fit after period {t}")
    omega = sum(a * b for a, b in zip(counts, instance.levels))
    return instance.cumulative_demand(t + 1, t + k) - omega


def border_key(instance: Instance, t: int, counts) -> int:
    """K_t(n) = omega(n) - D(t - nu(n), t); set borders are B_l + K_t(n)."""
    k = sum(counts)
    omega = sum(a * b for a, b in zip(counts, instance.levels))
    return omega - instance.cumulative_demand(t - k, t)


@dataclass
class SortedHorizonSequences:
    """``hat[t]`` orders {N : nu(N) <= T-t} by Ihat_t ascending, ties by index.

    ``tilde[t]`` orders {n : nu(n) <= t} by the border key ascending, ties by
    index. ``hat_keys``/``tilde_keys`` hold the aligned key values.
    """

    hat: dict = field(default_factory=dict)
    hat_keys: dict = field(default_factory=dict)
    tilde: dict = field(default_factory=dict)
    tilde_keys: dict = field(default_factory=dict)
    touches: int = 0
    tilde_touches: int = 0
    merge_log: list = field(default_factory=list)


def _merge(a_keys, a_idx, b_keys, b_idx, sign):
    # merge two runs sorted by (key, sign*idx)
    out_k, out_i = [], []
    i = j = 0
    na, nb = len(a_keys), len(b_keys)
    while i < na and j < nb:
        ka, kb = a_keys[i], b_keys[j]
        if ka < kb or (ka == kb and sign * a_idx[i] < sign * b_idx[j]):
            out_k.append(ka)
            out_i.append(a_idx[i])
            i += 1
        else:
            out_k.append(kb)
            out_i.append(b_idx[j])
            j += 1
    out_k.extend(a_keys[i:])
    out_i.extend(a_idx[i:])
    out_k.extend(b_keys[j:])
    out_i.extend(b_idx[j:])
    return out_k, out_i


def lemma3_sort(instance: Instance, space: ArrangementSpace | None = None, split: int | None = None) -> SortedHorizonSequences:
    """Sorted arrangement sequences for every period, built incrementally.

    For each t the arrangements with a positive ``split`` component are the
    previous period's sorted run shifted by a constant, so only those with a
    zero ``split`` component (O(T^m) of them) are sorted directly; the two runs
    are then merged. The hat side is built on the values omega - D (ascending,
    ties by descending index) and turned into Ihat order by one reversal pass.
    """
    space = space or ArrangementSpace.for_instance(instance)
    T, m = space.T, space.m
    j = m if split is None else split
    B_j = space.levels[j]
    plus = space.add[j]  # one more period at level j
    nu, omega = space.nu, space.omega
    D = instance.cumulative_demand
    out = SortedHorizonSequences()

    # arrangements with W_j = 0, grouped by size
    free = [[i for i in space.by_nu[k] if space.counts[i][j] == 0] for k in range(T + 1)]

    # hat side, t = T down to 1, on S_t(N) = omega(N) - D(t+1, t+nu(N))
    s_keys, s_idx = [0], [space.zero]
    touches = 0
    for t in range(T, 0, -1):
        if t < T:
            d_next = D(t + 1, t + 1)
            shifted_keys = [s + B_j - d_next for s in s_keys]
            shifted_idx = [plus[i] for i in s_idx]
            direct = [i for k in range(T - t + 1) for i in free[k]]
            direct_keys = [omega[i] - D(t + 1, t + nu[i]) for i in direct]
            order = sorted(range(len(direct)), key=lambda a: (direct_keys[a], -direct[a]))
            direct_keys = [direct_keys[a] for a in order]
            direct = [direct[a] for a in order]
            s_keys, s_idx = _merge(shifted_keys, shifted_idx, direct_keys, direct, -1)
            touches += len(shifted_keys) + len(direct) + len(s_keys)
            out.merge_log.append((t, len(direct), len(shifted_keys), len(s_keys)))
        # sign flip: ascending omega - D is descending Ihat
        out.hat[t] = s_idx[::-1]
        out.hat_keys[t] = [-s for s in reversed(s_keys)]
        touches += len(s_idx)
    out.touches = touches

    # tilde side, t = 0 up to T, on K_t(n) = omega(n) - D(t - nu(n), t)
    k_keys, k_idx = [0], [space.zero]
    touches = 0
    out.tilde[0], out.tilde_keys[0] = list(k_idx), list(k_keys)
    for t in range(1, T + 1):
        d_t = D(t, t)
        shifted_keys = [k + B_j - d_t for k in k_keys]
        shifted_idx = [plus[i] for i in k_idx]
        direct = [i for k in range(t + 1) for i in free[k]]
        direct_keys = [omega[i] - D(t - nu[i], t) for i in direct]
        order = sorted(range(len(direct)), key=lambda a: (direct_keys[a], direct[a]))
        direct_keys = [direct_keys[a] for a in order]
        direct = [direct[a] for a in order]
        k_keys, k_idx = _merge(shifted_keys, shifted_idx, direct_keys, direct, 1)
        touches += len(shifted_keys) + len(direct) + len(k_keys)
        out.tilde[t], out.tilde_keys[t] = k_idx, k_keys
    out.tilde_touches = touches
    return out


def naive_sort(instance: Instance, t: int, space: ArrangementSpace | None = None) -> list:
    """Arrangements with nu(N) <= T-t sorted by (Ihat_t, index) with ``sorted``."""
    space = space or ArrangementSpace.for_instance(instance)
    D = instance.cumulative_demand
    members = [i for k in range(instance.T - t + 1) for i in space.by_nu[k]]
    return sorted(members, key=lambda i: (D(t + 1, t + space.nu[i]) - space.omega[i], i))


def naive_tilde_sort(instance: Instance, t: int, space: ArrangementSpace | None = None) -> list:
    space = space or ArrangementSpace.for_instance(instance)
    D = instance.cumulative_demand
    members = [i for k in range(t + 1) for i in space.by_nu[k]]
    return sorted(members, key=lambda i: (space.omega[i] - D(t - space.nu[i], t), i))
