"""Problem data for single-item lot sizing with piecewise-linear production costs.

Quantities and money are integers. An infeasible cost is represented by the
sentinel :data:`INFEASIBLE`, a large integer that every helper here treats as
absorbing under addition.
"""
from __future__ import annotations

import bisect
import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

#: Cost sentinel. Larger than any finite cost an admissible instance can produce.
INFEASIBLE = 1 << 62

# admissible instances keep their worst-case total cost well below the sentinel
_COST_CEILING = 1 << 58

# An inventory cost for one half-line: a linear rate, or a concave table of
# (upper limit, slope) segments whose last limit is None.
HalfLine = Union[int, tuple]


def cost_add(*terms: int) -> int:
    """Saturating sum: INFEASIBLE if any term is INFEASIBLE."""
    total = 0
    for c in terms:
        if c >= INFEASIBLE:
            return INFEASIBLE
        total += c
    return total


def is_feasible(cost: int) -> bool:
    return cost < INFEASIBLE


class InstanceParseError(ValueError):
    """Malformed instance text; carries the offending location."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class InstanceValidationError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ScheduleError(ValueError):
    pass


def _half_line_cost(spec: HalfLine, amount: int) -> int:
    # amount >= 0
    if isinstance(spec, int):
        return spec * amount
    cost = 0
    lower = 0
    for limit, slope in spec:
        if limit is None or amount <= limit:
            return cost + slope * (amount - lower)
        cost += slope * (limit - lower)
        lower = limit
    return cost


def _half_line_max_slope(spec: HalfLine) -> int:
    if isinstance(spec, int):
        return spec
    return max(slope for _, slope in spec)


@dataclass(frozen=True)
class Instance:
    """An ELS-PL instance.

    ``breakpoints`` holds ``B_1 .. B_m`` followed by the capacity ``B_{m+1}``.
    ``setups[j-1][l-1]`` and ``units[j-1][l-1]`` describe piece ``l`` of period
    ``j``. ``hold`` and ``backlog`` are per-period half-line costs.
    """

    demands: tuple
    breakpoints: tuple
    setups: tuple
    units: tuple
    hold: tuple
    backlog: tuple
    horizon: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "demands", tuple(int(d) for d in self.demands))
        object.__setattr__(self, "breakpoints", tuple(int(b) for b in self.breakpoints))
        object.__setattr__(self, "setups", tuple(tuple(int(s) for s in row) for row in self.setups))
        object.__setattr__(self, "units", tuple(tuple(int(p) for p in row) for row in self.units))
        object.__setattr__(self, "hold", tuple(_freeze_half_line(h) for h in self.hold))
        object.__setattr__(self, "backlog", tuple(_freeze_half_line(b) for b in self.backlog))
        if self.horizon < 0:
            object.__setattr__(self, "horizon", len(self.demands))

    @classmethod
    def linear(cls, demands, breakpoints, setups, units, hold, backlog):
        """Build an instance with scalar or per-period pieces and rates.

        ``setups``/``units`` may be a single row of length m+1 (shared by all
        periods) or a T x (m+1) table; ``hold``/``backlog`` a scalar or a list.
        """
        T = len(demands)
        setups = _broadcast_rows(setups, T)
        units = _broadcast_rows(units, T)
        hold = [hold] * T if isinstance(hold, int) else list(hold)
        backlog = [backlog] * T if isinstance(backlog, int) else list(backlog)
        return cls(demands, breakpoints, setups, units, hold, backlog)

    @property
    def T(self) -> int:
        return self.horizon

    @property
    def m(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def capacity(self) -> int:
        return self.breakpoints[-1]

    @cached_property
    def levels(self) -> tuple:
        """Stationary production levels used by arrangements, ascending.

        Always ``0, B_1, ..., B_m``. The capacity joins when it can bind
        (capacity < total demand), and ``B_l + 1`` joins when some period's
        cost drops just above ``B_l``: a plan can then be pushed against either
        edge of a piece, and both edges must count as stationary.
        """
        bps = self.breakpoints
        out = {0, *bps[:-1]}
        if bps[-1] < self.total_demand:
            out.add(bps[-1])
        for ell in range(len(bps) - 1):
            b = bps[ell]
            if any(s[ell] + p[ell] * b > s[ell + 1] + p[ell + 1] * b for s, p in zip(self.setups, self.units)):
                out.add(b + 1)
        return tuple(sorted(out))

    @property
    def breakpoint_levels(self) -> tuple:
        """``B_0 = 0, B_1, ..., B_m``."""
        return (0,) + self.breakpoints[:-1]

    @cached_property
    def _prefix(self) -> list:
        out = [0]
        for d in self.demands:
            out.append(out[-1] + d)
        return out

    @cached_property
    def total_demand(self) -> int:
        return self._prefix[-1]

    def cumulative_demand(self, i: int, j: int) -> int:
        """D(i, j): demand of periods i..j (clamped to the horizon), 0 if i > j."""
        i = max(i, 1)
        j = min(j, self.horizon)
        if i > j:
            return 0
        return self._prefix[j] - self._prefix[i - 1]

    def production_cost(self, j: int, x: int) -> int:
        if x == 0:
            return 0
        if x < 0 or x > self.breakpoints[-1]:
            return INFEASIBLE
        piece = bisect.bisect_left(self.breakpoints, x)
        return self.setups[j - 1][piece] + self.units[j - 1][piece] * x

    def piece_of(self, x: int) -> int:
        """1-based piece index l with B_{l-1} < x <= B_l (x must be in (0, capacity])."""
        return bisect.bisect_left(self.breakpoints, x) + 1

    def inventory_cost(self, j: int, level: int) -> int:
        if level > 0:
            return _half_line_cost(self.hold[j - 1], level)
        if level < 0:
            return _half_line_cost(self.backlog[j - 1], -level)
        return 0

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(serialize_instance(self).encode()).hexdigest()[:16]


def _freeze_half_line(spec):
    if isinstance(spec, (int, np.integer)):
        return int(spec)
    return tuple((None if lim is None else int(lim), int(slope)) for lim, slope in spec)


def _broadcast_rows(rows, T):
    rows = list(rows)
    if rows and not isinstance(rows[0], (list, tuple)):
        return [list(rows) for _ in range(T)]
    return rows


def production_cost(instance: Instance, j: int, x: int) -> int:
    return instance.production_cost(j, x)


def inventory_cost(instance: Instance, j: int, level: int) -> int:
    return instance.inventory_cost(j, level)


def cumulative_demand(instance: Instance, i: int, j: int) -> int:
    return instance.cumulative_demand(i, j)


def _check_half_line(spec, where, out):
    if isinstance(spec, int):
        if spec < 0:
            out.append(f"negative rate in {where}")
        return
    if not spec:
        out.append(f"empty cost table in {where}")
        return
    lower, prev_slope = 0, None
    for k, (limit, slope) in enumerate(spec):
        if slope < 0:
            out.append(f"negative slope in {where} segment {k}")
        if prev_slope is not None and slope > prev_slope:
            out.append(f"cost table in {where} is not concave (slope rises at segment {k})")
        prev_slope = slope
        last = k == len(spec) - 1
        if limit is None and not last:
            out.append(f"unbounded segment before the end of {where}")
        elif limit is not None:
            if last:
                out.append(f"last segment of {where} must be unbounded")
            if limit <= lower:
                out.append(f"segment limits in {where} not strictly increasing")
            lower = limit


def validate(instance: Instance) -> list:
    """Return every violated instance invariant; an empty list means ok."""
    out = []
    T = instance.horizon
    if T < 1:
        out.append("horizon must be at least 1")
    if len(instance.demands) != T:
        out.append(f"horizon {T} does not match {len(instance.demands)} demands")
    for j, d in enumerate(instance.demands, start=1):
        if d < 0:
            out.append(f"negative demand at period {j}")
    bps = instance.breakpoints
    if not bps:
        out.append("breakpoints must contain at least the capacity")
    else:
        if bps[0] <= 0:
            out.append("breakpoints must be positive")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            out.append("breakpoints not strictly increasing")
    width = len(bps)
    for name, table in (("setup", instance.setups), ("unit", instance.units)):
        if len(table) != len(instance.demands):
            out.append(f"{name} table has {len(table)} rows, expected {len(instance.demands)}")
        for j, row in enumerate(table, start=1):
            if len(row) != width:
                out.append(f"{name} row for period {j} has {len(row)} pieces, expected {width}")
            for ell, c in enumerate(row, start=1):
                if c < 0:
                    out.append(f"negative {name} cost at period {j} piece {ell}")
    for name, table in (("hold", instance.hold), ("backlog", instance.backlog)):
        if len(table) != len(instance.demands):
            out.append(f"{name} table has {len(table)} entries, expected {len(instance.demands)}")
        for j, spec in enumerate(table, start=1):
            _check_half_line(spec, f"{name} cost of period {j}", out)
    if out:
        return out
    total = sum(instance.demands)
    if T * bps[-1] < total:
        out.append(f"capacity {bps[-1]} x {T} periods cannot cover total demand {total}")
    # every finite cost must stay far from the sentinel
    worst = 0
    for j in range(T):
        worst += max(instance.setups[j]) + max(instance.units[j]) * bps[-1]
        worst += max(_half_line_max_slope(instance.hold[j]), _half_line_max_slope(instance.backlog[j])) * (total + T * bps[-1])
    if worst >= _COST_CEILING:
        out.append("cost magnitudes too large for exact integer arithmetic")
    return out


def check_valid(instance: Instance) -> Instance:
    violations = validate(instance)
    if violations:
        raise InstanceValidationError(violations)
    return instance


@dataclass(frozen=True)
class Schedule:
    production: tuple
    inventory: tuple  # I_0 .. I_T
    total_cost: int

    def to_dict(self):
        return {"production": list(self.production), "cost": self.total_cost}


def inventory_levels(instance: Instance, production: Sequence[int]) -> tuple:
    levels = [0]
    for x, d in zip(production, instance.demands):
        levels.append(levels[-1] + x - d)
    return tuple(levels)


def evaluate_schedule(instance: Instance, schedule) -> int:
    """Total production plus inventory cost of a plan.

    ``schedule`` is a :class:`Schedule` or a plain sequence of production
    quantities. Plans that break the balance or boundary conditions raise
    :class:`ScheduleError`; out-of-range quantities cost INFEASIBLE.
    """
    if isinstance(schedule, Schedule):
        production = schedule.production
        levels = schedule.inventory
        if len(levels) != instance.horizon + 1:
            raise ScheduleError("inventory vector must have T+1 entries")
        if levels != inventory_levels(instance, production):
            raise ScheduleError("inventory violates the balance equation")
    else:
        production = tuple(schedule)
        levels = inventory_levels(instance, production)
    if len(production) != instance.horizon:
        raise ScheduleError(f"expected {instance.horizon} production quantities, got {len(production)}")
    if levels[0] != 0 or levels[-1] != 0:
        raise ScheduleError("ending inventory must be zero")
    total = 0
    for j, x in enumerate(production, start=1):
        total = cost_add(total, instance.production_cost(j, x), instance.inventory_cost(j, levels[j]))
    return total


def make_schedule(instance: Instance, production: Sequence[int]) -> Schedule:
    production = tuple(int(x) for x in production)
    levels = inventory_levels(instance, production)
    return Schedule(production, levels, evaluate_schedule(instance, production))


# --------------------------------------------------------------------------
# serialization

_TOP_FIELDS = {"horizon", "demands", "breakpoints", "pieces", "inventory"}
_PIECE_FIELDS = {"setup", "unit"}
_INVENTORY_FIELDS = {"hold", "backlog"}


def _half_line_to_json(spec):
    if isinstance(spec, int):
        return spec
    return [[lim, slope] for lim, slope in spec]


def instance_to_dict(instance: Instance) -> dict:
    return {
        "horizon": instance.horizon,
        "demands": list(instance.demands),
        "breakpoints": list(instance.breakpoints),
        "pieces": [
            [{"setup": s, "unit": p} for s, p in zip(srow, prow)]
            for srow, prow in zip(instance.setups, instance.units)
        ],
        "inventory": [
            {"hold": _half_line_to_json(h), "backlog": _half_line_to_json(b)}
            for h, b in zip(instance.hold, instance.backlog)
        ],
    }


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=None, separators=(",", ":"))


def _expect_int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceParseError(f"expected an integer, got {value!r}", where)
    return value


def _expect_list(value, where):
    if not isinstance(value, list):
        raise InstanceParseError(f"expected a list, got {type(value).__name__}", where)
    return value


def _expect_fields(obj, allowed, where):
    if not isinstance(obj, dict):
        raise InstanceParseError(f"expected an object, got {type(obj).__name__}", where)
    for key in obj:
        if key not in allowed:
            raise InstanceParseError(f"unknown field {key!r}", where)
    missing = sorted(allowed - set(obj))
    if missing:
        raise InstanceParseError(f"missing field {missing[0]!r}", where)


def _parse_half_line(value, where):
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    segments = []
    for k, seg in enumerate(_expect_list(value, where)):
        seg = _expect_list(seg, f"{where}[{k}]")
        if len(seg) != 2:
            raise InstanceParseError("segment must be [limit, slope]", f"{where}[{k}]")
        limit = None if seg[0] is None else _expect_int(seg[0], f"{where}[{k}][0]")
        segments.append((limit, _expect_int(seg[1], f"{where}[{k}][1]")))
    return tuple(segments)


def instance_from_dict(data) -> Instance:
    _expect_fields(data, _TOP_FIELDS, "instance")
    horizon = _expect_int(data["horizon"], "horizon")
    demands = [_expect_int(d, f"demands[{k}]") for k, d in enumerate(_expect_list(data["demands"], "demands"))]
    bps = [_expect_int(b, f"breakpoints[{k}]") for k, b in enumerate(_expect_list(data["breakpoints"], "breakpoints"))]
    setups, units = [], []
    for j, row in enumerate(_expect_list(data["pieces"], "pieces")):
        srow, prow = [], []
        for ell, rec in enumerate(_expect_list(row, f"pieces[{j}]")):
            where = f"pieces[{j}][{ell}]"
            _expect_fields(rec, _PIECE_FIELDS, where)
            srow.append(_expect_int(rec["setup"], where + ".setup"))
            prow.append(_expect_int(rec["unit"], where + ".unit"))
        setups.append(srow)
        units.append(prow)
    hold, backlog = [], []
    for j, rec in enumerate(_expect_list(data["inventory"], "inventory")):
        where = f"inventory[{j}]"
        _expect_fields(rec, _INVENTORY_FIELDS, where)
        hold.append(_parse_half_line(rec["hold"], where + ".hold"))
        backlog.append(_parse_half_line(rec["backlog"], where + ".backlog"))
    return Instance(demands, bps, setups, units, hold, backlog, horizon=horizon)


def parse_instance(text: str) -> Instance:
    """Parse and validate instance JSON text.

    Raises InstanceParseError on syntax or schema problems and
    InstanceValidationError when the data breaks an instance invariant.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return check_valid(instance_from_dict(data))


def load_instance(path) -> Instance:
    with open(path) as fh:
        return parse_instance(fh.read())


# --------------------------------------------------------------------------
# random instances

def generate_instance(
    seed: int,
    T: int,
    m: int,
    demand_max: int = 10,
    breakpoint_max: int = 30,
    setup_max: int = 50,
    unit_max: int = 10,
    hold_max: int = 5,
    backlog_max: int = 10,
    uncapacitated: bool = False,
    regular: bool = False,
) -> Instance:
    """Deterministic random feasible instance with linear inventory costs.

    ``uncapacitated`` sets the capacity to the total demand (at least
    B_m + 1). ``regular`` raises setups so that no period's cost drops right
    after a breakpoint. Together they keep the arrangement levels at
    ``0, B_1, ..., B_m``.
    """
    if T < 1 or m < 0 or demand_max < 0:
        raise ValueError("need T >= 1, m >= 0, demand_max >= 0")
    if m > breakpoint_max:
        raise ValueError("breakpoint_max must allow m distinct breakpoints")
    rng = np.random.default_rng(seed)
    demands = [int(d) for d in rng.integers(0, demand_max + 1, size=T)]
    inner = sorted(int(b) for b in rng.choice(np.arange(1, breakpoint_max + 1), size=m, replace=False))
    total = sum(demands)
    last = inner[-1] if inner else 0
    lo = max(last + 1, math.ceil(total / T))
    hi = max(lo, total + 1)
    capacity = int(rng.integers(lo, hi + 1))
    setups = rng.integers(0, setup_max + 1, size=(T, m + 1)).tolist()
    units = rng.integers(0, unit_max + 1, size=(T, m + 1)).tolist()
    if uncapacitated:
        capacity = max(last + 1, total)
    if regular:
        for srow, prow in zip(setups, units):
            for ell in range(m):
                b = inner[ell]
                srow[ell + 1] += max(0, srow[ell] + prow[ell] * b - srow[ell + 1] - prow[ell + 1] * b)
    hold = rng.integers(0, hold_max + 1, size=T).tolist()
    backlog = rng.integers(0, backlog_max + 1, size=T).tolist()
    return Instance(demands, inner + [capacity], setups, units, hold, backlog)
