from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .instance import INFEASIBLE, Schedule


class Block(NamedTuple):
    """One regeneration block u..v of an optimal plan.

    With ``t`` set, period t is the free-quantity period, periods u..t-1 follow
    arrangement ``n`` and periods t+1..v follow ``N``. With ``t`` None every
    period of the block follows ``n``.
    """

    u: int
    v: int
    t: Optional[int]
    n: int
    N: int


@dataclass
class SolveResult:
    engine: str
    cost: int
    schedule: Optional[Schedule] = None
    psi: list = field(default_factory=list)  # Psi_1 .. Psi_{T+1}
    seconds: float = 0.0
    counters: dict = field(default_factory=dict)
    digest: str = ""
    blocks: list = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.cost < INFEASIBLE

    def to_dict(self) -> dict:
        return {
            "engine": self.engine,
            "cost": self.cost if self.feasible else "infeasible",
            "schedule": self.schedule.to_dict() if self.schedule else None,
            "psi": [p if p < INFEASIBLE else "infeasible" for p in self.psi],
            "seconds": round(self.seconds, 6),
            "counters": self.counters,
            "digest": self.digest,
        }
