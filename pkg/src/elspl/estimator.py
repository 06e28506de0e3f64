"""scikit-learn style wrapper around the solvers.

An instance plays the role of X; there is no target. ``fit`` solves it,
``predict`` returns the per-period production quantities.
"""
from __future__ import annotations

import os

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .baseline import solve_baseline
from .fast import solve_fast
from .instance import Instance, check_valid, instance_from_dict, load_instance, parse_instance
from .oracle import DEFAULT_BUDGET, oracle_solve

ENGINES = ("fast", "baseline", "oracle")


def check_instance(X) -> Instance:
    """Coerce X to a validated Instance.

    Accepts an Instance, a dict in the file schema, JSON text, or a path.
    """
    if isinstance(X, Instance):
        return check_valid(X)
    if isinstance(X, dict):
        return check_valid(instance_from_dict(X))
    if isinstance(X, os.PathLike):
        return load_instance(X)
    if isinstance(X, str):
        if X.lstrip().startswith("{"):
            return parse_instance(X)
        return load_instance(X)
    raise TypeError(f"cannot read an instance from {type(X).__name__}")


def run_engine(instance: Instance, engine: str = "fast", budget_states: int = DEFAULT_BUDGET, check_level: int = 0):
    if engine == "fast":
        return solve_fast(instance, check_level=check_level)
    if engine == "baseline":
        return solve_baseline(instance)
    if engine == "oracle":
        return oracle_solve(instance, budget_states=budget_states)
    raise ValueError(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")


class LotSizer(BaseEstimator):
    """Exact lot-sizing solver with the estimator interface.

    Parameters
    ----------
    engine : {"fast", "baseline", "oracle"}
    budget_states : int
        State budget for the oracle engine.
    check_level : int
        Internal audit level for the fast engine (0 = off).
    """

    def __init__(self, engine="fast", budget_states=DEFAULT_BUDGET, check_level=0):
        self.engine = engine
        self.budget_states = budget_states
        self.check_level = check_level

    def fit(self, X, y=None):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        instance = check_instance(X)
        result = run_engine(instance, self.engine, self.budget_states, self.check_level)
        self.instance_ = instance
        self.result_ = result
        self.cost_ = result.cost
        self.schedule_ = result.schedule
        self.psi_ = list(result.psi)
        return self

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise NotFittedError("LotSizer is not fitted yet; call fit first")

    def predict(self, X=None):
        """Production plan of X (refits when X differs from the fitted instance)."""
        if X is not None:
            instance = check_instance(X)
            if not hasattr(self, "instance_") or instance != self.instance_:
                self.fit(instance)
        self._check_fitted()
        if self.schedule_ is None:
            raise ValueError("instance is infeasible; no production plan")
        return np.asarray(self.schedule_.production, dtype=np.int64)

    def score(self, X=None, y=None):
        """Negative optimal cost, so that larger is better."""
        if X is not None:
            self.predict(X)
        self._check_fitted()
        return -self.cost_
