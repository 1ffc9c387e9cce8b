"""Deterministic scalar maximization: grid scan plus golden-section refinement.

All free-parameter searches in this package go through maximize() so that
results are reproducible bit for bit: a fixed uniform grid locates the best
feasible point, then a golden-section pass refines inside the bracket of
neighboring grid points.  Feasibility is handled by filtering (the objective
is only ever evaluated at feasible points), and ties always resolve toward
the smaller argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

_INVPHI = (5.0**0.5 - 1.0) / 2.0


@dataclass(frozen=True)
class SearchSpec:
    """A 1-D maximization problem over [lo, hi].

    feasible (optional) is checked before every objective evaluation;
    infeasible points are skipped, never penalized.
    """

    lo: float
    hi: float
    objective: Callable[[float], float]
    feasible: Optional[Callable[[float], bool]] = None
    grid_points: int = 2001
    refine_tol: float = 1e-7

    def __post_init__(self) -> None:
        if not self.hi >= self.lo:
            raise ValueError(f"search interval [{self.lo}, {self.hi}] is empty")
        if self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")
        if not self.refine_tol > 0.0:
            raise ValueError("refine_tol must be positive")


@dataclass(frozen=True)
class SearchResult:
    arg: Optional[float]
    value: Optional[float]
    feasible: bool


def maximize(spec: SearchSpec) -> SearchResult:
    """Maximize spec.objective over the feasible part of [lo, hi].

    Returns (arg, value, True) for the best feasible point found, or
    (None, None, False) when no grid point is feasible.  The returned value is
    never below the best feasible grid value, and refinement never steps
    outside the grid bracket around the best grid point.
    """
    is_ok = spec.feasible if spec.feasible is not None else (lambda _x: True)

    if spec.hi == spec.lo:
        x = spec.lo
        if not is_ok(x):
            return SearchResult(None, None, False)
        return SearchResult(x, spec.objective(x), True)

    n = spec.grid_points
    step = (spec.hi - spec.lo) / (n - 1)
    best_x: Optional[float] = None
    best_v = -float("inf")
    best_i = -1
    for i in range(n):
        x = spec.hi if i == n - 1 else spec.lo + i * step
        if not is_ok(x):
            continue
        v = spec.objective(x)
        if v > best_v:
            best_x, best_v, best_i = x, v, i
    if best_x is None:
        return SearchResult(None, None, False)

    # golden-section refinement inside the bracket of neighboring grid points
    a = spec.lo + (best_i - 1) * step if best_i > 0 else spec.lo
    b = spec.lo + (best_i + 1) * step if best_i < n - 1 else spec.hi

    def probe(x: float) -> float:
        nonlocal best_x, best_v
        if not is_ok(x):
            return -float("inf")
        v = spec.objective(x)
        if v > best_v or (v == best_v and x < best_x):
            best_x, best_v = x, v
        return v

    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = probe(x1), probe(x2)
    iterations = 0
    while b - a > spec.refine_tol and iterations < 200:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = probe(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = probe(x1)
        iterations += 1
    return SearchResult(best_x, best_v, True)
