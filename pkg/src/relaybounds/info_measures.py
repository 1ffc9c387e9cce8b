"""Exact entropy and mutual-information arithmetic on small finite-alphabet models.

All quantities are in bits and are computed by dense enumeration of joint
probability tables, which is exact (up to float64) for the tiny alphabets used
here (at most a handful of variables with 2-3 symbols each).  The convention
0 * log 0 = 0 is applied throughout.  Probabilities are validated to within
1e-12 and renormalized once at construction; downstream code never
renormalizes again.

Erasure alphabets use the convention that the erasure symbol is the last
index (so a binary erasure channel maps {0, 1} to {0, 1, ?} with ? = 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_ATOL = 1e-12


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.

    Raises ValueError outside [0, 1].
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy argument {x!r} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def circ(a: float, b: float) -> float:
    """Erasure composition a + b*(1 - a): cascading two erasure stages.

    Commutative and associative; the overall erasure probability of two
    independent stages with rates a and b.
    """
    if not 0.0 <= a <= 1.0 or not 0.0 <= b <= 1.0:
        raise ValueError(f"circ arguments ({a!r}, {b!r}) outside [0, 1]")
    return a + b * (1.0 - a)


def _clean_probs(p: np.ndarray, what: str) -> np.ndarray:
    # validate within 1e-12, then renormalize exactly once
    if np.any(p < -_ATOL) or np.any(p > 1.0 + _ATOL):
        raise ValueError(f"{what} has entries outside [0, 1]: {p!r}")
    total = float(p.sum())
    if abs(total - 1.0) > _ATOL * p.size:
        raise ValueError(f"{what} sums to {total!r}, not 1")
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    p.flags.writeable = False
    return p


@dataclass(frozen=True)
class Pmf:
    """Probability mass function over the alphabet {0, ..., size-1}."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("Pmf needs a 1-D array with at least one entry")
        object.__setattr__(self, "probs", _clean_probs(p, "Pmf"))

    @property
    def size(self) -> int:
        return int(self.probs.size)

    @staticmethod
    def uniform(n: int) -> "Pmf":
        return Pmf(np.full(n, 1.0 / n))


@dataclass(frozen=True)
class Kernel:
    """Conditional distribution: rows[i] is the output pmf given input i."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.rows, dtype=float)
        if r.ndim != 2 or r.shape[0] < 1 or r.shape[1] < 1:
            raise ValueError("Kernel needs a 2-D array of row pmfs")
        cleaned = np.stack([_clean_probs(row, f"Kernel row {i}") for i, row in enumerate(r)])
        cleaned.flags.writeable = False
        object.__setattr__(self, "rows", cleaned)

    @property
    def n_in(self) -> int:
        return int(self.rows.shape[0])

    @property
    def n_out(self) -> int:
        return int(self.rows.shape[1])

    @staticmethod
    def identity(n: int) -> "Kernel":
        return Kernel(np.eye(n))

    @staticmethod
    def bec(eps: float) -> "Kernel":
        """Binary erasure channel {0,1} -> {0,1,?}; ? is index 2."""
        if not 0.0 <= eps <= 1.0:
            raise ValueError(f"erasure rate {eps!r} outside [0, 1]")
        return Kernel(np.array([[1.0 - eps, 0.0, eps], [0.0, 1.0 - eps, eps]]))

    @staticmethod
    def eec(eps: float) -> "Kernel":
        """Erased-symbol-preserving erasure stage on {0,1,?}.

        Re-erases each unerased symbol independently with probability eps and
        leaves ? as ?.  Cascading bec(a) then eec(b) is a bec with rate
        circ(a, b).
        """
        if not 0.0 <= eps <= 1.0:
            raise ValueError(f"erasure rate {eps!r} outside [0, 1]")
        return Kernel(
            np.array(
                [
                    [1.0 - eps, 0.0, eps],
                    [0.0, 1.0 - eps, eps],
                    [0.0, 0.0, 1.0],
                ]
            )
        )


@dataclass(frozen=True)
class JointTable:
    """Dense joint distribution; axis k of mass is variable k."""

    mass: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.mass, dtype=float)
        if m.ndim < 1:
            raise ValueError("JointTable needs at least one variable")
        if np.any(m < -_ATOL) or np.any(m > 1.0 + _ATOL):
            raise ValueError("JointTable has cells outside [0, 1]")
        total = float(m.sum())
        if abs(total - 1.0) > _ATOL * m.size:
            raise ValueError(f"JointTable mass sums to {total!r}, not 1")
        m = np.clip(m, 0.0, None)
        m = m / m.sum()
        m.flags.writeable = False
        object.__setattr__(self, "mass", m)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.mass.shape)

    @property
    def n_vars(self) -> int:
        return int(self.mass.ndim)


def chain_joint(px: Pmf, kernels: Sequence[Kernel], parents: Sequence[int] | None = None) -> JointTable:
    """Joint table of X and the kernel outputs, in declaration order.

    Variable 0 is drawn from px; kernel k produces variable k+1 conditioned on
    the single variable parents[k] (default: the previous variable, giving a
    Markov chain).  Each output is conditionally independent of everything
    else given its parent, so e.g. a broadcast X -> (Y, Z) is expressed with
    parents = [0, 0].
    """
    if parents is None:
        parents = list(range(len(kernels)))
    if len(parents) != len(kernels):
        raise ValueError("parents must give one parent index per kernel")
    mass = np.asarray(px.probs, dtype=float)
    for k, (kern, par) in enumerate(zip(kernels, parents)):
        var_idx = k + 1
        if not 0 <= par < var_idx:
            raise ValueError(f"kernel {k} declares parent {par}, not an existing variable")
        if kern.n_in != mass.shape[par]:
            raise ValueError(
                f"kernel {k} input alphabet {kern.n_in} does not match variable {par} "
                f"alphabet {mass.shape[par]}"
            )
        in_axes = list(range(var_idx))
        mass = np.einsum(mass, in_axes, kern.rows, [par, var_idx], in_axes + [var_idx])
    return JointTable(mass)


def _as_group(group: Iterable[int], n_vars: int, what: str) -> tuple[int, ...]:
    g = tuple(int(i) for i in group)
    if len(g) == 0:
        raise ValueError(f"{what} group must be nonempty")
    if len(set(g)) != len(g):
        raise ValueError(f"{what} group has repeated indices: {g}")
    if any(i < 0 or i >= n_vars for i in g):
        raise ValueError(f"{what} group {g} outside variable range 0..{n_vars - 1}")
    return g


def _check_disjoint(*groups: tuple[int, ...]) -> None:
    seen: set[int] = set()
    for g in groups:
        for i in g:
            if i in seen:
                raise ValueError(f"variable groups overlap at index {i}")
            seen.add(i)


def _marginal_entropy(joint: JointTable, keep: tuple[int, ...]) -> float:
    drop = tuple(ax for ax in range(joint.n_vars) if ax not in keep)
    m = joint.mass.sum(axis=drop) if drop else joint.mass
    m = m[m > 0.0]
    return float(-(m * np.log2(m)).sum())


def _clamp_nonneg(v: float, what: str) -> float:
    # information quantities are nonnegative; only float noise may dip below
    if v < -1e-9:
        raise AssertionError(f"{what} evaluated to {v}, far below zero")
    return v if v > 0.0 else 0.0


def entropy(joint: JointTable, group: Iterable[int]) -> float:
    """H(group) in bits."""
    g = _as_group(group, joint.n_vars, "entropy")
    return _marginal_entropy(joint, g)


def conditional_entropy(joint: JointTable, group: Iterable[int], given: Iterable[int]) -> float:
    """H(group | given) = H(group, given) - H(given), in bits."""
    a = _as_group(group, joint.n_vars, "target")
    given_t = tuple(int(i) for i in given)
    c = _as_group(given_t, joint.n_vars, "conditioning") if given_t else ()
    _check_disjoint(a, c)
    if not c:
        return _marginal_entropy(joint, a)
    return _clamp_nonneg(
        _marginal_entropy(joint, a + c) - _marginal_entropy(joint, c),
        "conditional entropy",
    )


def mutual_information(joint: JointTable, group_a: Iterable[int], group_b: Iterable[int]) -> float:
    """I(A; B) = H(A) + H(B) - H(A, B), in bits."""
    a = _as_group(group_a, joint.n_vars, "A")
    b = _as_group(group_b, joint.n_vars, "B")
    _check_disjoint(a, b)
    v = _marginal_entropy(joint, a) + _marginal_entropy(joint, b) - _marginal_entropy(joint, a + b)
    return _clamp_nonneg(v, "mutual information")


def conditional_mutual_information(
    joint: JointTable,
    group_a: Iterable[int],
    group_b: Iterable[int],
    group_c: Iterable[int],
) -> float:
    """I(A; B | C) = H(A,C) + H(B,C) - H(A,B,C) - H(C), in bits.

    An empty conditioning group reduces to mutual_information.
    """
    a = _as_group(group_a, joint.n_vars, "A")
    b = _as_group(group_b, joint.n_vars, "B")
    c = tuple(int(i) for i in group_c)
    if not c:
        return mutual_information(joint, a, b)
    c = _as_group(c, joint.n_vars, "C")
    _check_disjoint(a, b, c)
    v = (
        _marginal_entropy(joint, a + c)
        + _marginal_entropy(joint, b + c)
        - _marginal_entropy(joint, a + b + c)
        - _marginal_entropy(joint, c)
    )
    return _clamp_nonneg(v, "conditional mutual information")
