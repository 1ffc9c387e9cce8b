"""Finite-alphabet evaluators for the relay schemes, plus brute-force searches.

These operate on explicit probability models (dense joint tables) rather than
erasure closed forms, and exist as an independent route to the same numbers:
on an erasure instantiation, chained_rate must agree with
erasure_bounds.new_rate_at and cf_general_rate with erasure_bounds.cf_rate_at
to float precision.  Evaluation is intentionally dumb and exact; the only
searches here are the explicit brute-force wrappers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .erasure_bounds import (
    BoundReport,
    CFRegimeError,
    DegenerateDenominatorError,
    DFOptimalRegimeError,
    ErasureRelayParams,
)
from .info_measures import (
    JointTable,
    Kernel,
    Pmf,
    chain_joint,
    conditional_mutual_information,
    mutual_information,
)

_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class PrimitiveRelayModel:
    """Source pmf, the two outward channels, and the relay's compressor.

    The compressor maps the relay observation to its description; its output
    alphabet may exceed the observation alphabet by at most one symbol (a
    larger one is never needed for the schemes evaluated here).
    """

    source: Pmf
    sr_channel: Kernel
    sd_channel: Kernel
    compressor: Kernel

    def __post_init__(self) -> None:
        n_x = self.source.size
        if self.sr_channel.n_in != n_x or self.sd_channel.n_in != n_x:
            raise ValueError("channel input alphabets must match the source alphabet")
        if self.compressor.n_in != self.sr_channel.n_out:
            raise ValueError("compressor input must match the relay observation alphabet")
        if self.compressor.n_out > self.sr_channel.n_out + 1:
            raise ValueError(
                f"compressor output alphabet {self.compressor.n_out} exceeds "
                f"observation alphabet plus one ({self.sr_channel.n_out + 1})"
            )

    def joint(self) -> JointTable:
        """Joint over (X, Y_relay, Y_dest, description) as axes 0..3."""
        return chain_joint(
            self.source,
            [self.sr_channel, self.sd_channel, self.compressor],
            parents=[0, 0, 1],
        )


@dataclass(frozen=True)
class AugmentedRelayModel:
    """Relay model with a superposition layer U feeding the source symbol."""

    u_prior: Pmf
    x_given_u: Kernel
    sr_channel: Kernel
    sd_channel: Kernel
    compressor: Kernel

    def __post_init__(self) -> None:
        if self.x_given_u.n_in != self.u_prior.size:
            raise ValueError("x_given_u input must match the U alphabet")
        if self.u_prior.size > self.x_given_u.n_out:
            raise ValueError("U alphabet larger than the source alphabet is never useful")
        n_x = self.x_given_u.n_out
        if self.sr_channel.n_in != n_x or self.sd_channel.n_in != n_x:
            raise ValueError("channel input alphabets must match the source alphabet")
        if self.compressor.n_in != self.sr_channel.n_out:
            raise ValueError("compressor input must match the relay observation alphabet")
        if self.compressor.n_out > self.sr_channel.n_out + 1:
            raise ValueError("compressor output alphabet exceeds observation alphabet plus one")

    def joint(self) -> JointTable:
        """Joint over (U, X, Y_relay, Y_dest, description) as axes 0..4."""
        return chain_joint(
            self.u_prior,
            [self.x_given_u, self.sr_channel, self.sd_channel, self.compressor],
            parents=[0, 1, 1, 2],
        )


def erasure_model(eps_sd: float, eps_sr: float, eps_hat: float) -> PrimitiveRelayModel:
    """Uniform binary source, erasure channels, erased-description compressor."""
    return PrimitiveRelayModel(
        source=Pmf.uniform(2),
        sr_channel=Kernel.bec(eps_sr),
        sd_channel=Kernel.bec(eps_sd),
        compressor=Kernel.eec(eps_hat),
    )


@dataclass(frozen=True)
class _ChainQuantities:
    i_x_yr: float  # I(X; Y_relay)
    i_x_yd: float  # I(X; Y_dest)
    i_x_joint: float  # I(X; description, Y_dest)
    i_wz: float  # I(Y_relay; description | Y_dest)

    @property
    def i_surplus(self) -> float:
        return max(0.0, self.i_x_yr - self.i_x_yd)

    @property
    def branch(self) -> str:
        return "relay_decodes" if self.i_x_yr >= self.i_x_yd else "relay_discards"

    @property
    def branch_rate(self) -> float:
        return max(self.i_x_yr, self.i_x_yd)


def _chain_quantities(model: PrimitiveRelayModel) -> _ChainQuantities:
    j = model.joint()
    return _ChainQuantities(
        i_x_yr=mutual_information(j, [0], [1]),
        i_x_yd=mutual_information(j, [0], [2]),
        i_x_joint=mutual_information(j, [0], [2, 3]),
        i_wz=conditional_mutual_information(j, [1], [3], [2]),
    )


def chained_rate(model: PrimitiveRelayModel, c_rd: float) -> BoundReport:
    """Rate of the two-block chained scheme on an arbitrary model.

    Conditions: (a) I(X;Y_relay) < I(X;Y_dest) + c_rd strictly, else
    DFOptimalRegimeError; (b) I(Y_relay; description | Y_dest) >= c_rd, else
    CFRegimeError.  With i_surplus = max(0, I(X;Y_relay) - I(X;Y_dest)):

        value = [ (c_rd - i_surplus) * I(X; description, Y_dest)
                  + max(I(X;Y_relay), I(X;Y_dest)) * (i_wz - c_rd) ]
                / (i_wz - i_surplus)
    """
    if not c_rd >= 0.0:
        raise ValueError(f"c_rd {c_rd!r} is negative")
    q = _chain_quantities(model)
    return _chained_value(q, c_rd)


def _chained_value(q: _ChainQuantities, c_rd: float) -> BoundReport:
    if not q.i_x_yr < q.i_x_yd + c_rd:
        raise DFOptimalRegimeError(
            "DF-optimal regime: I(X;Y_relay) < I(X;Y_dest) + c_rd fails "
            f"({q.i_x_yr} >= {q.i_x_yd + c_rd})"
        )
    if q.i_wz < c_rd:
        raise CFRegimeError(
            f"CF regime: description rate {q.i_wz} < c_rd {c_rd}; "
            "the description fits in one block"
        )
    denom = q.i_wz - q.i_surplus
    if denom <= _DEGENERATE_TOL:
        raise DegenerateDenominatorError(
            f"degenerate denominator: description rate {q.i_wz} does not exceed "
            f"the block-2 relay help {q.i_surplus}"
        )
    value = ((c_rd - q.i_surplus) * q.i_x_joint + q.branch_rate * (q.i_wz - c_rd)) / denom
    return BoundReport(value, binding=q.branch)


@dataclass(frozen=True)
class ChainingSchedule:
    """Block rates and length ratio that realize chained_rate.

    Block 2 is alpha times as long as block 1.  r1 and r2 are the per-block
    code rates, stored_rate the description bits per block-1 symbol deferred
    to block 2, and surplus_rate the per-symbol relay help block 2 needs.
    The overall rate satisfies rate = (r1 + alpha*r2) / (1 + alpha), and the
    link budget closes: surplus_rate*alpha + stored_rate = c_rd*alpha.
    """

    alpha: float
    r1: float
    r2: float
    stored_rate: float
    surplus_rate: float
    branch: str
    rate: float


def chaining_schedule(model: PrimitiveRelayModel, c_rd: float) -> ChainingSchedule:
    """Two-block schedule behind chained_rate, with its budget identity checked.

    Raises the same regime errors as chained_rate, plus
    DegenerateDenominatorError when c_rd does not exceed the block-2 relay
    help (alpha would be infinite).
    """
    if not c_rd >= 0.0:
        raise ValueError(f"c_rd {c_rd!r} is negative")
    q = _chain_quantities(model)
    report = _chained_value(q, c_rd)
    if c_rd - q.i_surplus <= _DEGENERATE_TOL:
        raise DegenerateDenominatorError(
            f"degenerate schedule: c_rd {c_rd} does not exceed the block-2 "
            f"relay help {q.i_surplus}"
        )
    alpha = (q.i_wz - c_rd) / (c_rd - q.i_surplus)
    r1 = q.i_x_joint
    r2 = q.branch_rate
    stored_rate = q.i_wz - c_rd
    budget_gap = q.i_surplus * alpha + stored_rate - c_rd * alpha
    if abs(budget_gap) > 1e-10:
        raise AssertionError(f"link budget identity violated by {budget_gap}")
    rate = (r1 + alpha * r2) / (1.0 + alpha)
    return ChainingSchedule(
        alpha=alpha,
        r1=r1,
        r2=r2,
        stored_rate=stored_rate,
        surplus_rate=q.i_surplus,
        branch=q.branch,
        rate=rate,
    )


def cf_general_rate(model: PrimitiveRelayModel, c_rd: float) -> BoundReport:
    """One-block compress-forward: I(X; description, Y_dest) when it fits.

    Feasible iff I(Y_relay; description | Y_dest) <= c_rd.
    """
    if not c_rd >= 0.0:
        raise ValueError(f"c_rd {c_rd!r} is negative")
    q = _chain_quantities(model)
    if q.i_wz > c_rd:
        return BoundReport(None, feasible=False)
    return BoundReport(q.i_x_joint)


def pdcf_rate(model: AugmentedRelayModel, c_rd: float) -> BoundReport:
    """Partial decode-compress-forward with superposition layer U.

    value = min{ I(X; description, Y_dest | U) + I(U; Y_relay),
                 I(X; Y_dest) + c_rd - I(Y_relay; description | U, X) }
    feasible iff c_rd >= I(description; Y_relay | Y_dest, U).
    """
    if not c_rd >= 0.0:
        raise ValueError(f"c_rd {c_rd!r} is negative")
    j = model.joint()
    needed = conditional_mutual_information(j, [4], [2], [3, 0])
    if needed > c_rd:
        return BoundReport(None, feasible=False)
    decoded_layer = conditional_mutual_information(j, [1], [4, 3], [0]) + mutual_information(
        j, [0], [2]
    )
    description_budget = (
        mutual_information(j, [1], [3]) + c_rd - conditional_mutual_information(j, [2], [4], [0, 1])
    )
    if decoded_layer <= description_budget:
        return BoundReport(decoded_layer, binding="decoded_layer")
    return BoundReport(description_budget, binding="description_budget")


def _entropy_last_axes(m: np.ndarray, batch_ndim: int) -> np.ndarray:
    safe = np.where(m > 0.0, m, 1.0)
    t = m * np.log2(safe)
    return -t.sum(axis=tuple(range(batch_ndim, m.ndim)))


def _entropy_scalar(m: np.ndarray) -> float:
    v = m[m > 0.0]
    return float(-(v * np.log2(v)).sum())


def pdcf_bruteforce_erasure(
    p: ErasureRelayParams, grid_points: int = 21
) -> BoundReport:
    """Exhaustive pdcf_rate search over erasure-shaped models on a uniform grid.

    U is binary with P(U=0) = q; X given U is Bernoulli with P(X=1|U=u) = a_u;
    the compressor is the erased-description stage with rate eps_hat.  All
    four parameters range over grid_points uniform values in [0, 1].  The
    witness is the lexicographically smallest (q, a0, a1, eps_hat) attaining
    the maximum.  Information quantities are batched over the eps_hat axis,
    which keeps the default 21^4 search in the seconds range.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    grid = np.linspace(0.0, 1.0, grid_points)

    s_rows = Kernel.bec(p.eps_sr).rows  # (2, 3): x -> y
    d_rows = Kernel.bec(p.eps_sd).rows  # (2, 3): x -> z
    comp = np.stack([Kernel.eec(eh).rows for eh in grid])  # (E, 3, 3): y -> w

    best_value = -np.inf
    best_witness: Optional[tuple[float, float, float, float]] = None
    feasible_found = False

    for q0 in grid:
        p_u = np.array([q0, 1.0 - q0])
        h_u = _entropy_scalar(p_u)
        for a0 in grid:
            for a1 in grid:
                x_rows = np.array([[1.0 - a0, a0], [1.0 - a1, a1]])
                p_ux = p_u[:, None] * x_rows  # (2, 2)
                p_x = p_ux.sum(axis=0)
                p_uxy = p_ux[:, :, None] * s_rows[None, :, :]  # (u, x, y)
                p_uy = p_uxy.sum(axis=1)
                p_y = p_uy.sum(axis=0)
                p_z = p_x @ d_rows
                p_xz = p_x[:, None] * d_rows
                p_uz = p_ux @ d_rows

                h_xu = _entropy_scalar(p_ux)
                h_x = _entropy_scalar(p_x)
                h_y = _entropy_scalar(p_y)
                h_z = _entropy_scalar(p_z)
                h_uy = _entropy_scalar(p_uy)
                h_xz = _entropy_scalar(p_xz)
                h_uz = _entropy_scalar(p_uz)

                # batched over the eps_hat axis e
                p_wy = p_y[None, :, None] * comp  # (e, y, w)
                p_uxw = np.einsum("uxy,eyw->euxw", p_uxy, comp)
                p_uzw = np.einsum("uxy,xz,eyw->euzw", p_uxy, d_rows, comp)
                p_uxzw = np.einsum("uxy,xz,eyw->euxzw", p_uxy, d_rows, comp)
                h_wy = _entropy_last_axes(p_wy, 1)
                h_uxw = _entropy_last_axes(p_uxw, 1)
                h_uzw = _entropy_last_axes(p_uzw, 1)
                h_uxzw = _entropy_last_axes(p_uxzw, 1)

                i_u_y = h_u + h_y - h_uy
                i_x_z = h_x + h_z - h_xz
                t_decoded = (h_xu + h_uzw - h_uxzw - h_u) + i_u_y
                t_budget = i_x_z + p.c_rd - ((h_uxw - h_xu) - (h_wy - h_y))
                constraint = (h_uzw - h_uz) - (h_wy - h_y)

                rate = np.minimum(t_decoded, t_budget)
                ok = constraint <= p.c_rd
                if not np.any(ok):
                    continue
                feasible_found = True
                rate = np.where(ok, rate, -np.inf)
                e_best = int(np.argmax(rate))
                if rate[e_best] > best_value:
                    best_value = float(rate[e_best])
                    best_witness = (float(q0), float(a0), float(a1), float(grid[e_best]))

    if not feasible_found:
        return BoundReport(None, feasible=False)
    return BoundReport(best_value, witness=best_witness)
