"""Monte-Carlo check that the two-block chained scheme hits its closed-form rate.

The simulator runs the scheme mechanically with an idealized random linear
code in place of real encoders: a block decodes iff the decoder holds at
least rate*length independent equations about it.  Per trial it draws erasure
patterns for both channels and both blocks, prices the relay's description of
block 1 by plug-in Wyner-Ziv accounting at the realized erasure fractions,
ships as much of it as fits the block-1 link budget, defers the rest to block
2, and checks that both blocks decode.  Success against a sweep of attempted
rates locates the empirical achievability edge, which approaches the
closed-form value from below as n1 grows.

Rate schedule: the design point backs each block off by delta, i.e. block 1
runs at i_joint - delta and block 2 at branch_rate - delta, which attempts
the overall rate new_rate_at(...) - delta.  Other attempted rates shift both
block rates together, so target_rate is always the overall attempted rate:
r1 = i_joint - (design_rate - target_rate), r2 = branch_rate - (design_rate -
target_rate).

Randomness: each trial uses a counter-based Philox stream keyed by
(seed, trial index), so outcomes are reproducible and independent of trial
execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .erasure_bounds import (
    DegenerateDenominatorError,
    ErasureRelayParams,
    new_rate_at,
    wz_description_rate,
)
from .info_measures import binary_entropy, circ


@dataclass(frozen=True)
class ChainSimConfig:
    """Simulation parameters.

    eps_hat must satisfy the chaining conditions for params (new_rate_at is
    consulted and its regime errors propagate).  delta is the per-block
    backoff at the design point; target_rate is the overall rate attempted.
    """

    params: ErasureRelayParams
    eps_hat: float
    target_rate: float
    n1: int = 100_000
    delta: float = 0.01
    trials: int = 200
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.eps_hat <= 1.0:
            raise ValueError(f"eps_hat {self.eps_hat!r} outside [0, 1]")
        if not 0.0 <= self.target_rate <= 1.0:
            raise ValueError(f"target_rate {self.target_rate!r} outside [0, 1]")
        if self.n1 < 1:
            raise ValueError("n1 must be at least 1")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta {self.delta!r} outside [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValueError("seed must be an integer in [0, 2**64)")


@dataclass(frozen=True)
class ChainLedger:
    """Per-trial bookkeeping of link bits and decoding equations."""

    trial: int
    wz_bits_needed: int
    relay_bits_block1: int
    stored_bits: int
    relay_bits_block2: int
    info_bits_block2: int
    equations_known_b1: int
    equations_known_b2: int
    description_delivered: bool
    relay_decoded_b2: bool
    block1_decoded: bool
    block2_decoded: bool
    success: bool


@dataclass(frozen=True)
class ChainSimOutcome:
    """Design of the run plus per-trial ledgers and the success fraction."""

    config: ChainSimConfig
    design_rate: float
    alpha: float
    n2: int
    r1: float
    r2: float
    branch: str
    successes: int
    success_rate: float
    ledgers: tuple[ChainLedger, ...]


@dataclass(frozen=True)
class _Design:
    design_rate: float
    branch: str
    i_joint: float
    branch_rate: float
    i_wz: float
    i_surplus: float
    alpha: float
    n2: int
    r1: float
    r2: float
    m1: int
    m2: int
    budget1: int
    budget2: int


def _design(cfg: ChainSimConfig) -> _Design:
    p = cfg.params
    report = new_rate_at(p, cfg.eps_hat)  # raises regime errors when infeasible
    i_joint = 1.0 - circ(cfg.eps_hat, p.eps_sr) * p.eps_sd
    branch_rate = max(1.0 - p.eps_sr, 1.0 - p.eps_sd)
    i_wz = wz_description_rate(p, cfg.eps_hat)
    i_surplus = max(0.0, p.eps_sd - p.eps_sr)
    if p.c_rd - i_surplus <= 1e-12:
        raise DegenerateDenominatorError(
            f"degenerate schedule: c_rd {p.c_rd} does not exceed the block-2 "
            f"relay help {i_surplus}"
        )
    alpha = (i_wz - p.c_rd) / (p.c_rd - i_surplus)
    n2 = int(round(alpha * cfg.n1))
    if n2 == 0:
        raise ValueError(
            f"alpha {alpha} rounds block 2 to zero length at n1 {cfg.n1}; "
            "nothing to chain"
        )
    backoff = report.value - cfg.target_rate
    r1 = i_joint - backoff
    r2 = branch_rate - backoff
    m1 = max(0, math.ceil(r1 * cfg.n1))
    m2 = max(0, math.ceil(r2 * n2))
    return _Design(
        design_rate=report.value,
        branch=report.binding,
        i_joint=i_joint,
        branch_rate=branch_rate,
        i_wz=i_wz,
        i_surplus=i_surplus,
        alpha=alpha,
        n2=n2,
        r1=r1,
        r2=r2,
        m1=m1,
        m2=m2,
        budget1=math.floor(p.c_rd * cfg.n1),
        budget2=math.floor(p.c_rd * n2),
    )


def _run_trial(cfg: ChainSimConfig, d: _Design, trial: int) -> ChainLedger:
    p = cfg.params
    rng = np.random.Generator(np.random.Philox(key=np.array([cfg.seed, trial], dtype=np.uint64)))
    # fixed draw order: relay/destination/compressor erasures for block 1,
    # then relay/destination erasures for block 2
    sr1 = rng.random(cfg.n1) < p.eps_sr
    sd1 = rng.random(cfg.n1) < p.eps_sd
    hat1 = ~sr1 & (rng.random(cfg.n1) < cfg.eps_hat)
    sr2 = rng.random(d.n2) < p.eps_sr
    sd2 = rng.random(d.n2) < p.eps_sd

    n1 = cfg.n1
    e_sr1 = int(sr1.sum())
    e_sd1 = int(sd1.sum())
    n_hat = int(hat1.sum())
    desc_erased = sr1 | hat1

    f_sr = e_sr1 / n1
    f_sd = e_sd1 / n1
    f_hat = n_hat / (n1 - e_sr1) if e_sr1 < n1 else 0.0
    f_desc = (e_sr1 + n_hat) / n1
    wz_plugin = (
        binary_entropy(f_desc)
        + f_sd * (1.0 - f_desc)
        - (1.0 - f_sr) * binary_entropy(f_hat)
    )
    wz_bits_needed = max(0, math.ceil(wz_plugin * n1))

    relay_bits_block1 = min(wz_bits_needed, d.budget1)
    stored_bits = wz_bits_needed - relay_bits_block1
    delivered = stored_bits <= d.budget2

    if delivered:
        equations_b1 = n1 - int((sd1 & desc_erased).sum())
    else:
        equations_b1 = n1 - e_sd1
    block1_decoded = equations_b1 >= d.m1

    e_sd2 = int(sd2.sum())
    e_sr2 = int(sr2.sum())
    if d.i_surplus > 0.0:
        # the relay decodes block 2 and forwards fresh equations with
        # whatever link budget the stored description bits leave over
        relay_decoded = d.m2 <= d.n2 - e_sr2
        info_bits = d.budget2 - min(stored_bits, d.budget2) if relay_decoded else 0
        equations_b2 = (d.n2 - e_sd2) + info_bits
    else:
        # the relay discards the block-2 message; the destination decodes
        # from its own channel alone
        relay_decoded = False
        info_bits = 0
        equations_b2 = d.n2 - e_sd2
    block2_decoded = equations_b2 >= d.m2
    relay_bits_block2 = min(stored_bits, d.budget2) + info_bits

    return ChainLedger(
        trial=trial,
        wz_bits_needed=wz_bits_needed,
        relay_bits_block1=relay_bits_block1,
        stored_bits=stored_bits,
        relay_bits_block2=relay_bits_block2,
        info_bits_block2=info_bits,
        equations_known_b1=equations_b1,
        equations_known_b2=equations_b2,
        description_delivered=delivered,
        relay_decoded_b2=relay_decoded,
        block1_decoded=block1_decoded,
        block2_decoded=block2_decoded,
        success=block1_decoded and block2_decoded,
    )


def simulate_pair(cfg: ChainSimConfig) -> ChainSimOutcome:
    """Run cfg.trials independent two-block transmissions at cfg.target_rate."""
    d = _design(cfg)
    ledgers = tuple(_run_trial(cfg, d, t) for t in range(cfg.trials))
    successes = sum(1 for led in ledgers if led.success)
    return ChainSimOutcome(
        config=cfg,
        design_rate=d.design_rate,
        alpha=d.alpha,
        n2=d.n2,
        r1=d.r1,
        r2=d.r2,
        branch=d.branch,
        successes=successes,
        success_rate=successes / cfg.trials,
        ledgers=ledgers,
    )


@dataclass(frozen=True)
class ThresholdEstimate:
    """Largest attempted rate with empirical success at least one half."""

    threshold: Optional[float]
    rates: tuple[float, ...]
    success_rates: tuple[float, ...]


def estimate_threshold(cfg: ChainSimConfig, rate_grid: Sequence[float]) -> ThresholdEstimate:
    """Sweep simulate_pair over rate_grid (cfg.target_rate is ignored)."""
    rates = tuple(float(r) for r in rate_grid)
    if not rates:
        raise ValueError("rate_grid must be nonempty")
    success_rates = []
    for r in rates:
        outcome = simulate_pair(replace(cfg, target_rate=r))
        success_rates.append(outcome.success_rate)
    passing = [r for r, s in zip(rates, success_rates) if s >= 0.5]
    return ThresholdEstimate(
        threshold=max(passing) if passing else None,
        rates=rates,
        success_rates=tuple(success_rates),
    )
