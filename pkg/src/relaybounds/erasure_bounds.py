"""Closed-form rate bounds for the primitive relay channel with erasures.

Setup: a source broadcasts one binary symbol per use; the relay sees it
through an erasure channel with rate eps_sr, the destination through an
independent erasure channel with rate eps_sd, and the relay talks to the
destination over a noiseless side link of capacity c_rd bits per channel use.

Upper bounds: cut_set and improved_cut_set.  Lower bounds (achievable rates):
direct transmission, decode-forward, partial decode-forward, compress-forward
with an erased-description compressor, and the two-block chained scheme that
splits the relay's description of block 1 across both transmission slots.

A further upper-bound family based on channel-simulation arguments collapses
to the plain cut-set bound on erasure channels, so it is documented here but
not computed separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .info_measures import binary_entropy, circ
from .scalar_opt import SearchSpec, maximize

_LN2 = math.log(2.0)
_DEGENERATE_TOL = 1e-12


class RateRegimeError(ValueError):
    """A rate expression was requested outside its regime of validity."""


class DFOptimalRegimeError(RateRegimeError):
    """Relay link is large enough that plain decode-forward already covers it."""


class CFRegimeError(RateRegimeError):
    """Relay link swallows the whole description; compress-forward applies directly."""


class DegenerateDenominatorError(RateRegimeError):
    """The chaining rate expression degenerates (denominator at or below zero)."""


@dataclass(frozen=True)
class ErasureRelayParams:
    """Erasure rates to relay (eps_sr) and destination (eps_sd), link capacity c_rd."""

    eps_sd: float
    eps_sr: float
    c_rd: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.eps_sd <= 1.0:
            raise ValueError(f"eps_sd {self.eps_sd!r} outside [0, 1]")
        if not 0.0 <= self.eps_sr <= 1.0:
            raise ValueError(f"eps_sr {self.eps_sr!r} outside [0, 1]")
        if not self.c_rd >= 0.0:
            raise ValueError(f"c_rd {self.c_rd!r} is negative")


@dataclass(frozen=True)
class BoundReport:
    """Value of a bound plus how it was attained.

    witness is the optimizer argument when the bound involves a search
    (eps_hat for the compressed schemes, a for the improved cut-set bound, a
    parameter tuple for brute-force searches).  binding labels the active
    min-term or the winning candidate.  When feasible is False the value is
    absent.
    """

    value: Optional[float]
    witness: object = None
    binding: Optional[str] = None
    feasible: bool = True


def cut_set(p: ErasureRelayParams) -> BoundReport:
    """min{1 - eps_sd + c_rd, 1 - eps_sr*eps_sd}.

    First term: the cut separating the destination (direct channel plus side
    link).  Second term: the broadcast cut out of the source.
    """
    direct_plus_link = 1.0 - p.eps_sd + p.c_rd
    broadcast = 1.0 - p.eps_sr * p.eps_sd
    if direct_plus_link <= broadcast:
        return BoundReport(direct_plus_link, binding="direct_plus_link")
    return BoundReport(broadcast, binding="broadcast")


def improved_cut_set(p: ErasureRelayParams) -> BoundReport:
    """Cut-set refinement with a free slack parameter a >= 0.

    value = max over a of min{ 1 - eps_sr*eps_sd,
                               1 - eps_sd + c_rd - a,
                               1 - min(eps_sr, eps_sd) + h(g) + g - a }
    with g = sqrt(a ln2 / 2).  Each min-term is at most the matching cut-set
    term at a = 0 slack, so the value never exceeds cut_set.  The search stops
    at a = min(1 - eps_sd + c_rd, 2/ln2): beyond the first limit the second
    term is negative, beyond the second g leaves [0, 1].
    """
    broadcast = 1.0 - p.eps_sr * p.eps_sd
    base = 1.0 - min(p.eps_sr, p.eps_sd)

    def terms(a: float) -> tuple[float, float, float]:
        g = math.sqrt(a * _LN2 / 2.0)
        return (broadcast, 1.0 - p.eps_sd + p.c_rd - a, base + binary_entropy(g) + g - a)

    hi = min(1.0 - p.eps_sd + p.c_rd, 2.0 / _LN2)
    result = maximize(SearchSpec(lo=0.0, hi=max(hi, 0.0), objective=lambda a: min(terms(a))))
    labels = ("broadcast", "direct_plus_link", "covering")
    t = terms(result.arg)
    binding = labels[min(range(3), key=lambda i: t[i])]
    return BoundReport(result.value, witness=result.arg, binding=binding)


def direct_transmission(p: ErasureRelayParams) -> BoundReport:
    """1 - eps_sd: the relay stays silent."""
    return BoundReport(1.0 - p.eps_sd)


def decode_forward(p: ErasureRelayParams) -> BoundReport:
    """min{1 - eps_sd + c_rd, 1 - eps_sr}: the relay decodes everything."""
    direct_plus_link = 1.0 - p.eps_sd + p.c_rd
    relay_decoding = 1.0 - p.eps_sr
    if relay_decoding <= direct_plus_link:
        return BoundReport(relay_decoding, binding="relay_decoding")
    return BoundReport(direct_plus_link, binding="direct_plus_link")


def partial_decode_forward(p: ErasureRelayParams) -> BoundReport:
    """Best split of the message into a relay-decoded part and a direct part.

    On erasure channels the optimal split collapses to an endpoint: when the
    relay channel is the worse one (eps_sr >= eps_sd) the relay-decoded layer
    carries nothing and the rate is direct transmission; otherwise the whole
    message goes through the relay layer and the rate is decode-forward.
    """
    if p.eps_sr >= p.eps_sd:
        return BoundReport(direct_transmission(p).value, binding="direct")
    return BoundReport(decode_forward(p).value, binding="decode_forward")


def wz_description_rate(p: ErasureRelayParams, eps_hat: float) -> float:
    """Bits per use needed to describe the relay's block to the destination.

    The relay re-erases its observation with rate eps_hat and bins the result
    against the destination's own observation (Wyner-Ziv accounting):

        h(eps_sr o eps_hat) + eps_sd*(1 - eps_sr o eps_hat)
            - (1 - eps_sr)*h(eps_hat)

    where o is erasure composition.  This equals the conditional information
    the description carries about the relay observation given the destination
    observation, and it is 0 at eps_hat = 1 (a fully erased description).
    """
    if not 0.0 <= eps_hat <= 1.0:
        raise ValueError(f"eps_hat {eps_hat!r} outside [0, 1]")
    e = circ(p.eps_sr, eps_hat)
    return binary_entropy(e) + p.eps_sd * (1.0 - e) - (1.0 - p.eps_sr) * binary_entropy(eps_hat)


def cf_rate_at(p: ErasureRelayParams, eps_hat: float) -> BoundReport:
    """Compress-forward at a fixed description erasure rate eps_hat.

    value = 1 - (eps_hat o eps_sr)*eps_sd, feasible iff the description fits
    the link in one block: wz_description_rate(p, eps_hat) <= c_rd.
    """
    needed = wz_description_rate(p, eps_hat)
    if needed > p.c_rd:
        return BoundReport(None, witness=eps_hat, feasible=False)
    return BoundReport(1.0 - circ(eps_hat, p.eps_sr) * p.eps_sd, witness=eps_hat)


def cf_optimized(p: ErasureRelayParams) -> BoundReport:
    """Compress-forward with the description erasure rate tuned for the link.

    When c_rd >= h(eps_sr) + eps_sd*(1 - eps_sr) the raw observation can be
    described losslessly and the value meets the broadcast cut 1 -
    eps_sr*eps_sd.  Since a fully erased description (eps_hat = 1) always
    fits, the feasible set is never empty and the value is at least direct
    transmission.
    """
    result = maximize(
        SearchSpec(
            lo=0.0,
            hi=1.0,
            objective=lambda eh: 1.0 - circ(eh, p.eps_sr) * p.eps_sd,
            feasible=lambda eh: wz_description_rate(p, eh) <= p.c_rd,
        )
    )
    if not result.feasible:
        # unreachable for valid params (eps_hat = 1 always fits); kept as a guard
        return BoundReport(None, feasible=False)
    return BoundReport(result.value, witness=result.arg)


def _chained_pieces(p: ErasureRelayParams, eps_hat: float) -> tuple[float, float, float, float]:
    i_joint = 1.0 - circ(eps_hat, p.eps_sr) * p.eps_sd
    branch_rate = max(1.0 - p.eps_sr, 1.0 - p.eps_sd)
    i_wz = wz_description_rate(p, eps_hat)
    i_surplus = max(0.0, p.eps_sd - p.eps_sr)
    return i_joint, branch_rate, i_wz, i_surplus


def new_rate_at(p: ErasureRelayParams, eps_hat: float) -> BoundReport:
    """Two-block chained scheme at a fixed description erasure rate.

    The relay's description of block 1 needs wz_description_rate bits per use
    but only c_rd fit in block 1; the remainder rides on block 2, whose length
    is chosen so the link budget closes.  Requires (a) the link to beat the
    gap decode-forward would need, strictly: 1 - eps_sr < 1 - eps_sd + c_rd,
    else DFOptimalRegimeError; and (b) the description to overflow block 1:
    wz_description_rate >= c_rd, else CFRegimeError.

    value = [ (c_rd - i_surplus)*i_joint + branch_rate*(i_wz - c_rd) ]
            / (i_wz - i_surplus)

    with i_joint = 1 - (eps_hat o eps_sr)*eps_sd, branch_rate =
    max(1 - eps_sr, 1 - eps_sd), i_wz the description rate, and i_surplus =
    max(0, eps_sd - eps_sr) the per-use help block 2 needs from the relay.
    """
    i_joint, branch_rate, i_wz, i_surplus = _chained_pieces(p, eps_hat)
    if not (1.0 - p.eps_sr < 1.0 - p.eps_sd + p.c_rd):
        raise DFOptimalRegimeError(
            "DF-optimal regime: 1 - eps_sr < 1 - eps_sd + c_rd fails "
            f"({1.0 - p.eps_sr} >= {1.0 - p.eps_sd + p.c_rd})"
        )
    if i_wz < p.c_rd:
        raise CFRegimeError(
            "CF regime: description rate "
            f"{i_wz} < c_rd {p.c_rd}; the description fits in one block"
        )
    denom = i_wz - i_surplus
    if denom <= _DEGENERATE_TOL:
        raise DegenerateDenominatorError(
            f"degenerate denominator: description rate {i_wz} does not exceed "
            f"the block-2 relay help {i_surplus}"
        )
    value = ((p.c_rd - i_surplus) * i_joint + branch_rate * (i_wz - p.c_rd)) / denom
    binding = "relay_decodes" if p.eps_sr <= p.eps_sd else "relay_discards"
    return BoundReport(value, witness=eps_hat, binding=binding)


def new_rate_optimized(p: ErasureRelayParams) -> BoundReport:
    """Two-block chained scheme, description erasure rate tuned.

    feasible is False when no eps_hat satisfies the chaining conditions (the
    link is in the decode-forward or compress-forward regime everywhere).
    """
    if not (1.0 - p.eps_sr < 1.0 - p.eps_sd + p.c_rd):
        return BoundReport(None, feasible=False, binding="df_optimal_regime")
    i_surplus = max(0.0, p.eps_sd - p.eps_sr)

    def ok(eh: float) -> bool:
        i_wz = wz_description_rate(p, eh)
        return i_wz >= p.c_rd and i_wz - i_surplus > _DEGENERATE_TOL

    result = maximize(
        SearchSpec(
            lo=0.0,
            hi=1.0,
            objective=lambda eh: new_rate_at(p, eh).value,
            feasible=ok,
        )
    )
    if not result.feasible:
        return BoundReport(None, feasible=False, binding="cf_regime")
    binding = "relay_decodes" if p.eps_sr <= p.eps_sd else "relay_discards"
    return BoundReport(result.value, witness=result.arg, binding=binding)


def best_lower_bound(p: ErasureRelayParams) -> BoundReport:
    """Envelope of the achievable rates; binding names the winner.

    Candidates: direct, df, cf, new (the last only where feasible).  Ties
    resolve in that order.
    """
    candidates: list[tuple[str, float, object]] = [
        ("direct", direct_transmission(p).value, None),
        ("df", decode_forward(p).value, None),
    ]
    cf = cf_optimized(p)
    if cf.feasible:
        candidates.append(("cf", cf.value, cf.witness))
    new = new_rate_optimized(p)
    if new.feasible:
        candidates.append(("new", new.value, new.witness))
    name, value, witness = max(candidates, key=lambda t: t[1])
    return BoundReport(value, witness=witness, binding=name)
