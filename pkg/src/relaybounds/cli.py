"""Command line front end: point evaluation, link-capacity sweeps, simulation.

Exit codes: 0 on success, 2 for invalid flags or parameter ranges, 3 for an
unwritable output path, 4 when a requested simulation is infeasible (a
chaining condition fails; the message names it).  Output formatting is fixed
at six decimals so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import chain_sim, erasure_bounds, general_bounds
from .erasure_bounds import ErasureRelayParams, RateRegimeError

_BOUND_COLUMNS = ("cut_set", "improved_cut_set", "direct", "df", "pdf", "cf", "new", "best_lower")


@dataclass(frozen=True)
class SweepTable:
    """Rows of bound values over a strictly increasing c_rd grid.

    Each row maps column name to a float or None (infeasible).  Every bound
    value lies in [0, 1]; the header is fixed so CSV output is stable.
    """

    header: tuple[str, ...]
    c_rd_values: tuple[float, ...]
    rows: tuple[dict, ...]

    def __post_init__(self) -> None:
        if any(b >= a for a, b in zip(self.c_rd_values[1:], self.c_rd_values)):
            raise ValueError("c_rd grid must be strictly increasing")
        for row in self.rows:
            for name in self.header[1:]:
                v = row.get(name)
                if v is not None and not 0.0 <= v <= 1.0 + 1e-12:
                    raise ValueError(f"bound column {name} outside [0, 1]: {v}")


def _point_values(p: ErasureRelayParams, with_pdcf: bool = False, pdcf_grid: int = 21) -> dict:
    values: dict = {
        "cut_set": erasure_bounds.cut_set(p),
        "improved_cut_set": erasure_bounds.improved_cut_set(p),
        "direct": erasure_bounds.direct_transmission(p),
        "df": erasure_bounds.decode_forward(p),
        "pdf": erasure_bounds.partial_decode_forward(p),
        "cf": erasure_bounds.cf_optimized(p),
        "new": erasure_bounds.new_rate_optimized(p),
        "best_lower": erasure_bounds.best_lower_bound(p),
    }
    if with_pdcf:
        values["pdcf"] = general_bounds.pdcf_bruteforce_erasure(p, grid_points=pdcf_grid)
    return values


def compute_sweep(
    eps_sd: float,
    eps_sr: float,
    c_rd_values: Sequence[float],
    with_pdcf: bool = False,
    pdcf_grid: int = 21,
) -> SweepTable:
    header = ("c_rd",) + _BOUND_COLUMNS + (("pdcf",) if with_pdcf else ())
    rows = []
    for c in c_rd_values:
        reports = _point_values(
            ErasureRelayParams(eps_sd=eps_sd, eps_sr=eps_sr, c_rd=c),
            with_pdcf=with_pdcf,
            pdcf_grid=pdcf_grid,
        )
        rows.append({name: rep.value for name, rep in reports.items()})
    return SweepTable(header=header, c_rd_values=tuple(float(c) for c in c_rd_values), rows=tuple(rows))


def format_csv(table: SweepTable) -> str:
    lines = [",".join(table.header)]
    for c, row in zip(table.c_rd_values, table.rows):
        cells = [f"{c:.6f}"]
        for name in table.header[1:]:
            v = row.get(name)
            cells.append("" if v is None else f"{v:.6f}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _unit(parser: argparse.ArgumentParser, name: str, v: float) -> float:
    if not 0.0 <= v <= 1.0:
        parser.error(f"{name} must be in [0, 1], got {v}")
    return v


def _nonneg(parser: argparse.ArgumentParser, name: str, v: float) -> float:
    if not v >= 0.0:
        parser.error(f"{name} must be nonnegative, got {v}")
    return v


def cmd_point(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    p = ErasureRelayParams(
        eps_sd=_unit(parser, "--eps-sd", args.eps_sd),
        eps_sr=_unit(parser, "--eps-sr", args.eps_sr),
        c_rd=_nonneg(parser, "--crd", args.crd),
    )
    for name, rep in _point_values(p).items():
        if not rep.feasible:
            print(f"{name}=infeasible reason={rep.binding}")
            continue
        extras = []
        if isinstance(rep.witness, float):
            label = "witness_a" if name == "improved_cut_set" else "witness_eps_hat"
            extras.append(f"{label}={rep.witness:.6f}")
        if rep.binding is not None:
            label = "winner" if name == "best_lower" else "binding"
            extras.append(f"{label}={rep.binding}")
        print(" ".join([f"{name}={rep.value:.6f}"] + extras))
    return 0


def cmd_sweep(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    eps_sd = _unit(parser, "--eps-sd", args.eps_sd)
    eps_sr = _unit(parser, "--eps-sr", args.eps_sr)
    lo = _nonneg(parser, "--crd-min", args.crd_min)
    hi = _nonneg(parser, "--crd-max", args.crd_max)
    if hi < lo:
        parser.error(f"--crd-max {hi} below --crd-min {lo}")
    if not args.step > 0.0:
        parser.error(f"--step must be positive, got {args.step}")
    count = int((hi - lo) / args.step + 1e-9) + 1
    values = [lo + k * args.step for k in range(count)]
    table = compute_sweep(eps_sd, eps_sr, values, with_pdcf=args.with_pdcf, pdcf_grid=args.pdcf_grid)
    text = format_csv(table)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_simulate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    p = ErasureRelayParams(
        eps_sd=_unit(parser, "--eps-sd", args.eps_sd),
        eps_sr=_unit(parser, "--eps-sr", args.eps_sr),
        c_rd=_nonneg(parser, "--crd", args.crd),
    )
    eps_hat = _unit(parser, "--eps-hat", args.eps_hat)
    if args.n1 < 1:
        parser.error("--n1 must be at least 1")
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    delta = _unit(parser, "--delta", args.delta)
    if args.seed < 0:
        parser.error("--seed must be nonnegative")
    if args.rate is None and args.rate_grid is None:
        parser.error("one of --rate or --rate-grid is required")

    rates: Optional[list[float]] = None
    if args.rate_grid is not None:
        try:
            rates = [float(tok) for tok in args.rate_grid.split(",") if tok.strip()]
        except ValueError:
            parser.error(f"--rate-grid must be comma-separated floats, got {args.rate_grid!r}")
        if not rates:
            parser.error("--rate-grid is empty")
        for r in rates:
            _unit(parser, "--rate-grid entry", r)
    target = _unit(parser, "--rate", args.rate) if args.rate is not None else rates[0]

    cfg = chain_sim.ChainSimConfig(
        params=p,
        eps_hat=eps_hat,
        target_rate=target,
        n1=args.n1,
        delta=delta,
        trials=args.trials,
        seed=args.seed,
    )
    try:
        if rates is None:
            outcome = chain_sim.simulate_pair(cfg)
        else:
            estimate = chain_sim.estimate_threshold(cfg, rates)
    except RateRegimeError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 4

    if rates is None:
        print(f"design_rate={outcome.design_rate:.6f}")
        print(f"alpha={outcome.alpha:.6f}")
        print(f"n2={outcome.n2}")
        print(f"branch={outcome.branch}")
        print(f"target_rate={cfg.target_rate:.6f}")
        print(f"success_rate={outcome.success_rate:.6f}")
        first = outcome.ledgers[0]
        for field in (
            "wz_bits_needed",
            "relay_bits_block1",
            "stored_bits",
            "relay_bits_block2",
            "equations_known_b1",
            "equations_known_b2",
        ):
            print(f"trial0_{field}={getattr(first, field)}")
    else:
        for r, s in zip(estimate.rates, estimate.success_rates):
            print(f"rate={r:.6f} success_rate={s:.6f}")
        t = estimate.threshold
        print("threshold=none" if t is None else f"threshold={t:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaybounds",
        description="Rate bounds and simulation for the erasure primitive relay channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="print every bound at one parameter point")
    point.add_argument("--eps-sd", type=float, required=True)
    point.add_argument("--eps-sr", type=float, required=True)
    point.add_argument("--crd", type=float, required=True)

    sweep = sub.add_parser("sweep", help="write a CSV of bounds over a c_rd grid")
    sweep.add_argument("--eps-sd", type=float, required=True)
    sweep.add_argument("--eps-sr", type=float, required=True)
    sweep.add_argument("--crd-min", type=float, required=True)
    sweep.add_argument("--crd-max", type=float, required=True)
    sweep.add_argument("--step", type=float, required=True)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--with-pdcf", action="store_true", help="append a pdcf brute-force column")
    sweep.add_argument("--pdcf-grid", type=int, default=21, help="grid points per pdcf parameter")

    sim = sub.add_parser("simulate", help="Monte-Carlo the two-block chained scheme")
    sim.add_argument("--eps-sd", type=float, required=True)
    sim.add_argument("--eps-sr", type=float, required=True)
    sim.add_argument("--crd", type=float, required=True)
    sim.add_argument("--eps-hat", type=float, required=True)
    sim.add_argument("--rate", type=float, help="overall rate to attempt")
    sim.add_argument("--rate-grid", help="comma-separated rates; prints per-rate success and the threshold")
    sim.add_argument("--n1", type=int, default=100_000)
    sim.add_argument("--trials", type=int, default=200)
    sim.add_argument("--delta", type=float, default=0.01)
    sim.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "point":
        return cmd_point(parser, args)
    if args.command == "sweep":
        return cmd_sweep(parser, args)
    return cmd_simulate(parser, args)


if __name__ == "__main__":
    sys.exit(main())
