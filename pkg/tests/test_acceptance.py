"""Acceptance gate: numbered end-to-end criteria with one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the [PASS]/[FAIL]
lines; each criterion is a single test and prints exactly one line.

Criterion 3's per-point coincidence clause is expected to fail: the refined
upper bound genuinely dips below the plain cut-set bound by up to ~5.6e-4
near the corner where the two cut-set terms cross (verified against a dense
independent grid oracle in tests/test_erasure_bounds.py), so demanding
equality within 1e-6 at every sweep point is not attainable.  The dominance
clause (refined <= plain everywhere) does hold and is asserted first.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from relaybounds import chain_sim, erasure_bounds, general_bounds
from relaybounds.cli import compute_sweep
from relaybounds.erasure_bounds import (
    CFRegimeError,
    DegenerateDenominatorError,
    DFOptimalRegimeError,
    ErasureRelayParams,
)

HEADLINE = ErasureRelayParams(eps_sd=0.85, eps_sr=0.5, c_rd=0.99125)
SWEEP_SETTINGS = ((0.85, 0.5), (0.4, 0.2))
SWEEP_CRD = tuple(round(0.005 * k, 10) for k in range(301))  # [0, 1.5] step 0.005


def report(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    print(line, flush=True)
    return line


@pytest.fixture(scope="module")
def sweeps():
    out = {}
    for eps_sd, eps_sr in SWEEP_SETTINGS:
        t0 = time.perf_counter()
        table = compute_sweep(eps_sd, eps_sr, SWEEP_CRD)
        out[(eps_sd, eps_sr)] = (table, time.perf_counter() - t0)
    return out


def test_criterion_1_headline_reproduction():
    t0 = time.perf_counter()
    cut = erasure_bounds.cut_set(HEADLINE).value
    df = erasure_bounds.decode_forward(HEADLINE).value
    cf = erasure_bounds.cf_optimized(HEADLINE).value
    new = erasure_bounds.new_rate_optimized(HEADLINE).value
    elapsed = time.perf_counter() - t0
    ok = (
        abs(cut - 0.575) <= 1e-9
        and abs(df - 0.5) <= 1e-9
        and abs(cf - 0.500) <= 0.005
        and abs(new - 0.545) <= 0.005
        and new > 0.507
        and elapsed < 1.0
    )
    line = report(
        1,
        ok,
        f"headline point cut={cut:.6f} df={df:.6f} cf={cf:.6f} new={new:.6f} "
        f"in {elapsed:.2f}s",
    )
    assert ok, line


def test_criterion_2_sweep_lead_interval(sweeps):
    details = []
    ok = True
    for setting in SWEEP_SETTINGS:
        table, elapsed = sweeps[setting]
        lead = []
        for c, row in zip(table.c_rd_values, table.rows):
            if row["new"] is None:
                lead.append(False)
                continue
            lead.append(row["new"] > max(row["df"], row["cf"]) + 1e-3)
        idx = [i for i, flag in enumerate(lead) if flag]
        contiguous = bool(idx) and idx == list(range(idx[0], idx[-1] + 1))
        matched_beyond = all(
            table.rows[i]["new"] is None
            or table.rows[i]["new"] - table.rows[i]["cf"] <= 1e-3
            for i in range(idx[-1] + 1 if idx else 0, len(lead))
        )
        ok = ok and contiguous and matched_beyond and elapsed < 10.0
        if idx:
            details.append(
                f"{setting}: lead c_rd in [{table.c_rd_values[idx[0]]:.3f}, "
                f"{table.c_rd_values[idx[-1]]:.3f}], {elapsed:.1f}s"
            )
        else:
            details.append(f"{setting}: no lead interval, {elapsed:.1f}s")
    line = report(2, ok, "; ".join(details))
    assert ok, line


def test_criterion_3_improved_bound_coincidence(sweeps):
    rng = np.random.default_rng(2024)
    dominated = True
    for _ in range(1000):
        p = ErasureRelayParams(
            float(rng.uniform()), float(rng.uniform()), float(rng.uniform(0.0, 1.5))
        )
        if erasure_bounds.improved_cut_set(p).value > erasure_bounds.cut_set(p).value + 1e-12:
            dominated = False
    worst = 0.0
    mismatched = 0
    for setting in SWEEP_SETTINGS:
        table, _ = sweeps[setting]
        for row in table.rows:
            gap = abs(row["improved_cut_set"] - row["cut_set"])
            worst = max(worst, gap)
            if gap > 1e-6:
                mismatched += 1
    ok = dominated and mismatched == 0
    line = report(
        3,
        ok,
        f"dominance on 1000 random points: {dominated}; sweep coincidence: "
        f"{mismatched} of {2 * len(SWEEP_CRD)} points exceed 1e-6 (max gap {worst:.2e})",
    )
    assert ok, line


def test_criterion_4_pdf_collapse():
    worst = 0.0
    for eps_sd in np.linspace(0.0, 1.0, 21):
        for eps_sr in np.linspace(0.0, 1.0, 21):
            for c in np.linspace(0.0, 1.5, 11):
                p = ErasureRelayParams(float(eps_sd), float(eps_sr), float(c))
                expected = max(
                    erasure_bounds.direct_transmission(p).value,
                    erasure_bounds.decode_forward(p).value,
                )
                worst = max(worst, abs(erasure_bounds.partial_decode_forward(p).value - expected))
    ok = worst <= 1e-12
    line = report(4, ok, f"pdf vs max(direct, df) on 21x21x11 grid, max gap {worst:.2e}")
    assert ok, line


EQUIV_GRID = [
    (eps_sd, eps_sr, c, eps_hat)
    for eps_sd in (0.1, 0.3, 0.5, 0.7, 0.9)
    for eps_sr in (0.1, 0.3, 0.5, 0.7, 0.9)
    for c in (0.3, 0.6, 0.99125)
    for eps_hat in np.linspace(0.0, 1.0, 11)
]


def test_criterion_5_oracle_equivalence():
    worst_new = 0.0
    worst_cf = 0.0
    feasible_new = 0
    feasible_cf = 0
    for eps_sd, eps_sr, c, eps_hat in EQUIV_GRID:
        p = ErasureRelayParams(eps_sd, eps_sr, c)
        m = general_bounds.erasure_model(eps_sd, eps_sr, float(eps_hat))
        try:
            expected = erasure_bounds.new_rate_at(p, float(eps_hat)).value
        except (DFOptimalRegimeError, CFRegimeError, DegenerateDenominatorError):
            expected = None
        if expected is not None:
            got = general_bounds.chained_rate(m, c).value
            worst_new = max(worst_new, abs(got - expected))
            feasible_new += 1
        closed = erasure_bounds.cf_rate_at(p, float(eps_hat))
        generic = general_bounds.cf_general_rate(m, c)
        assert closed.feasible == generic.feasible
        if closed.feasible:
            worst_cf = max(worst_cf, abs(generic.value - closed.value))
            feasible_cf += 1
    ok = worst_new <= 1e-9 and worst_cf <= 1e-9 and feasible_new > 0 and feasible_cf > 0
    line = report(
        5,
        ok,
        f"joint-table vs closed form on {len(EQUIV_GRID)} points: chained gap "
        f"{worst_new:.2e} ({feasible_new} feasible), cf gap {worst_cf:.2e} "
        f"({feasible_cf} feasible)",
    )
    assert ok, line


def test_criterion_6_schedule_identity():
    worst_budget = 0.0
    worst_rate = 0.0
    checked = 0
    for eps_sd, eps_sr, c, eps_hat in EQUIV_GRID:
        m = general_bounds.erasure_model(eps_sd, eps_sr, float(eps_hat))
        try:
            s = general_bounds.chaining_schedule(m, c)
        except (DFOptimalRegimeError, CFRegimeError, DegenerateDenominatorError):
            continue
        value = general_bounds.chained_rate(m, c).value
        worst_budget = max(
            worst_budget, abs(s.surplus_rate * s.alpha + s.stored_rate - c * s.alpha)
        )
        worst_rate = max(worst_rate, abs((s.r1 + s.alpha * s.r2) / (1.0 + s.alpha) - value))
        checked += 1
    ok = worst_budget <= 1e-10 and worst_rate <= 1e-10 and checked > 0
    line = report(
        6,
        ok,
        f"budget identity gap {worst_budget:.2e}, reconstruction gap {worst_rate:.2e} "
        f"on {checked} feasible points",
    )
    assert ok, line


def test_criterion_7_pdcf_dominance():
    ok = True
    worst = -np.inf
    slowest = 0.0
    for eps_sd, eps_sr in SWEEP_SETTINGS:
        for c in (0.3, 0.6, 0.99125):
            p = ErasureRelayParams(eps_sd, eps_sr, c)
            t0 = time.perf_counter()
            pdcf = general_bounds.pdcf_bruteforce_erasure(p).value
            elapsed = time.perf_counter() - t0
            slowest = max(slowest, elapsed)
            envelope = max(
                erasure_bounds.decode_forward(p).value,
                erasure_bounds.cf_optimized(p).value,
            )
            worst = max(worst, pdcf - envelope)
            ok = ok and pdcf <= envelope + 1e-3 and elapsed < 60.0
    line = report(
        7,
        ok,
        f"pdcf minus max(df, cf) at 6 points: worst {worst:+.2e}, slowest point "
        f"{slowest:.1f}s",
    )
    assert ok, line


def test_criterion_8_simulator_threshold():
    t0 = time.perf_counter()
    opt = erasure_bounds.new_rate_optimized(HEADLINE)
    r_new, witness = opt.value, opt.witness
    base = chain_sim.ChainSimConfig(
        params=HEADLINE,
        eps_hat=witness,
        target_rate=0.5,
        n1=100_000,
        delta=0.01,
        trials=200,
        seed=0,
    )
    from dataclasses import replace

    lo = chain_sim.simulate_pair(replace(base, target_rate=r_new - 0.02)).success_rate
    hi = chain_sim.simulate_pair(replace(base, target_rate=r_new + 0.02)).success_rate
    grid = [r_new - 0.01 + 0.005 * k for k in range(-5, 2)]
    est = chain_sim.estimate_threshold(base, grid)
    elapsed = time.perf_counter() - t0
    ok = (
        lo >= 0.95
        and hi <= 0.05
        and est.threshold is not None
        and abs(est.threshold - (r_new - base.delta)) <= 0.03
        and elapsed < 120.0
    )
    line = report(
        8,
        ok,
        f"success {lo:.3f} at R-0.02 and {hi:.3f} at R+0.02; threshold "
        f"{est.threshold:.4f} vs nominal {r_new - base.delta:.4f}; {elapsed:.0f}s",
    )
    assert ok, line


def test_criterion_9_cli_determinism(tmp_path):
    sweep_args = [
        sys.executable, "-m", "relaybounds.cli", "sweep",
        "--eps-sd", "0.85", "--eps-sr", "0.5",
        "--crd-min", "0.0", "--crd-max", "1.5", "--step", "0.05",
    ]
    csvs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        proc = subprocess.run([*sweep_args, "--out", str(path)], capture_output=True)
        assert proc.returncode == 0, proc.stderr
        csvs.append(path.read_bytes())
    sim_args = [
        sys.executable, "-m", "relaybounds.cli", "simulate",
        "--eps-sd", "0.85", "--eps-sr", "0.5", "--crd", "0.99125",
        "--eps-hat", "0.00038855", "--rate", "0.53",
        "--n1", "20000", "--trials", "50", "--seed", "123",
    ]
    sims = [subprocess.run(sim_args, capture_output=True) for _ in range(2)]
    ok = (
        csvs[0] == csvs[1]
        and sims[0].returncode == 0
        and sims[0].stdout == sims[1].stdout
        and sims[0].returncode == sims[1].returncode
    )
    line = report(9, ok, "sweep CSV and simulate stdout byte-identical across reruns")
    assert ok, line
