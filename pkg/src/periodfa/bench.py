"""Scaling benchmark for the decision pipeline.

Generates instances of a chosen family, times :func:`periodfa.decide`
on each, and reports (state count, median wall time) rows.  The fitted
log-log slope is the quantity of interest: quasi-linear behaviour shows
up as a slope close to 1.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

import numpy as np

from .builders import PeriodicParameter, build_eventually_periodic_automaton, build_mod_automaton
from .decide import decide
from .dfa import Dfa

FAMILIES = ("mod", "eventually")


@dataclass(frozen=True)
class BenchRow:
    family: str
    num_states: int
    median_seconds: float
    repeats: int


def _coprime_period(target: int, base: int) -> int:
    period = max(2, target)
    while math.gcd(period, base) != 1:
        period += 1
    return period


def generate_instance(family: str, size: int, base: int, rng: random.Random) -> Dfa:
    """An automaton with about ``size`` states whose decision is positive.

    The mod family uses a period coprime with the base and a random
    remainder set, which keeps the construction minimal so the pipeline
    is timed at full size; the eventually family adds a random mismatch
    block via the exclusive-disjunction product.
    """
    if family == "mod":
        period = _coprime_period(size, base)
        remainders = frozenset(r for r in range(period) if rng.random() < 0.5)
        return build_mod_automaton(period, remainders, base)
    if family == "eventually":
        top = 6
        period = _coprime_period(max(2, size // (top + 2)), base)
        remainders = frozenset(r for r in range(period) if rng.random() < 0.5)
        mismatches = frozenset(v for v in range(top + 1) if rng.random() < 0.5) or frozenset({top})
        param = PeriodicParameter(period, remainders, mismatches)
        return build_eventually_periodic_automaton(param, base)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def run_bench(
    family: str,
    sizes: list[int],
    base: int = 2,
    repeats: int = 3,
    seed: int = 0,
) -> list[BenchRow]:
    """Time the full decision pipeline over generated instances."""
    if sorted(sizes) != list(sizes):
        raise ValueError("sizes must be ascending")
    if repeats < 1:
        raise ValueError("repeats must be positive")
    rng = random.Random(seed)
    rows = []
    for size in sizes:
        instance = generate_instance(family, size, base, rng)
        times = []
        for _ in range(repeats):
            start = time.perf_counter()
            decision = decide(instance)
            times.append(time.perf_counter() - start)
        if not decision.periodic:
            raise RuntimeError("benchmark instance unexpectedly classified negative")
        times.sort()
        median = times[len(times) // 2] if repeats % 2 else (
            times[repeats // 2 - 1] + times[repeats // 2]
        ) / 2
        rows.append(BenchRow(family, instance.num_states, median, repeats))
    return rows


def fit_loglog_slope(rows: list[BenchRow]) -> float:
    """Least-squares slope of log(time) against log(states)."""
    if len(rows) < 2:
        raise ValueError("need at least two sizes to fit a slope")
    xs = np.log([row.num_states for row in rows])
    ys = np.log([row.median_seconds for row in rows])
    return float(np.polyfit(xs, ys, 1)[0])


def rows_to_csv(rows: list[BenchRow]) -> str:
    lines = ["family,n,median_seconds,repeats"]
    for row in rows:
        lines.append(f"{row.family},{row.num_states},{row.median_seconds:.6f},{row.repeats}")
    return "\n".join(lines) + "\n"


def plot_scaling(rows: list[BenchRow], path) -> None:
    """Render the timings and the fitted line to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = np.array([row.num_states for row in rows], dtype=float)
    ts = np.array([row.median_seconds for row in rows], dtype=float)
    slope, intercept = np.polyfit(np.log(ns), np.log(ts), 1)

    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.loglog(ns, ts, "o", label="measured")
    grid = np.geomspace(ns.min(), ns.max(), 64)
    ax.loglog(grid, np.exp(intercept) * grid**slope, "--", label=f"fit, slope {slope:.3f}")
    ax.set_xlabel("states")
    ax.set_ylabel("decision time [s]")
    ax.set_title(f"decide() scaling, {rows[0].family} family")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
