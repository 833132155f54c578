"""Monte Carlo experiment harness over the random 2-complex model.

A run is a grid of (n, p-rule) cells; each cell draws a fixed number of
samples and evaluates k-step collapsibility and/or forbidden-surface
containment.  Probability rules are kept symbolic (literal p, or c * n^-alpha)
so results files carry the exponent alongside the evaluated probability.

Per-trial seeds are mixed from (base seed, n, p bits, trial index) only, so a
cell's results do not depend on its position in the grid and reruns of the
same configuration reproduce the same counts exactly.  In mode "both" every
degree-capped trial is checked for the exact complement identity between
collapsibility and containment; a violation aborts the run, since the two
routes are equivalent for hosts of degree at most r.
"""

from __future__ import annotations

import csv
import json
import math
import struct
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .catalog import enumerate_forbidden
from .collapse import TERMINAL_GRAPH, collapse_sequence
from .embedding import contains_any
from .random_model import ModelParams, sample

MODE_DIRECT = "direct"
MODE_CATALOG = "catalog"
MODE_BOTH = "both"

CSV_COLUMNS = [
    "n",
    "p",
    "c",
    "alpha",
    "k",
    "trials",
    "seed",
    "collapsible",
    "contains_forbidden",
    "mean_steps",
    "degree_exceeded",
    "wall_ms",
]


class ConsistencyError(RuntimeError):
    """Collapsibility and containment disagreed on a degree-capped sample."""


@dataclass(frozen=True)
class PRule:
    """Either a literal probability or the exponent form c * n^-alpha."""

    p: Optional[float] = None
    c: Optional[float] = None
    alpha: Optional[float] = None

    def __post_init__(self) -> None:
        literal = self.p is not None
        exponent = self.c is not None or self.alpha is not None
        if literal == exponent:
            raise ValueError("a p-rule is either {'p': x} or {'c': c, 'alpha': a}")
        if literal and not 0.0 <= self.p <= 1.0:  # type: ignore[operator]
            raise ValueError("literal p must lie in [0, 1]")
        if exponent and (self.c is None or self.alpha is None or self.c <= 0 or self.alpha <= 0):
            raise ValueError("exponent rules need c > 0 and alpha > 0")

    def evaluate(self, n: int) -> float:
        if self.p is not None:
            return self.p
        return min(1.0, self.c * n ** (-self.alpha))  # type: ignore[operator]

    @classmethod
    def from_dict(cls, data: dict) -> "PRule":
        if "p" in data:
            return cls(p=float(data["p"]))
        return cls(c=float(data.get("c", 1.0)), alpha=float(data["alpha"]))


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple[int, ...]
    p_rules: tuple[PRule, ...]
    k: int
    r: int
    trials: int
    seed: int
    mode: str = MODE_DIRECT

    def __post_init__(self) -> None:
        if not self.n_values or not self.p_rules:
            raise ValueError("config needs at least one n and one p-rule")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.mode not in (MODE_DIRECT, MODE_CATALOG, MODE_BOTH):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        return cls(
            n_values=tuple(int(n) for n in data["n_values"]),
            p_rules=tuple(PRule.from_dict(d) for d in data["p_rules"]),
            k=int(data["k"]),
            r=int(data.get("r", 2)),
            trials=int(data["trials"]),
            seed=int(data["seed"]),
            mode=data.get("mode", MODE_DIRECT),
        )


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return ExperimentConfig.from_dict(json.load(fh))


@dataclass(frozen=True)
class ExperimentRecord:
    """Aggregated counts for one grid cell."""

    n: int
    p: float
    c: Optional[float]
    alpha: Optional[float]
    k: int
    trials: int
    seed: int
    collapsible: Optional[int]
    contains_forbidden: Optional[int]
    mean_steps: Optional[float]
    degree_exceeded: int
    wall_ms: int

    def csv_row(self) -> list[str]:
        def fmt(x) -> str:
            return "" if x is None else repr(x) if isinstance(x, float) else str(x)

        return [
            str(self.n),
            repr(self.p),
            fmt(self.c),
            fmt(self.alpha),
            str(self.k),
            str(self.trials),
            str(self.seed),
            fmt(self.collapsible),
            fmt(self.contains_forbidden),
            fmt(self.mean_steps),
            str(self.degree_exceeded),
            str(self.wall_ms),
        ]


def _mix64(x: int) -> int:
    x &= 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def trial_seed(seed: int, n: int, p: float, trial: int) -> int:
    """Per-trial seed depending only on (seed, n, p, trial index)."""
    (p_bits,) = struct.unpack("<Q", struct.pack("<d", p))
    out = _mix64(seed)
    for word in (n, p_bits, trial):
        out = _mix64(out ^ word)
    return out


def _run_cell(
    n: int, rule: PRule, config: ExperimentConfig, members
) -> ExperimentRecord:
    p = rule.evaluate(n)
    do_collapse = config.mode in (MODE_DIRECT, MODE_BOTH)
    do_catalog = config.mode in (MODE_CATALOG, MODE_BOTH)
    collapsible = 0
    contains = 0
    degree_exceeded = 0
    graph_steps: list[int] = []
    t0 = time.perf_counter()
    for trial in range(config.trials):
        y = sample(ModelParams(n, p, trial_seed(config.seed, n, p, trial)))
        capped = y.max_degree() <= config.r
        if not capped:
            degree_exceeded += 1
        is_coll = None
        if do_collapse:
            trace = collapse_sequence(y)
            is_coll = trace.terminal == TERMINAL_GRAPH and trace.steps <= config.k
            if is_coll:
                collapsible += 1
            if trace.terminal == TERMINAL_GRAPH:
                graph_steps.append(trace.steps)
        if do_catalog:
            hit = contains_any(y, members) is not None
            if hit:
                contains += 1
            if config.mode == MODE_BOTH and capped and is_coll == hit:
                raise ConsistencyError(
                    f"n={n} p={p} trial={trial}: collapsible={is_coll} but "
                    f"forbidden-surface containment={hit} on a degree-capped sample"
                )
    wall_ms = int(round((time.perf_counter() - t0) * 1000))
    mean_steps = (
        sum(graph_steps) / len(graph_steps) if do_collapse and graph_steps else None
    )
    return ExperimentRecord(
        n=n,
        p=p,
        c=rule.c,
        alpha=rule.alpha,
        k=config.k,
        trials=config.trials,
        seed=config.seed,
        collapsible=collapsible if do_collapse else None,
        contains_forbidden=contains if do_catalog else None,
        mean_steps=mean_steps,
        degree_exceeded=degree_exceeded,
        wall_ms=wall_ms,
    )


def run_experiment(
    config: ExperimentConfig, out_path: Optional[str] = None
) -> list[ExperimentRecord]:
    """Run every cell of the grid in order; optionally append records to a CSV
    as they complete so crashes lose at most the current cell."""
    members = None
    if config.mode in (MODE_CATALOG, MODE_BOTH):
        members = enumerate_forbidden(config.k, config.r).members
    records: list[ExperimentRecord] = []
    writer = None
    fh = None
    try:
        if out_path is not None:
            fh = open(out_path, "w", encoding="utf-8", newline="")
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            fh.flush()
        for n in config.n_values:
            for rule in config.p_rules:
                record = _run_cell(n, rule, config, members)
                records.append(record)
                if writer is not None:
                    writer.writerow(record.csv_row())
                    fh.flush()  # type: ignore[union-attr]
    finally:
        if fh is not None:
            fh.close()
    return records


def write_records_csv(records: Iterable[ExperimentRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(record.csv_row())


# -- threshold scans -------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    alpha: float
    p: float
    trials: int
    collapsible: int

    @property
    def fraction(self) -> float:
        return self.collapsible / self.trials


@dataclass(frozen=True)
class ScanResult:
    """Collapsibility fractions across p = n^-alpha, with the two theoretical
    exponents bracketing the k-step collapsibility threshold."""

    n: int
    k: int
    trials: int
    seed: int
    rows: tuple[ScanRow, ...]
    alpha_collapse: float = field(init=False)
    alpha_obstruct: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha_collapse", 1.0 + 2.0 / (self.k + 1))
        object.__setattr__(
            self, "alpha_obstruct", 1.0 + 1.0 / (3.0 * 2.0 ** (self.k - 1) - 1.0)
        )


def threshold_scan(
    n: int, k: int, alphas: list[float], trials: int, seed: int
) -> ScanResult:
    """Fraction of samples collapsible in at most k steps at each p = n^-alpha."""
    if sorted(alphas) != list(alphas):
        raise ValueError("alphas must be sorted ascending")
    rows = []
    for alpha in alphas:
        p = min(1.0, n ** (-alpha))
        collapsible = 0
        for trial in range(trials):
            y = sample(ModelParams(n, p, trial_seed(seed, n, p, trial)))
            trace = collapse_sequence(y)
            if trace.terminal == TERMINAL_GRAPH and trace.steps <= k:
                collapsible += 1
        rows.append(ScanRow(alpha, p, trials, collapsible))
    return ScanResult(n, k, trials, seed, tuple(rows))


SCAN_COLUMNS = [
    "alpha",
    "p",
    "n",
    "k",
    "trials",
    "seed",
    "collapsible",
    "fraction",
    "alpha_collapse",
    "alpha_obstruct",
]


def write_scan_csv(result: ScanResult, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCAN_COLUMNS)
        for row in result.rows:
            writer.writerow(
                [
                    repr(row.alpha),
                    repr(row.p),
                    str(result.n),
                    str(result.k),
                    str(row.trials),
                    str(result.seed),
                    str(row.collapsible),
                    repr(row.fraction),
                    repr(result.alpha_collapse),
                    repr(result.alpha_obstruct),
                ]
            )


def pooled_se(x1: int, n1: int, x2: int, n2: int) -> float:
    """Standard error of the difference of two binomial fractions under the
    pooled-rate estimate; used for monotone-trend tolerances."""
    pooled = (x1 + x2) / (n1 + n2)
    return math.sqrt(max(pooled * (1.0 - pooled), 0.0) * (1.0 / n1 + 1.0 / n2))
