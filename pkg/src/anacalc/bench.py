"""Benchmark harness: query-count instrumentation, sweeps, CSV reports.

Counts of oracle queries, not wall time, are the primary scaling
evidence; per-point timings are recorded alongside for context.  The CSV
schema is fixed: op,fixture,n,param,seconds,queries.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .dyadic import Dyadic, SeqName
from .errors import DomainError
from .fixtures import gpeak_gevrey, series_fixture
from .gevrey import empirical_lambda, g_max
from .powerseries import PiSeries, ps_eval

CSV_FIELDS = ("op", "fixture", "n", "param", "seconds", "queries")


@dataclass(frozen=True)
class BenchRecord:
    op: str
    fixture: str
    n: int
    param: int
    seconds: float
    queries: int

    def row(self) -> list:
        return [self.op, self.fixture, self.n, self.param,
                f"{self.seconds:.6f}", self.queries]


class CountingSeq:
    """SeqName wrapper counting every query made through it."""

    def __init__(self, inner: SeqName):
        self.inner = inner
        self.count = 0

    def query(self, j: int, n: int):
        self.count += 1
        return self.inner.query(j, n)


class CountingEval:
    """Evaluation-oracle wrapper counting every call."""

    def __init__(self, inner):
        self.inner = inner
        self.count = 0

    def __call__(self, x: Dyadic, p: int):
        self.count += 1
        return self.inner(x, p)


def fit_loglog_slope(points: Iterable[tuple[int, int]]) -> float:
    """Least-squares slope of log2(count) against log2(n)."""
    xs, ys = [], []
    for n, c in points:
        if n <= 0 or c <= 0:
            raise DomainError("log-log fit needs positive data")
        xs.append(math.log2(n))
        ys.append(math.log2(c))
    if len(xs) < 2:
        raise DomainError("need at least two sweep points")
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    denom = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / denom


def sweep_ps_eval(fixture: str, ns: Iterable[int]) -> list[BenchRecord]:
    """ps_eval query counts over output precision for a series fixture."""
    base = series_fixture(fixture)
    out = []
    for n in ns:
        counter = CountingSeq(base.coeffs)
        f = PiSeries(counter, base.K, base.A)
        t0 = time.time()
        ps_eval(f, Dyadic(1, -1), n)
        out.append(BenchRecord("eval", fixture, n, base.K,
                               time.time() - t0, counter.count))
    return out


def sweep_gmax_levels(levels: Iterable[int], n: int, N: int = 2,
                      C: int = 1) -> list[BenchRecord]:
    """g_max oracle-query counts at fixed accuracy across Gevrey levels
    (the peak family g_{l,N,k} lies in level l+1)."""
    out = []
    for ell in levels:
        g = gpeak_gevrey(ell, N, 0)
        counter = CountingEval(g.eval)
        g.eval = counter
        lam = empirical_lambda(g, C)
        t0 = time.time()
        g_max(lam, Dyadic(-1), Dyadic(1), n)
        out.append(BenchRecord("gmax", f"gpeak:{ell},{N},0", n, ell,
                               time.time() - t0, counter.count))
    return out


def write_csv(path: str, records: Iterable[BenchRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_FIELDS)
        for r in records:
            w.writerow(r.row())


def read_csv(path: str) -> list[BenchRecord]:
    out = []
    with open(path) as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if tuple(header) != CSV_FIELDS:
            raise DomainError(f"unexpected CSV header {header!r}")
        for row in rd:
            out.append(BenchRecord(row[0], row[1], int(row[2]), int(row[3]),
                                   float(row[4]), int(row[5])))
    return out


def slope_by_param(records: list[BenchRecord]) -> dict[int, float]:
    """Fitted log-log slope of queries vs n for each parameter slice."""
    by_param: dict[int, list[tuple[int, int]]] = {}
    for r in records:
        by_param.setdefault(r.param, []).append((r.n, r.queries))
    return {p: fit_loglog_slope(pts) for p, pts in sorted(by_param.items())
            if len(pts) >= 2}
