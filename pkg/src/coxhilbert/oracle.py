"""Brute-force ground truth over finite boxes of multidegrees.

A finite box can refute persistence but never prove it; the certificate
is what proves it.  Results here are evidence, and ``verify_persistence``
says so in its report.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .budget import Budget, resolve
from .grading import Multidegree, as_multidegree, leq
from .ideal import MultigradedIdeal, hilbert_function
from .polynomial import NumericalPolynomial

DEFAULT_HORIZON = 5


@dataclass(frozen=True)
class HilbertGrid:
    ideal: MultigradedIdeal
    lower: Multidegree
    upper: Multidegree
    values: np.ndarray  # object dtype, indexed by e - lower

    def __getitem__(self, e: Sequence[int]) -> int:
        idx = tuple(int(x) - lo for x, lo in zip(e, self.lower))
        if any(i < 0 for i in idx):
            raise IndexError(f"{tuple(e)} is outside the grid")
        return int(self.values[idx])

    def points(self) -> list[Multidegree]:
        return list(itertools.product(*(range(a, b + 1) for a, b in zip(self.lower, self.upper))))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        s = len(self.lower)
        writer.writerow([f"t{i + 1}" for i in range(s)] + ["H"])
        for pt in self.points():
            writer.writerow(list(pt) + [self[pt]])
        return buf.getvalue()


def compute_grid(
    ideal: MultigradedIdeal,
    lower: Sequence[int],
    upper: Sequence[int],
    *,
    budget: Budget | None = None,
    threads: int = 1,
) -> HilbertGrid:
    """Evaluate the Hilbert function at every point of the box ``[lower, upper]``."""
    s = ideal.ring.s
    lower = as_multidegree(lower, s)
    upper = as_multidegree(upper, s)
    if not leq(lower, upper):
        raise ValueError(f"empty box {lower}..{upper}")
    budget = resolve(budget)
    shape = tuple(b - a + 1 for a, b in zip(lower, upper))
    budget.check_box(prod(shape))
    points = list(itertools.product(*(range(a, b + 1) for a, b in zip(lower, upper))))

    def evaluate(pt: Multidegree) -> int:
        return hilbert_function(ideal, pt, budget=budget)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, points))
    else:
        results = [evaluate(pt) for pt in points]
    values = np.empty(shape, dtype=object)
    for pt, h in zip(points, results):
        values[tuple(x - a for x, a in zip(pt, lower))] = h
    return HilbertGrid(ideal, lower, upper, values)


@dataclass(frozen=True)
class PersistenceReport:
    holds: bool
    lower: Multidegree
    upper: Multidegree
    witness: Multidegree | None = None
    observed: int | None = None
    expected: int | None = None
    note: str = "agreement on a finite box is evidence, not proof"

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds, "box": [list(self.lower), list(self.upper)], "note": self.note}
        if self.witness is not None:
            expected = self.expected if isinstance(self.expected, int) else str(self.expected)
            out.update(witness=list(self.witness), observed=self.observed, expected=expected)
        return out


def verify_persistence(
    ideal: MultigradedIdeal,
    d: Sequence[int],
    poly: NumericalPolynomial,
    horizon: int = DEFAULT_HORIZON,
    *,
    budget: Budget | None = None,
    threads: int = 1,
) -> PersistenceReport:
    """Check ``H_I = P`` on the box ``[d, d + horizon]``.

    On failure the lexicographically smallest counterexample is reported.
    """
    s = ideal.ring.s
    d = as_multidegree(d, s)
    if poly.nvars != s:
        raise ValueError(f"polynomial has {poly.nvars} variables, ring has {s} factors")
    upper = tuple(x + horizon for x in d)
    grid = compute_grid(ideal, d, upper, budget=budget, threads=threads)
    for pt in grid.points():
        expected = poly.evaluate(pt)
        if grid[pt] != expected:
            exp = int(expected) if expected.denominator == 1 else expected
            return PersistenceReport(False, d, upper, pt, grid[pt], exp)
    return PersistenceReport(True, d, upper)
